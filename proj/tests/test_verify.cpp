#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "graphon/error.hpp"
#include "graphon/verify.hpp"
#include "oracles.hpp"

using namespace graphon;

namespace {

std::vector<std::vector<double>> cycle_w(std::size_t n) {
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) w[i][(i + 1) % n] = w[(i + 1) % n][i] = 1.0;
  return w;
}

std::vector<std::vector<double>> complete_w(std::size_t n) {
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) w[i][i] = 0.0;
  return w;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::IoError;
}

const Check& must_find(const VerificationReport& r, const std::string& name) {
  const Check* c = r.find_check(name);
  REQUIRE_MESSAGE(c != nullptr, name);
  return *c;
}

}  // namespace

TEST_CASE("make_check slack and pass rule") {
  const Check tight = make_check("x", 1.0, 1.0, 1e-8);
  CHECK(tight.slack == 0.0);
  CHECK(tight.passed);
  CHECK(make_check("x", 1.0 + 5e-9, 1.0, 1e-8).passed);
  CHECK_FALSE(make_check("x", 1.0 + 2e-8, 1.0, 1e-8).passed);
  CHECK(make_check("x", 0.25, 1.0, 0.0).slack == 0.75);
}

TEST_CASE("constant graphon report") {
  const VerificationReport r = verify_graphon(family(ConstantFamily{0.7}, 8));
  CHECK(std::abs(r.lambda_max - 1.0) <= 1e-10);
  REQUIRE(r.beta_exhaustive);
  CHECK(*r.beta_exhaustive == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.all_passed());
  const Check& buser = must_find(r, "buser");
  CHECK(buser.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(buser.rhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(buser.slack) <= 1e-10);
  CHECK(must_find(r, "cheeger_constructive").passed);
  CHECK(must_find(r, "beta_le_half").passed);
  CHECK(must_find(r, "lambda_le_2").passed);
}

TEST_CASE("bipartite block report is tight on the Buser side") {
  const VerificationReport r = verify_graphon(family(SbmFamily{{0.5, 0.5}, {{0, 1}, {1, 0}}}, 4));
  CHECK(std::abs(r.lambda_max - 2.0) <= 1e-12);
  REQUIRE(r.beta_rounding);
  CHECK(*r.beta_rounding == 0.0);
  CHECK(*r.beta_exhaustive == 0.0);
  CHECK(std::abs(must_find(r, "buser").slack) <= 1e-12);
  CHECK(r.all_passed());
}

TEST_CASE("K3 graphon report") {
  const VerificationReport r = verify_graphon(build_graphon(complete_w(3)));
  CHECK(std::abs(r.lambda_max - 1.5) <= 1e-12);
  CHECK(*r.beta_exhaustive == 0.25);
  const Check& buser = must_find(r, "buser");
  CHECK(std::abs(buser.lhs - 0.5) <= 1e-12);
  CHECK(buser.rhs == 0.5);
  CHECK(r.all_passed());
}

TEST_CASE("large grids fall back to the upper-bound Buser check") {
  const VerificationReport r = verify_graphon(family(SeparableFamily{}, 32));
  CHECK_FALSE(r.beta_exhaustive);
  CHECK(r.find_check("buser") == nullptr);
  CHECK(r.find_check("beta_le_half") == nullptr);
  CHECK(must_find(r, "buser_upper_bound_only").passed);
  CHECK(r.all_passed());
}

TEST_CASE("rounding falls back to the refined grid when no step eigenfunction exists") {
  const Graphon w = build_graphon({{1.0, 0.1}, {0.1, 1.0}});
  const SpectralResult s = lambda_max(w);
  REQUIRE_FALSE(s.eigenfunction);
  const RoundingSource src = rounding_source(w, s);
  CHECK(src.graphon.m() == 4);
  CHECK(std::abs(rayleigh(src.graphon, src.f) - 1.0) <= 1e-14);
  const NamedWitness nw = spectral_rounding(w, s);
  CHECK(nw.grid == 4);
  CHECK(nw.beta == doctest::Approx(0.5).epsilon(1e-14));

  const VerificationReport r = verify_graphon(w);
  CHECK(r.all_passed());
  CHECK(*r.beta_exhaustive > 0.5);
}

TEST_CASE("verify_graphon rejects disconnected graphons") {
  CHECK(code_of([] { verify_graphon(family(SbmFamily{{0.5, 0.5}, {{1, 0}, {0, 1}}}, 4)); }) ==
        ErrorCode::NotConnected);
}

TEST_CASE("graph correspondence examples") {
  const VerificationReport k3 =
      verify_graph_correspondence(WeightedGraph::from_weights(complete_w(3)), 2);
  CHECK(k3.all_passed());
  CHECK(std::abs(must_find(k3, "lambda_match").lhs) <= 1e-12);
  CHECK(must_find(k3, "beta_sandwich_upper").slack == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(must_find(k3, "buser_graph").slack) <= 1e-12);

  const VerificationReport c5 =
      verify_graph_correspondence(WeightedGraph::from_weights(cycle_w(5)), 1);
  CHECK(c5.all_passed());
  CHECK(c5.lambda_max == doctest::Approx(1 + std::cos(std::numbers::pi / 5)).epsilon(1e-12));
  CHECK(*c5.beta_exhaustive == 0.125);

  const VerificationReport c4 =
      verify_graph_correspondence(WeightedGraph::from_weights(cycle_w(4)), 1);
  CHECK(c4.all_passed());
  CHECK(std::abs(c4.lambda_max - 2.0) <= 1e-12);
  CHECK(*c4.beta_exhaustive == 0.0);
  for (const char* name : {"beta_sandwich_lower", "beta_sandwich_upper", "buser_graph"}) {
    CHECK(std::abs(must_find(c4, name).slack) <= 1e-12);
  }

  CHECK(code_of([] {
          verify_graph_correspondence(WeightedGraph::from_weights({{1, 1}, {1, 0}}), 1);
        }) == ErrorCode::NotLoopless);
  CHECK(code_of([] {
          verify_graph_correspondence(
              WeightedGraph::from_weights({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}),
              1);
        }) == ErrorCode::NotConnected);
  CHECK(code_of([] {
          verify_graph_correspondence(WeightedGraph::from_weights(complete_w(13)), 1);
        }) == ErrorCode::TooLarge);
}

TEST_CASE("bipartite equivalence") {
  const VerificationReport bip =
      bipartite_equivalence(family(SbmFamily{{0.5, 0.5}, {{0, 1}, {1, 0}}}, 4));
  CHECK(bip.predicates ==
        std::vector<std::pair<std::string, bool>>{{"beta_zero", true}, {"lambda_two", true}, {"bipartite", true}});
  CHECK(bip.all_passed());

  const VerificationReport c = bipartite_equivalence(family(ConstantFamily{0.7}, 8));
  for (const auto& [name, value] : c.predicates) CHECK_FALSE(value);
  CHECK(c.all_passed());

  const VerificationReport k3 = bipartite_equivalence(build_graphon(complete_w(3)));
  for (const auto& [name, value] : k3.predicates) CHECK_FALSE(value);
  CHECK(k3.all_passed());

  // Past the exhaustive limit the rounding ratio stands in for beta.
  const VerificationReport big =
      bipartite_equivalence(family(SbmFamily{{0.5, 0.5}, {{0, 1}, {1, 0}}}, 32));
  CHECK(big.beta_rounding);
  CHECK(big.all_passed());

  VerifyOptions strict;
  strict.degree_floor = 0.2;
  CHECK(code_of([&] { bipartite_equivalence(family(SeparableFamily{}, 8), strict); }) ==
        ErrorCode::DegreeFloorViolated);
}

TEST_CASE("randomized graphon reports pass") {
  std::mt19937_64 rng(61);
  int checked = 0;
  for (int trial = 0; checked < 60; ++trial) {
    const std::size_t m = 1 + trial % 10;
    const oracle::Kernel k = oracle::random_kernel(rng, m, trial % 4);
    if (!oracle::connected(k)) continue;
    ++checked;
    const Graphon w = build_graphon(k);
    const VerificationReport r = verify_graphon(w);
    CHECK(r.all_passed());
    const double dmin = *std::min_element(w.degrees().begin(), w.degrees().end());
    if (dmin >= 1e-6) CHECK(bipartite_equivalence(w).all_passed());
  }
}

TEST_CASE("randomized graph reports pass") {
  std::mt19937_64 rng(67);
  int checked = 0;
  for (int trial = 0; checked < 30; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const oracle::Kernel wts = oracle::random_graph_weights(rng, n);
    if (!oracle::connected(wts)) continue;
    ++checked;
    CHECK(verify_graph_correspondence(WeightedGraph::from_weights(wts), 1 + trial % 2).all_passed());
  }
}
