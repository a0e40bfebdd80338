#include <cmath>
#include <random>

#include "doctest.h"
#include "graphon/bipartite.hpp"
#include "graphon/error.hpp"
#include "graphon/spectral.hpp"
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

const Graphon kBip = family(SbmFamily{{0.5, 0.5}, {{0, 1}, {1, 0}}}, 4);

}  // namespace

TEST_CASE("beta_partition hand values") {
  const Graphon c = family(ConstantFamily{0.7}, 6);
  CHECK(beta_partition(c, SignedPartition::make({0, 1, 2}, {3, 4, 5})) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(beta_partition(kBip, SignedPartition::make({0, 1}, {2, 3})) == 0.0);
  const Graphon k3 = build_graphon(complete_w(3));
  CHECK(beta_partition(k3, SignedPartition::make({0}, {1})) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(code_of([&] { beta_partition(k3, SignedPartition::make({5}, {})); }) ==
        ErrorCode::InvalidPartition);
  CHECK(code_of([] {
          beta_partition(family(SbmFamily{{0.5, 0.5}, {{1, 0}, {0, 1}}}, 2),
                         SignedPartition::make({0}, {}));
        }) == ErrorCode::NotConnected);
}

TEST_CASE("signed indicator") {
  CHECK(signed_indicator(SignedPartition::make({0}, {1}), 3).values ==
        std::vector<double>{-1, 1, 0});
  CHECK(signed_indicator(SignedPartition::make({}, {0, 1}), 2).values ==
        std::vector<double>{1, 1});
  CHECK(signed_indicator(SignedPartition::make({0, 1}, {}), 2).values ==
        std::vector<double>{-1, -1});
}

TEST_CASE("exhaustive ratio on named graphs") {
  const RatioReport k2 = beta_exhaustive(build_graphon(complete_w(2)));
  CHECK(k2.beta == 0.0);
  CHECK(k2.witness == SignedPartition::make({0}, {1}));

  CHECK(beta_exhaustive(build_graphon(complete_w(3))).beta == 0.25);
  const RatioReport c5 = beta_exhaustive(build_graphon(cycle_w(5)));
  CHECK(c5.beta == 0.125);
  CHECK(c5.witness.left().size() + c5.witness.right().size() == 4);

  const RatioReport c4 = beta_graph_exact(WeightedGraph::from_weights(cycle_w(4)));
  CHECK(c4.beta == 0.0);
  CHECK(c4.witness == SignedPartition::make({0, 2}, {1, 3}));
  CHECK(beta_graph_exact(WeightedGraph::from_weights(complete_w(2))).beta == 0.0);
  CHECK(beta_graph_exact(WeightedGraph::from_weights(complete_w(3))).beta == 0.25);

  CHECK(code_of([] { beta_exhaustive(family(ConstantFamily{0.5}, 13)); }) == ErrorCode::TooLarge);
  CHECK(code_of([] { beta_graph_exact(WeightedGraph::from_weights(complete_w(13))); }) ==
        ErrorCode::TooLarge);
}

TEST_CASE("exhaustive search matches the brute-force oracle") {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t m = 1 + trial % 7;
    const oracle::Kernel k = oracle::random_kernel(rng, m, trial % 4);
    if (!oracle::connected(k)) continue;
    ++checked;
    const Graphon w = build_graphon(k);
    const RatioReport r = beta_exhaustive(w);
    const oracle::Best best = oracle::beta_min(k);
    CHECK(r.beta == doctest::Approx(best.beta).epsilon(1e-12).scale(1.0));
    CHECK(r.beta == doctest::Approx(beta_partition(w, r.witness)).epsilon(1e-12));
  }
  CHECK(checked > 60);
}

TEST_CASE("cell-aligned ratio never exceeds 1/2 on loopless kernels") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + trial % 9;
    const oracle::Kernel k = oracle::random_kernel(rng, m, 2);
    if (!oracle::connected(k)) continue;
    CHECK(beta_exhaustive(build_graphon(k)).beta <= 0.5 + 1e-12);
  }
}

TEST_CASE("cell-aligned ratio can exceed 1/2 when the diagonal carries mass") {
  // Every cell-aligned partition of a single loop cell keeps all its mass
  // uncut. Splitting each cell in half recovers a ratio of exactly 1/2.
  const Graphon one = build_graphon({{1.0}});
  CHECK(beta_exhaustive(one).beta == 1.0);
  const Graphon fine = refine(one, 2);
  CHECK(beta_partition(fine, split_cell_partition(1)) == 0.5);

  const Graphon heavy = build_graphon({{1.0, 0.01}, {0.01, 1.0}});
  CHECK(beta_exhaustive(heavy).beta > 0.9);
  CHECK(beta_partition(refine(heavy, 2), split_cell_partition(2)) ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("split-cell partition has ratio 1/2 on every graphon") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 10;
    const oracle::Kernel k = oracle::random_kernel(rng, m, trial % 4);
    if (!oracle::connected(k)) continue;
    const Graphon fine = refine(build_graphon(k), 2);
    CHECK(std::abs(beta_partition(fine, split_cell_partition(m)) - 0.5) <= 1e-12);
  }
}

TEST_CASE("constant graphon closed form") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> label(-1, 1);
  const std::size_t m = 16;
  const Graphon c = family(ConstantFamily{0.35}, m);
  for (int trial = 0; trial < 100; ++trial) {
    CellSet l, r;
    for (std::size_t i = 0; i < m; ++i) {
      const int s = label(rng);
      if (s < 0) l.push_back(i);
      if (s > 0) r.push_back(i);
    }
    if (l.empty() && r.empty()) continue;
    const double ml = double(l.size()) / m, mr = double(r.size()) / m;
    const double closed = 0.5 + (ml - mr) * (ml - mr) / (2 * (ml + mr));
    CHECK(std::abs(beta_partition(c, SignedPartition::make(l, r)) - closed) <= 1e-12);
  }
}

TEST_CASE("partition and function forms agree") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> label(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + trial % 10;
    const oracle::Kernel k = oracle::random_kernel(rng, m, trial % 4);
    if (!oracle::connected(k)) continue;
    const Graphon w = build_graphon(k);
    CellSet l, r;
    for (std::size_t i = 0; i < m; ++i) {
      const int s = label(rng);
      if (s < 0) l.push_back(i);
      if (s > 0) r.push_back(i);
    }
    if (l.empty() && r.empty()) r.push_back(0);
    const SignedPartition p = SignedPartition::make(l, r);
    const GridFunction f = signed_indicator(p, m);
    const double via_f = antidirichlet(w, f) / (4 * inner_v(w, f, f));
    CHECK(std::abs(beta_partition(w, p) - via_f) <= 1e-12);
    CHECK(std::abs(beta_partition(w, p) - oracle::beta(k, p.left(), p.right())) <= 1e-12);
  }
}

TEST_CASE("fractional relaxation") {
  const WeightedGraph k3 = WeightedGraph::from_weights(complete_w(3));
  CHECK(beta_tilde(k3, FractionalBipartition::make({0.5, 0.5, 0.5}, {0.5, 0.5, 0.5})) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(beta_tilde(k3, FractionalBipartition::make({1, 0, 0}, {0, 1, 0})) ==
        doctest::Approx(0.25).epsilon(1e-15));
  // L = V, R = empty keeps every edge uncut: numerator 2 * 6, denominator 2 * 6.
  CHECK(beta_tilde(k3, FractionalBipartition::make({1, 1, 1}, {0, 0, 0})) == 1.0);

  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> corner(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const oracle::Kernel wts = oracle::random_graph_weights(rng, n);
    if (!oracle::connected(wts)) continue;
    const WeightedGraph g = WeightedGraph::from_weights(wts);
    std::vector<double> a(n, 0.0), c(n, 0.0);
    CellSet l, r;
    for (std::size_t i = 0; i < n; ++i) {
      const int s = corner(rng);
      if (s == 1) a[i] = 1.0, l.push_back(i);
      if (s == 2) c[i] = 1.0, r.push_back(i);
    }
    if (l.empty() && r.empty()) a[0] = 1.0, l.push_back(0);
    const double tilde = beta_tilde(g, FractionalBipartition::make(a, c));
    const double cells = beta_partition(associated_graphon(g, 1), SignedPartition::make(l, r));
    CHECK(std::abs(tilde - cells) <= 1e-12);
    CHECK(std::abs(beta_partition_graph(g, SignedPartition::make(l, r)) - cells) <= 1e-12);
  }
}

TEST_CASE("fractional search") {
  const WeightedGraph k2 = WeightedGraph::from_weights(complete_w(2));
  CHECK(beta_wg_search(k2, 5, 1).value == 0.0);
  CHECK(beta_wg_search(WeightedGraph::from_weights(complete_w(3)), 20, 42).value ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(beta_wg_search(WeightedGraph::from_weights(cycle_w(5)), 20, 42).value ==
        doctest::Approx(0.125).epsilon(1e-15));

  CHECK(code_of([] { beta_wg_search(WeightedGraph::from_weights({{1, 1}, {1, 0}}), 5, 1); }) ==
        ErrorCode::NotLoopless);
  CHECK(code_of([&] { beta_wg_search(k2, 0, 1); }) == ErrorCode::BadParameters);

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const oracle::Kernel wts = oracle::random_graph_weights(rng, n);
    if (!oracle::connected(wts)) continue;
    const WeightedGraph g = WeightedGraph::from_weights(wts);
    const double exact = beta_graph_exact(g).beta;
    const FractionalSearchResult s = beta_wg_search(g, 20, 42);
    CHECK(s.value >= exact / 4 - 1e-9);
    CHECK(s.value <= exact + 1e-9);
    CHECK(std::abs(beta_tilde(g, s.fb) - s.value) <= 1e-12);
  }
}

TEST_CASE("threshold rounding hand values") {
  const RatioReport bip = threshold_rounding(kBip, GridFunction{1, 1, -1, -1});
  CHECK(bip.beta == 0.0);
  CHECK(bip.threshold == 1.0);

  const Graphon k3 = build_graphon(complete_w(3));
  const GridFunction f{1, -1, 0};
  const RatioReport r3 = threshold_rounding(k3, f);
  CHECK(r3.beta == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::sqrt(antidirichlet(k3, f) / inner_v(k3, f, f)) == doctest::Approx(1.0).epsilon(1e-15));

  const Graphon c2 = family(ConstantFamily{0.6}, 2);
  const GridFunction pm{1, -1};
  CHECK(threshold_rounding(c2, pm).beta == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::sqrt(antidirichlet(c2, pm) / inner_v(c2, pm, pm)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  CHECK(code_of([&] { threshold_rounding(k3, GridFunction{0, 0, 0}); }) == ErrorCode::ZeroFunction);
}

TEST_CASE("threshold sweep visits every attained level, ties to smallest t") {
  const Graphon c = family(ConstantFamily{0.5}, 4);
  const std::vector<SweepPoint> sweep = threshold_sweep(c, GridFunction{0.5, -2, 0.5, 0});
  REQUIRE(sweep.size() == 2);
  CHECK(sweep[0].t == 0.5);
  CHECK(sweep[0].partition == SignedPartition::make({1}, {0, 2}));
  CHECK(sweep[1].t == 2.0);
  CHECK(sweep[1].partition == SignedPartition::make({1}, {}));

  // Both sweep partitions of +/-1 values coincide: one level only.
  const RatioReport r = threshold_rounding(c, GridFunction{1, -1, 1, -1});
  CHECK(r.threshold == 1.0);
}

TEST_CASE("rounding contract and sweep integrals on random pairs") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + trial % 10;
    const oracle::Kernel k = oracle::random_kernel(rng, m, trial % 4);
    if (!oracle::connected(k)) continue;
    const Graphon w = build_graphon(k);
    const GridFunction f(oracle::random_function(rng, m));
    const RatioReport r = threshold_rounding(w, f);
    CHECK(r.beta * r.beta <= antidirichlet(w, f) / inner_v(w, f, f) + 1e-9);
    const SweepIntegrals s = sweep_integral_check(w, f);
    CHECK(std::abs(s.den_lhs - s.den_rhs) <= 1e-12 * std::max(1.0, s.den_rhs));
    CHECK(s.num_lhs <= s.num_rhs + 1e-12);
  }

  const Graphon k3 = build_graphon(complete_w(3));
  const SweepIntegrals s3 = sweep_integral_check(k3, GridFunction{1, -1, 0});
  CHECK(s3.den_lhs == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  CHECK(s3.den_rhs == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("doubling partitions") {
  CHECK(doubling_partition(0, 2) == SignedPartition::make({0}, {1}));
  CHECK(doubling_partition(1, 4) == SignedPartition::make({0, 2}, {1, 3}));
  CHECK(doubling_partition(2, 8) == SignedPartition::make({0, 2, 4, 6}, {1, 3, 5, 7}));
  CHECK(doubling_partition(1, 8) == SignedPartition::make({0, 1, 4, 5}, {2, 3, 6, 7}));
  CHECK(code_of([] { doubling_partition(2, 12); }) == ErrorCode::GridMisaligned);
}

TEST_CASE("mixing sequences") {
  for (double v : mixing_sequence(family(ConstantFamily{0.7}, 64), 4)) CHECK(v == 0.5);

  // Assortative two-block kernel: the first level is the block split itself,
  // (2*0.9/4 + 2*0.9/4) / (2 * 1/2) = 0.9; every finer level straddles the
  // blocks evenly and gives 1/2.
  const auto sbm = mixing_sequence(
      family(SbmFamily{{0.5, 0.5}, {{0.9, 0.1}, {0.1, 0.9}}}, 64), 4);
  REQUIRE(sbm.size() == 5);
  CHECK(sbm[0] == 0.9);
  for (std::size_t n = 1; n < sbm.size(); ++n) CHECK(sbm[n] == 0.5);

  // Separable kernel: with a = mass of x on L_n, beta = 4 (a^2 + (1/2 - a)^2).
  const auto sep = mixing_sequence(family(SeparableFamily{}, 512), 4);
  const std::vector<double> expected{0.625, 0.53125, 0.5078125, 0.501953125, 0.50048828125};
  for (std::size_t n = 0; n < sep.size(); ++n) {
    CHECK(sep[n] == doctest::Approx(expected[n]).epsilon(1e-14));
  }

  CHECK(code_of([] { mixing_sequence(family(ConstantFamily{0.5}, 24), 4); }) ==
        ErrorCode::GridMisaligned);
}
