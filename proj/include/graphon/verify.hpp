#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphon/bipartite.hpp"
#include "graphon/graphon_core.hpp"
#include "graphon/spectral.hpp"

namespace graphon {

struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool passed = false;
};

/// Inequality lhs <= rhs, passing when slack >= -tolerance.
Check make_check(std::string name, double lhs, double rhs, double tolerance);

struct NamedWitness {
  std::string name;
  SignedPartition partition;
  std::size_t grid = 0;  // cell count the indices refer to
  double beta = 0.0;
  std::optional<double> threshold;
};

struct VerificationReport {
  std::string kind;
  std::size_t grid = 0;
  double lambda_max = 0.0;
  std::optional<double> beta_rounding;
  std::optional<double> beta_exhaustive;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, bool>> predicates;
  std::vector<NamedWitness> witnesses;
  std::vector<Check> checks;
  double tolerance = 1e-8;

  bool all_passed() const;
  const Check* find_check(const std::string& name) const;
};

struct VerifyOptions {
  SpectralOptions spectral;
  double tolerance = 1e-8;
  std::size_t restarts = 20;
  double degree_floor = 1e-6;
  double tol_eig = 1e-8;
  double tol_beta = 1e-8;
};

/// The graphon and function that threshold rounding sweeps over.
struct RoundingSource {
  Graphon graphon;
  GridFunction f;
};

/// Uses the grid eigenfunction when there is one; otherwise the top value 1
/// is attained on the 2-refinement by the function that is +1 on the first
/// half and -1 on the second half of every cell.
RoundingSource rounding_source(const Graphon& w, const SpectralResult& spectrum);

/// Threshold rounding of rounding_source. The witness grid reflects which
/// case applied.
NamedWitness spectral_rounding(const Graphon& w, const SpectralResult& spectrum);

/// Checks lambda_le_2, buser (or buser_upper_bound_only when m > 12),
/// cheeger_constructive, and beta_le_half (when m <= 12).
VerificationReport verify_graphon(const Graphon& w, const VerifyOptions& opts = {});

/// Graph/graphon correspondence on a loopless connected graph with n <= 12:
/// lambda_match, beta_sandwich_lower/upper, cheeger_graph, buser_graph.
VerificationReport verify_graph_correspondence(const WeightedGraph& g,
                                               std::size_t k,
                                               const VerifyOptions& opts = {});

/// Evaluates beta = 0, lambda_max = 2 and bipartiteness of the support, and
/// checks that the three agree. Enforces min degree >= opts.degree_floor.
VerificationReport bipartite_equivalence(const Graphon& w,
                                         const VerifyOptions& opts = {});

}  // namespace graphon
