#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "graphon/graphon_core.hpp"

namespace graphon {

/// Largest grid (or vertex count) the 3^m enumeration accepts.
inline constexpr std::size_t kExhaustiveMaxSize = 12;

/// Values within this distance count as ties for deterministic tie-breaking.
inline constexpr double kTieTolerance = 1e-12;

struct RatioReport {
  double beta = 0.0;
  SignedPartition witness;
  std::optional<double> threshold;  // set by threshold rounding
};

/// [2 eta(LxL) + 2 eta(RxR) + eta(S x S^c)] / [2 eta(S x I)], S = L u R.
double beta_partition(const Graphon& w, const SignedPartition& p);

/// Same ratio for a weighted graph with e_G in place of eta.
double beta_partition_graph(const WeightedGraph& g, const SignedPartition& p);

/// -1 on L, +1 on R, 0 elsewhere.
GridFunction signed_indicator(const SignedPartition& p, std::size_t m);

/// Minimum of beta_partition over all 3^m - 1 nonzero sign assignments.
/// Ties go to the lexicographically smallest (left, right). This is the
/// exact ratio over cell-aligned partitions (beta_cell_exact).
RatioReport beta_exhaustive(const Graphon& w);

/// Exact beta_G by the same enumeration over vertex assignments.
RatioReport beta_graph_exact(const WeightedGraph& g);

/// Fractional relaxation of beta_G; its infimum is beta of W_G.
double beta_tilde(const WeightedGraph& g, const FractionalBipartition& fb);

struct FractionalSearchResult {
  double value = 0.0;
  FractionalBipartition fb;
};

/// Coordinate descent on beta_tilde over per-vertex moves to the corners
/// (0,0), (1,0), (0,1) of the (alpha_i, gamma_i) triangle, from `restarts`
/// random integral starts. On a loopless graph beta_tilde is
/// linear-fractional in each pair, so corner moves lose nothing. The value
/// returned is an upper bound on beta of W_G.
FractionalSearchResult beta_wg_search(const WeightedGraph& g,
                                      std::size_t restarts,
                                      std::uint64_t seed);

struct SweepPoint {
  double t = 0.0;
  double beta = 0.0;
  SignedPartition partition;
};

/// (L_t, R_t) = ({f <= -t}, {f >= t}) for every distinct nonzero |f_i|,
/// in ascending t. Between consecutive attained values the pair is constant,
/// so this is the complete sweep.
std::vector<SweepPoint> threshold_sweep(const Graphon& w, const GridFunction& f);

/// Best sweep partition; ties go to the smallest t. Guarantees
/// beta <= sqrt(antidirichlet(w, f) / inner_v(w, f, f)).
RatioReport threshold_rounding(const Graphon& w, const GridFunction& f);

struct SweepIntegrals {
  double num_lhs = 0.0;
  double num_rhs = 0.0;
  double den_lhs = 0.0;
  double den_rhs = 0.0;
};

/// Evaluates both sides of the level-set integral estimates exactly: the
/// t-integrands are piecewise constant between attained |f| values, so each
/// segment (t_{k-1}, t_k] contributes (t_k^2 - t_{k-1}^2) times its value.
SweepIntegrals sweep_integral_check(const Graphon& w, const GridFunction& f);

/// Preimage of ([0,1/2], (1/2,1]) under `level` iterations of the doubling
/// map, as cell sets. Requires m divisible by 2^(level+1).
SignedPartition doubling_partition(std::size_t level, std::size_t m);

/// beta_partition(w, doubling_partition(n, m)) for n = 0..levels.
std::vector<double> mixing_sequence(const Graphon& w, std::size_t levels);

/// Partition of the 2m-cell refinement taking the first half of every cell
/// as L and the second half as R. For any graphon its ratio is exactly 1/2.
SignedPartition split_cell_partition(std::size_t m);

}  // namespace graphon
