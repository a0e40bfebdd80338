#include "graphon/graphon_core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include "graphon/error.hpp"

namespace graphon {
namespace {

SquareMatrix to_square(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorCode::NonSquare, "matrix is empty");
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::NonSquare,
                  "row " + std::to_string(i) + " has " +
                      std::to_string(rows[i].size()) + " entries, expected " +
                      std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

// Range check, then symmetry check and exact repair by averaging.
void validate_symmetric_unit(SquareMatrix& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = a(i, j);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw Error(ErrorCode::OutOfRange,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") = " + std::to_string(v) + " not in [0,1]");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = std::abs(a(i, j) - a(j, i));
      if (gap > kSymmetryTolerance) {
        throw Error(ErrorCode::AsymmetryTooLarge,
                    "|a(" + std::to_string(i) + "," + std::to_string(j) +
                        ") - a(" + std::to_string(j) + "," + std::to_string(i) +
                        ")| = " + std::to_string(gap));
      }
      const double mean = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = mean;
      a(j, i) = mean;
    }
  }
}

// BFS over the support of a symmetric nonnegative matrix.
bool support_spans(const SquareMatrix& a) {
  const std::size_t n = a.size();
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < n; ++j) {
      if (!seen[j] && a(i, j) > 0.0) {
        seen[j] = 1;
        ++reached;
        queue.push_back(j);
      }
    }
  }
  return reached == n;
}

void check_cells(std::span<const std::size_t> cells, std::size_t m) {
  for (std::size_t c : cells) {
    if (c >= m) {
      throw Error(ErrorCode::InvalidPartition,
                  "cell index " + std::to_string(c) + " >= " + std::to_string(m));
    }
  }
}

CellSet sorted_unique(CellSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

SignedPartition SignedPartition::make(CellSet left, CellSet right) {
  left = sorted_unique(std::move(left));
  right = sorted_unique(std::move(right));
  if (left.empty() && right.empty()) {
    throw Error(ErrorCode::EmptyPartition, "L and R are both empty");
  }
  CellSet common;
  std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                        std::back_inserter(common));
  if (!common.empty()) {
    throw Error(ErrorCode::InvalidPartition,
                "L and R share cell " + std::to_string(common.front()));
  }
  return SignedPartition(std::move(left), std::move(right));
}

FractionalBipartition FractionalBipartition::make(std::vector<double> alpha,
                                                  std::vector<double> gamma) {
  if (alpha.size() != gamma.size() || alpha.empty()) {
    throw Error(ErrorCode::BadParameters,
                "alpha and gamma must be nonempty and of equal length");
  }
  bool any_mass = false;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double a = alpha[i];
    const double g = gamma[i];
    if (!(a >= 0.0 && a <= 1.0 && g >= 0.0 && g <= 1.0)) {
      throw Error(ErrorCode::BadParameters,
                  "alpha/gamma entry " + std::to_string(i) + " not in [0,1]");
    }
    if (a + g > 1.0 + 1e-12) {
      throw Error(ErrorCode::BadParameters,
                  "alpha + gamma exceeds 1 at " + std::to_string(i));
    }
    if (a + g > 0.0) any_mass = true;
  }
  if (!any_mass) {
    throw Error(ErrorCode::ZeroFractionalMass, "alpha + gamma is identically 0");
  }
  return FractionalBipartition(std::move(alpha), std::move(gamma));
}

WeightedGraph::WeightedGraph(SquareMatrix w)
    : weights_(std::move(w)), volumes_(weights_.size(), 0.0) {
  for (std::size_t i = 0; i < n(); ++i) {
    const auto r = weights_.row(i);
    volumes_[i] = std::accumulate(r.begin(), r.end(), 0.0);
    if (weights_(i, i) != 0.0) loopless_ = false;
  }
}

WeightedGraph WeightedGraph::from_weights(
    const std::vector<std::vector<double>>& w) {
  return from_matrix(to_square(w));
}

WeightedGraph WeightedGraph::from_matrix(SquareMatrix w) {
  if (w.size() < 2) {
    throw Error(ErrorCode::InvalidGraph, "a weighted graph needs n >= 2");
  }
  validate_symmetric_unit(w);
  return WeightedGraph(std::move(w));
}

Graphon::Graphon(SquareMatrix k) : kernel_(std::move(k)), degrees_(m(), 0.0) {
  const double inv_m = 1.0 / static_cast<double>(m());
  bool positive_degrees = true;
  for (std::size_t i = 0; i < m(); ++i) {
    const auto r = kernel_.row(i);
    degrees_[i] = std::accumulate(r.begin(), r.end(), 0.0) * inv_m;
    if (!(degrees_[i] > 0.0)) positive_degrees = false;
  }
  // A set splitting a cell of positive degree always has positive crossing
  // mass, so cell-level support connectivity is exact for step functions.
  // For m = 1 this reduces to kernel(0,0) > 0.
  connected_ = positive_degrees && support_spans(kernel_);
}

Graphon Graphon::from_kernel(SquareMatrix kernel) {
  if (kernel.size() == 0) throw Error(ErrorCode::NonSquare, "empty kernel");
  validate_symmetric_unit(kernel);
  return Graphon(std::move(kernel));
}

Graphon build_graphon(const std::vector<std::vector<double>>& kernel) {
  return Graphon::from_kernel(to_square(kernel));
}

namespace {

SquareMatrix replicate(const SquareMatrix& a, std::size_t k) {
  const std::size_t n = a.size();
  SquareMatrix out(n * k);
  for (std::size_t p = 0; p < n * k; ++p) {
    for (std::size_t q = 0; q < n * k; ++q) out(p, q) = a(p / k, q / k);
  }
  return out;
}

}  // namespace

Graphon associated_graphon(const WeightedGraph& g, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::BadParameters, "cells per vertex must be >= 1");
  return Graphon::from_kernel(replicate(g.weights(), k));
}

Graphon refine(const Graphon& w, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::BadParameters, "refinement factor must be >= 1");
  return Graphon::from_kernel(replicate(w.kernel(), k));
}

namespace {

Graphon make_constant(const ConstantFamily& f, std::size_t m) {
  if (!(f.c >= 0.0 && f.c <= 1.0)) {
    throw Error(ErrorCode::BadParameters, "constant c must lie in [0,1]");
  }
  return Graphon::from_kernel(SquareMatrix(m, f.c));
}

Graphon make_sbm(const SbmFamily& f, std::size_t m) {
  const std::size_t blocks = f.block_sizes.size();
  if (blocks == 0 || f.block_matrix.size() != blocks) {
    throw Error(ErrorCode::BadParameters,
                "sbm needs one block_matrix row per block size");
  }
  double total = 0.0;
  for (double s : f.block_sizes) {
    if (!(s > 0.0)) throw Error(ErrorCode::BadParameters, "block sizes must be > 0");
    total += s;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::BadParameters, "block sizes must sum to 1");
  }
  SquareMatrix bm;
  try {
    bm = to_square(f.block_matrix);
    validate_symmetric_unit(bm);
  } catch (const Error& e) {
    throw Error(ErrorCode::BadParameters, std::string("block_matrix: ") + e.what());
  }

  // Cell c belongs to block b when it lies in [start_b, end_b).
  std::vector<std::size_t> block_of(m);
  double cumulative = 0.0;
  std::size_t start = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    cumulative += f.block_sizes[b];
    const double boundary = cumulative * static_cast<double>(m);
    const double rounded = std::round(boundary);
    if (std::abs(boundary - rounded) > 1e-9 * static_cast<double>(m)) {
      throw Error(ErrorCode::BlockBoundaryMisaligned,
                  "block " + std::to_string(b) + " ends at " +
                      std::to_string(boundary) + " cells");
    }
    const auto end = b + 1 == blocks ? m : static_cast<std::size_t>(rounded);
    for (std::size_t c = start; c < end; ++c) block_of[c] = b;
    start = end;
  }

  SquareMatrix kernel(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) kernel(i, j) = bm(block_of[i], block_of[j]);
  }
  return Graphon::from_kernel(std::move(kernel));
}

Graphon make_separable(std::size_t m) {
  // Cell average of x y over P_i x P_j factors into the product of midpoints.
  const double md = static_cast<double>(m);
  SquareMatrix kernel(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      kernel(i, j) = ((static_cast<double>(i) + 0.5) / md) *
                     ((static_cast<double>(j) + 0.5) / md);
    }
  }
  return Graphon::from_kernel(std::move(kernel));
}

Graphon make_grid(const GridFamily& f, std::size_t m) {
  Graphon base = build_graphon(f.kernel);
  if (m % base.m() != 0) {
    throw Error(ErrorCode::BadParameters,
                "grid resolution " + std::to_string(m) +
                    " is not a multiple of the kernel size " +
                    std::to_string(base.m()));
  }
  return m == base.m() ? base : refine(base, m / base.m());
}

}  // namespace

Graphon family(const FamilySpec& spec, std::size_t m) {
  if (m == 0) throw Error(ErrorCode::BadParameters, "grid resolution must be >= 1");
  return std::visit(
      [m](const auto& f) -> Graphon {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantFamily>) return make_constant(f, m);
        else if constexpr (std::is_same_v<T, SbmFamily>) return make_sbm(f, m);
        else if constexpr (std::is_same_v<T, SeparableFamily>) return make_separable(m);
        else return make_grid(f, m);
      },
      spec);
}

GridFunction degree(const Graphon& w) { return GridFunction(w.degrees()); }

double eta_mass(const Graphon& w, std::span<const std::size_t> a,
                std::span<const std::size_t> b) {
  check_cells(a, w.m());
  check_cells(b, w.m());
  double sum = 0.0;
  for (std::size_t i : a) {
    for (std::size_t j : b) sum += w(i, j);
  }
  const double md = static_cast<double>(w.m());
  return sum / (md * md);
}

double edge_mass(const WeightedGraph& g, std::span<const std::size_t> a,
                 std::span<const std::size_t> b) {
  check_cells(a, g.n());
  check_cells(b, g.n());
  double sum = 0.0;
  for (std::size_t i : a) {
    for (std::size_t j : b) sum += g.weight(i, j);
  }
  return sum;
}

CellSet all_cells(std::size_t m) {
  CellSet s(m);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

bool is_connected(const Graphon& w) { return w.connected(); }

bool graph_is_connected(const WeightedGraph& g) {
  return support_spans(g.weights());
}

BipartiteCheck is_bipartite_graphon(const Graphon& w) {
  const std::size_t m = w.m();
  for (std::size_t i = 0; i < m; ++i) {
    if (w(i, i) > 0.0) return {};
  }
  // 0 = uncolored, 1 = left, 2 = right. Each support component is seeded
  // from its lowest cell, which goes left.
  std::vector<int> color(m, 0);
  for (std::size_t seed = 0; seed < m; ++seed) {
    if (color[seed] != 0) continue;
    color[seed] = 1;
    std::deque<std::size_t> queue{seed};
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < m; ++j) {
        if (!(w(i, j) > 0.0)) continue;
        if (color[j] == 0) {
          color[j] = 3 - color[i];
          queue.push_back(j);
        } else if (color[j] == color[i]) {
          return {};
        }
      }
    }
  }
  CellSet left, right;
  for (std::size_t i = 0; i < m; ++i) (color[i] == 1 ? left : right).push_back(i);
  return {true, SignedPartition::make(std::move(left), std::move(right))};
}

}  // namespace graphon
