#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "graphon/matrix.hpp"

namespace graphon {

/// Asymmetry below this is treated as serialization noise and averaged away.
inline constexpr double kSymmetryTolerance = 1e-12;

using CellSet = std::vector<std::size_t>;

/// Value of a step function on each grid cell P_i = [i/m, (i+1)/m).
struct GridFunction {
  std::vector<double> values;

  GridFunction() = default;
  explicit GridFunction(std::vector<double> v) : values(std::move(v)) {}
  GridFunction(std::initializer_list<double> v) : values(v) {}

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
};

/// Disjoint cell-index sets (L, R) with nonempty union. Stored sorted.
class SignedPartition {
 public:
  /// Throws InvalidPartition on overlap, EmptyPartition on empty union.
  static SignedPartition make(CellSet left, CellSet right);

  const CellSet& left() const noexcept { return left_; }
  const CellSet& right() const noexcept { return right_; }

  /// Lexicographic on (left, right) as sorted index sequences.
  friend auto operator<=>(const SignedPartition&,
                          const SignedPartition&) = default;
  friend bool operator==(const SignedPartition&,
                         const SignedPartition&) = default;

 private:
  SignedPartition(CellSet l, CellSet r)
      : left_(std::move(l)), right_(std::move(r)) {}
  CellSet left_;
  CellSet right_;
};

/// Fractional membership (alpha_i in L, gamma_i in R) per vertex.
class FractionalBipartition {
 public:
  /// Throws BadParameters on length/range violations and ZeroFractionalMass
  /// when alpha + gamma vanishes.
  static FractionalBipartition make(std::vector<double> alpha,
                                    std::vector<double> gamma);

  const std::vector<double>& alpha() const noexcept { return alpha_; }
  const std::vector<double>& gamma() const noexcept { return gamma_; }
  std::size_t size() const noexcept { return alpha_.size(); }

 private:
  FractionalBipartition(std::vector<double> a, std::vector<double> g)
      : alpha_(std::move(a)), gamma_(std::move(g)) {}
  std::vector<double> alpha_;
  std::vector<double> gamma_;
};

/// Symmetric weight matrix with entries in [0,1] on n >= 2 vertices.
class WeightedGraph {
 public:
  static WeightedGraph from_weights(const std::vector<std::vector<double>>& w);
  static WeightedGraph from_matrix(SquareMatrix w);

  std::size_t n() const noexcept { return weights_.size(); }
  double weight(std::size_t i, std::size_t j) const { return weights_(i, j); }
  const SquareMatrix& weights() const noexcept { return weights_; }
  bool loopless() const noexcept { return loopless_; }

  /// vol(i) = sum_j w_ij.
  double volume(std::size_t i) const { return volumes_[i]; }
  const std::vector<double>& volumes() const noexcept { return volumes_; }

 private:
  explicit WeightedGraph(SquareMatrix w);
  SquareMatrix weights_;
  std::vector<double> volumes_;
  bool loopless_ = true;
};

/// Step-function graphon: kernel(i, j) is the value of W on P_i x P_j.
/// Immutable; degrees and connectivity are computed once at construction.
class Graphon {
 public:
  /// Validates range and symmetry; repairs asymmetry up to
  /// kSymmetryTolerance by averaging.
  static Graphon from_kernel(SquareMatrix kernel);

  std::size_t m() const noexcept { return kernel_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return kernel_(i, j); }
  const SquareMatrix& kernel() const noexcept { return kernel_; }

  /// d_W on cell i, i.e. (1/m) sum_j kernel(i, j).
  double degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<double>& degrees() const noexcept { return degrees_; }
  bool connected() const noexcept { return connected_; }

 private:
  explicit Graphon(SquareMatrix k);
  SquareMatrix kernel_;
  std::vector<double> degrees_;
  bool connected_ = false;
};

// Named graphon families. Each is rendered on a uniform m-cell grid using
// the exact cell average of the target function.
struct ConstantFamily {
  double c = 0.0;
};
struct SbmFamily {
  std::vector<double> block_sizes;
  std::vector<std::vector<double>> block_matrix;
};
struct SeparableFamily {};  // W(x, y) = x y
struct GridFamily {
  std::vector<std::vector<double>> kernel;
};
using FamilySpec =
    std::variant<ConstantFamily, SbmFamily, SeparableFamily, GridFamily>;

Graphon build_graphon(const std::vector<std::vector<double>>& kernel);

/// W_G on an (k n)-cell grid: every vertex owns k consecutive cells.
Graphon associated_graphon(const WeightedGraph& g, std::size_t k);

/// Same step function on a grid with k times as many cells.
Graphon refine(const Graphon& w, std::size_t k);

/// For GridFamily, m must be a multiple of the kernel size (the kernel is
/// refined by block replication).
Graphon family(const FamilySpec& spec, std::size_t m);

GridFunction degree(const Graphon& w);

/// eta(A x B) = (1/m^2) sum_{i in A, j in B} kernel(i, j).
double eta_mass(const Graphon& w, std::span<const std::size_t> a,
                std::span<const std::size_t> b);

/// e_G(A, B) = sum_{i in A, j in B} w_ij.
double edge_mass(const WeightedGraph& g, std::span<const std::size_t> a,
                 std::span<const std::size_t> b);

CellSet all_cells(std::size_t m);

bool is_connected(const Graphon& w);
bool graph_is_connected(const WeightedGraph& g);

struct BipartiteCheck {
  bool bipartite = false;
  std::optional<SignedPartition> witness;  // covers every cell when set
};

BipartiteCheck is_bipartite_graphon(const Graphon& w);

}  // namespace graphon
