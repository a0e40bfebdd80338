#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "graphon/graphon_core.hpp"
#include "graphon/matrix.hpp"

namespace graphon {

/// Largest matrix handled by the dense Jacobi solver.
inline constexpr std::size_t kJacobiMaxSize = 512;

struct SpectralOptions {
  double tol = 1e-10;
  std::size_t max_iter = 1'000'000;
  std::uint64_t seed = 42;
  /// Matrices up to this size use Jacobi, larger ones power iteration.
  std::size_t jacobi_limit = kJacobiMaxSize;
};

enum class SpectralMethod { jacobi, power };
std::string_view method_name(SpectralMethod m);

struct SpectralResult {
  double lambda_max = 0.0;
  /// nu-normalized top eigenfunction. Absent when the top of the spectrum
  /// comes from the mean-zero complement of the step functions (value 1)
  /// and no step function on this grid attains it.
  std::optional<GridFunction> eigenfunction;
  /// Top eigenvalue of the normalized m x m (or n x n) matrix.
  double matrix_top = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  SpectralMethod method = SpectralMethod::jacobi;
  /// Rayleigh quotient per power iteration; empty for Jacobi.
  std::vector<double> rayleigh_history;
};

// <f, g>_v = (1/m) sum_i f_i g_i d_i.
double inner_v(const Graphon& w, const GridFunction& f, const GridFunction& g);

// ||df||_e^2 = (1/(2 m^2)) sum_{i,j} (f_i - f_j)^2 kernel(i, j).
double dirichlet(const Graphon& w, const GridFunction& f);

// (1/m^2) sum_{i,j} (f_i + f_j)^2 kernel(i, j).
double antidirichlet(const Graphon& w, const GridFunction& f);

/// dirichlet / inner_v. Throws ZeroFunction when inner_v(f, f) <= 0.
double rayleigh(const Graphon& w, const GridFunction& f);

/// Identity - K with K(i, j) = kernel(i, j) / (m sqrt(d_i d_j)).
/// Requires a connected graphon.
SquareMatrix normalized_laplacian(const Graphon& w);

/// Identity - D^{-1/2} w D^{-1/2} with D = diag(vol). Requires connectivity.
SquareMatrix normalized_laplacian(const WeightedGraph& g);

/// Top of the spectrum of the graphon Laplacian. The step-function subspace
/// contributes the eigenvalues of normalized_laplacian(w); its complement is
/// annihilated by T_W and contributes exactly 1.
SpectralResult lambda_max(const Graphon& w, const SpectralOptions& opts = {});

/// Largest eigenvalue of the normalized graph Laplacian.
SpectralResult lambda_max_graph(const WeightedGraph& g,
                                const SpectralOptions& opts = {});

struct Eigensystem {
  std::vector<double> values;  // ascending
  SquareMatrix vectors;        // column k pairs with values[k]
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass is at most
/// 1e-13 ||M||_F. Throws SizeTooLarge beyond kJacobiMaxSize.
Eigensystem jacobi_eigensystem(const SquareMatrix& m);
std::vector<double> jacobi_symmetric_eigs(const SquareMatrix& m);

struct PowerResult {
  double value = 0.0;
  std::vector<double> vector;  // unit 2-norm
  double residual = 0.0;
  std::size_t iterations = 0;
  std::vector<double> rayleigh_history;
};

/// Dominant eigenpair of a symmetric positive semidefinite matrix.
PowerResult power_iteration(const SquareMatrix& m, const SpectralOptions& opts);

}  // namespace graphon
