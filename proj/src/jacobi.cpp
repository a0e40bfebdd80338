#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "graphon/error.hpp"
#include "graphon/spectral.hpp"

namespace graphon {
namespace {

constexpr std::size_t kMaxSweeps = 100;
constexpr double kOffDiagonalRatio = 1e-13;

double frobenius(const SquareMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (double v : a.row(i)) s += v * v;
  }
  return std::sqrt(s);
}

double off_diagonal(const SquareMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

// Zeroes a(p, q) by the rotation A <- J^T A J and accumulates V <- V J.
void rotate(SquareMatrix& a, SquareMatrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) /
        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.size();

  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

Eigensystem jacobi_eigensystem(const SquareMatrix& m) {
  const std::size_t n = m.size();
  if (n > kJacobiMaxSize) {
    throw Error(ErrorCode::SizeTooLarge,
                "Jacobi solver limited to " + std::to_string(kJacobiMaxSize) +
                    " rows, got " + std::to_string(n));
  }
  SquareMatrix a = m;
  SquareMatrix v = SquareMatrix::identity(n);
  const double target = kOffDiagonalRatio * frobenius(a);

  std::size_t sweep = 0;
  while (off_diagonal(a) > target) {
    if (sweep == kMaxSweeps) {
      throw Error(ErrorCode::NoConvergence, "Jacobi did not converge in " +
                                                std::to_string(kMaxSweeps) +
                                                " sweeps");
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) != 0.0) rotate(a, v, p, q);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  Eigensystem out{std::vector<double>(n), SquareMatrix(n), sweep};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> jacobi_symmetric_eigs(const SquareMatrix& m) {
  return jacobi_eigensystem(m).values;
}

PowerResult power_iteration(const SquareMatrix& m, const SpectralOptions& opts) {
  const std::size_t n = m.size();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  auto normalize = [](std::vector<double>& x) {
    double s = 0.0;
    for (double e : x) s += e * e;
    s = std::sqrt(s);
    if (s > 0.0) {
      for (double& e : x) e /= s;
    }
    return s;
  };

  PowerResult out;
  out.vector.resize(n);
  for (double& e : out.vector) e = unit(rng);
  normalize(out.vector);

  std::vector<double> y(n);
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = m.row(i);
      y[i] = std::inner_product(r.begin(), r.end(), out.vector.begin(), 0.0);
    }
    const double mu = std::inner_product(y.begin(), y.end(), out.vector.begin(), 0.0);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = y[i] - mu * out.vector[i];
      res += d * d;
    }
    res = std::sqrt(res);

    out.value = mu;
    out.residual = res;
    out.iterations = it;
    out.rayleigh_history.push_back(mu);
    if (res <= opts.tol) return out;
    // y != 0 here, otherwise mu and the residual would both be 0.
    normalize(y);
    out.vector.swap(y);
  }
  throw Error(ErrorCode::NoConvergence,
              "power iteration residual " + std::to_string(out.residual) +
                  " > tol after " + std::to_string(opts.max_iter) + " iterations");
}

}  // namespace graphon
