#include "graphon/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphon/error.hpp"

namespace graphon {
namespace {

void check_length(const Graphon& w, const GridFunction& f) {
  if (f.size() != w.m()) {
    throw Error(ErrorCode::LengthMismatch,
                "function has " + std::to_string(f.size()) +
                    " cells, graphon has " + std::to_string(w.m()));
  }
}

// Flip so the largest-magnitude component is positive.
void fix_sign(std::vector<double>& g) {
  const auto it = std::max_element(g.begin(), g.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  if (it != g.end() && *it < 0.0) {
    for (double& e : g) e = -e;
  }
}

struct TopPair {
  double value = 0.0;
  std::vector<double> vector;
  double residual = 0.0;
  std::size_t iterations = 0;
  SpectralMethod method = SpectralMethod::jacobi;
  std::vector<double> history;
};

double residual_norm(const SquareMatrix& m, const std::vector<double>& g,
                     double mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto r = m.row(i);
    double y = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) y += r[j] * g[j];
    const double d = y - mu * g[i];
    s += d * d;
  }
  return std::sqrt(s);
}

TopPair top_eigenpair(const SquareMatrix& m, const SpectralOptions& opts) {
  TopPair out;
  if (m.size() <= std::min(opts.jacobi_limit, kJacobiMaxSize)) {
    const Eigensystem es = jacobi_eigensystem(m);
    const std::size_t top = m.size() - 1;
    out.value = es.values[top];
    out.vector.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out.vector[i] = es.vectors(i, top);
    out.iterations = es.sweeps;
    out.method = SpectralMethod::jacobi;
  } else {
    PowerResult pr = power_iteration(m, opts);
    out.value = pr.value;
    out.vector = std::move(pr.vector);
    out.iterations = pr.iterations;
    out.method = SpectralMethod::power;
    out.history = std::move(pr.rayleigh_history);
  }
  fix_sign(out.vector);
  out.residual = residual_norm(m, out.vector, out.value);
  return out;
}

// Below this gap the grid eigenvector is taken to attain the value 1.
constexpr double kUnitEigenvalueSlack = 1e-12;

}  // namespace

std::string_view method_name(SpectralMethod m) {
  return m == SpectralMethod::jacobi ? "jacobi" : "power";
}

double inner_v(const Graphon& w, const GridFunction& f, const GridFunction& g) {
  check_length(w, f);
  check_length(w, g);
  double s = 0.0;
  for (std::size_t i = 0; i < w.m(); ++i) s += f[i] * g[i] * w.degree(i);
  return s / static_cast<double>(w.m());
}

double dirichlet(const Graphon& w, const GridFunction& f) {
  check_length(w, f);
  const std::size_t m = w.m();
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = f[i] - f[j];
      s += d * d * w(i, j);
    }
  }
  const double md = static_cast<double>(m);
  return s / (2.0 * md * md);
}

double antidirichlet(const Graphon& w, const GridFunction& f) {
  check_length(w, f);
  const std::size_t m = w.m();
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double p = f[i] + f[j];
      s += p * p * w(i, j);
    }
  }
  const double md = static_cast<double>(m);
  return s / (md * md);
}

double rayleigh(const Graphon& w, const GridFunction& f) {
  const double norm2 = inner_v(w, f, f);
  if (!(norm2 > 0.0)) {
    throw Error(ErrorCode::ZeroFunction, "<f,f>_v must be positive");
  }
  return dirichlet(w, f) / norm2;
}

SquareMatrix normalized_laplacian(const Graphon& w) {
  if (!is_connected(w)) throw Error(ErrorCode::NotConnected, "graphon is not connected");
  const std::size_t m = w.m();
  const double md = static_cast<double>(m);
  std::vector<double> root(m);
  for (std::size_t i = 0; i < m; ++i) root[i] = std::sqrt(w.degree(i));
  SquareMatrix out(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out(i, j) = (i == j ? 1.0 : 0.0) - w(i, j) / (md * root[i] * root[j]);
    }
  }
  return out;
}

SquareMatrix normalized_laplacian(const WeightedGraph& g) {
  if (!graph_is_connected(g)) throw Error(ErrorCode::NotConnected, "graph is not connected");
  const std::size_t n = g.n();
  std::vector<double> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(g.volume(i));
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = (i == j ? 1.0 : 0.0) - g.weight(i, j) / (root[i] * root[j]);
    }
  }
  return out;
}

SpectralResult lambda_max(const Graphon& w, const SpectralOptions& opts) {
  const SquareMatrix lap = normalized_laplacian(w);
  TopPair top = top_eigenpair(lap, opts);

  SpectralResult out;
  out.matrix_top = top.value;
  out.lambda_max = std::max(1.0, top.value);
  out.iterations = top.iterations;
  out.method = top.method;
  out.rayleigh_history = std::move(top.history);

  if (top.value >= 1.0 - kUnitEigenvalueSlack) {
    // f = sqrt(m) g / sqrt(d) has <f,f>_v = |g|^2 = 1.
    const double sm = std::sqrt(static_cast<double>(w.m()));
    GridFunction f(std::vector<double>(w.m()));
    for (std::size_t i = 0; i < w.m(); ++i) {
      f[i] = sm * top.vector[i] / std::sqrt(w.degree(i));
    }
    out.eigenfunction = std::move(f);
    out.residual = top.residual;
  } else {
    // lambda = 1 is carried by mean-zero functions, where Delta is exactly
    // the identity.
    out.residual = 0.0;
  }
  return out;
}

SpectralResult lambda_max_graph(const WeightedGraph& g, const SpectralOptions& opts) {
  const SquareMatrix lap = normalized_laplacian(g);
  TopPair top = top_eigenpair(lap, opts);

  SpectralResult out;
  out.matrix_top = top.value;
  out.lambda_max = top.value;
  out.iterations = top.iterations;
  out.method = top.method;
  out.residual = top.residual;
  out.rayleigh_history = std::move(top.history);

  GridFunction f(std::vector<double>(g.n()));
  for (std::size_t i = 0; i < g.n(); ++i) f[i] = top.vector[i] / std::sqrt(g.volume(i));
  out.eigenfunction = std::move(f);
  return out;
}

}  // namespace graphon
