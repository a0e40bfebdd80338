#include "graphon/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "graphon/error.hpp"
#include "graphon/spectral.hpp"
#include "exact_sum.hpp"

namespace graphon {
namespace {

// Cell membership: -1 in L, +1 in R, 0 outside L u R.
std::vector<int> membership(const SignedPartition& p, std::size_t m) {
  std::vector<int> s(m, 0);
  for (std::size_t i : p.left()) {
    if (i >= m) throw Error(ErrorCode::InvalidPartition, "cell " + std::to_string(i) + " out of range");
    s[i] = -1;
  }
  for (std::size_t i : p.right()) {
    if (i >= m) throw Error(ErrorCode::InvalidPartition, "cell " + std::to_string(i) + " out of range");
    s[i] = 1;
  }
  return s;
}

struct Masses {
  double left_left = 0.0;
  double right_right = 0.0;
  double boundary = 0.0;  // S x S^c
  double incident = 0.0;  // S x I
};

// Correctly rounded sums keep symmetric partitions of constant kernels at
// exactly 1/2 instead of 1/2 up to accumulated rounding.
Masses unnormalized_masses(const SquareMatrix& a, const std::vector<int>& s) {
  detail::ExactSum left_left, right_right, boundary, incident;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] == 0) continue;
    const auto row = a.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = row[j];
      if (v == 0.0) continue;
      incident.add(v);
      if (s[j] == 0) boundary.add(v);
      else if (s[j] == s[i]) (s[i] < 0 ? left_left : right_right).add(v);
    }
  }
  return {left_left.value(), right_right.value(), boundary.value(), incident.value()};
}

// The ratio is invariant under uniform scaling of the masses, so graphs and
// graphons share this evaluation (eta = e_G / m^2).
double ratio(const Masses& ms) {
  return (2.0 * ms.left_left + 2.0 * ms.right_right + ms.boundary) /
         (2.0 * ms.incident);
}

SignedPartition partition_from_signs(const std::vector<int>& s) {
  CellSet left, right;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0) left.push_back(i);
    else if (s[i] > 0) right.push_back(i);
  }
  return SignedPartition::make(std::move(left), std::move(right));
}

// Lexicographic order of (left, right) read off two sign vectors.
bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  auto cells = [](const std::vector<int>& s, int sign) {
    CellSet out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == sign) out.push_back(i);
    }
    return out;
  };
  const auto la = cells(a, -1), lb = cells(b, -1);
  if (la != lb) return la < lb;
  return cells(a, 1) < cells(b, 1);
}

// Enumerates every nonzero s in {-1,0,1}^n. Uses
// beta = 1/2 + s^T A s / (2 sum_i s_i^2 r_i), r_i the row sums of A.
std::vector<int> exhaustive_signs(const SquareMatrix& a) {
  const std::size_t n = a.size();
  std::vector<double> rows(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (double v : a.row(i)) rows[i] += v;
  }

  std::vector<int> s(n, -1);  // odometer over {-1, 0, 1}, starting all -1
  std::vector<int> best;
  double best_value = 0.0;
  std::vector<std::size_t> support;
  support.reserve(n);

  while (true) {
    support.clear();
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (s[i] != 0) {
        support.push_back(i);
        mass += rows[i];
      }
    }
    if (!support.empty()) {
      double quad = 0.0;
      for (std::size_t i : support) {
        const auto r = a.row(i);
        double acc = 0.0;
        for (std::size_t j : support) acc += s[j] * r[j];
        quad += s[i] * acc;
      }
      const double value = 0.5 + quad / (2.0 * mass);
      if (best.empty() || value < best_value - kTieTolerance) {
        best = s;
        best_value = value;
      } else if (value <= best_value + kTieTolerance && lex_less(s, best)) {
        best = s;
        best_value = std::min(best_value, value);
      }
    }

    std::size_t k = 0;
    while (k < n && s[k] == 1) s[k++] = -1;
    if (k == n) break;
    ++s[k];
  }
  return best;
}

void check_connected(const Graphon& w) {
  if (!is_connected(w)) throw Error(ErrorCode::NotConnected, "graphon is not connected");
}

void check_connected(const WeightedGraph& g) {
  if (!graph_is_connected(g)) throw Error(ErrorCode::NotConnected, "graph is not connected");
}

double tilde_value(const WeightedGraph& g, const std::vector<double>& alpha,
                   const std::vector<double>& gamma) {
  const std::size_t n = g.n();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double si = alpha[i] + gamma[i];
    if (si == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = g.weight(i, j);
      if (w == 0.0) continue;
      const double sj = alpha[j] + gamma[j];
      num += (2.0 * alpha[i] * alpha[j] + 2.0 * gamma[i] * gamma[j] + si * (1.0 - sj)) * w;
    }
    den += si * g.volume(i);
  }
  return num / (2.0 * den);
}

// Level sets (L_t, R_t) of f for t over the attained nonzero |f| values,
// ascending. Cells only ever leave L_t u R_t as t grows, so the masses are
// updated in O(m) per departing cell. The sums are exact, hence identical to
// a from-scratch evaluation.
class LevelSweep {
 public:
  LevelSweep(const SquareMatrix& a, const GridFunction& f) : a_(a), f_(f), s_(a.size(), 0) {
    for (double v : f.values) {
      if (v != 0.0) levels_.push_back(std::abs(v));
    }
    if (levels_.empty()) throw Error(ErrorCode::ZeroFunction, "f vanishes identically");
    std::sort(levels_.begin(), levels_.end());
    levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());

    for (std::size_t i = 0; i < a.size(); ++i) s_[i] = f[i] < 0.0 ? -1 : (f[i] > 0.0 ? 1 : 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (s_[i] == 0) continue;
      const auto row = a.row(i);
      for (std::size_t j = 0; j < a.size(); ++j) {
        const double v = row[j];
        if (v == 0.0) continue;
        incident_.add(v);
        if (s_[j] == 0) boundary_.add(v);
        else if (s_[j] == s_[i]) (s_[i] < 0 ? left_left_ : right_right_).add(v);
      }
    }
  }

  double t() const { return levels_[index_]; }
  const std::vector<int>& signs() const { return s_; }

  Masses masses() const {
    return {left_left_.value(), right_right_.value(), boundary_.value(), incident_.value()};
  }

  SignedPartition partition() const { return partition_from_signs(s_); }

  /// Moves to the next level; false after the last one.
  bool next() {
    if (index_ + 1 >= levels_.size()) return false;
    const double leaving = levels_[index_++];
    for (std::size_t c = 0; c < s_.size(); ++c) {
      if (s_[c] != 0 && std::abs(f_[c]) == leaving) remove(c);
    }
    return true;
  }

 private:
  void remove(std::size_t c) {
    const int side = s_[c];
    detail::ExactSum& same = side < 0 ? left_left_ : right_right_;
    const auto row = a_.row(c);
    for (std::size_t j = 0; j < s_.size(); ++j) {
      const double v = row[j];
      if (v == 0.0) continue;
      incident_.add(-v);
      if (j == c) {
        same.add(-v);
      } else if (s_[j] == side) {
        same.add(-v);
        same.add(-v);
      } else if (s_[j] == 0) {
        boundary_.add(-v);
      }
      if (j != c && s_[j] != 0) boundary_.add(v);
    }
    s_[c] = 0;
  }

  const SquareMatrix& a_;
  const GridFunction& f_;
  std::vector<int> s_;
  std::vector<double> levels_;
  std::size_t index_ = 0;
  detail::ExactSum left_left_, right_right_, boundary_, incident_;
};

// Local search for beta_tilde over integral points. Corner c of the
// (alpha_i, gamma_i) triangle: 0 -> (0,0), 1 -> (1,0), 2 -> (0,1). Moves
// change the corners of up to kMaxJointMoves vertices at once; smaller moves
// are exhausted before larger ones are tried.
class CornerDescent {
 public:
  static constexpr std::size_t kMaxJointMoves = 4;

  CornerDescent(const WeightedGraph& g, std::vector<int> corner)
      : g_(g), corner_(std::move(corner)), alpha_(g.n()), gamma_(g.n()) {
    for (std::size_t i = 0; i < corner_.size(); ++i) place(i, corner_[i]);
    value_ = tilde_value(g_, alpha_, gamma_);
  }

  void run() {
    std::size_t k = 1;
    while (k <= kMaxJointMoves) k = improve(k) ? 1 : k + 1;
  }

  double value() const { return value_; }
  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& gamma() const { return gamma_; }

 private:
  void place(std::size_t i, int c) {
    alpha_[i] = c == 1 ? 1.0 : 0.0;
    gamma_[i] = c == 2 ? 1.0 : 0.0;
  }

  bool all_zero() const {
    return std::all_of(corner_.begin(), corner_.end(), [](int c) { return c == 0; });
  }

  // First improving move that reassigns exactly k vertices.
  bool improve(std::size_t k) {
    if (k > corner_.size()) return false;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      if (improve_on(pick)) return true;
      // Next k-combination in lexicographic order.
      std::size_t pos = k;
      while (pos > 0 && pick[pos - 1] == corner_.size() - k + pos - 1) --pos;
      if (pos == 0) return false;
      ++pick[pos - 1];
      for (std::size_t i = pos; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
  }

  bool improve_on(const std::vector<std::size_t>& pick) {
    std::vector<int> old(pick.size());
    for (std::size_t i = 0; i < pick.size(); ++i) old[i] = corner_[pick[i]];
    std::size_t assignments = 1;
    for (std::size_t i = 0; i < pick.size(); ++i) assignments *= 3;
    for (std::size_t code = 0; code < assignments; ++code) {
      bool changes_all = true;
      std::size_t rest = code;
      for (std::size_t i = 0; i < pick.size(); ++i, rest /= 3) {
        const int c = static_cast<int>(rest % 3);
        changes_all = changes_all && c != old[i];
        corner_[pick[i]] = c;
        place(pick[i], c);
      }
      if (changes_all && !all_zero()) {
        const double v = tilde_value(g_, alpha_, gamma_);
        if (v < value_ - kTieTolerance) {
          value_ = v;
          return true;
        }
      }
    }
    for (std::size_t i = 0; i < pick.size(); ++i) {
      corner_[pick[i]] = old[i];
      place(pick[i], old[i]);
    }
    return false;
  }

  const WeightedGraph& g_;
  std::vector<int> corner_;
  std::vector<double> alpha_, gamma_;
  double value_ = 0.0;
};

}  // namespace

double beta_partition(const Graphon& w, const SignedPartition& p) {
  check_connected(w);
  return ratio(unnormalized_masses(w.kernel(), membership(p, w.m())));
}

double beta_partition_graph(const WeightedGraph& g, const SignedPartition& p) {
  check_connected(g);
  return ratio(unnormalized_masses(g.weights(), membership(p, g.n())));
}

GridFunction signed_indicator(const SignedPartition& p, std::size_t m) {
  const std::vector<int> s = membership(p, m);
  return GridFunction(std::vector<double>(s.begin(), s.end()));
}

RatioReport beta_exhaustive(const Graphon& w) {
  check_connected(w);
  if (w.m() > kExhaustiveMaxSize) {
    throw Error(ErrorCode::TooLarge, "exhaustive search limited to m <= " +
                                         std::to_string(kExhaustiveMaxSize));
  }
  SignedPartition witness = partition_from_signs(exhaustive_signs(w.kernel()));
  const double beta = beta_partition(w, witness);
  return {beta, std::move(witness), std::nullopt};
}

RatioReport beta_graph_exact(const WeightedGraph& g) {
  check_connected(g);
  if (g.n() > kExhaustiveMaxSize) {
    throw Error(ErrorCode::TooLarge, "exhaustive search limited to n <= " +
                                         std::to_string(kExhaustiveMaxSize));
  }
  SignedPartition witness = partition_from_signs(exhaustive_signs(g.weights()));
  const double beta = beta_partition_graph(g, witness);
  return {beta, std::move(witness), std::nullopt};
}

double beta_tilde(const WeightedGraph& g, const FractionalBipartition& fb) {
  check_connected(g);
  if (fb.size() != g.n()) {
    throw Error(ErrorCode::LengthMismatch, "fractional bipartition has " +
                                               std::to_string(fb.size()) +
                                               " entries, graph has " +
                                               std::to_string(g.n()));
  }
  return tilde_value(g, fb.alpha(), fb.gamma());
}

FractionalSearchResult beta_wg_search(const WeightedGraph& g,
                                      std::size_t restarts,
                                      std::uint64_t seed) {
  check_connected(g);
  if (!g.loopless()) throw Error(ErrorCode::NotLoopless, "graph has self-loops");
  if (restarts == 0) throw Error(ErrorCode::BadParameters, "restarts must be >= 1");

  const std::size_t n = g.n();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> corner_dist(0, 2);
  std::uniform_int_distribution<std::size_t> vertex_dist(0, n - 1);

  std::vector<double> best_alpha, best_gamma;
  double best_value = 0.0;

  for (std::size_t r = 0; r < restarts; ++r) {
    std::vector<int> corner(n);
    for (int& c : corner) c = corner_dist(rng);
    if (std::all_of(corner.begin(), corner.end(), [](int c) { return c == 0; })) {
      corner[vertex_dist(rng)] = 1;
    }
    CornerDescent descent(g, std::move(corner));
    descent.run();
    if (best_alpha.empty() || descent.value() < best_value - kTieTolerance) {
      best_value = descent.value();
      best_alpha = descent.alpha();
      best_gamma = descent.gamma();
    }
  }
  return {best_value, FractionalBipartition::make(std::move(best_alpha),
                                                  std::move(best_gamma))};
}

std::vector<SweepPoint> threshold_sweep(const Graphon& w, const GridFunction& f) {
  check_connected(w);
  if (f.size() != w.m()) {
    throw Error(ErrorCode::LengthMismatch, "function length does not match grid");
  }
  LevelSweep sweep(w.kernel(), f);
  std::vector<SweepPoint> out;
  do {
    out.push_back({sweep.t(), ratio(sweep.masses()), sweep.partition()});
  } while (sweep.next());
  return out;
}

RatioReport threshold_rounding(const Graphon& w, const GridFunction& f) {
  const std::vector<SweepPoint> sweep = threshold_sweep(w, f);
  std::size_t best = 0;
  for (std::size_t k = 1; k < sweep.size(); ++k) {
    if (sweep[k].beta < sweep[best].beta - kTieTolerance) best = k;
  }
  return {sweep[best].beta, sweep[best].partition, sweep[best].t};
}

SweepIntegrals sweep_integral_check(const Graphon& w, const GridFunction& f) {
  if (f.size() != w.m()) {
    throw Error(ErrorCode::LengthMismatch, "function length does not match grid");
  }
  const double md = static_cast<double>(w.m());
  const double scale = 1.0 / (md * md);
  SweepIntegrals out;
  double previous = 0.0;
  LevelSweep sweep(w.kernel(), f);
  do {
    const Masses ms = sweep.masses();
    const double t = sweep.t();
    const double weight = t * t - previous * previous;
    out.num_lhs += weight * scale *
                   (2.0 * ms.left_left + 2.0 * ms.right_right + ms.boundary);
    out.den_lhs += weight * scale * 2.0 * ms.incident;
    previous = t;
  } while (sweep.next());
  const double anti = antidirichlet(w, f);
  const double norm2 = inner_v(w, f, f);
  out.num_rhs = 2.0 * std::sqrt(anti) * std::sqrt(norm2);
  out.den_rhs = 2.0 * norm2;
  return out;
}

SignedPartition doubling_partition(std::size_t level, std::size_t m) {
  if (level >= 62) throw Error(ErrorCode::GridMisaligned, "level too large");
  const std::size_t pieces = std::size_t{1} << (level + 1);
  if (m == 0 || m % pieces != 0) {
    throw Error(ErrorCode::GridMisaligned,
                "m = " + std::to_string(m) + " is not divisible by 2^" +
                    std::to_string(level + 1));
  }
  const std::size_t width = m / pieces;
  CellSet left, right;
  for (std::size_t c = 0; c < m; ++c) ((c / width) % 2 == 0 ? left : right).push_back(c);
  return SignedPartition::make(std::move(left), std::move(right));
}

std::vector<double> mixing_sequence(const Graphon& w, std::size_t levels) {
  doubling_partition(levels, w.m());  // alignment of the finest level
  check_connected(w);
  std::vector<double> out;
  out.reserve(levels + 1);
  for (std::size_t n = 0; n <= levels; ++n) {
    out.push_back(beta_partition(w, doubling_partition(n, w.m())));
  }
  return out;
}

SignedPartition split_cell_partition(std::size_t m) {
  CellSet left, right;
  for (std::size_t c = 0; c < m; ++c) {
    left.push_back(2 * c);
    right.push_back(2 * c + 1);
  }
  return SignedPartition::make(std::move(left), std::move(right));
}

}  // namespace graphon
