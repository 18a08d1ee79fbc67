#pragma once

// Tanh-sinh (double exponential) quadrature on finite intervals.
//
// Nodes are generated from their distance to the nearest endpoint, so an
// integrand can evaluate singular factors like sqrt(1-x) or log(x) without
// cancellation: the callback receives (x, x-a, b-x).

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "oscq/bigfloat.hpp"
#include "oscq/errors.hpp"

namespace oscq {

struct QuadOptions {
  prec_t prec = 128;
  /// Stop when the error estimate is below 2^(-tol_bits) * max(|I|, abs_floor).
  long tol_bits = 100;
  /// Absolute floor for the relative test (0 = purely relative).
  double abs_floor = 0.0;
  int max_level = 12;
  /// Throw QuadratureError when the target is missed; otherwise return the estimate.
  bool throw_on_failure = true;
  /// Evaluate nodes that round onto a nonzero endpoint too (f must then use the
  /// exact distance arguments); by default they are dropped.
  bool keep_endpoint_nodes = false;
};

template <class T>
struct QuadResult {
  T value;
  BigReal error;  // estimated absolute error
  int level = 0;
  long evaluations = 0;
  bool converged = false;
};

/// Abscissa/weight table of the tanh-sinh rule on [-1,1] for one precision.
/// Levels are materialized on demand; each instance is used by one thread.
class TanhSinhTable {
 public:
  struct Node {
    BigReal dist;    // 1 - tanh(u): distance from the node to the nearest endpoint of [-1,1]
    BigReal weight;  // (pi/2) cosh t / cosh^2 u
  };

  explicit TanhSinhTable(prec_t prec);

  prec_t prec() const { return prec_; }
  /// Nodes with t > 0 new at this level (t = j*2^-level, j odd; level 0: t = 1,2,...).
  const std::vector<Node>& level(int k);
  const BigReal& center_weight() const { return center_weight_; }

  /// Per-thread table cached by precision.
  static TanhSinhTable& for_prec(prec_t prec);

 private:
  prec_t prec_;
  BigReal center_weight_;
  BigReal min_dist_;
  std::vector<std::vector<Node>> levels_;
};

namespace detail {

inline BigReal magnitude(const BigReal& x) { return abs(x); }
inline BigReal magnitude(const BigComplex& z) { return abs(z); }

inline double log2_mag(const BigReal& x) {
  if (x.is_zero()) return -1e300;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

}  // namespace detail

/// Nodes and weights of the composite tanh-sinh rule at one fixed level.
/// Reusing one FixedRule across many integrands avoids recomputing expensive
/// weight factors at the nodes.
struct FixedRule {
  std::vector<BigReal> x;
  std::vector<BigReal> w;
  std::vector<BigReal> dist;  // distance from x to the nearest endpoint of its piece
  std::size_t size() const { return x.size(); }
};

FixedRule tanh_sinh_rule(const std::vector<BigReal>& points, int level, prec_t prec);

/// Integrate f over [a, b] (a < b).  f(x, x-a, b-x) -> T.
template <class T, class F>
QuadResult<T> tanh_sinh(F&& f, const BigReal& a, const BigReal& b, const QuadOptions& opt) {
  const prec_t wp = opt.prec;
  TanhSinhTable& table = TanhSinhTable::for_prec(wp);
  BigReal aw = a.with_prec(wp), bw = b.with_prec(wp);
  BigReal half = (bw - aw) / 2L;
  BigReal mid = aw + half;
  // nodes closer than this to a nonzero endpoint round onto it
  auto too_close = [&](const BigReal& d, const BigReal& endpoint) {
    if (endpoint.is_zero() || opt.keep_endpoint_nodes) return false;
    return d.exponent() < endpoint.exponent() - wp + 8;
  };

  QuadResult<T> res;
  T raw = f(mid, half, half) * table.center_weight();
  res.evaluations = 1;
  std::vector<T> est;
  BigReal h(1L, wp);
  for (int k = 0; k <= opt.max_level; ++k) {
    if (k > 0) h = ldexp(h, -1);
    for (const auto& nd : table.level(k)) {
      BigReal d = half * nd.dist;
      bool skip_a = too_close(d, aw), skip_b = too_close(d, bw);
      if (!skip_a) {
        BigReal x = aw + d;
        raw = raw + f(x, d, bw - x) * nd.weight;
        ++res.evaluations;
      }
      if (!skip_b) {
        BigReal x = bw - d;
        raw = raw + f(x, x - aw, d) * nd.weight;
        ++res.evaluations;
      }
    }
    est.push_back(raw * (h * half));
    res.value = est.back();
    res.level = k;
    if (k < 2) continue;

    // error model e_k ~ e_{k-1}^2 from the last two differences (log2 scale)
    double mag = detail::log2_mag(detail::magnitude(est[k]));
    BigReal d1 = detail::magnitude(est[k] - est[k - 1]);
    BigReal d2 = detail::magnitude(est[k] - est[k - 2]);
    double err_log;
    if (d1.is_zero()) {
      err_log = -1e300;
    } else {
      double l1 = detail::log2_mag(d1);
      double l2 = d2.is_zero() ? l1 : detail::log2_mag(d2);
      err_log = 2.0 * l1;
      if (l2 < 0.0 && l1 < 0.0) err_log = std::max(err_log, l1 * l1 / l2);
      err_log = std::max(err_log, mag - static_cast<double>(wp) + 4.0);
      err_log = std::min(err_log, l1);
    }
    double scale_log = mag;
    if (opt.abs_floor > 0.0) scale_log = std::max(scale_log, std::log2(opt.abs_floor));
    res.error = err_log < -1e299 ? BigReal(64) : BigReal::pow2(static_cast<long>(std::ceil(err_log)), 64);
    if (err_log <= scale_log - static_cast<double>(opt.tol_bits)) {
      res.converged = true;
      return res;
    }
  }
  if (opt.throw_on_failure)
    throw QuadratureError("tanh-sinh quadrature did not converge", res.error.to_double());
  return res;
}

/// Sum of tanh_sinh over consecutive pieces [p0,p1], [p1,p2], ...
template <class T, class F>
QuadResult<T> tanh_sinh_pieces(F&& f, const std::vector<BigReal>& points, const QuadOptions& opt) {
  QuadResult<T> total;
  bool first = true;
  total.converged = true;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    QuadResult<T> r = tanh_sinh<T>(f, points[i], points[i + 1], opt);
    if (first) {
      total.value = r.value;
      total.error = r.error;
      first = false;
    } else {
      total.value = total.value + r.value;
      total.error = total.error + r.error;
    }
    total.level = std::max(total.level, r.level);
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  return total;
}

}  // namespace oscq
