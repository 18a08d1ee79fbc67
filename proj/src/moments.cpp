#include "oscq/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "oscq/errors.hpp"
#include "oscq/linalg.hpp"
#include "oscq/special.hpp"

namespace oscq {

BigReal moment(long j, const BigReal& nu, prec_t prec) {
  if (j < 0) throw DomainError("moment index must be >= 0");
  prec_t wp = prec + 32;
  BigReal nw = nu.with_prec(wp);
  BigReal den_arg = (1L - BigReal(j, wp) + nw) / 2L;
  BigReal rg = recip_gamma(den_arg, wp);
  if (rg.is_zero()) return BigReal(prec);
  BigReal num_arg = (nw + (1 + j)) / 2L;
  return (ldexp(gamma_fn(num_arg, wp), j) * rg).with_prec(prec);
}

MomentSequence moment_sequence(const BigReal& nu, long count, prec_t prec) {
  MomentSequence ms{nu.with_prec(prec), {}, prec};
  ms.values.reserve(static_cast<std::size_t>(count));
  for (long j = 0; j < count; ++j) ms.values.push_back(moment(j, nu, prec));
  return ms;
}

namespace {

Matrix<BigReal> hankel_matrix(const std::vector<BigReal>& m, long n, prec_t prec) {
  Matrix<BigReal> h(n, n, BigReal(prec));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) h(i, j) = m[i + j];
  return h;
}

double log2_of(const BigReal& x) {
  if (x.is_zero()) return -1e300;
  long e = 0;
  double d = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log2(std::fabs(d)) + static_cast<double>(e);
}

double pivot_log2_ratio(const FullPivLU<BigReal>& lu) {
  if (lu.singular()) return 1e300;
  auto [lo, hi] = lu.pivot_range();
  return log2_of(hi) - log2_of(lo);
}

// The determinant is indistinguishable from zero once the pivots span more
// than half the working precision.
void check_determinate(const FullPivLU<BigReal>& lu, long n, prec_t prec) {
  double r = pivot_log2_ratio(lu);
  if (r > static_cast<double>(prec) / 2.0) {
    throw IndeterminateError("Hankel determinant of order " + std::to_string(n) +
                                 " is indeterminate at " + std::to_string(prec) + " bits",
                             prec);
  }
}

}  // namespace

double hankel_log2_condition(long n, const BigReal& nu, prec_t prec) {
  MomentSequence ms = moment_sequence(nu, 2 * n - 1, prec);
  FullPivLU<BigReal> lu(hankel_matrix(ms.values, n, prec));
  return pivot_log2_ratio(lu);
}

BigReal hankel_det(long n, const BigReal& nu, prec_t prec) {
  if (n < 1) throw DomainError("hankel_det needs n >= 1");
  MomentSequence ms = moment_sequence(nu, 2 * n - 1, prec);
  FullPivLU<BigReal> lu(hankel_matrix(ms.values, n, prec));
  check_determinate(lu, n, prec);
  return lu.determinant();
}

std::string to_string(Variable v) { return v == Variable::RawX ? "raw_x" : "rescaled_z"; }

BigComplex MonicPolynomial::eval(const BigComplex& z) const {
  BigComplex acc(BigReal(1L, std::max(prec(), z.prec())));
  for (long k = degree - 1; k >= 0; --k) acc = acc * z + coeffs[k];
  return acc;
}

std::pair<BigComplex, BigComplex> MonicPolynomial::eval_with_derivative(const BigComplex& z) const {
  prec_t p = std::max(prec(), z.prec());
  BigComplex v(BigReal(1L, p));
  BigComplex d(p);
  for (long k = degree - 1; k >= 0; --k) {
    d = d * z + v;
    v = v * z + coeffs[k];
  }
  return {v, d};
}

MonicPolynomial MonicPolynomial::with_prec(prec_t p) const {
  MonicPolynomial q{degree, {}, variable};
  for (const auto& c : coeffs) q.coeffs.push_back(c.with_prec(p));
  return q;
}

MonicPolynomial from_roots(const std::vector<BigComplex>& roots, Variable v) {
  prec_t p = roots.empty() ? kMinPrec : roots.front().prec();
  // coefficients of prod (z - r), highest first in a scratch vector
  std::vector<BigComplex> c{BigComplex(BigReal(1L, p))};
  for (const auto& r : roots) {
    std::vector<BigComplex> next(c.size() + 1, BigComplex(p));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] = next[i] + c[i];
      next[i + 1] = next[i + 1] - c[i] * r;
    }
    c = std::move(next);
  }
  MonicPolynomial poly{static_cast<long>(roots.size()), {}, v};
  for (std::size_t k = 0; k < roots.size(); ++k) poly.coeffs.push_back(c[roots.size() - k]);
  return poly;
}

namespace {

struct SolvedOp {
  MonicPolynomial poly;
  double log2_condition;
  double log2_residual;
};

SolvedOp solve_op(long n, const BigReal& nu, prec_t prec) {
  if (n < 1) throw DomainError("monic_op needs n >= 1");
  MomentSequence ms = moment_sequence(nu, 2 * n, prec);
  FullPivLU<BigReal> lu(hankel_matrix(ms.values, n, prec));
  check_determinate(lu, n, prec);
  std::vector<BigReal> rhs;
  for (long j = 0; j < n; ++j) rhs.push_back(-ms.values[j + n]);
  std::vector<BigReal> c = lu.solve(rhs);

  // residual against moments at twice the precision
  prec_t hp = 2 * prec;
  MomentSequence mh = moment_sequence(nu, 2 * n, hp);
  double worst = -1e300;
  for (long j = 0; j < n; ++j) {
    BigReal r = mh.values[j + n];
    BigReal scale = abs(mh.values[j + n]);
    for (long k = 0; k < n; ++k) {
      BigReal t = c[k].with_prec(hp) * mh.values[j + k];
      r += t;
      scale += abs(t);
    }
    if (scale.is_zero()) continue;
    worst = std::max(worst, log2_of(abs(r) / scale));
  }
  if (worst > -static_cast<double>(prec) / 4.0) {
    throw ConvergenceError("Hankel solve residual above target at " + std::to_string(prec) + " bits",
                           std::exp2(worst));
  }
  MonicPolynomial poly{n, {}, Variable::RawX};
  for (auto& ck : c) poly.coeffs.emplace_back(ck);
  return {std::move(poly), pivot_log2_ratio(lu), worst};
}

}  // namespace

MonicPolynomial monic_op(long n, const BigReal& nu, prec_t prec) { return solve_op(n, nu, prec).poly; }

prec_t precision_cap() {
  if (const char* env = std::getenv("OSCQ_PREC_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= kMinPrec) return v;
  }
  return prec_t{1} << 20;
}

prec_t default_start_prec(long n) { return std::max<prec_t>(256, 16 * n); }

AdaptiveOp monic_op_adaptive(long n, const BigReal& nu, prec_t start, prec_t cap) {
  prec_t p = start > 0 ? start : default_start_prec(n);
  if (cap <= 0) cap = precision_cap();
  p = std::min(p, cap);
  AdaptiveOp out;
  for (;;) {
    ++out.attempts;
    try {
      SolvedOp s = solve_op(n, nu, p);
      out.poly = std::move(s.poly);
      out.prec_used = p;
      out.log2_condition = s.log2_condition;
      out.log2_residual = s.log2_residual;
      return out;
    } catch (const IndeterminateError&) {
      if (p >= cap) throw;
    } catch (const ConvergenceError&) {
      if (p >= cap) throw;
    }
    p = std::min(2 * p, cap);
  }
}

MonicPolynomial rescale_to_tilde(const MonicPolynomial& p, long n) {
  if (p.degree != n) throw DomainError("rescale_to_tilde: degree mismatch");
  if (p.variable != Variable::RawX) throw DomainError("rescale_to_tilde expects a raw-variable polynomial");
  prec_t wp = p.prec();
  BigComplex s(BigReal(wp), BigReal::pi(wp) * n);  // i n pi
  BigComplex inv = BigComplex(BigReal(1L, wp)) / s;
  MonicPolynomial q{n, std::vector<BigComplex>(static_cast<std::size_t>(n), BigComplex(wp)), Variable::RescaledZ};
  BigComplex f = inv;  // (i n pi)^(k-n) for k = n-1, n-2, ...
  for (long k = n - 1; k >= 0; --k) {
    q.coeffs[k] = p.coeffs[k] * f;
    f = f * inv;
  }
  return q;
}

BigReal k_moment(long k, const BigReal& nu, const BigReal& a, prec_t prec) {
  prec_t wp = prec + 32;
  BigReal nw = nu.with_prec(wp);
  BigReal g1 = gamma_fn((nw + (1 + k)) / 2L, wp);
  BigReal g2 = gamma_fn(((1 + k) - nw) / 2L, wp);
  return (ldexp(g1 * g2, k - 1) / pow(a.with_prec(wp), k + 1)).with_prec(prec);
}

BesselWeightRule::BesselWeightRule(long n, const BigReal& nu, long max_degree, prec_t prec)
    : n_(n), nu_(nu.with_prec(prec)), prec_(prec) {
  if (n < 1) throw DomainError("weight rule needs n >= 1");
  BigReal a = BigReal::pi(prec) * n;
  double ad = a.to_double();
  double D = static_cast<double>(std::max<long>(max_degree, 0));
  // truncation point: x^D e^(-a x) below 2^(-prec-8) relative to the D-th moment
  double log_md = log2_of(k_moment(static_cast<long>(D), nu_, a, 64)) * std::log(2.0);
  double target = -(static_cast<double>(prec) + 8.0) * std::log(2.0) + log_md;
  double X = std::max(1.0, (D + 1.0) / ad);
  while (D * std::log(X) - ad * X > target) X *= 1.25;
  cutoff_ = BigReal(X, prec);

  std::vector<BigReal> pts{BigReal(prec)};
  BigReal s = BigReal(1L, prec) / a;
  while (s < cutoff_) {
    pts.push_back(s);
    s = s * 2L;
  }
  pts.push_back(cutoff_);

  BigReal pi = BigReal::pi(prec);
  phase_ = BigComplex::polar(BigReal(1L, prec), -(nu_ * pi / 2L));
  long degs[3] = {0, static_cast<long>(D) / 2, static_cast<long>(D)};
  for (level_ = std::max(3, static_cast<int>(std::log2(static_cast<double>(prec))) - 3);; ++level_) {
    rule_ = tanh_sinh_rule(pts, level_, prec);
    kw_.clear();
    kw_.reserve(rule_.size());
    for (std::size_t i = 0; i < rule_.size(); ++i) kw_.push_back(bessel_k(nu_, a * rule_.x[i], prec) * rule_.w[i]);
    bool ok = true;
    for (long d : degs) {
      BigReal sum(prec);
      for (std::size_t i = 0; i < rule_.size(); ++i) sum += kw_[i] * pow(rule_.x[i], d);
      BigReal exact = k_moment(d, nu_, a, prec);
      if (log2_of(abs(sum - exact) / exact) > -static_cast<double>(prec) + 24.0) ok = false;
    }
    if (ok) break;
    if (level_ >= 10) throw QuadratureError("Bessel weight rule did not reach its target", 0.0);
  }
}

OrthogonalityResidual orthogonality_residual(const MonicPolynomial& pt, long j, const BesselWeightRule& rule) {
  if (pt.variable != Variable::RescaledZ) throw DomainError("orthogonality_residual expects P~_n");
  prec_t p = rule.prec();
  BigReal absint(p), mass(p);
  const auto& xs = rule.nodes();
  const auto& kw = rule.k_weights();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    BigComplex xp(xs[i]), xm(-xs[i]);
    BigReal xj = pow(xs[i], j);
    absint += (abs(pt.eval(xp)) + abs(pt.eval(xm))) * xj * kw[i];
    mass += kw[i] * 2L;
  }
  BigComplex v = rule.integrate([&](const BigComplex& x) { return pt.eval(x) * pow(x, j); });
  return {v, absint, mass};
}

OrthogonalityResidual orthogonality_residual(const MonicPolynomial& pt, long j, long n, const BigReal& nu,
                                             prec_t prec) {
  if (j < 0) throw DomainError("orthogonality_residual needs j >= 0");
  BesselWeightRule rule(n, nu, n + j, prec);
  return orthogonality_residual(pt, j, rule);
}

}  // namespace oscq
