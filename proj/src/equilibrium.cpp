#include "oscq/equilibrium.hpp"

#include <cmath>
#include <vector>

#include "oscq/errors.hpp"

namespace oscq {

QuadOptions EquilibriumContext::quad() const {
  QuadOptions o;
  o.prec = prec;
  o.tol_bits = tol_bits > 0 ? tol_bits : prec - 24;
  o.max_level = max_level;
  return o;
}

namespace {

// psi from |t| and 1 - t^2 computed by the caller without cancellation
BigReal psi_from(const BigReal& abs_t, const BigReal& one_minus_t2) {
  BigReal s = sqrt(max(one_minus_t2, BigReal(abs_t.prec())));
  return log((s + 1L) / abs_t) / BigReal::pi(abs_t.prec());
}

// psi at a quadrature node of the piece [a, b] inside [-1, 1]
BigReal psi_node(const BigReal& t, const BigReal& a, const BigReal& b, const BigReal& da, const BigReal& db) {
  BigReal one_minus = b == 1L ? db : 1L - t;
  BigReal one_plus = a == -1L ? da : t + 1L;
  BigReal abs_t = a.is_zero() ? da : (b.is_zero() ? db : abs(t));
  return psi_from(abs_t, one_minus * one_plus);
}

std::vector<BigReal> interval_points(prec_t p, const BigReal* extra) {
  std::vector<BigReal> pts{BigReal(-1L, p), BigReal(p), BigReal(1L, p)};
  if (extra && *extra > -1L && *extra < 1L && !extra->is_zero()) {
    BigReal e = extra->with_prec(p);
    pts.insert(e < 0L ? pts.begin() + 1 : pts.begin() + 2, e);
  }
  return pts;
}

template <class F>
QuadResult<BigComplex> integrate_against_psi(F&& f, const std::vector<BigReal>& pts, const QuadOptions& opt) {
  QuadResult<BigComplex> total;
  total.value = BigComplex(opt.prec);
  total.error = BigReal(opt.prec);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const BigReal& a = pts[i];
    const BigReal& b = pts[i + 1];
    auto r = tanh_sinh<BigComplex>(
        [&](const BigReal& t, const BigReal& da, const BigReal& db) {
          return f(t, da, db, a, b) * psi_node(t, a, b, da, db);
        },
        a, b, opt);
    total.value = total.value + r.value;
    total.error = total.error + r.error;
    total.evaluations += r.evaluations;
  }
  return total;
}

// g at z, including boundary values where z is real with a signed-zero imaginary part.
BigComplex g_impl(const BigComplex& z, const EquilibriumContext& ctx) {
  QuadOptions opt = ctx.quad();
  prec_t p = opt.prec;
  BigComplex zw = z.with_prec(p);
  const BigReal* extra = nullptr;
  BigReal rz = zw.re();
  if (abs(zw.im()) < 0.25) extra = &rz;
  auto pts = interval_points(p, extra);
  auto r = integrate_against_psi(
      [&](const BigReal& t, const BigReal& da, const BigReal& db, const BigReal& a, const BigReal& b) {
        BigReal re = zw.re() - t;
        // exact distance at a breakpoint sitting at Re z
        if (a == zw.re()) re = -da;
        if (b == zw.re()) re = db;
        if (re.is_zero() && zw.im().is_zero()) return BigComplex(p);  // measure-zero node
        return log(BigComplex(re, zw.im()));
      },
      pts, opt);
  return r.value;
}

}  // namespace

BigReal psi_real(const BigReal& x) {
  if (x.is_zero()) throw DomainError("psi is singular at 0");
  BigReal ax = abs(x);
  if (ax > 1L) throw DomainError("psi is supported on [-1,1]");
  BigReal one_minus = 1L - ax;
  return psi_from(ax, one_minus * (ax + 1L));
}

BigComplex psi_complex(const BigComplex& z) {
  if (z.re().sign() <= 0) throw DomainError("psi continuation needs Re z > 0");
  if (z.im().is_zero() && z.re() > 1L) throw DomainError("psi continuation: z on the cut [1, inf)");
  prec_t p = z.prec();
  BigComplex one(BigReal(1L, p));
  BigComplex s = sqrt((one - z) * (one + z));
  return log((s + 1L) / z) / BigReal::pi(p);
}

BigComplex psi_antiderivative(const BigComplex& z) {
  if (z.re().sign() <= 0) throw DomainError("psi antiderivative needs Re z > 0");
  if (z.im().is_zero() && z.re() > 1L) throw DomainError("psi antiderivative: z on the cut [1, inf)");
  prec_t p = z.prec();
  BigComplex zw = z.with_prec(p + 32);
  BigComplex one(BigReal(1L, p + 32));
  BigComplex s = sqrt((one - zw) * (one + zw));
  BigComplex l = log((s + 1L) / zw);
  return ((zw * l + asin(zw)) / BigReal::pi(p + 32)).with_prec(p);
}

BigReal psi_cdf(const BigReal& x) {
  prec_t p = x.prec();
  if (x <= -1L) return BigReal(p);
  if (x >= 1L) return BigReal(1L, p);
  BigReal half = BigReal::ratio(1, 2, p);
  if (x.is_zero()) return half;
  BigReal a = psi_antiderivative(BigComplex(abs(x))).re();
  return x.sign() > 0 ? half + a : half - a;
}

BigReal psi_cdf_quadrature(const BigReal& x, const EquilibriumContext& ctx) {
  QuadOptions opt = ctx.quad();
  prec_t p = opt.prec;
  if (x <= -1L) return BigReal(p);
  BigReal xe = min(x.with_prec(p), BigReal(1L, p));
  std::vector<BigReal> pts{BigReal(-1L, p)};
  if (xe > 0L) pts.emplace_back(p);
  if (!xe.is_zero()) pts.push_back(xe);
  else pts.emplace_back(p);
  BigReal total(p);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const BigReal& a = pts[i];
    const BigReal& b = pts[i + 1];
    auto r = tanh_sinh<BigReal>(
        [&](const BigReal& t, const BigReal& da, const BigReal& db) { return psi_node(t, a, b, da, db); }, a, b,
        opt);
    total += r.value;
  }
  return total;
}

BigReal psi_mass(const EquilibriumContext& ctx) { return psi_cdf_quadrature(BigReal(1L, ctx.prec), ctx); }

BigComplex g_fn(const BigComplex& z, const EquilibriumContext& ctx) {
  if (z.im().is_zero() && z.re() <= 1L) throw DomainError("g is cut along (-inf, 1]");
  return g_impl(z, ctx);
}

BigComplex g_boundary(const BigReal& x, Side side, const EquilibriumContext& ctx) {
  BigReal zero(ctx.prec);
  if (side == Side::Minus) mpfr_neg(zero.get(), zero.get(), MPFR_RNDN);  // -0 selects the lower side
  return g_impl(BigComplex(x.with_prec(ctx.prec), zero), ctx);
}

BigReal log_potential(const BigReal& x, const EquilibriumContext& ctx) {
  return g_boundary(x, Side::Plus, ctx).re();
}

BigReal ell_const(prec_t prec) {
  BigReal l2 = BigReal::ln2(prec);
  return BigReal(-2L, prec) - l2 * 2L;
}

BigComplex phi_fn(const BigComplex& z, const EquilibriumContext& ctx) {
  if (z.re().is_zero()) throw DomainError("phi is not defined on the imaginary axis");
  BigComplex g = g_fn(z, ctx);
  prec_t p = g.prec();
  BigReal pi = BigReal::pi(p);
  BigComplex v = z.with_prec(p) * pi;
  if (z.re().sign() < 0) v = -v;
  return g - v / 2L - ell_const(p) / 2L;
}

BigComplex phi_imag_axis(const BigReal& y, Side side, const EquilibriumContext& ctx) {
  if (y.is_zero()) throw DomainError("phi on the imaginary axis needs y != 0");
  prec_t p = ctx.prec;
  BigComplex z(BigReal(p), y.with_prec(p));
  BigComplex g = g_fn(z, ctx);
  BigComplex half_piz = z * (BigReal::pi(p) / 2L);
  BigComplex base = g - ell_const(p) / 2L;
  return side == Side::Plus ? base + half_piz : base - half_piz;
}

BigReal re_phi_imag_axis(const BigReal& s) {
  if (s.sign() <= 0) throw DomainError("re_phi_imag_axis needs s > 0");
  BigReal r = sqrt(s * s + 1L);
  return -(s * log(s)) + s * log(r + 1L) + log(s + r);
}

namespace {
void check_theta_domain(const BigComplex& z) {
  if (z.re().sign() <= 0) throw DomainError("theta_n needs Re z > 0");
  if (z.im().is_zero() && z.re() > 1L) throw DomainError("theta_n: z on the cut [1, inf)");
}
}  // namespace

BigComplex theta_n(const BigComplex& z, long n) {
  check_theta_domain(z);
  prec_t p = z.prec();
  BigReal pi = BigReal::pi(p);
  BigComplex tail = BigComplex(BigReal::ratio(1, 2, p)) - psi_antiderivative(z);
  return tail * (pi * n) + acos(z) / 4L - pi / 4L;
}

BigComplex theta_n_quadrature(const BigComplex& z, long n, const EquilibriumContext& ctx) {
  check_theta_domain(z);
  QuadOptions opt = ctx.quad();
  prec_t p = opt.prec;
  BigComplex zw = z.with_prec(p);
  BigComplex one(BigReal(1L, p));
  BigComplex span = one - zw;
  BigReal pi = BigReal::pi(p);
  BigComplex tail(p);
  if (zw.im().is_zero()) {
    // real segment [x, 1]
    auto r = tanh_sinh<BigReal>(
        [&](const BigReal& t, const BigReal&, const BigReal& db) { return psi_from(t, db * (t + 1L)); },
        zw.re(), BigReal(1L, p), opt);
    tail = BigComplex(r.value);
  } else {
    auto r = tanh_sinh<BigComplex>(
        [&](const BigReal& tau, const BigReal&, const BigReal& db) {
          BigComplex s = zw + span * tau;
          BigComplex one_minus_s = span * db;
          BigComplex root = sqrt(one_minus_s * (s + 1L));
          return log((root + 1L) / s) * span / pi;
        },
        BigReal(p), BigReal(1L, p), opt);
    tail = r.value;
  }
  return tail * (pi * n) + acos(zw) / 4L - pi / 4L;
}

BigReal decay_integral(double alpha, long n, const EquilibriumContext& ctx) {
  QuadOptions opt = ctx.quad();
  prec_t p = opt.prec;
  BigReal a(alpha, p);
  BigReal top = exp(BigReal(-1L, p));
  double u = 1.0 / (4.0 * static_cast<double>(n) * std::log(static_cast<double>(n)));
  std::vector<BigReal> pts{BigReal(p)};
  for (double s = u / 8.0; s < top.to_double(); s *= 2.0) pts.emplace_back(s, p);
  pts.push_back(top);
  auto r = tanh_sinh_pieces<BigReal>(
      [&](const BigReal& y, const BigReal&, const BigReal&) {
        return pow(y, a) * exp(y * log(y) * (4 * n));
      },
      pts, opt);
  return r.value;
}

}  // namespace oscq
