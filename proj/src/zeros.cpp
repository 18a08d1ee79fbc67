#include "oscq/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oscq/equilibrium.hpp"
#include "oscq/errors.hpp"

namespace oscq {

BigReal ZeroSet::max_residual() const {
  BigReal m(prec > 0 ? prec : kMinPrec);
  for (const auto& r : residuals) m = max(m, r);
  return m;
}

namespace {

std::vector<BigComplex> initial_guesses(const MonicPolynomial& p) {
  const long n = p.degree;
  const prec_t wp = p.prec();
  BigReal pi = BigReal::pi(wp);
  BigReal ax, by;
  if (p.variable == Variable::RescaledZ) {
    ax = BigReal(1.2, wp);
    by = BigReal(0.4, wp);
  } else {
    // circle through the geometric mean of the root moduli
    BigReal c0 = abs(p.coeffs[0]);
    BigReal r = c0.is_zero() ? BigReal(1L, wp) : exp(log(c0) / n);
    ax = r;
    by = r;
  }
  std::vector<BigComplex> z;
  z.reserve(static_cast<std::size_t>(n));
  // the offset keeps the start away from the real and imaginary symmetry axes
  BigReal offset = BigReal(0.7, wp) / n;
  for (long k = 0; k < n; ++k) {
    BigReal th = pi * 2L * k / n + offset;
    z.emplace_back(ax * cos(th), by * sin(th));
  }
  return z;
}

BigReal correction_scale(const BigComplex& z) { return max(BigReal(1L, z.prec()), abs(z)); }

}  // namespace

ZeroSet find_zeros(const MonicPolynomial& p, const AberthOptions& opt) {
  if (p.degree < 1) throw DomainError("find_zeros needs degree >= 1");
  const long n = p.degree;
  const prec_t wp = p.prec();
  const long tol_bits = opt.tol_bits > 0 ? opt.tol_bits : wp / 2;
  ZeroSet zs;
  zs.variable = p.variable;
  zs.prec = wp;

  if (n == 1) {
    zs.roots = {-p.coeffs[0]};
    zs.residuals = {BigReal(wp)};
    return zs;
  }

  std::vector<BigComplex> z = initial_guesses(p);
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  BigReal tol = BigReal::pow2(-tol_bits, wp);
  BigComplex one(BigReal(1L, wp));
  int sweep = 0;
  double worst = 0;
  for (; sweep < opt.max_sweeps; ++sweep) {
    bool all = true;
    worst = 0;
    for (long k = 0; k < n; ++k) {
      auto [v, d] = p.eval_with_derivative(z[k]);
      if (v.is_zero()) {
        done[k] = true;
        continue;
      }
      BigComplex newton = v / d;
      BigComplex s(wp);
      for (long j = 0; j < n; ++j)
        if (j != k) s = s + one / (z[k] - z[j]);
      BigComplex w = newton / (one - newton * s);
      z[k] = z[k] - w;
      BigReal rel = abs(newton) / correction_scale(z[k]);
      done[k] = rel < tol;
      if (!done[k]) {
        all = false;
        worst = std::max(worst, rel.to_double());
      }
    }
    if (all) break;
  }
  if (sweep == opt.max_sweeps) {
    throw ConvergenceError("Aberth iteration did not converge in " + std::to_string(opt.max_sweeps) + " sweeps",
                           worst);
  }
  zs.sweeps = sweep + 1;
  zs.roots = std::move(z);
  for (const auto& r : zs.roots) {
    auto [v, d] = p.eval_with_derivative(r);
    zs.residuals.push_back(d.is_zero() ? BigReal(wp) : abs(v / d));
  }
  return zs;
}

BigReal vieta_sum_defect(const MonicPolynomial& p, const ZeroSet& zs) {
  prec_t wp = p.prec();
  BigComplex s = p.coeffs[p.degree - 1];
  BigReal scale = max(BigReal(1L, wp), abs(s));
  for (const auto& r : zs.roots) {
    s = s + r;
    scale = max(scale, abs(r));
  }
  return abs(s) / scale;
}

BigReal vieta_product_defect(const MonicPolynomial& p, const ZeroSet& zs) {
  prec_t wp = p.prec();
  BigComplex prod(BigReal(1L, wp));
  for (const auto& r : zs.roots) prod = prod * r;
  BigComplex c0 = p.coeffs[0];
  if (p.degree % 2 == 1) c0 = -c0;
  return abs(prod - c0) / max(BigReal(1L, wp), abs(c0));
}

BigReal reflection_defect(const ZeroSet& zs) {
  BigReal worst(zs.prec > 0 ? zs.prec : kMinPrec);
  for (const auto& r : zs.roots) {
    // x -> conj x for P_n is w -> -conj w for P~_n
    BigComplex m = zs.variable == Variable::RawX ? conj(r) : -conj(r);
    BigReal best = abs(m - zs.roots.front());
    for (const auto& q : zs.roots) best = min(best, abs(m - q));
    worst = max(worst, best);
  }
  return worst;
}

double epsilon_n(long n, double nu) {
  double dn = static_cast<double>(n);
  return std::pow(dn, nu - 0.5) / std::pow(std::log(dn), nu + 0.5);
}

ZeroLineStats zero_line_stats(const ZeroSet& zs, long n, double nu, double delta) {
  if (zs.variable != Variable::RescaledZ) throw DomainError("zero_line_stats expects zeros of P~_n");
  if (!(delta > 0)) throw DomainError("zero_line_stats needs delta > 0");
  ZeroLineStats st;
  st.epsilon_n = epsilon_n(n, nu);
  prec_t wp = zs.prec > 0 ? zs.prec : kMinPrec;
  BigReal pi = BigReal::pi(wp);
  BigReal radius = BigReal(delta, wp) / pi;
  BigReal line = BigReal(nu, wp) * pi / 2L;
  BigComplex one(BigReal(1L, wp));
  for (const auto& w : zs.roots) {
    if (!(abs(w) > radius) || !(abs(w - one) > radius) || !(abs(w + one) > radius)) continue;
    // z = i n pi w  =>  Re z = -n pi Im w
    BigReal re_z = -(w.im() * pi * n);
    double dev = abs(re_z - line).to_double();
    st.max_dev = st.max_dev ? std::max(*st.max_dev, dev) : dev;
    ++st.zeros_considered;
  }
  return st;
}

TildeZeros tilde_zeros(long n, const BigReal& nu, prec_t start) {
  TildeZeros t;
  t.op = monic_op_adaptive(n, nu, start);
  t.tilde = rescale_to_tilde(t.op.poly, n);
  t.zeros = find_zeros(t.tilde);
  return t;
}

BigComplex raw_from_tilde(const BigComplex& w, long n) {
  return times_i(w) * (BigReal::pi(w.prec()) * n);
}

BigReal ecdf_vs_psi(const ZeroSet& zs) {
  if (zs.roots.empty()) throw DomainError("ecdf_vs_psi needs a nonempty zero set");
  prec_t wp = std::min<prec_t>(zs.prec > 0 ? zs.prec : kMinPrec, 256);
  std::vector<BigReal> xs;
  for (const auto& w : zs.roots) xs.push_back(w.re().with_prec(wp));
  std::sort(xs.begin(), xs.end(), [](const BigReal& a, const BigReal& b) { return a < b; });
  const long n = static_cast<long>(xs.size());
  BigReal dist(wp);
  for (long i = 0; i < n; ++i) {
    BigReal f = psi_cdf(xs[i]);
    BigReal lo = BigReal::ratio(i, n, wp), hi = BigReal::ratio(i + 1, n, wp);
    dist = max(dist, max(abs(f - lo), abs(hi - f)));
  }
  return dist;
}

}  // namespace oscq
