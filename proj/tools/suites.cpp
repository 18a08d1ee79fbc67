#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cli.hpp"
#include "oscq/equilibrium.hpp"
#include "oscq/errors.hpp"
#include "oscq/parametrix.hpp"
#include "oscq/quadrule.hpp"
#include "oscq/rh_smallnorm.hpp"
#include "oscq/zeros.hpp"

namespace oscq::cli {

namespace {

Check le(std::string name, double measured, double threshold, std::optional<long> n = {}) {
  return {std::move(name), n, measured, threshold, measured <= threshold};
}

double d(const BigReal& x) { return x.to_double(); }

double pow2d(double e) { return std::ldexp(1.0, static_cast<int>(e)); }

// values[k] <= 3 C scale[k] with C fitted at k = 0
void fit_and_check(std::vector<Check>& out, const std::string& name, const std::vector<long>& ns,
                   const std::vector<double>& values, const std::vector<double>& scale) {
  if (values.empty()) return;
  double c = values[0] / scale[0];
  for (std::size_t k = 0; k < values.size(); ++k) out.push_back(le(name, values[k], 3 * c * scale[k], ns[k]));
}

void decreasing(std::vector<Check>& out, const std::string& name, const std::vector<long>& ns,
                const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    Check c{name, ns[k], v[k], v[k - 1], v[k] < v[k - 1]};
    out.push_back(c);
  }
}

}  // namespace

std::vector<Check> suite_equilibrium(prec_t prec) {
  std::vector<Check> out;
  EquilibriumContext ctx;
  ctx.prec = prec;
  BigReal pi = BigReal::pi(prec);
  BigReal ell = ell_const(prec);
  out.push_back(le("psi_mass", d(abs(psi_mass(ctx) - 1L)), 1e-30));
  out.push_back(le("psi_cdf_at_1", d(abs(psi_cdf(BigReal(1L, prec)) - 1L)), 1e-30));
  BigReal x3(0.3, prec);
  out.push_back(le("psi_cdf_quadrature_vs_closed", d(abs(psi_cdf_quadrature(x3, ctx) - psi_cdf(x3))), 1e-30));
  out.push_back(le("ell_constant", d(abs(ell + 2L + BigReal::ln2(prec) * 2L)), 1e-30));
  for (double x : {-0.7, -0.3, 0.3, 0.7}) {
    BigReal xr(x, prec);
    BigReal v = log_potential(xr, ctx) * 2L - pi * abs(xr) - ell;
    out.push_back(le("variational_equality x=" + std::to_string(x).substr(0, 4), d(abs(v)), 1e-25));
  }
  for (double x : {1.2, 1.5, 2.0, 3.0}) {
    BigReal xr(x, prec);
    BigReal v = log_potential(xr, ctx) * 2L - pi * abs(xr) - ell;
    Check c{"variational_inequality x=" + std::to_string(x).substr(0, 3), {}, d(v), 0.0, v < 0L};
    out.push_back(c);
  }
  BigReal m2(-2L, prec);
  BigComplex jump = g_boundary(m2, Side::Plus, ctx) - g_boundary(m2, Side::Minus, ctx);
  out.push_back(le("g_jump_2pi_i x=-2", d(abs(jump - BigComplex(BigReal(prec), pi * 2L))), 1e-25));
  for (double s : {0.05, 0.1, 0.3}) {
    BigReal sr(s, prec);
    BigReal q = phi_imag_axis(sr, Side::Minus, ctx).re();
    out.push_back(le("re_phi_imag_axis s=" + std::to_string(s).substr(0, 4), d(abs(q - re_phi_imag_axis(sr))), 1e-25));
  }
  for (double s : {0.1, 0.3}) {
    BigReal sr(s, prec);
    BigComplex jp = phi_imag_axis(sr, Side::Plus, ctx) - phi_imag_axis(sr, Side::Minus, ctx);
    BigComplex piz(BigReal(prec), pi * sr);
    out.push_back(le("phi_jump_pi_z s=" + std::to_string(s).substr(0, 3), d(abs(jp - piz)), 1e-25));
  }
  BigComplex z(0.5, 0.05, prec);
  out.push_back(le("theta_closed_vs_quadrature", d(abs(theta_n(z, 10) - theta_n_quadrature(z, 10, ctx))), 1e-25));
  return out;
}

std::vector<Check> suite_parametrix(const NuArg& nua, const std::vector<long>& ns, prec_t prec) {
  std::vector<Check> out;
  BigReal nu = nua.at(prec);
  const double tight = pow2d(-static_cast<double>(prec) + 20);
  const double half = pow2d(-static_cast<double>(prec) / 2);

  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double det_err = 0, form_err = 0;
  for (int k = 0; k < 64; ++k) {
    double re = u(rng), im = u(rng);
    if (std::abs(im) < 0.05) im = im < 0 ? -0.05 : 0.05;
    BigComplex z(re, im, prec);
    Mat2 b = n0_matrix(z);
    det_err = std::max(det_err, d(abs(det(b) - 1L)));
    form_err = std::max(form_err, d(max_abs_diff(b, n0_matrix_f(z))));
  }
  out.push_back(le("n0_det_one", det_err, tight));
  out.push_back(le("n0_beta_vs_f_form", form_err, tight));
  for (double x : {-0.6, 0.3}) {
    BigReal xr(x, prec);
    Mat2 m = n0_boundary(xr, Side::Minus);
    BigComplex zero(prec);
    Mat2 j{{{zero, BigComplex(BigReal(1L, prec))}, {BigComplex(BigReal(-1L, prec)), zero}}};
    out.push_back(le("n0_jump x=" + std::to_string(x).substr(0, 4),
                     d(max_abs_diff(n0_boundary(xr, Side::Plus), m * j)), tight));
  }
  {
    Mat2 big = n0_matrix(BigComplex(0.0, 1e6, prec));
    BigComplex zero(prec), one(BigReal(1L, prec));
    Mat2 id{{{one, zero}, {zero, one}}};
    out.push_back(le("n0_normalised_at_infinity", d(max_abs_diff(big, id)), 1e-5));
  }
  for (double x : {-3.0, -1.5, 1.5, 3.0}) {
    BigComplex z(x, 0.0, prec);
    out.push_back(le("d2_unimodular x=" + std::to_string(x).substr(0, 4), d(abs(abs(d2(z, nu)) - 1L)), tight));
  }
  for (double x : {-0.5, 0.5}) {
    BigReal xr(x, prec);
    BigComplex prod = d2_boundary(xr, Side::Plus, nu) * d2_boundary(xr, Side::Minus, nu);
    // e^{-nu pi i/2} on (0,1), e^{+nu pi i/2} on (-1,0)
    BigComplex target = BigComplex::polar(BigReal(1L, prec), nu * BigReal::pi(prec) / (x > 0 ? -2L : 2L));
    out.push_back(le("d2_boundary_product x=" + std::to_string(x).substr(0, 4), d(abs(prod - target)), tight));
  }
  for (auto [re, im] : {std::pair{0.5, 0.05}, {0.5, -0.05}, {-0.5, 0.05}, {-0.5, -0.05}}) {
    BigComplex z(re, im, prec);
    out.push_back(le("d2_psi_consistency", d(d2_psi_consistency(z, nu)), half));
  }

  // D1 per n
  std::vector<double> dinf;
  BigReal target = pow(BigReal(2L, prec), BigReal::ratio(1, 4, prec));
  for (std::size_t k = 0; k < ns.size(); ++k) {
    long n = ns[k];
    D1Options o;
    o.prec = prec;
    SzegoD1 d1(n, nu, o);
    dinf.push_back(d(abs(d1.d_infty() - target)));
    if (k != 0) continue;
    double prod_err = 0;
    for (double x : {-0.8, -0.5, -0.2, 0.2, 0.5, 0.8}) {
      BigReal xr(x, prec);
      BigComplex w(exp(log_w_weight(xr, n, nu, prec)));
      BigComplex pp = d1.boundary(xr, Side::Plus) * d1.boundary(xr, Side::Minus);
      prod_err = std::max(prod_err, d(abs(pp / w - BigComplex(BigReal(1L, prec)))));
    }
    out.push_back(le("d1_boundary_product_equals_w", prod_err, half, n));
    double lim_err = 0, eta = 1e-10;
    for (double x : {-0.8, 0.4, 0.8}) {
      BigReal xr(x, prec);
      BigComplex bp = d1.boundary(xr, Side::Plus);
      BigComplex off = d1(BigComplex(x, eta, prec));
      lim_err = std::max(lim_err, d(abs(off - bp) / abs(bp)));
    }
    out.push_back(le("d1_boundary_is_limit", lim_err, 100 * eta, n));
    BigComplex far = d1(BigComplex(0.0, 1e8, prec));
    out.push_back(le("d1_tends_to_d_infty", d(abs(far / d1.d_infty() - BigComplex(BigReal(1L, prec)))), 1e-6, n));
    BigComplex z2(0.0, 2.0, prec);
    Check same{"d1n_bit_identical_to_table", n, 0, 0, d1n(z2, n, nu, prec) == d1(z2)};
    same.measured = same.pass ? 0 : 1;
    out.push_back(same);
    AsymptoticPrediction a = outer_eval(BigComplex(0.5, 0.8, prec), n, nu, prec);
    AsymptoticPrediction b = outer_eval(BigComplex(-0.5, 0.8, prec), n, nu, prec);
    // P~_n(-conj z) = (-1)^n conj P~_n(z)
    BigComplex mirrored = n % 2 == 0 ? conj(a.value) : -conj(a.value);
    out.push_back(le("outer_reflection_symmetry", d(abs(b.value - mirrored) / abs(a.value)), half, n));
  }
  std::vector<double> scale;
  for (long n : ns) scale.push_back(std::log(static_cast<double>(n)) / static_cast<double>(n));
  fit_and_check(out, "d_infty_minus_2^(1/4)_vs_log(n)/n", ns, dinf, scale);
  decreasing(out, "d_infty_minus_2^(1/4)_decreasing", ns, dinf);
  return out;
}

std::vector<Check> suite_smallnorm(const NuArg& nua, const std::vector<long>& ns, prec_t prec) {
  std::vector<Check> out;
  BigReal nu = nua.at(prec);
  if (!(nu > 0L)) throw DomainError("smallnorm suite needs nu > 0");
  const double half = pow2d(-static_cast<double>(prec) / 2);
  CutoffChi chi = CutoffChi::standard(prec);
  {
    BigReal e = chi.eps;
    bool ok = chi(e / 2L) == 1L && chi(e) == 1L && chi(e * 2L) == 0L && chi(e * 3L) == 0L;
    BigReal prev(2L, prec);
    for (int k = 0; k <= 200; ++k) {
      BigReal v = chi(e + e * BigReal::ratio(k, 200, prec));
      ok = ok && v >= 0L && v <= 1L && v <= prev;
      prev = v;
    }
    Check c{"cutoff_profile", {}, ok ? 0.0 : 1.0, 0.0, ok};
    out.push_back(c);
  }
  for (double y : {0.05, 0.2}) {
    BigReal yr(y, prec);
    long n = ns.front();
    double e1 = d(abs(abs(j1_direct(yr, n, nu, prec)) / j1_modulus(yr, n, nu, prec) - 1L));
    double e2 = d(abs(abs(j2_direct(yr, n, nu, prec)) / j2_modulus(yr, n, nu, prec) - 1L));
    out.push_back(le("j1_closed_form y=" + std::to_string(y).substr(0, 4), e1, half, n));
    out.push_back(le("j2_closed_form y=" + std::to_string(y).substr(0, 4), e2, half, n));
  }
  std::vector<double> k1s, k2s, prods, eta1, sc1, sc2, one;
  KNormOptions ko;
  ko.prec = prec;
  D1Options o;
  o.prec = prec;
  for (long n : ns) {
    SzegoD1 d1(n, nu, o);
    KNormBounds kb = k_norm_bounds(d1, chi, ko);
    double dn = static_cast<double>(n), ln = std::log(dn), v = nua.value();
    k1s.push_back(d(kb.k1_bound));
    k2s.push_back(d(kb.k2_bound));
    prods.push_back(d(kb.product));
    // k1 ~ (n log n)^{-nu}, k2 ~ (n/log n)^{nu}
    sc1.push_back(std::pow(dn * ln, -v));
    sc2.push_back(std::pow(dn / ln, v));
    double worst = 0;
    for (int k = 1; k <= 12; ++k) {
      EtaBoundCheck eb = eta_bound_check(BigReal(0.02 * k, prec), chi, d1);
      worst = std::max(worst, d(eb.eta1_mod / eb.bound1));
    }
    eta1.push_back(worst);
    one.push_back(1.0);
  }
  fit_and_check(out, "k1_bound_vs_(n log n)^-nu", ns, k1s, sc1);
  fit_and_check(out, "k2_bound_vs_(n/log n)^nu", ns, k2s, sc2);
  decreasing(out, "k1k2_product_decreasing", ns, prods);
  fit_and_check(out, "eta1_over_bound_max_y<=0.24", ns, eta1, one);
  return out;
}

std::vector<Check> suite_quadrature(const NuArg& nua, const std::vector<long>& ns, prec_t prec) {
  std::vector<Check> out;
  for (long n : ns) {
    QuadratureRule r = gauss_rule(n, nua.at(kNuPrec), prec);
    double wp = static_cast<double>(r.prec);
    out.push_back(le("exactness_report", d(r.exactness_report), std::pow(10.0, -0.15 * wp), n));
    out.push_back(le("weight_symmetry", d(weight_symmetry_defect(r)), pow2d(-wp / 2), n));
  }
  return out;
}

std::vector<Check> suite_zeros(const NuArg& nua, const std::vector<long>& ns, prec_t prec) {
  std::vector<Check> out;
  const double v = nua.value();
  std::vector<double> line, eps, ks;
  std::vector<long> line_ns;
  for (long n : ns) {
    TildeZeros t = tilde_zeros(n, nua.at(kNuPrec), prec);
    const double wp = static_cast<double>(t.op.prec_used);
    const double q = pow2d(-wp / 4);
    out.push_back(le("newton_residual", d(t.zeros.max_residual()), q, n));
    out.push_back(le("vieta_sum", d(vieta_sum_defect(t.tilde, t.zeros)), q, n));
    out.push_back(le("vieta_product", d(vieta_product_defect(t.tilde, t.zeros)), q, n));
    out.push_back(le("conjugate_symmetry", d(reflection_defect(t.zeros)), q, n));
    if (v == 0.0) {
      BigReal m(t.op.prec_used);
      for (const auto& w : t.zeros.roots) m = max(m, abs(raw_from_tilde(w, n).re()));
      out.push_back(le("imaginary_axis_law", d(m), 1e-20, n));
    }
    if (n >= 2) ks.push_back(d(ecdf_vs_psi(t.zeros)));
    ZeroLineStats st = zero_line_stats(t.zeros, n, v, 0.2);
    if (v > 0 && st.max_dev) {
      line.push_back(*st.max_dev);
      eps.push_back(st.epsilon_n);
      line_ns.push_back(n);
    }
  }
  fit_and_check(out, "zero_line_dev_vs_eps_n", line_ns, line, eps);
  std::vector<long> ks_ns(ns.end() - static_cast<long>(ks.size()), ns.end());
  decreasing(out, "ks_distance_decreasing", ks_ns, ks);
  return out;
}

}  // namespace oscq::cli
