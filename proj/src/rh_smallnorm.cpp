#include "oscq/rh_smallnorm.hpp"

#include <cmath>
#include <vector>

#include "oscq/equilibrium.hpp"
#include "oscq/errors.hpp"
#include "oscq/quadrature.hpp"
#include "oscq/special.hpp"

namespace oscq {

CutoffChi::CutoffChi(const BigReal& e) : eps(e) {
  if (!(e > 0L)) throw DomainError("cutoff needs eps > 0");
}

CutoffChi CutoffChi::standard(prec_t prec) { return CutoffChi(BigReal(kDefaultEps, prec)); }

BigReal CutoffChi::operator()(const BigReal& y) const {
  prec_t p = std::max(y.prec(), eps.prec());
  BigReal t = (abs(y) - eps) / eps;
  if (t <= 0L) return BigReal(1L, p);
  if (t >= 1L) return BigReal(p);
  BigReal one(1L, p);
  BigReal a = exp(-(one / t));
  BigReal b = exp(-(one / (one - t)));
  return one - a / (a + b);
}

namespace {

void check_y(const BigReal& y) {
  if (!(y > 0L)) throw DomainError("needs y > 0");
}

struct JPair {
  BigReal j1, j2;
};

// |j1(iy)| = 4 e^{-2n Re phi}/(sqrt(2n) pi) |J cos nu pi - Y sin nu pi|/(J^2+Y^2), |j2(-iy)| with |J|
JPair j_pair(const BigReal& y, const BigReal& rephi, long n, const BigReal& nu, prec_t prec) {
  BigReal pi = BigReal::pi(prec);
  auto jy = bessel_jy(nu, y.with_prec(prec) * pi * n, prec);
  BigReal np = nu.with_prec(prec) * pi;
  BigReal pre = exp(-(rephi * (2 * n))) * 4L / (sqrt(BigReal(2 * n, prec)) * pi);
  BigReal m = jy.j * jy.j + jy.y * jy.y;
  return {pre * abs(jy.j * cos(np) - jy.y * sin(np)) / m, pre * abs(jy.j) / m};
}

}  // namespace

BigReal j1_modulus(const BigReal& y, long n, const BigReal& nu, prec_t prec) {
  check_y(y);
  return j_pair(y, re_phi_imag_axis(y.with_prec(prec)), n, nu, prec).j1;
}

BigReal j2_modulus(const BigReal& y, long n, const BigReal& nu, prec_t prec) {
  check_y(y);
  return j_pair(y, re_phi_imag_axis(y.with_prec(prec)), n, nu, prec).j2;
}

namespace {

// e^{nu pi i/2} e^{-2n phi_-}/W_- - e^{-nu pi i/2} e^{-2n phi_+}/W_+ at z = i y
BigComplex j_combination(const BigReal& y, long n, const BigReal& nu, prec_t prec) {
  EquilibriumContext ctx;
  ctx.prec = prec;
  BigComplex phm = phi_imag_axis(y, Side::Minus, ctx);
  BigComplex php = phi_imag_axis(y, Side::Plus, ctx);
  BigComplex wm = w_weight_imag_axis(y, Side::Minus, n, nu, prec);
  BigComplex wp = w_weight_imag_axis(y, Side::Plus, n, nu, prec);
  BigReal half_phase = nu.with_prec(prec) * BigReal::pi(prec) / 2L;
  BigReal one(1L, prec);
  BigComplex em = BigComplex::polar(one, half_phase) * exp(phm * (-2 * n)) / wm;
  BigComplex ep = BigComplex::polar(one, -half_phase) * exp(php * (-2 * n)) / wp;
  return em - ep;
}

}  // namespace

BigComplex j1_direct(const BigReal& y, long n, const BigReal& nu, prec_t prec) {
  check_y(y);
  return j_combination(y.with_prec(prec), n, nu, prec);
}

BigComplex j2_direct(const BigReal& y, long n, const BigReal& nu, prec_t prec) {
  check_y(y);
  return -j_combination(-y.with_prec(prec), n, nu, prec);
}

BesselRatioCheck bessel_ratio_bounds_check(const BigReal& s, const BigReal& nu, prec_t prec) {
  if (!(s > 0L)) throw DomainError("bessel_ratio_bounds_check needs s > 0");
  BigReal sw = s.with_prec(prec);
  BigReal nw = nu.with_prec(prec);
  BigReal pi = BigReal::pi(prec);
  auto jy = bessel_jy(nw, sw, prec);
  BigReal m = jy.j * jy.j + jy.y * jy.y;
  BigReal one(1L, prec);
  BigReal half = BigReal::ratio(1, 2, prec);
  BesselRatioCheck out;
  out.lhs1 = abs(jy.j * cos(nw * pi) - jy.y * sin(nw * pi)) / m;
  out.lhs2 = abs(jy.j) / m;
  BigReal common = one + pow(sw, one - nw * 2L);
  out.rhs1 = pow(sw, nw) * common / (one + pow(sw, half - nw));
  out.rhs2 = pow(sw, nw * 3L) * common / (one + pow(sw, half + nw));
  return out;
}

namespace {

struct EtaPair {
  BigReal eta1, eta2, rephi, d1_sq;
};

// |eta1(iy)| and |eta2(-iy)| for y > 0
EtaPair eta_pair(const BigReal& y, const CutoffChi& chi, const SzegoD1& d1) {
  const prec_t p = d1.prec();
  const long n = d1.n();
  const BigReal& nu = d1.nu();
  BigReal yw = y.with_prec(p);
  EtaPair e;
  e.rephi = re_phi_imag_axis(yw);
  BigComplex z(BigReal(p), yw);
  e.d1_sq = norm(d1(z));  // |D1(-iy)| = |D1(iy)|
  BigReal c = chi(yw);
  if (c.is_zero()) {
    e.eta1 = BigReal(p);
    e.eta2 = BigReal(p);
    return e;
  }
  JPair j = j_pair(yw, e.rephi, n, nu, p);
  BigReal d2u = norm(d2(z, nu));
  BigReal d2l = norm(d2(conj(z), nu));
  e.eta1 = j.j1 * e.d1_sq * d2u * c;
  e.eta2 = j.j2 * e.d1_sq * d2l * c;
  return e;
}

}  // namespace

EtaBoundCheck eta_bound_check(const BigReal& y, const CutoffChi& chi, const SzegoD1& d1) {
  if (!(y > 0L) || y > kRho) throw DomainError("eta_bound_check needs 0 < y <= rho");
  const prec_t p = d1.prec();
  const long n = d1.n();
  BigReal nu = d1.nu().with_prec(p);
  BigReal yw = y.with_prec(p);
  EtaPair e = eta_pair(yw, chi, d1);
  BigReal decay = exp(-(e.rephi * (2 * n)));
  BigReal one(1L, p);
  BigReal half = BigReal::ratio(1, 2, p);
  BigReal nr(n, p);
  EtaBoundCheck out;
  out.eta1_mod = e.eta1;
  out.eta2_mod = e.eta2;
  out.bound1 = pow(yw, nu) * decay;
  out.bound2 = (pow(nr, nu * 2L) * pow(yw, nu) + nr * pow(yw, one - nu)) * decay;
  out.d1_sq = e.d1_sq;
  out.d1_shape = pow(nr, half - nu) * pow(yw, -nu) / (one + pow(nr * yw, half - nu));
  return out;
}

KNormBounds k_norm_bounds(const SzegoD1& d1, const CutoffChi& chi, const KNormOptions& opt) {
  const prec_t p = d1.prec();
  const BigReal& nu = d1.nu();
  if (!(nu > 0L)) throw DomainError("k_norm_bounds needs nu > 0");
  QuadOptions q;
  q.prec = p;
  q.tol_bits = opt.tol_bits;
  q.max_level = 10;
  BigReal eps = chi.eps.with_prec(p);
  BigReal y0(opt.y_min, p);
  std::vector<BigReal> pts{y0};
  while (pts.back() * 2L < eps) pts.push_back(pts.back() * 2L);
  pts.push_back(eps);
  pts.push_back(eps * 2L);
  KNormBounds out;
  // both integrals in one pass: real part eta1, imaginary part eta2
  auto r = tanh_sinh_pieces<BigComplex>(
      [&](const BigReal& y, const BigReal&, const BigReal&) {
        EtaPair e = eta_pair(y, chi, d1);
        ++out.evaluations;
        return BigComplex(e.eta1 * e.eta1 / y, e.eta2 * e.eta2 / y);
      },
      pts, q);
  // below y0: |eta|^2 ~ A y^{2 nu}, so int_0^{y0} |eta|^2/y = |eta(y0)|^2/(2 nu)
  EtaPair e0 = eta_pair(y0, chi, d1);
  BigReal two_nu = nu.with_prec(p) * 2L;
  BigReal i1 = r.value.re() + e0.eta1 * e0.eta1 / two_nu;
  BigReal i2 = r.value.im() + e0.eta2 * e0.eta2 / two_nu;
  out.k1_bound = sqrt(i1);
  out.k2_bound = sqrt(i2);
  out.product = out.k1_bound * out.k2_bound;
  return out;
}

KNormBounds k_norm_bounds(long n, const BigReal& nu, const CutoffChi& chi, const KNormOptions& opt) {
  if (n < 2) throw DomainError("k_norm_bounds needs n >= 2");
  D1Options o;
  o.prec = opt.prec;
  o.y_min = std::min(o.y_min, opt.y_min / 4);
  SzegoD1 d1(n, nu, o);
  return k_norm_bounds(d1, chi, opt);
}

}  // namespace oscq
