#include <algorithm>
#include <array>
#include <cmath>

#include "oscq/errors.hpp"
#include "oscq/special.hpp"

namespace oscq {

namespace {

constexpr prec_t kGuard = 32;

// Both large-argument expansions (K and Hankel P/Q) have their smallest term
// near index 2x with size about e^(-2x), so they reach 2^(-wp) once x > wp*ln2/2.
double threshold(prec_t wp) { return std::max(8.0, 0.35 * static_cast<double>(wp) + 4.0); }

// ceil(log2(1/|sin(nu*pi)|)), or 0 when sin is not small.
long sin_loss_bits(const BigReal& nu) {
  BigReal s = sin(nu * BigReal::pi(nu.prec()));
  if (s.is_zero()) return nu.prec();
  return std::max(0L, -s.exponent() + 1);
}

struct NearInteger {
  bool near;
  BigReal m;
  BigReal h;
};

NearInteger near_integer(const BigReal& nu, prec_t wp) {
  BigReal m = round(nu);
  BigReal d = nu - m;
  long hexp = -(wp / 3);
  bool near = d.is_zero() || d.exponent() < hexp;
  return {near, m, BigReal::pow2(hexp, wp)};
}

// Lagrange interpolation at t from samples at m-2h, m-h, m+h, m+2h.
template <class V, class F>
V interpolate_around_integer(const NearInteger& ni, const BigReal& t, prec_t wp, F f) {
  std::array<BigReal, 4> xs{ni.m - ni.h * 2L, ni.m - ni.h, ni.m + ni.h, ni.m + ni.h * 2L};
  V acc{};
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    BigReal l(1L, wp);
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      l *= (t - xs[j]) / (xs[i] - xs[j]);
    }
    V fi = f(xs[i].with_prec(wp));
    if (first) {
      acc = fi * l;
      first = false;
    } else {
      acc = acc + fi * l;
    }
  }
  return acc;
}

// sum_k (x/2)^(2k) / (k! Gamma(k+mu+1)) * sign^k, times (x/2)^mu.  Real x > 0.
BigReal ascending_series(const BigReal& mu, const BigReal& x, int sign, prec_t gp) {
  BigReal half = x.with_prec(gp) / 2L;
  BigReal q = half * half;
  BigReal mu_g = mu.with_prec(gp);
  BigReal t = recip_gamma(mu_g + 1L, gp);
  BigReal sum = t;
  BigReal den(gp);
  double xd = x.to_double();
  for (long k = 0;; ++k) {
    mpfr_mul(t.get(), t.get(), q.get(), MPFR_RNDN);
    mpfr_div_si(t.get(), t.get(), k + 1, MPFR_RNDN);
    mpfr_add_si(den.get(), mu_g.get(), k + 1, MPFR_RNDN);
    mpfr_div(t.get(), t.get(), den.get(), MPFR_RNDN);
    if (sign < 0) mpfr_neg(t.get(), t.get(), MPFR_RNDN);
    sum += t;
    if (static_cast<double>(k) > xd / 2.0 + 2.0 && !t.is_zero() && !sum.is_zero() &&
        t.exponent() < sum.exponent() - gp - 2)
      break;
    if (t.is_zero()) break;
  }
  return sum * pow(half, mu_g);
}

BigComplex ascending_series(const BigReal& mu, const BigComplex& z, prec_t gp) {
  BigComplex half = z.with_prec(gp) / 2L;
  BigComplex q = half * half;
  BigReal mu_g = mu.with_prec(gp);
  BigComplex t(recip_gamma(mu_g + 1L, gp));
  BigComplex sum = t;
  double zd = abs(z).to_double();
  for (long k = 0;; ++k) {
    t = t * q / ((mu_g + (k + 1)) * (k + 1));
    sum += t;
    if (t.is_zero()) break;
    if (static_cast<double>(k) > zd / 2.0 + 2.0) {
      BigReal tn = abs(t), sn = abs(sum);
      if (!sn.is_zero() && tn.exponent() < sn.exponent() - gp - 2) break;
    }
  }
  return sum * pow(half, mu_g);
}

// e^x K_nu(x) from the I_{-nu} - I_nu representation (nu not an integer).
BigReal k_scaled_series(const BigReal& nu, const BigReal& x, prec_t wp) {
  long loss = sin_loss_bits(nu);
  prec_t gp = wp + static_cast<prec_t>(std::ceil(2.9 * x.to_double())) + loss + 16;
  BigReal nu_g = nu.with_prec(gp);
  BigReal im = ascending_series(-nu_g, x, +1, gp);
  BigReal ip = ascending_series(nu_g, x, +1, gp);
  BigReal pi = BigReal::pi(gp);
  BigReal k = pi * (im - ip) / (sin(nu_g * pi) * 2L);
  return (k * exp(x.with_prec(gp))).with_prec(wp);
}

BigComplex k_scaled_series(const BigReal& nu, const BigComplex& z, prec_t wp) {
  long loss = sin_loss_bits(nu);
  prec_t gp = wp + static_cast<prec_t>(std::ceil(2.9 * abs(z).to_double())) + loss + 16;
  BigReal nu_g = nu.with_prec(gp);
  BigComplex zg = z.with_prec(gp);
  BigComplex im = ascending_series(-nu_g, zg, gp);
  BigComplex ip = ascending_series(nu_g, zg, gp);
  BigReal pi = BigReal::pi(gp);
  BigComplex k = (im - ip) * (pi / (sin(nu_g * pi) * 2L));
  return (k * exp(zg)).with_prec(wp);
}

// sqrt(pi/(2x)) sum a_k(nu)/x^k.
template <class T>
T k_scaled_asymptotic(const BigReal& nu, const T& x, prec_t wp) {
  BigReal mu = nu.with_prec(wp) * nu.with_prec(wp) * 4L;
  T inv = T(BigReal(1L, wp)) / x.with_prec(wp);
  T term(BigReal(1L, wp));
  T sum = term;
  BigReal prev_mag(1L, wp);
  for (long k = 1; k < 100000; ++k) {
    BigReal c = (mu - (2 * k - 1) * (2 * k - 1)) / (8 * k);
    if (c.is_zero()) break;
    term = term * inv * c;
    BigReal mag = abs(term);
    if (mag > prev_mag) break;  // past the smallest term
    sum = sum + term;
    if (mag.exponent() < -wp - 2) break;
    prev_mag = mag;
  }
  BigReal pi = BigReal::pi(wp);
  if constexpr (std::is_same_v<T, BigReal>) {
    return sum * sqrt(pi / (x.with_prec(wp) * 2L));
  } else {
    return sum * sqrt(BigComplex(pi) / (x.with_prec(wp) * 2L));
  }
}

// Hankel P, Q with J = sqrt(2/(pi x))(P cos chi - Q sin chi).
BesselJY jy_asymptotic(const BigReal& nu, const BigReal& x, prec_t wp) {
  BigReal mu = nu.with_prec(wp) * nu.with_prec(wp) * 4L;
  BigReal xw = x.with_prec(wp);
  BigReal inv = BigReal(1L, wp) / xw;
  BigReal p(1L, wp), q(wp), term(1L, wp), prev(1L, wp);
  for (long k = 1; k < 100000; ++k) {
    BigReal c = (mu - (2 * k - 1) * (2 * k - 1)) / (8 * k);
    if (c.is_zero()) break;
    term *= inv;
    term *= c;
    BigReal mag = abs(term);
    if (mag > prev) break;
    // a_k/x^k enters P (even k) or Q (odd k) with sign (-1)^floor(k/2)
    bool negative = (k / 2) % 2 == 1;
    if (k % 2 == 0) {
      if (negative) p -= term; else p += term;
    } else {
      if (negative) q -= term; else q += term;
    }
    if (mag.exponent() < -wp - 2) break;
    prev = mag;
  }
  BigReal pi = BigReal::pi(wp);
  BigReal chi = xw - (nu.with_prec(wp) / 2L + BigReal::ratio(1, 4, wp)) * pi;
  BigReal s(wp), c(wp);
  mpfr_sin_cos(s.get(), c.get(), chi.get(), MPFR_RNDN);
  BigReal amp = sqrt(BigReal(2L, wp) / (pi * xw));
  return {amp * (p * c - q * s), amp * (p * s + q * c)};
}

BigReal j_series(const BigReal& nu, const BigReal& x, prec_t wp, long extra) {
  prec_t gp = wp + static_cast<prec_t>(std::ceil(1.45 * x.to_double())) + extra + 16;
  return ascending_series(nu, x, -1, gp);
}

BesselJY jy_series(const BigReal& nu, const BigReal& x, prec_t wp) {
  long loss = sin_loss_bits(nu);
  BigReal jp = j_series(nu, x, wp, loss);
  BigReal jm = j_series(-nu, x, wp, loss);
  prec_t gp = jp.prec();
  BigReal nu_g = nu.with_prec(gp);
  BigReal pi = BigReal::pi(gp);
  BigReal y = (jp * cos(nu_g * pi) - jm) / sin(nu_g * pi);
  return {jp.with_prec(wp), y.with_prec(wp)};
}

BigReal k_scaled_real(const BigReal& nu, const BigReal& x, prec_t wp) {
  if (x.to_double() >= threshold(wp)) return k_scaled_asymptotic(nu, x, wp);
  NearInteger ni = near_integer(nu, wp);
  if (ni.near) {
    return interpolate_around_integer<BigReal>(ni, nu, wp, [&](const BigReal& v) { return k_scaled_series(v, x, wp); });
  }
  return k_scaled_series(nu, x, wp);
}

void require_positive(const BigReal& x, const char* what) {
  if (!x.is_finite() || x.sign() <= 0) throw DomainError(std::string(what) + ": argument must be > 0");
}

}  // namespace

double bessel_asymptotic_threshold(prec_t wp) { return threshold(wp); }

BigReal bessel_k_scaled(const BigReal& nu, const BigReal& x, prec_t prec) {
  require_positive(x, "bessel_k");
  return k_scaled_real(nu, x, prec + kGuard).with_prec(prec);
}

BigReal bessel_k(const BigReal& nu, const BigReal& x, prec_t prec) {
  require_positive(x, "bessel_k");
  prec_t wp = prec + kGuard;
  BigReal ks = k_scaled_real(nu, x, wp);
  return (ks * exp(-x.with_prec(wp))).with_prec(prec);
}

BigComplex bessel_k_scaled(const BigReal& nu, const BigComplex& z, prec_t prec) {
  if (z.is_zero() || z.re().sign() < 0) throw DomainError("bessel_k: complex argument needs Re z >= 0, z != 0");
  prec_t wp = prec + kGuard;
  if (z.im().is_zero()) return BigComplex(k_scaled_real(nu, z.re(), wp).with_prec(prec));
  if (abs(z).to_double() >= threshold(wp)) return k_scaled_asymptotic(nu, z, wp).with_prec(prec);
  NearInteger ni = near_integer(nu, wp);
  if (ni.near) {
    return interpolate_around_integer<BigComplex>(ni, nu, wp,
                                                  [&](const BigReal& v) { return k_scaled_series(v, z, wp); })
        .with_prec(prec);
  }
  return k_scaled_series(nu, z, wp).with_prec(prec);
}

BesselJY bessel_jy(const BigReal& nu, const BigReal& x, prec_t prec) {
  require_positive(x, "bessel_jy");
  prec_t wp = prec + kGuard;
  BesselJY r;
  if (x.to_double() >= threshold(wp)) {
    r = jy_asymptotic(nu, x, wp);
  } else {
    NearInteger ni = near_integer(nu, wp);
    if (ni.near) {
      BigReal j = j_series(nu, x, wp, 0);
      BigReal y = interpolate_around_integer<BigReal>(ni, nu, wp,
                                                      [&](const BigReal& v) { return jy_series(v, x, wp).y; });
      r = {j, y};
    } else {
      r = jy_series(nu, x, wp);
    }
  }
  return {r.j.with_prec(prec), r.y.with_prec(prec)};
}

BigReal bessel_j(const BigReal& nu, const BigReal& x, prec_t prec) {
  require_positive(x, "bessel_j");
  prec_t wp = prec + kGuard;
  if (x.to_double() >= threshold(wp)) return jy_asymptotic(nu, x, wp).j.with_prec(prec);
  return j_series(nu, x, wp, 0).with_prec(prec);
}

BigReal bessel_y(const BigReal& nu, const BigReal& x, prec_t prec) { return bessel_jy(nu, x, prec).y; }

}  // namespace oscq
