#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oscq/equilibrium.hpp"

using namespace oscq;

namespace {

constexpr prec_t P = 192;

EquilibriumContext ctx() {
  EquilibriumContext c;
  c.prec = P;
  return c;
}

double dd(const BigReal& x) { return x.to_double(); }

}  // namespace

TEST_CASE("psi on the real line") {
  BigReal pi = BigReal::pi(P);
  CHECK(psi_real(BigReal(1L, P)).is_zero());
  CHECK(psi_real(BigReal(-1L, P)).is_zero());
  BigReal half(0.5, P);
  BigReal expect = log(sqrt(BigReal(3L, P)) + 2L) / pi;
  CHECK(dd(abs(psi_real(half) - expect)) < 1e-50);
  BigReal tiny("1e-9", P);
  double approx = (std::log(2.0) + 9 * std::log(10.0)) / M_PI;
  CHECK(dd(psi_real(tiny)) == doctest::Approx(approx).epsilon(1e-6));
}

TEST_CASE("psi continuation") {
  BigReal half(0.5, P);
  CHECK(dd(abs(psi_complex(BigComplex(half)) - BigComplex(psi_real(half)))) < 1e-50);
  BigComplex a = psi_complex(BigComplex(0.5, 0.5, P)), b = psi_complex(BigComplex(0.5, -0.5, P));
  CHECK(dd(abs(a - conj(b))) < 1e-50);
  CHECK(dd(abs(psi_complex(BigComplex(1.0 - 1e-30, 0.0, P)))) < 1e-14);
}

TEST_CASE("psi CDF") {
  auto c = ctx();
  CHECK(psi_cdf(BigReal(-1L, P)).is_zero());
  CHECK(dd(abs(psi_cdf(BigReal(0L, P)) - BigReal::ratio(1, 2, P))) < 1e-50);
  CHECK(dd(abs(psi_cdf(BigReal(1L, P)) - 1L)) < std::ldexp(1.0, -static_cast<int>(P) / 4));
  CHECK(dd(abs(psi_mass(c) - 1L)) < 1e-30);
  for (double x : {-0.6, 0.1, 0.8}) {
    BigReal xr(x, P);
    CHECK(dd(abs(psi_cdf_quadrature(xr, c) - psi_cdf(xr))) < 1e-30);
  }
}

TEST_CASE("ell") { CHECK(dd(ell_const(P)) == doctest::Approx(-3.38629436112).epsilon(1e-11)); }

TEST_CASE("g: far field, real values and the jump") {
  auto c = ctx();
  BigComplex big(0.0, 1e6, P);
  CHECK(dd(abs(g_fn(big, c) - log(big))) < 1e-5);
  BigComplex two(BigReal(2L, P));
  BigComplex g2 = g_fn(two, c);
  CHECK(dd(abs(g2.im())) < 1e-40);
  BigReal pi = BigReal::pi(P);
  BigComplex rhs = BigComplex((ell_const(P) + pi * 2L) / 2L) + phi_fn(two, c);
  CHECK(dd(abs(g2 - rhs)) < 1e-40);
  BigReal m2(-2L, P);
  BigComplex jump = g_boundary(m2, Side::Plus, c) - g_boundary(m2, Side::Minus, c);
  CHECK(dd(abs(jump - BigComplex(BigReal(P), pi * 2L))) < 1e-25);
}

TEST_CASE("variational conditions") {
  auto c = ctx();
  BigReal pi = BigReal::pi(P), ell = ell_const(P);
  for (double x : {-0.7, -0.3, 0.3, 0.7}) {
    BigReal xr(x, P);
    BigComplex s = g_boundary(xr, Side::Plus, c) + g_boundary(xr, Side::Minus, c);
    CHECK(dd(abs(s.re() - pi * abs(xr) - ell)) < 1e-25);
  }
  for (double x : {1.1, 2.0, 4.0}) {
    BigReal xr(x, P);
    CHECK(log_potential(xr, c) * 2L - pi * xr - ell < 0L);
  }
}

TEST_CASE("phi") {
  auto c = ctx();
  BigReal pi = BigReal::pi(P);
  // just above x = 1/2: phi = pi i int_{1/2}^1 psi
  BigComplex ph = phi_fn(BigComplex(0.5, 1e-40, P), c);
  BigReal tail = 1L - psi_cdf(BigReal(0.5, P));
  CHECK(dd(abs(ph.re())) < 1e-30);
  CHECK(dd(abs(ph.im() - pi * tail)) < 1e-30);
  // phi_+ - phi_- = pi z on the imaginary axis
  BigReal y(0.2, P);
  BigComplex jp = phi_imag_axis(y, Side::Plus, c) - phi_imag_axis(y, Side::Minus, c);
  CHECK(dd(abs(jp - BigComplex(BigReal(P), pi * y))) < 1e-30);
}

TEST_CASE("Re phi on the imaginary axis") {
  auto c = ctx();
  BigReal one(1L, P);
  BigReal expect = log(sqrt(BigReal(2L, P)) + 1L) * 2L;
  CHECK(dd(abs(re_phi_imag_axis(one) - expect)) < 1e-50);
  for (double s : {1e-3, 0.05, 0.3}) {
    BigReal sr(s, P);
    CHECK(dd(abs(phi_imag_axis(sr, Side::Minus, c).re() - re_phi_imag_axis(sr))) < 1e-25);
    CHECK(dd(abs(phi_imag_axis(-sr, Side::Plus, c).re() - re_phi_imag_axis(sr))) < 1e-25);
  }
  // s log(1/s) + s log 2 + s leading behaviour
  BigReal s("1e-8", P);
  double lead = 1e-8 * (std::log(1e8) + std::log(2.0) + 1.0);
  CHECK(dd(re_phi_imag_axis(s)) == doctest::Approx(lead).epsilon(1e-6));
}

TEST_CASE("theta_n") {
  auto c = ctx();
  BigReal pi = BigReal::pi(P);
  BigComplex t1 = theta_n(BigComplex(BigReal(1L, P)), 7);
  CHECK(dd(abs(t1 + BigComplex(pi / 4L))) < 1e-50);
  for (double x : {0.2, 0.55, 0.9}) CHECK(dd(abs(theta_n(BigComplex(BigReal(x, P)), 9).im())) < 1e-40);
  BigComplex z(0.4, -0.03, P);
  CHECK(dd(abs(theta_n(z, 12) - theta_n_quadrature(z, 12, c))) < 1e-25);
}

TEST_CASE("decay integral shrinks with n") {
  auto c = ctx();
  BigReal a = decay_integral(0.5, 16, c), b = decay_integral(0.5, 64, c);
  CHECK(a > 0L);
  CHECK(b < a);
}
