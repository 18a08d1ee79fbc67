#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "oscq/errors.hpp"
#include "oscq/moments.hpp"
#include "oscq/special.hpp"

using namespace oscq;

namespace {

constexpr prec_t P = 256;
double tol(prec_t p, long slack = 16) { return std::ldexp(1.0, static_cast<int>(-p + slack)); }

// fraction-free elimination on the Hankel matrix at high precision
BigReal bareiss_det(long n, const BigReal& nu, prec_t prec) {
  auto ms = moment_sequence(nu, 2 * n - 1, prec);
  std::vector<std::vector<BigReal>> a(n, std::vector<BigReal>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) a[i][j] = ms.values[i + j];
  BigReal prev(1L, prec);
  int sign = 1;
  for (long k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      long r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      REQUIRE(r < n);
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign < 0 ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

}  // namespace

TEST_CASE("moment values") {
  BigReal nu0(0L, P), q(0.25, P);
  CHECK(abs(moment(0, q, P) - 1L).to_double() < tol(P));
  CHECK(abs(moment(0, nu0, P) - 1L).to_double() < tol(P));
  CHECK(moment(1, nu0, P).is_zero());
  CHECK(abs(moment(2, nu0, P) + 1L).to_double() < tol(P));
  // odd moments vanish for nu = 0
  for (long j = 1; j < 12; j += 2) CHECK(moment(j, nu0, P).is_zero());
  // m_1 at nu = 1/2 is 2 Gamma(5/4)/Gamma(1/4)
  BigReal h(0.5, P);
  BigReal m1 = gamma_fn(BigReal(1.25, P), P) * 2L / gamma_fn(BigReal(0.25, P), P);
  CHECK((abs(moment(1, h, P) - m1) / m1).to_double() < tol(P));
}

TEST_CASE("Hankel determinants") {
  CHECK(abs(hankel_det(1, BigReal(0.25, P), P) - 1L).to_double() < tol(P));
  CHECK(abs(hankel_det(2, BigReal(0L, P), P) + 1L).to_double() < tol(P));
  BigReal h(0.5, P);
  BigReal d = hankel_det(4, h, P);
  BigReal b = bareiss_det(4, h, 4 * P);
  CHECK((abs(d - b) / abs(b)).to_double() < std::ldexp(1.0, -static_cast<int>(P) / 2));
}

TEST_CASE("monic orthogonal polynomials") {
  MonicPolynomial p2 = monic_op(2, BigReal(0L, P), P);
  CHECK(p2.degree == 2);
  CHECK(abs(p2.coeffs[1]).to_double() < tol(P));
  CHECK(abs(p2.coeffs[0] - BigComplex(BigReal(1L, P))).to_double() < tol(P));

  BigReal h(0.5, P);
  MonicPolynomial p1 = monic_op(1, h, P);
  CHECK(abs(p1.coeffs[0] + BigComplex(moment(1, h, P))).to_double() < tol(P));

  // defining equations sum_k c_k m_{j+k} + m_{j+n} = 0
  BigReal q(0.25, P);
  MonicPolynomial p3 = monic_op(3, q, P);
  auto ms = moment_sequence(q, 6, P);
  for (long j = 0; j < 3; ++j) {
    BigComplex s(ms.values[j + 3]);
    BigReal row = abs(ms.values[j + 3]);
    for (long k = 0; k < 3; ++k) {
      s = s + p3.coeffs[k] * ms.values[j + k];
      row = max(row, abs(ms.values[j + k]));
    }
    CHECK((abs(s) / row).to_double() < std::ldexp(1.0, -static_cast<int>(P) / 4));
  }
}

TEST_CASE("nu = 0 gives an even or odd polynomial") {
  MonicPolynomial p = monic_op(6, BigReal(0L, P), P);
  for (long k = 0; k < 6; ++k)
    if ((6 - k) % 2 == 1) CHECK(abs(p.coeffs[k]).to_double() < tol(P));
}

TEST_CASE("adaptive precision") {
  AdaptiveOp a = monic_op_adaptive(24, BigReal(0.25, 4096));
  CHECK(a.prec_used >= default_start_prec(24));
  CHECK(a.poly.degree == 24);
  CHECK(a.log2_residual < -static_cast<double>(a.prec_used) / 4);
  // a tiny cap cannot hold a degree-40 Hankel system
  CHECK_THROWS(monic_op_adaptive(40, BigReal(0.25, 4096), 64, 96));
}

TEST_CASE("rescaling to P~") {
  BigReal nu0(0L, P);
  MonicPolynomial p = monic_op(2, nu0, P);
  MonicPolynomial t = rescale_to_tilde(p, 2);
  CHECK(t.variable == Variable::RescaledZ);
  BigReal pi = BigReal::pi(P);
  BigReal c0 = -(1L / (pi * pi * 4L));
  CHECK(abs(t.coeffs[0] - BigComplex(c0)).to_double() < tol(P));
  CHECK(abs(t.coeffs[1]).to_double() < tol(P));

  // P~(0) = c_0 (i n pi)^{-n}
  BigReal q(0.25, P);
  MonicPolynomial p5 = monic_op(5, q, P);
  MonicPolynomial t5 = rescale_to_tilde(p5, 5);
  BigComplex inpi(BigReal(P), pi * 5L);
  BigComplex expect = p5.coeffs[0] / pow(inpi, 5L);
  CHECK((abs(t5.eval(BigComplex(P)) - expect) / abs(expect)).to_double() < tol(P));
  // P~(w) = (i n pi)^{-n} P(i n pi w)
  BigComplex w(0.3, -0.1, P);
  BigComplex lhs = t5.eval(w), rhs = p5.eval(inpi * w) / pow(inpi, 5L);
  CHECK((abs(lhs - rhs) / abs(rhs)).to_double() < tol(P, 24));
}

TEST_CASE("orthogonality against the rescaled weight") {
  BigReal q(0.25, P);
  MonicPolynomial t = rescale_to_tilde(monic_op(2, q, P), 2);
  auto r0 = orthogonality_residual(t, 0, 2, q, P);
  CHECK((abs(r0.value) / r0.abs_integral).to_double() < std::pow(10.0, -0.2 * P));
  auto r2 = orthogonality_residual(t, 2, 2, q, P);
  CHECK((abs(r2.value) / r2.abs_integral).to_double() > 1e-5);
  BigReal nu0(0L, P);
  MonicPolynomial t0 = rescale_to_tilde(monic_op(2, nu0, P), 2);
  auto r1 = orthogonality_residual(t0, 1, 2, nu0, P);
  CHECK((abs(r1.value) / r1.abs_integral).to_double() < tol(P, 40));
}

TEST_CASE("precision cap from the environment") {
  setenv("OSCQ_PREC_CAP", "4096", 1);
  CHECK(precision_cap() == 4096);
  unsetenv("OSCQ_PREC_CAP");
  CHECK(precision_cap() == (1L << 20));
}
