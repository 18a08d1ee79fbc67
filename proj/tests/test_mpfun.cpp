#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oscq/bigfloat.hpp"
#include "oscq/errors.hpp"
#include "oscq/linalg.hpp"
#include "oscq/quadrature.hpp"
#include "oscq/special.hpp"

using namespace oscq;

namespace {

constexpr prec_t P = 256;

double rel(const BigReal& a, const BigReal& b) { return (abs(a - b) / abs(b)).to_double(); }
double tol(prec_t p, long slack = 16) { return std::ldexp(1.0, static_cast<int>(-p + slack)); }

}  // namespace

TEST_CASE("decimal serialisation round-trips") {
  BigReal x = BigReal::pi(P) / 7L;
  std::string s = x.to_string();
  CHECK(BigReal::roundtrip_digits(P) == 80);
  CHECK(BigReal(s, P) == x);
  CHECK(BigReal("0.25", 64) == 0.25);
}

TEST_CASE("mixed precision takes the larger operand") {
  BigReal a(1L, 64), b(3L, 200);
  CHECK((a / b).prec() == 200);
  CHECK((a * 3L).prec() == 64);
}

TEST_CASE("gamma and its reciprocal") {
  BigReal sqrt_pi = sqrt(BigReal::pi(P));
  CHECK(recip_gamma(BigReal(0L, P), P).is_zero());
  CHECK(recip_gamma(BigReal(-3L, P), P).is_zero());
  CHECK(rel(recip_gamma(BigReal(0.5, P), P), 1L / sqrt_pi) < tol(P));
  CHECK(rel(gamma_fn(BigReal(5L, P), P), BigReal(24L, P)) < tol(P));
  CHECK(rel(gamma_fn(BigReal(0.5, P), P), sqrt_pi) < tol(P));
  CHECK(rel(gamma_fn(BigReal(-0.5, P), P), sqrt_pi * -2L) < tol(P));
  CHECK_THROWS_AS(gamma_fn(BigReal(-2L, P), P), PoleError);
  // Gamma(x+1) = x Gamma(x) off the integers
  BigReal x("0.3711", P);
  CHECK(rel(gamma_fn(x + 1L, P), x * gamma_fn(x, P)) < tol(P));
}

TEST_CASE("K_nu closed form and limits") {
  BigReal half(0.5, P), one(1L, P);
  BigReal k = bessel_k(half, one, P);
  BigReal expect = sqrt(BigReal::pi(P) / 2L) * exp(-one);
  CHECK(rel(k, expect) < tol(P));

  BigReal q(0.25, P);
  BigReal small("1e-6", P);
  // two terms of the small-x expansion; the next is O(x^2) relative
  BigReal lead = gamma_fn(q, P) * pow(BigReal(2L, P), q - 1L) * pow(small, -q) +
                 gamma_fn(-q, P) * pow(BigReal(2L, P), -q - 1L) * pow(small, q);
  CHECK(rel(bessel_k(q, small, P), lead) < 1e-9);
  BigReal big(50L, P);
  BigReal asym = sqrt(BigReal::pi(P) / (big * 2L)) * exp(-big);
  CHECK(rel(bessel_k(q, big, P), asym) < 1e-2);

  // recurrence K_{nu+1} = K_{nu-1} + (2 nu/x) K_nu across the series/asymptotic switch
  for (double xv : {0.7, 5.0, 40.0, 120.0}) {
    BigReal xx(xv, P), nu(0.3, P);
    BigReal lhs = bessel_k(nu + 1L, xx, P);
    BigReal rhs = bessel_k(nu - 1L, xx, P) + nu * 2L / xx * bessel_k(nu, xx, P);
    CHECK(rel(lhs, rhs) < tol(P, 24));
  }
  // the scaled form agrees with the unscaled one
  BigReal x5(5L, P);
  CHECK(rel(bessel_k_scaled(q, x5, P), bessel_k(q, x5, P) * exp(x5)) < tol(P));
}

TEST_CASE("complex K on the positive axis matches the real one") {
  BigReal nu(0.25, P);
  for (double xv : {0.2, 3.0, 60.0}) {
    BigComplex z(xv, 0.0, P);
    BigComplex kc = bessel_k_scaled(nu, z, P);
    CHECK(rel(kc.re(), bessel_k_scaled(nu, BigReal(xv, P), P)) < tol(P, 24));
    CHECK(abs(kc.im()).to_double() < tol(P, 24));
  }
  // conjugate symmetry
  BigComplex z(2.0, 3.0, P);
  BigComplex a = bessel_k_scaled(nu, z, P), b = bessel_k_scaled(nu, conj(z), P);
  CHECK((abs(a - conj(b)) / abs(a)).to_double() < tol(P, 24));
}

TEST_CASE("J and Y") {
  BigReal half(0.5, P), pi = BigReal::pi(P);
  CHECK(abs(bessel_j(half, pi, P)).to_double() < tol(P));
  CHECK(abs(bessel_y(half, pi / 2L, P)).to_double() < tol(P));
  // Wronskian J_{nu+1} Y_nu - J_nu Y_{nu+1} = 2/(pi x)
  for (double xv : {0.01, 1.3, 25.0, 200.0}) {
    BigReal x(xv, P), nu(0.25, P);
    auto a = bessel_jy(nu, x, P), b = bessel_jy(nu + 1L, x, P);
    BigReal w = b.j * a.y - a.j * b.y;
    CHECK(rel(w, 2L / (pi * x)) < tol(P, 40));
  }
}

TEST_CASE("full-pivot LU solves a small system") {
  Matrix<BigReal> a(3, 3, BigReal(P));
  double v[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = BigReal(v[i][j], P);
  FullPivLU<BigReal> lu(a);
  CHECK_FALSE(lu.singular());
  auto x = lu.solve({BigReal(3L, P), BigReal(5L, P), BigReal(5L, P)});
  for (const auto& xi : x) CHECK(abs(xi - 1L).to_double() < tol(P));
  CHECK(rel(lu.determinant(), BigReal(18L, P)) < tol(P));
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
  QuadOptions q;
  q.prec = P;
  q.tol_bits = P - 24;
  auto r = tanh_sinh<BigReal>([](const BigReal& x, const BigReal&, const BigReal&) { return sqrt(x); },
                              BigReal(0L, P), BigReal(1L, P), q);
  CHECK(r.converged);
  CHECK(rel(r.value, BigReal::ratio(2, 3, P)) < tol(P, 30));

  // 1/sqrt(1-x) on [0.8, 1]: needs the nodes next to the nonzero endpoint
  q.keep_endpoint_nodes = true;
  auto s = tanh_sinh<BigReal>(
      [](const BigReal&, const BigReal&, const BigReal& db) { return 1L / sqrt(db); }, BigReal(0.8, P),
      BigReal(1L, P), q);
  CHECK(s.converged);
  CHECK(rel(s.value, sqrt(BigReal(1L, P) - BigReal(0.8, P)) * 2L) < tol(P, 30));

  q.keep_endpoint_nodes = false;
  q.max_level = 3;
  CHECK_THROWS_AS(tanh_sinh<BigReal>([](const BigReal& x, const BigReal&, const BigReal&) { return sin(x * 40L); },
                                     BigReal(0L, P), BigReal(10L, P), q),
                  QuadratureError);
}
