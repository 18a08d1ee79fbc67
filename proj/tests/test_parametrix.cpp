#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oscq/errors.hpp"
#include "oscq/moments.hpp"
#include "oscq/parametrix.hpp"
#include "oscq/zeros.hpp"

using namespace oscq;

namespace {

constexpr prec_t P = 128;
double dd(const BigReal& x) { return x.to_double(); }
double relc(const BigComplex& a, const BigComplex& b) { return dd(abs(a - b) / abs(b)); }
BigComplex c(double re, double im) { return BigComplex(re, im, P); }

// D1 for nu = 1/2 in closed form: ((z + (z^2-1)^{1/2})/z)^{1/4}
BigComplex d1_half(const BigComplex& z) { return pow(conformal_f(z) / z, BigReal::ratio(1, 4, P)); }

}  // namespace

TEST_CASE("branches") {
  BigComplex z = c(2.0, 0.0);
  CHECK(dd(abs(sqrt_z2m1(z) - BigComplex(sqrt(BigReal(3L, P))))) < 1e-35);
  CHECK(dd(abs(conformal_f(c(0.3, 1e-30)))) == doctest::Approx(1.0).epsilon(1e-12));
  // f maps the exterior to |f| > 1
  CHECK(dd(abs(conformal_f(c(-0.2, 0.4)))) > 1.0);
  CHECK(dd(abs(beta_fn(c(1e6, 0.0)) - BigComplex(BigReal(1L, P)))) < 1e-6);
}

TEST_CASE("W_n") {
  BigReal half(0.5, P);
  // nu = 1/2: sqrt(2n) K_{1/2}(n pi x) e^{n pi x} = x^{-1/2}
  BigComplex w = w_weight(c(0.3, 0.0), 10, half, P);
  CHECK(relc(w, BigComplex(1L / sqrt(BigReal(0.3, P)))) < 1e-35);
  BigReal q(0.25, P);
  BigComplex w2 = w_weight(c(0.5, 0.0), 100, q, P);
  double eta = dd(abs(w2 * sqrt(BigReal(0.5, P)) - BigComplex(BigReal(1L, P))));
  CHECK(eta <= 2.0 / (100 * 0.5));
  // even in z
  CHECK(relc(w_weight(c(-0.4, 0.1), 7, q, P), w_weight(c(0.4, -0.1), 7, q, P)) < 1e-35);
  CHECK(dd(log_w_weight(BigReal(0.3, P), 10, half, P)) == doctest::Approx(-0.5 * std::log(0.3)));
  CHECK_THROWS_AS(w_weight(c(0.0, 0.5), 10, q, P), DomainError);
  // one-sided limits on the imaginary axis
  BigReal y(0.3, P);
  BigComplex lim_p = w_weight(c(-1e-30, 0.3), 10, q, P), lim_m = w_weight(c(1e-30, 0.3), 10, q, P);
  CHECK(relc(w_weight_imag_axis(y, Side::Plus, 10, q, P), lim_p) < 1e-25);
  CHECK(relc(w_weight_imag_axis(y, Side::Minus, 10, q, P), lim_m) < 1e-25);
}

TEST_CASE("Szego function of |x|^alpha") {
  BigReal a(-0.5, P);
  CHECK(relc(szego_power(c(2.0, 0.0), BigReal(0L, P)), BigComplex(BigReal(1L, P))) < 1e-35);
  BigReal s3 = sqrt(BigReal(3L, P));
  BigComplex expect(pow(BigReal(2L, P) / (s3 + 2L), BigReal(-0.25, P)));
  CHECK(relc(szego_power(c(2.0, 0.0), a), expect) < 1e-35);
  CHECK(relc(szego_power(c(0.0, 1e12), a), BigComplex(pow(BigReal(2L, P), BigReal(0.25, P)))) < 1e-10);
}

TEST_CASE("D1 is exact for nu = 1/2") {
  BigReal half(0.5, P);
  SzegoD1 d1(16, half);
  for (auto z : {c(0.0, 2.0), c(0.0, 1e-12), c(0.7, 0.3), c(-0.4, 1e-6), c(1.5, 0.0), c(-0.9, -0.02)})
    CHECK(relc(d1(z), d1_half(z)) < 1e-30);
  CHECK(dd(abs(d1.d_infty() - pow(BigReal(2L, P), BigReal(0.25, P)))) < 1e-30);
  for (double x : {-0.8, -0.3, 0.3, 0.8}) {
    BigReal xr(x, P);
    CHECK(relc(d1.boundary(xr, Side::Plus), d1_half(c(x, 1e-40))) < 1e-30);
    CHECK(relc(d1.boundary(xr, Side::Minus), d1_half(c(x, -1e-40))) < 1e-30);
  }
}

TEST_CASE("D1 for nu = 1/4") {
  BigReal q(0.25, P);
  SzegoD1 d1(25, q);
  // D1+ D1- = W on the interval
  for (double x : {-0.6, 0.2, 0.9}) {
    BigReal xr(x, P);
    BigComplex pr = d1.boundary(xr, Side::Plus) * d1.boundary(xr, Side::Minus);
    CHECK(dd(abs(pr / BigComplex(exp(log_w_weight(xr, 25, q, P))) - BigComplex(BigReal(1L, P)))) < 1e-30);
  }
  // boundary values are limits
  for (double x : {-0.8, 0.4}) {
    BigComplex off = d1(c(x, 1e-12)), on = d1.boundary(BigReal(x, P), Side::Plus);
    CHECK(relc(off, on) < 1e-9);
  }
  // symmetry D1(-conj z) = conj D1(z), through both the table and the fallback
  for (auto z : {c(0.3, 0.5), c(0.6, 1e-5)}) CHECK(relc(d1(-conj(z)), conj(d1(z))) < 1e-30);
  // one-shot evaluation is bit-identical
  CHECK(d1n(c(0.0, 2.0), 25, q, P) == d1(c(0.0, 2.0)));
  // close to the closed-form nu = 1/2 shape away from the interval
  BigComplex z = c(0.0, 2.0);
  CHECK(relc(d1(z), d1_half(z)) <= 5 * std::log(25.0) / 25);
  CHECK_THROWS_AS(d1(c(0.5, 0.0)), DomainError);
}

TEST_CASE("D_infty approaches 2^(1/4)") {
  BigReal q(0.25, P);
  BigReal t = pow(BigReal(2L, P), BigReal(0.25, P));
  double a = dd(abs(d_infty_n(25, q, P) - t)), b = dd(abs(d_infty_n(50, q, P) - t));
  CHECK(b < a);
  CHECK(a < std::log(25.0) / 25);
}

TEST_CASE("D2") {
  BigReal q(0.25, P);
  BigReal pi = BigReal::pi(P);
  CHECK(relc(d2(c(0.0, 1e12), q), BigComplex(BigReal(1L, P))) < 1e-10);
  // z -> +-1 gives e^{-+ nu pi i/4}
  BigReal tiny("1e-30", P);
  BigComplex at1 = d2(BigComplex(tiny + 1L, BigReal(P)), q);
  CHECK(relc(at1, BigComplex::polar(BigReal(1L, P), -(q * pi / 4L))) < 1e-12);
  BigComplex atm1 = d2(BigComplex(-(tiny + 1L), BigReal(P)), q);
  CHECK(relc(atm1, BigComplex::polar(BigReal(1L, P), q * pi / 4L)) < 1e-12);
  for (double x : {-3.0, -1.5, 1.5, 3.0}) CHECK(dd(abs(abs(d2(c(x, 0.0), q)) - 1L)) < 1e-35);
  // boundary products
  BigReal h(0.5, P);
  BigComplex pr = d2_boundary(h, Side::Plus, q) * d2_boundary(h, Side::Minus, q);
  CHECK(relc(pr, BigComplex::polar(BigReal(1L, P), -(q * pi / 2L))) < 1e-35);
  BigComplex pl = d2_boundary(-h, Side::Plus, q) * d2_boundary(-h, Side::Minus, q);
  CHECK(relc(pl, BigComplex::polar(BigReal(1L, P), q * pi / 2L)) < 1e-35);
  CHECK(relc(d2(c(0.5, 1e-30), q), d2_boundary(h, Side::Plus, q)) < 1e-20);
  for (auto z : {c(0.5, 0.2), c(0.5, -0.2), c(-0.5, 0.2), c(-0.5, -0.2)})
    CHECK(dd(d2_psi_consistency(z, q)) < std::ldexp(1.0, -static_cast<int>(P) / 2));
  // nu = 0 makes D2 trivial
  CHECK(relc(d2(c(0.3, 0.7), BigReal(0L, P)), BigComplex(BigReal(1L, P))) < 1e-35);
}

TEST_CASE("N0") {
  BigComplex one(BigReal(1L, P)), zero(P);
  for (auto z : {c(2.0, 0.0), c(0.3, 0.4), c(-1.2, -0.7)}) {
    Mat2 m = n0_matrix(z);
    CHECK(dd(abs(det(m) - one)) < std::ldexp(1.0, -static_cast<int>(P) + 20));
    CHECK(dd(max_abs_diff(m, n0_matrix_f(z))) < 1e-30);
  }
  Mat2 id{{{one, zero}, {zero, one}}};
  CHECK(dd(max_abs_diff(n0_matrix(c(1e6, 0.0)), id)) < 1e-5);
  Mat2 j{{{zero, one}, {-one, zero}}};
  BigReal x(0.35, P);
  CHECK(dd(max_abs_diff(n0_boundary(x, Side::Plus), n0_boundary(x, Side::Minus) * j)) < 1e-30);
  CHECK(dd(max_abs_diff(n0_boundary(x, Side::Plus), n0_matrix(c(0.35, 1e-40)))) < 1e-15);
}

TEST_CASE("outer and inner forms against P~_n") {
  BigReal q(0.25, P);
  const long n = 16;
  AdaptiveOp op = monic_op_adaptive(n, BigReal(0.25, 4096));
  MonicPolynomial t = rescale_to_tilde(op.poly, n);
  auto actual = [&](const BigComplex& z) { return t.eval(z.with_prec(t.prec())).with_prec(P); };

  for (auto z : {c(0.0, 2.0), c(1.5, 0.0), c(-1.5, 0.5)}) {
    AsymptoticPrediction o = outer_eval(z, n, q, P);
    CHECK(o.regime == Regime::Outer);
    CHECK(relc(actual(z), o.value) < dd(o.error_scale));
  }
  CHECK_THROWS_AS(outer_eval(c(0.5, 0.0), n, q, P), DomainError);
  BigReal m(-1.5, P);
  AsymptoticPrediction neg = outer_eval(BigComplex(m), n, q, P);
  CHECK(relc(actual(BigComplex(m)), neg.value) < dd(neg.error_scale));

  for (double x : {-0.5, 0.3, 0.5, 0.7}) {
    BigComplex z = c(x, 0.0);
    AsymptoticPrediction in = inner_eval(z, n, q);
    double band = dd(abs(in.prefactor) * (abs(in.term1) + abs(in.term2)) * in.error_scale);
    CHECK(dd(abs(actual(z) - in.value)) < band);
  }
  // odd degree picks up the sign under z -> -conj z
  AsymptoticPrediction a = inner_eval(c(0.4, 0.02), 15, q), b = inner_eval(c(-0.4, 0.02), 15, q);
  CHECK(relc(b.value, -conj(a.value)) < 1e-30);
  CHECK_THROWS_AS(inner_eval(c(0.1, 0.0), n, q), DomainError);
  CHECK_THROWS_AS(inner_eval(c(0.5, 0.2), n, q), DomainError);
  CHECK(std::string(to_string(Regime::Inner)) == "inner");
}

TEST_CASE("zero condition") {
  BigReal q(0.25, P);
  TildeZeros t = tilde_zeros(32, BigReal(0.25, 4096));
  double worst = 0;
  for (const auto& w : t.zeros.roots) {
    double re = dd(w.re());
    if (re < 0.2 || re > 0.8) continue;
    worst = std::max(worst, dd(zero_condition_defect(w.with_prec(P), 32, q)));
  }
  CHECK(worst < 5 * epsilon_n(32, 0.25));
  // above the axis there are no zeros
  double least = 1e300;
  for (double x = 0.25; x < 0.8; x += 0.05) least = std::min(least, dd(zero_condition_defect(c(x, 0.05), 32, q)));
  CHECK(least > 0.0);
  CHECK(dd(zero_condition_defect(c(0.4, 0.0), 32, BigReal(0L, P))) < 1e-30);
}
