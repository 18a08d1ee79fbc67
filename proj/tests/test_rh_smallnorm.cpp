#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oscq/errors.hpp"
#include "oscq/rh_smallnorm.hpp"

using namespace oscq;

namespace {

constexpr prec_t P = 128;
double dd(const BigReal& x) { return x.to_double(); }

}  // namespace

TEST_CASE("cutoff") {
  CutoffChi chi = CutoffChi::standard(P);
  CHECK(dd(chi.eps) == doctest::Approx(kDefaultEps));
  CHECK(chi(BigReal(0.05, P)) == 1L);
  CHECK(chi(BigReal(-0.1, P)) == 1L);
  CHECK(chi(BigReal(0.24, P)) == 0L);
  CHECK(chi(BigReal(0.5, P)) == 0L);
  // symmetric about the midpoint of the transition
  BigReal mid = chi(BigReal(0.18, P));
  CHECK(dd(abs(mid - BigReal::ratio(1, 2, P))) < 1e-30);
  BigReal prev(1L, P);
  for (int k = 1; k < 100; ++k) {
    BigReal v = chi(BigReal(0.12 + 0.0012 * k, P));
    CHECK(v <= prev);
    prev = v;
  }
  CHECK_THROWS_AS(CutoffChi(BigReal(0L, P)), DomainError);
}

TEST_CASE("j moduli agree with the definitions") {
  BigReal q(0.25, P);
  for (double y : {0.03, 0.1, 0.3}) {
    BigReal yr(y, P);
    double r1 = dd(abs(j1_direct(yr, 12, q, P)) / j1_modulus(yr, 12, q, P));
    double r2 = dd(abs(j2_direct(yr, 12, q, P)) / j2_modulus(yr, 12, q, P));
    CHECK(r1 == doctest::Approx(1.0).epsilon(1e-25));
    CHECK(r2 == doctest::Approx(1.0).epsilon(1e-25));
  }
  // decay in y
  BigReal a = j1_modulus(BigReal(1L, P), 8, q, P), b = j1_modulus(BigReal(2L, P), 8, q, P),
          c = j1_modulus(BigReal(4L, P), 8, q, P);
  CHECK(b < a);
  CHECK(c < b);
  // the two coincide at nu = 0
  BigReal z0(0L, P), y(0.2, P);
  CHECK(dd(abs(j1_modulus(y, 8, z0, P) - j2_modulus(y, 8, z0, P))) < 1e-35);
  CHECK_THROWS_AS(j1_modulus(BigReal(0L, P), 8, q, P), DomainError);
}

TEST_CASE("Bessel ratio bounds stay bounded") {
  for (double nu : {0.1, 0.25, 0.5}) {
    BigReal n(nu, P);
    double worst1 = 0, worst2 = 0;
    for (int k = 0; k <= 40; ++k) {
      BigReal s(std::pow(10.0, -4.0 + 0.2 * k), P);
      BesselRatioCheck r = bessel_ratio_bounds_check(s, n, P);
      worst1 = std::max(worst1, dd(r.lhs1 / r.rhs1));
      worst2 = std::max(worst2, dd(r.lhs2 / r.rhs2));
    }
    CHECK(worst1 < 10.0);
    CHECK(worst2 < 10.0);
  }
}

TEST_CASE("eta bounds") {
  BigReal q(0.25, P);
  CutoffChi chi = CutoffChi::standard(P);
  SzegoD1 d1(16, q);
  for (double y : {0.01, 0.1, 0.2}) {
    EtaBoundCheck e = eta_bound_check(BigReal(y, P), chi, d1);
    CHECK(e.eta1_mod <= e.bound1 * 4L);
    CHECK(e.eta2_mod <= e.bound2 * 4L);
    CHECK(e.d1_sq <= e.d1_shape * 4L);
  }
  EtaBoundCheck off = eta_bound_check(BigReal(0.3, P), chi, d1);
  CHECK(off.eta1_mod.is_zero());
  CHECK(off.eta2_mod.is_zero());
  CHECK_THROWS_AS(eta_bound_check(BigReal(0.5, P), chi, d1), DomainError);
}

TEST_CASE("K norms") {
  BigReal q(0.25, P);
  CutoffChi chi = CutoffChi::standard(P);
  KNormBounds a = k_norm_bounds(16, q, chi), b = k_norm_bounds(32, q, chi);
  CHECK(a.k1_bound > 0L);
  CHECK(b.k1_bound < a.k1_bound);
  CHECK(b.k2_bound > a.k2_bound);
  CHECK(b.product < a.product);
  CHECK_THROWS_AS(k_norm_bounds(16, BigReal(0L, P), chi), DomainError);
}
