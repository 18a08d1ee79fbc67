#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oscq/equilibrium.hpp"
#include "oscq/errors.hpp"
#include "oscq/moments.hpp"
#include "oscq/zeros.hpp"

using namespace oscq;

namespace {

constexpr prec_t P = 256;

double nearest(const ZeroSet& zs, const BigComplex& z) {
  double best = 1e300;
  for (const auto& r : zs.roots) best = std::min(best, abs(r - z).to_double());
  return best;
}

}  // namespace

TEST_CASE("quadratic roots") {
  BigComplex one(BigReal(1L, P)), zero(P);
  MonicPolynomial p{2, {one, zero}, Variable::RawX};
  ZeroSet zs = find_zeros(p);
  REQUIRE(zs.roots.size() == 2);
  CHECK(nearest(zs, BigComplex::i(P)) < 1e-60);
  CHECK(nearest(zs, -BigComplex::i(P)) < 1e-60);
}

TEST_CASE("P~_2 for nu = 0 has real zeros +-1/(2 pi)") {
  TildeZeros t = tilde_zeros(2, BigReal(0L, P));
  BigReal r = 1L / (BigReal::pi(t.zeros.prec) * 2L);
  CHECK(nearest(t.zeros, BigComplex(r)) < 1e-60);
  CHECK(nearest(t.zeros, BigComplex(-r)) < 1e-60);
  for (const auto& w : t.zeros.roots) {
    BigComplex x = raw_from_tilde(w, 2);
    CHECK(abs(abs(x) - 1L).to_double() < 1e-60);
  }
}

TEST_CASE("roots of a polynomial built from its roots") {
  std::vector<BigComplex> rs;
  double v[8][2] = {{0.3, 0.1}, {-0.7, 0.2}, {1.1, -0.4}, {0.0, 0.9}, {-0.2, -0.6}, {0.5, 0.5}, {-1.3, 0.0}, {0.8, -1.0}};
  for (auto& e : v) rs.emplace_back(e[0], e[1], P);
  MonicPolynomial p = from_roots(rs, Variable::RescaledZ);
  ZeroSet zs = find_zeros(p);
  for (const auto& r : rs) CHECK(nearest(zs, r) < std::ldexp(1.0, -static_cast<int>(P) / 2));
  CHECK(vieta_sum_defect(p, zs).to_double() < 1e-60);
  CHECK(vieta_product_defect(p, zs).to_double() < 1e-60);
}

TEST_CASE("nu = 0 zeros lie on the imaginary axis") {
  for (long n : {2L, 4L, 8L}) {
    TildeZeros t = tilde_zeros(n, BigReal(0L, 4096));
    for (const auto& w : t.zeros.roots) CHECK(abs(raw_from_tilde(w, n).re()).to_double() <= 1e-20);
    ZeroLineStats st = zero_line_stats(t.zeros, n, 0.0, 0.1);
    if (st.max_dev) CHECK(*st.max_dev <= 1e-20);
  }
}

TEST_CASE("zeros come in reflected pairs") {
  TildeZeros t = tilde_zeros(12, BigReal(0.25, 4096));
  CHECK(reflection_defect(t.zeros).to_double() < 1e-40);
  ZeroSet raw = find_zeros(t.op.poly);
  CHECK(reflection_defect(raw).to_double() < 1e-30);
}

TEST_CASE("zero-line statistic on synthetic data") {
  const long n = 20;
  const double nu = 0.25;
  ZeroSet zs;
  zs.variable = Variable::RescaledZ;
  zs.prec = P;
  // w = x - i nu/(2n) sits on Re z = nu pi/2
  for (double x : {-0.7, -0.4, 0.35, 0.6}) zs.roots.emplace_back(BigReal(x, P), -(BigReal(nu, P) / (2 * n)));
  ZeroLineStats st = zero_line_stats(zs, n, nu, 0.2);
  REQUIRE(st.max_dev);
  CHECK(*st.max_dev < 1e-60);
  CHECK(st.zeros_considered == 4);
  // points inside the exclusion disks are dropped
  zs.roots.emplace_back(0.01, 0.0, P);
  CHECK(zero_line_stats(zs, n, nu, 0.2).zeros_considered == 4);
  CHECK_THROWS_AS(zero_line_stats(zs, n, nu, 0.0), DomainError);
}

TEST_CASE("Kolmogorov distance to the psi-CDF") {
  ZeroSet one;
  one.variable = Variable::RescaledZ;
  one.prec = P;
  one.roots.emplace_back(P);
  CHECK(std::abs(ecdf_vs_psi(one).to_double() - 0.5) < 1e-30);

  // zeros at the psi quantiles (j-1/2)/n by bisection on the closed-form CDF
  const long n = 16;
  ZeroSet q;
  q.variable = Variable::RescaledZ;
  q.prec = P;
  for (long j = 1; j <= n; ++j) {
    BigReal target = BigReal::ratio(2 * j - 1, 2 * n, P);
    BigReal lo(-1L, P), hi(1L, P);
    for (int it = 0; it < 120; ++it) {
      BigReal mid = (lo + hi) / 2L;
      (psi_cdf(mid) < target ? lo : hi) = mid;
    }
    q.roots.emplace_back(lo);
  }
  CHECK(ecdf_vs_psi(q).to_double() <= 1.0 / (2 * n) + 1e-12);
}

TEST_CASE("epsilon_n") {
  CHECK(epsilon_n(16, 0.5) == doctest::Approx(1.0 / std::log(16.0)));
  CHECK(epsilon_n(64, 0.25) < epsilon_n(16, 0.25));
}
