#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oscq/errors.hpp"
#include "oscq/moments.hpp"
#include "oscq/quadrule.hpp"

using namespace oscq;

namespace {

constexpr prec_t P = 512;
double dd(const BigReal& x) { return x.to_double(); }

}  // namespace

TEST_CASE("one-point rule") {
  for (double nu : {0.0, 0.3}) {
    BigReal v(nu, P);
    QuadratureRule r = gauss_rule(1, v, P);
    REQUIRE(r.nodes.size() == 1);
    CHECK(dd(abs(r.weights[0] - BigComplex(BigReal(1L, P)))) < 1e-100);
    CHECK(dd(abs(r.nodes[0] - BigComplex(moment(1, v, P)))) < 1e-100);
  }
}

TEST_CASE("two-point rule for nu = 0") {
  QuadratureRule r = gauss_rule(2, BigReal(0L, P), P);
  for (const auto& w : r.weights) CHECK(dd(abs(w - BigComplex(BigReal(0.5, P)))) < 1e-100);
  for (const auto& x : r.nodes) CHECK(dd(abs(abs(x.im()) - 1L)) < 1e-100);
  auto pw = [](long k) {
    return [k](const BigComplex& x) { return pow(x, k); };
  };
  CHECK(dd(abs(apply_rule(r, pw(0)) - BigComplex(BigReal(1L, P)))) < 1e-100);
  CHECK(dd(abs(apply_rule(r, pw(2)) + BigComplex(BigReal(1L, P)))) < 1e-100);
  CHECK(dd(abs(apply_rule(r, pw(3)))) < 1e-100);
  // degree 2n is past the exactness boundary: m_4 = 9 but the rule gives 1
  BigComplex q4 = apply_rule(r, pw(4));
  CHECK(dd(abs(q4 - BigComplex(moment(4, BigReal(0L, P), P)))) > 1.0);
}

TEST_CASE("exactness up to degree 2n-1") {
  for (double nu : {0.0, 0.25, 0.5}) {
    for (long n : {3L, 6L, 10L}) {
      QuadratureRule r = gauss_rule(n, BigReal(nu, P), P);
      CHECK(dd(r.exactness_report) <= std::pow(10.0, -0.15 * static_cast<double>(r.prec)));
      CHECK(dd(weight_symmetry_defect(r)) < 1e-100);
      auto def = moment_defects(r, 2 * n + 1);
      CHECK(dd(def[2 * n - 1]) < 1e-60);
      CHECK(dd(def[2 * n]) > 1e-30);
    }
  }
}

TEST_CASE("rule rejects n < 1") { CHECK_THROWS_AS(gauss_rule(0, BigReal(0.25, P)), DomainError); }
