#include "oscq/quadrule.hpp"

#include <algorithm>

#include "oscq/errors.hpp"
#include "oscq/linalg.hpp"
#include "oscq/moments.hpp"
#include "oscq/zeros.hpp"

namespace oscq {

namespace {

// V w = m with V_jk = x_k^j, j < n
std::vector<BigComplex> vandermonde_residual(const std::vector<BigComplex>& x, const std::vector<BigComplex>& w,
                                             const std::vector<BigReal>& m, prec_t p) {
  const std::size_t n = x.size();
  std::vector<BigComplex> r(n, BigComplex(p));
  std::vector<BigComplex> pw;
  for (std::size_t k = 0; k < n; ++k) pw.push_back(w[k].with_prec(p));
  for (std::size_t j = 0; j < n; ++j) {
    BigComplex s(p);
    for (std::size_t k = 0; k < n; ++k) {
      s = s + pw[k];
      pw[k] = pw[k] * x[k];
    }
    r[j] = BigComplex(m[j].with_prec(p)) - s;
  }
  return r;
}

}  // namespace

QuadratureRule gauss_rule(long n, const BigReal& nu, prec_t prec) {
  if (n < 1) throw DomainError("gauss_rule needs n >= 1");
  AdaptiveOp op = monic_op_adaptive(n, nu, prec);
  const prec_t wp = op.prec_used;
  ZeroSet zs = find_zeros(op.poly);

  QuadratureRule rule;
  rule.nu = nu.with_prec(wp);
  rule.n = n;
  rule.prec = wp;
  rule.nodes = zs.roots;

  // weights at twice the working precision, residuals at four times
  const prec_t sp = 2 * wp, rp = 4 * wp;
  MomentSequence ms = moment_sequence(nu, 2 * n, rp);
  std::vector<BigComplex> xs, xr;
  for (const auto& x : rule.nodes) {
    xs.push_back(x.with_prec(sp));
    xr.push_back(x.with_prec(rp));
  }
  Matrix<BigComplex> v(static_cast<std::size_t>(n), static_cast<std::size_t>(n), BigComplex(sp));
  for (long k = 0; k < n; ++k) {
    BigComplex pw(BigReal(1L, sp));
    for (long j = 0; j < n; ++j) {
      v(j, k) = pw;
      pw = pw * xs[k];
    }
  }
  FullPivLU<BigComplex> lu(std::move(v));
  if (lu.singular()) throw IndeterminateError("Vandermonde system is singular (repeated nodes)", sp);
  std::vector<BigComplex> rhs;
  for (long j = 0; j < n; ++j) rhs.emplace_back(ms.values[j].with_prec(sp));
  std::vector<BigComplex> w = lu.solve(rhs);
  for (int step = 0; step < 2; ++step) {
    auto r = vandermonde_residual(xr, w, ms.values, rp);
    std::vector<BigComplex> rs;
    for (auto& c : r) rs.push_back(c.with_prec(sp));
    auto d = lu.solve(rs);
    for (long k = 0; k < n; ++k) w[k] = w[k] + d[k];
  }
  for (auto& c : w) rule.weights.push_back(c.with_prec(wp));

  // exactness over degrees 0..2n-1 at the working precision
  BigReal mmax(wp);
  for (long j = 0; j < 2 * n; ++j) mmax = max(mmax, abs(ms.values[j].with_prec(wp)));
  auto defects = moment_defects(rule, 2 * n);
  rule.exactness_abs = BigReal(wp);
  for (const auto& d : defects) rule.exactness_abs = max(rule.exactness_abs, d);
  rule.exactness_report = mmax.is_zero() ? rule.exactness_abs : rule.exactness_abs / mmax;
  return rule;
}

BigComplex apply_rule(const QuadratureRule& rule, const std::function<BigComplex(const BigComplex&)>& f) {
  BigComplex s(rule.prec > 0 ? rule.prec : kMinPrec);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) s = s + rule.weights[k] * f(rule.nodes[k]);
  return s;
}

std::vector<BigReal> moment_defects(const QuadratureRule& rule, long count) {
  const prec_t p = rule.prec;
  MomentSequence ms = moment_sequence(rule.nu, count, p);
  std::vector<BigComplex> pw = rule.weights;
  std::vector<BigReal> out;
  for (long j = 0; j < count; ++j) {
    BigComplex s(p);
    for (std::size_t k = 0; k < pw.size(); ++k) {
      s = s + pw[k];
      pw[k] = pw[k] * rule.nodes[k];
    }
    out.push_back(abs(s - ms.values[j]));
  }
  return out;
}

BigReal weight_symmetry_defect(const QuadratureRule& rule) {
  BigReal worst(rule.prec > 0 ? rule.prec : kMinPrec);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    BigComplex target = conj(rule.nodes[k]);
    std::size_t best = 0;
    BigReal bd = abs(rule.nodes[0] - target);
    for (std::size_t j = 1; j < rule.nodes.size(); ++j) {
      BigReal d = abs(rule.nodes[j] - target);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    worst = max(worst, abs(rule.weights[best] - conj(rule.weights[k])));
  }
  return worst;
}

}  // namespace oscq
