#pragma once

// Moments of the Bessel weight J_nu on [0, inf), Hankel determinants and the
// monic orthogonal polynomials P_n (raw variable x) and their rescaled form
// P~_n(z) = (i n pi)^(-n) P_n(i n pi z).

#include <string>
#include <vector>

#include "oscq/bigfloat.hpp"
#include "oscq/quadrature.hpp"

namespace oscq {

/// m_j = 2^j Gamma((1+nu+j)/2) / Gamma((1+nu-j)/2); exactly 0 at poles of the denominator.
BigReal moment(long j, const BigReal& nu, prec_t prec);

struct MomentSequence {
  BigReal nu;
  std::vector<BigReal> values;  // m_0 .. m_K
  prec_t prec = 0;
};

MomentSequence moment_sequence(const BigReal& nu, long count, prec_t prec);

/// Delta_n = det[m_{i+j}], i,j < n.  Throws IndeterminateError when the
/// determinant cannot be distinguished from zero at this precision.
BigReal hankel_det(long n, const BigReal& nu, prec_t prec);

/// log2 of max|pivot| / min|pivot| of the n x n Hankel matrix (full pivoting).
double hankel_log2_condition(long n, const BigReal& nu, prec_t prec);

enum class Variable { RawX, RescaledZ };

std::string to_string(Variable v);

/// Monic polynomial z^n + c_{n-1} z^{n-1} + ... + c_0.
struct MonicPolynomial {
  long degree = 0;
  std::vector<BigComplex> coeffs;  // c_0 .. c_{n-1}
  Variable variable = Variable::RawX;

  prec_t prec() const { return coeffs.empty() ? kMinPrec : coeffs.front().prec(); }
  BigComplex eval(const BigComplex& z) const;
  /// Value and derivative by Horner.
  std::pair<BigComplex, BigComplex> eval_with_derivative(const BigComplex& z) const;
  MonicPolynomial with_prec(prec_t prec) const;
};

/// Builds a monic polynomial from its roots (for tests and synthetic data).
MonicPolynomial from_roots(const std::vector<BigComplex>& roots, Variable v);

/// P_n at fixed precision: solves sum_k c_k m_{j+k} = -m_{j+n}, j < n.
/// Throws IndeterminateError (Hankel matrix singular at this precision) or
/// ConvergenceError (residual target missed).
MonicPolynomial monic_op(long n, const BigReal& nu, prec_t prec);

struct AdaptiveOp {
  MonicPolynomial poly;
  prec_t prec_used = 0;
  double log2_condition = 0;   // log2 of the Hankel pivot ratio at prec_used
  double log2_residual = 0;    // log2 of max_j |residual_j| / row scale
  int attempts = 0;
};

/// Default precision cap for escalation; OSCQ_PREC_CAP (bits) overrides 2^20.
prec_t precision_cap();
/// Starting precision max(256, 16n).
prec_t default_start_prec(long n);

/// P_n with precision doubling from start (0 = default) until the Hankel
/// system is well determined and the residual target is met.
AdaptiveOp monic_op_adaptive(long n, const BigReal& nu, prec_t start = 0, prec_t cap = 0);

/// c~_k = c_k (i n pi)^(k-n).
MonicPolynomial rescale_to_tilde(const MonicPolynomial& p, long n);

/// Quadrature rule for the weight e^(-sgn(x) nu pi i/2) K_nu(n pi |x|) on R,
/// truncated where the weight falls below 2^(-prec) relative to polynomial growth
/// of degree max_degree.  The level is validated against closed-form moments of K_nu.
class BesselWeightRule {
 public:
  BesselWeightRule(long n, const BigReal& nu, long max_degree, prec_t prec);

  prec_t prec() const { return prec_; }
  long n() const { return n_; }
  /// Positive half-line nodes x_i > 0; the rule on R uses +-x_i.
  const std::vector<BigReal>& nodes() const { return rule_.x; }
  /// w_i K_nu(n pi x_i) (real part of the weight without the phase).
  const std::vector<BigReal>& k_weights() const { return kw_; }
  const BigComplex& phase() const { return phase_; }  // e^(-nu pi i/2)
  int level() const { return level_; }
  BigReal truncation() const { return cutoff_; }

  /// int_R f(x) w(x) dx.
  template <class F>
  BigComplex integrate(F&& f) const {
    BigComplex pos(prec_), neg(prec_);
    for (std::size_t i = 0; i < rule_.size(); ++i) {
      pos = pos + f(BigComplex(rule_.x[i])) * kw_[i];
      neg = neg + f(BigComplex(-rule_.x[i])) * kw_[i];
    }
    return pos * phase_ + neg * conj(phase_);
  }

 private:
  long n_;
  BigReal nu_;
  prec_t prec_;
  int level_ = 0;
  BigReal cutoff_;
  FixedRule rule_;
  std::vector<BigReal> kw_;
  BigComplex phase_;
};

/// int_0^inf x^k K_nu(a x) dx = 2^(k-1) a^(-k-1) Gamma((1+k+nu)/2) Gamma((1+k-nu)/2).
BigReal k_moment(long k, const BigReal& nu, const BigReal& a, prec_t prec);

struct OrthogonalityResidual {
  BigComplex value;        // int P~_n(x) x^j w(x) dx
  BigReal abs_integral;    // int |P~_n(x) x^j w(x)| dx
  BigReal weight_mass;     // int |w(x)| dx
};

OrthogonalityResidual orthogonality_residual(const MonicPolynomial& pt, long j, long n, const BigReal& nu,
                                             prec_t prec);
/// Same, reusing a prebuilt weight rule (must match n and nu).
OrthogonalityResidual orthogonality_residual(const MonicPolynomial& pt, long j, const BesselWeightRule& rule);

}  // namespace oscq
