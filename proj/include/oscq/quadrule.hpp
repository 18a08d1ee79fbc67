#pragma once

// Complex Gaussian rules for the Bessel weight: nodes are the zeros of P_n,
// weights reproduce the moments m_0..m_{n-1}.

#include <functional>
#include <vector>

#include "oscq/bigfloat.hpp"

namespace oscq {

struct QuadratureRule {
  BigReal nu;
  long n = 0;
  std::vector<BigComplex> nodes;    // zeros of P_n (raw x frame)
  std::vector<BigComplex> weights;
  /// max_{j <= 2n-1} |sum_k w_k x_k^j - m_j| / max_j |m_j|
  BigReal exactness_report;
  /// same without the normalisation
  BigReal exactness_abs;
  prec_t prec = 0;  // working precision of P_n and the nodes
};

/// prec is the starting precision for P_n (0 = default); it escalates as needed.
QuadratureRule gauss_rule(long n, const BigReal& nu, prec_t prec = 0);

/// sum_k w_k f(x_k); targets the regularised value int_0^inf f J_nu.
BigComplex apply_rule(const QuadratureRule& rule, const std::function<BigComplex(const BigComplex&)>& f);

/// |sum_k w_k x_k^j - m_j| for j = 0..count-1, at the rule's precision.
std::vector<BigReal> moment_defects(const QuadratureRule& rule, long count);

/// Largest |w(conj x) - conj w(x)| over the nodes (real moments).
BigReal weight_symmetry_defect(const QuadratureRule& rule);

}  // namespace oscq
