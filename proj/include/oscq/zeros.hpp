#pragma once

#include <optional>
#include <vector>

#include "oscq/bigfloat.hpp"
#include "oscq/moments.hpp"

namespace oscq {

struct ZeroSet {
  std::vector<BigComplex> roots;
  std::vector<BigReal> residuals;  // |P(r)/P'(r)| at the final roots
  Variable variable = Variable::RawX;
  int sweeps = 0;
  prec_t prec = 0;

  BigReal max_residual() const;
};

struct AberthOptions {
  int max_sweeps = 500;
  /// Correction threshold exponent: stop when |P/P'| < 2^(-tol_bits) * max(1, |z|).  0 = prec/2.
  long tol_bits = 0;
};

/// Aberth-Ehrlich simultaneous iteration; throws ConvergenceError after max_sweeps.
ZeroSet find_zeros(const MonicPolynomial& p, const AberthOptions& opt = {});

/// |sum of roots + c_{n-1}| / max(1, |c_{n-1}|, max|root|).
BigReal vieta_sum_defect(const MonicPolynomial& p, const ZeroSet& zs);
/// |prod of roots - (-1)^n c_0| / max(1, |c_0|).
BigReal vieta_product_defect(const MonicPolynomial& p, const ZeroSet& zs);
/// Largest distance from the mirror image of r (conj r for P_n, -conj r for P~_n) to the nearest root.
BigReal reflection_defect(const ZeroSet& zs);

/// epsilon_n = n^(nu-1/2) / (log n)^(nu+1/2).
double epsilon_n(long n, double nu);

struct ZeroLineStats {
  std::optional<double> max_dev;  // empty when no root is retained
  long zeros_considered = 0;
  double epsilon_n = 0;
};

/// Deviation of retained zeros of P_n (z = i n pi w) from the line Re z = nu pi/2.
ZeroLineStats zero_line_stats(const ZeroSet& zs, long n, double nu, double delta);

struct TildeZeros {
  AdaptiveOp op;           // P_n and the precision it needed
  MonicPolynomial tilde;   // P~_n
  ZeroSet zeros;           // zeros of P~_n
};
/// P_n from moments (adaptive precision), rescaled to P~_n, and its zeros.
TildeZeros tilde_zeros(long n, const BigReal& nu, prec_t start = 0);
/// x = i n pi w.
BigComplex raw_from_tilde(const BigComplex& w, long n);

/// Kolmogorov distance between the empirical CDF of Re w_j and the equilibrium CDF.
BigReal ecdf_vs_psi(const ZeroSet& zs);

}  // namespace oscq
