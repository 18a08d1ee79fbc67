#pragma once

// Szego functions D1 (weight W_n) and D2 (phase e^{-+ nu pi i/2}), the global
// parametrix N0, and the outer/inner large-n evaluators of the rescaled polynomial.

#include <array>
#include <cstddef>
#include <vector>

#include "oscq/bigfloat.hpp"
#include "oscq/equilibrium.hpp"

namespace oscq {

using Mat2 = std::array<std::array<BigComplex, 2>, 2>;

/// (z^2-1)^{1/2}, analytic off [-1,1] and positive for z > 1.
BigComplex sqrt_z2m1(const BigComplex& z);
/// f(z) = z + (z^2-1)^{1/2}, exterior of the unit disk.
BigComplex conformal_f(const BigComplex& z);
/// beta(z) = ((z-1)/(z+1))^{1/4}.
BigComplex beta_fn(const BigComplex& z);

/// W_n(z) = sqrt(2n) K_nu(+-n pi z) e^{+-n pi z} for Re z >< 0.  Throws on Re z = 0.
BigComplex w_weight(const BigComplex& z, long n, const BigReal& nu, prec_t prec);
/// Limits of W_n at z = i y (y != 0); Plus from Re z < 0, Minus from Re z > 0.
BigComplex w_weight_imag_axis(const BigReal& y, Side side, long n, const BigReal& nu, prec_t prec);
/// log W_n(x) for real x != 0.
BigReal log_w_weight(const BigReal& x, long n, const BigReal& nu, prec_t prec);

/// Szego function of |x|^alpha: (z/(z+(z^2-1)^{1/2}))^{alpha/2}.
BigComplex szego_power(const BigComplex& z, const BigReal& alpha);

struct D1Options {
  prec_t prec = 128;
  /// Smallest |z| scale resolved by the cached node table (geometric mesh depth).
  double y_min = 1e-18;
  int min_level = 4;
  int max_level = 10;
  /// Relative accuracy target 2^(-tol_bits); 0 means prec - 24.
  long tol_bits = 0;
};

/// D_{1,n}(z) = exp( (z^2-1)^{1/2}/(2 pi) int_{-1}^{1} log W_n(x)/sqrt(1-x^2) dx/(z-x) ).
///
/// log W_n/sqrt(1-x^2) is tabulated once on a tanh-sinh rule over a geometric
/// mesh of [0,1] (plus a break at 1/(n pi)); evaluations well separated from
/// [-1,1] relative to the local mesh width reuse the table, others fall back to
/// adaptive quadrature.  Immutable after construction.
class SzegoD1 {
 public:
  SzegoD1(long n, const BigReal& nu, const D1Options& opt = {});

  BigComplex operator()(const BigComplex& z) const;
  /// Boundary values on (-1,1)\{0} (principal value integral).
  BigComplex boundary(const BigReal& x, Side side) const;
  /// lim_{z->inf} D_{1,n}(z) = exp((1/2pi) int log W_n/sqrt(1-x^2)).
  const BigReal& d_infty() const { return d_infty_; }

  bool uses_table(const BigComplex& z) const;
  int level() const { return level_; }
  std::size_t table_size() const { return x_.size(); }
  long n() const { return n_; }
  const BigReal& nu() const { return nu_; }
  prec_t prec() const { return opt_.prec; }

 private:
  BigReal integrand(const BigReal& x, const BigReal& one_minus_x) const;
  BigComplex exponent_table(const BigComplex& z) const;
  BigComplex exponent_adaptive(const BigComplex& z) const;
  std::vector<BigReal> mesh() const;

  long n_;
  BigReal nu_;
  D1Options opt_;
  BigReal y_min_;
  int level_ = 0;
  std::vector<BigReal> x_;
  std::vector<BigReal> wf_;  // weight * log W_n(x)/sqrt(1-x^2)
  BigReal d_infty_;
};

/// One-shot D_{1,n}(z); bit-identical to SzegoD1(n, nu, {prec})(z).
BigComplex d1n(const BigComplex& z, long n, const BigReal& nu, prec_t prec);
BigReal d_infty_n(long n, const BigReal& nu, prec_t prec);

/// D2(z) = (((z^2-1)^{1/2} - i)/((z^2-1)^{1/2} + i))^{nu/4}.
BigComplex d2(const BigComplex& z, const BigReal& nu);
/// Boundary values of D2 on (-1,1)\{0}.
BigComplex d2_boundary(const BigReal& x, Side side, const BigReal& nu);
/// |log D2(z) - (-+ nu pi psi/2 -+ nu pi i/4)| with the quadrant signs; psi(z) := psi(-z) for Re z < 0.
BigReal d2_psi_consistency(const BigComplex& z, const BigReal& nu);

/// N0 in the beta form.
Mat2 n0_matrix(const BigComplex& z);
/// N0 in the f form: (1/(sqrt2 (z^2-1)^{1/4})) [[f^{1/2}, i f^{-1/2}], [-i f^{-1/2}, f^{1/2}]].
Mat2 n0_matrix_f(const BigComplex& z);
/// Boundary values of N0 on (-1,1).
Mat2 n0_boundary(const BigReal& x, Side side);
BigComplex det(const Mat2& m);
Mat2 operator*(const Mat2& a, const Mat2& b);
/// max |a_ij - b_ij|
BigReal max_abs_diff(const Mat2& a, const Mat2& b);

enum class Regime { Outer, Inner };
const char* to_string(Regime r);

struct AsymptoticPrediction {
  BigComplex value;
  /// Relative size of the formula's O-term: eps_n (outer), log n/n + eps_n (inner).
  BigReal error_scale;
  Regime regime = Regime::Outer;
  // inner regime: value = prefactor * (term1 + term2)
  BigComplex prefactor;
  BigComplex term1;
  BigComplex term2;
};

/// Large-n form e^{n g} (z f/(2(z^2-1)))^{1/4} D2^{-1} of P~_n off [-1,1].
/// Throws DomainError when dist(z, [-1,1]) < min_dist.
AsymptoticPrediction outer_eval(const BigComplex& z, long n, const BigReal& nu, prec_t prec,
                                double min_dist = 0.2);

/// Inner box: 0 < |Re z| < 1, |Im z| <= kInnerBoxHeight.
inline constexpr double kInnerBoxHeight = 0.1;

/// Oscillatory form near (-1,1); Re z < 0 goes through P~_n(-conj z) = (-1)^n conj P~_n(z).
/// Throws DomainError outside the box or within delta of 0, 1, -1.
AsymptoticPrediction inner_eval(const BigComplex& z, long n, const BigReal& nu, double delta = 0.2);

/// |Re(nu pi psi(z)/2) - Im theta_n(z)|, Re z > 0.
BigReal zero_condition_defect(const BigComplex& z, long n, const BigReal& nu);

}  // namespace oscq
