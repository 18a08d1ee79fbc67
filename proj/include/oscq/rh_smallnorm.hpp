#pragma once

// Jump functions j1, j2 on the imaginary segment, the eta kernels of the local
// problem at the origin, and the Hilbert-Schmidt bounds for K1, K2.

#include "oscq/bigfloat.hpp"
#include "oscq/parametrix.hpp"

namespace oscq {

/// Smooth cutoff: 1 for |y| <= eps, 0 for |y| >= 2 eps, and
/// 1 - h(t)/(h(t)+h(1-t)) with h(t) = exp(-1/t), t = (|y|-eps)/eps, in between.
struct CutoffChi {
  BigReal eps;

  explicit CutoffChi(const BigReal& e);
  static CutoffChi standard(prec_t prec);  // eps = 0.12
  BigReal operator()(const BigReal& y) const;
  static constexpr const char* kProfile = "exp-smoothstep";
};

inline constexpr double kDefaultEps = 0.12;

/// |j1(iy)| from Bessel J, Y at n pi y.
BigReal j1_modulus(const BigReal& y, long n, const BigReal& nu, prec_t prec);
/// |j2(-iy)| from Bessel J, Y at n pi y.
BigReal j2_modulus(const BigReal& y, long n, const BigReal& nu, prec_t prec);
/// j1(iy) straight from its definition (boundary values of phi and W); y > 0.
BigComplex j1_direct(const BigReal& y, long n, const BigReal& nu, prec_t prec);
/// j2(-iy) straight from its definition; y > 0.
BigComplex j2_direct(const BigReal& y, long n, const BigReal& nu, prec_t prec);

struct BesselRatioCheck {
  BigReal lhs1, rhs1;  // |J cos - Y sin|/(J^2+Y^2)  vs  s^nu (1+s^{1-2nu})/(1+s^{1/2-nu})
  BigReal lhs2, rhs2;  // |J|/(J^2+Y^2)             vs  s^{3nu} (1+s^{1-2nu})/(1+s^{1/2+nu})
};
BesselRatioCheck bessel_ratio_bounds_check(const BigReal& s, const BigReal& nu, prec_t prec);

struct EtaBoundCheck {
  BigReal eta1_mod;  // |eta1(iy)|
  BigReal bound1;    // y^nu e^{-2n Re phi}   (constant 1)
  BigReal eta2_mod;  // |eta2(-iy)|
  BigReal bound2;    // (n^{2nu} y^nu + n y^{1-nu}) e^{-2n Re phi}
  BigReal d1_sq;     // |D1(iy)|^2
  BigReal d1_shape;  // n^{1/2-nu} y^{-nu} / (1 + (ny)^{1/2-nu})
};
/// Both sides of the eta bounds at 0 < y <= rho.
EtaBoundCheck eta_bound_check(const BigReal& y, const CutoffChi& chi, const SzegoD1& d1);

struct KNormBounds {
  BigReal k1_bound;  // (int_0^{2eps} |eta1(iy)|^2/y dy)^{1/2}
  BigReal k2_bound;  // (int_0^{2eps} |eta2(-iy)|^2/y dy)^{1/2}
  BigReal product;
  long evaluations = 0;
};

struct KNormOptions {
  prec_t prec = 128;
  /// Relative accuracy of the y-integrals.
  long tol_bits = 40;
  /// Lower end of the y mesh; the rest uses the small-y law |eta|^2 ~ y^{2 nu}.
  double y_min = 1e-16;
};

KNormBounds k_norm_bounds(long n, const BigReal& nu, const CutoffChi& chi, const KNormOptions& opt = {});
/// Same, reusing a D1 table built for (n, nu).
KNormBounds k_norm_bounds(const SzegoD1& d1, const CutoffChi& chi, const KNormOptions& opt = {});

}  // namespace oscq
