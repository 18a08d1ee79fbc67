#pragma once

// Gamma and Bessel functions at arbitrary precision.
//
// Every function takes the target precision explicitly; inputs are read at
// whatever precision they carry.  Relative error target is 2^(-prec+16).

#include "oscq/bigfloat.hpp"

namespace oscq {

/// 1/Gamma(x); exactly zero at nonpositive integers.
BigReal recip_gamma(const BigReal& x, prec_t prec);
/// Gamma(x); throws PoleError at nonpositive integers.
BigReal gamma_fn(const BigReal& x, prec_t prec);

/// Modified Bessel K_nu(x), x > 0.  Any real nu (K is even in nu).
BigReal bessel_k(const BigReal& nu, const BigReal& x, prec_t prec);
/// e^x K_nu(x); avoids underflow-prone products for large x.
BigReal bessel_k_scaled(const BigReal& nu, const BigReal& x, prec_t prec);
/// e^z K_nu(z) for complex z with Re z >= 0, z != 0 (principal branch).
BigComplex bessel_k_scaled(const BigReal& nu, const BigComplex& z, prec_t prec);

BigReal bessel_j(const BigReal& nu, const BigReal& x, prec_t prec);
BigReal bessel_y(const BigReal& nu, const BigReal& x, prec_t prec);

struct BesselJY {
  BigReal j;
  BigReal y;
};
/// J_nu(x) and Y_nu(x) together (shares the expensive part).
BesselJY bessel_jy(const BigReal& nu, const BigReal& x, prec_t prec);

/// Argument above which the large-argument expansions are used at working precision wp.
double bessel_asymptotic_threshold(prec_t wp);

}  // namespace oscq
