#pragma once

// Equilibrium measure psi(x) = (1/pi) log((1 + sqrt(1-x^2))/|x|) on [-1,1] for
// the external field pi|x|, its log potential g, the constant ell, phi and theta_n.

#include "oscq/bigfloat.hpp"
#include "oscq/quadrature.hpp"

namespace oscq {

struct EquilibriumContext {
  prec_t prec = 128;
  /// Quadrature stops at relative error 2^(-tol_bits); 0 means prec - 24.
  long tol_bits = 0;
  int max_level = 12;

  QuadOptions quad() const;
};

/// Lens half-height used by the checks on the imaginary axis.
inline constexpr double kRho = 0.4;

BigReal psi_real(const BigReal& x);
/// Continuation (1/pi) log((1 + sqrt(1-z^2))/z) for Re z > 0, z not on [1, inf).
BigComplex psi_complex(const BigComplex& z);

/// Antiderivative (1/pi)(z L(z) + arcsin z), L = log((1+sqrt(1-z^2))/z); vanishes at 0+.
/// Analytic for Re z > 0 off [1, inf).
BigComplex psi_antiderivative(const BigComplex& z);

/// int_{-1}^x psi, closed form.
BigReal psi_cdf(const BigReal& x);
/// int_{-1}^x psi by quadrature (independent of the closed form).
BigReal psi_cdf_quadrature(const BigReal& x, const EquilibriumContext& ctx);
/// int_{-1}^{1} psi by quadrature.
BigReal psi_mass(const EquilibriumContext& ctx);

/// g(z) = int log(z-x) psi(x) dx for z off (-inf, 1].
BigComplex g_fn(const BigComplex& z, const EquilibriumContext& ctx);

enum class Side { Plus, Minus };

/// Boundary value of g on the real axis from the upper (Plus) or lower (Minus) half plane.
BigComplex g_boundary(const BigReal& x, Side side, const EquilibriumContext& ctx);

/// Log potential int log|x-t| psi(t) dt at real x.
BigReal log_potential(const BigReal& x, const EquilibriumContext& ctx);

/// ell = -2 - 2 log 2.
BigReal ell_const(prec_t prec);

/// phi = g - V/2 - ell/2 with V = pi z (Re z > 0), -pi z (Re z < 0).
BigComplex phi_fn(const BigComplex& z, const EquilibriumContext& ctx);

/// phi on the imaginary axis at z = i y (y != 0): Plus is the limit from
/// Re z < 0, Minus from Re z > 0; phi_- = phi_+ - pi z.
BigComplex phi_imag_axis(const BigReal& y, Side side, const EquilibriumContext& ctx);

/// Closed form of Re phi(+-is): -s log s + s log(1 + sqrt(1+s^2)) + log(s + sqrt(1+s^2)).
BigReal re_phi_imag_axis(const BigReal& s);

/// theta_n(z) = n pi int_z^1 psi + (1/4) arccos z - pi/4  (closed-form antiderivative).
BigComplex theta_n(const BigComplex& z, long n);
/// Same, with int_z^1 psi by quadrature along the segment from z to 1.
BigComplex theta_n_quadrature(const BigComplex& z, long n, const EquilibriumContext& ctx);

/// int_0^{1/e} y^alpha exp(-4 n y log(1/y)) dy by quadrature.
BigReal decay_integral(double alpha, long n, const EquilibriumContext& ctx);

}  // namespace oscq
