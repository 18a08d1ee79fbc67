#pragma once

#include <stdexcept>
#include <string>

namespace oscq {

/// Argument outside the mathematical domain of an operation (cuts, poles, x <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Gamma evaluated at a nonpositive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A Hankel determinant is too small to be distinguished from zero at the working precision.
class IndeterminateError : public std::runtime_error {
 public:
  IndeterminateError(const std::string& what, long prec_bits)
      : std::runtime_error(what), prec_bits_(prec_bits) {}
  long prec_bits() const { return prec_bits_; }

 private:
  long prec_bits_;
};

/// An iterative solver (Aberth, precision escalation, ...) missed its target.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double worst_residual)
      : std::runtime_error(what), worst_residual_(worst_residual) {}
  double worst_residual() const { return worst_residual_; }

 private:
  double worst_residual_;
};

/// Quadrature did not reach its error target; carries the achieved estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_error() const { return achieved_; }

 private:
  double achieved_;
};

}  // namespace oscq
