#pragma once

// Precision-carrying real and complex scalars on top of MPFR.
//
// Every value knows its precision in bits.  Binary operations produce a result
// at the larger of the two operand precisions; plain integer/double operands
// are exact and do not contribute to the result precision.

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace oscq {

using prec_t = long;

inline constexpr prec_t kMinPrec = 64;

class BigReal {
 public:
  BigReal();
  explicit BigReal(prec_t prec);
  BigReal(double v, prec_t prec);
  BigReal(long v, prec_t prec);
  BigReal(int v, prec_t prec) : BigReal(static_cast<long>(v), prec) {}
  BigReal(std::string_view decimal, prec_t prec);
  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  /// p/q rounded to prec.
  static BigReal ratio(long p, long q, prec_t prec);
  static BigReal pi(prec_t prec);
  static BigReal ln2(prec_t prec);
  static BigReal euler_gamma(prec_t prec);
  /// 2^e exactly.
  static BigReal pow2(long e, prec_t prec);

  prec_t prec() const { return mpfr_get_prec(v_); }
  /// Copy rounded (nearest) to a new precision.
  BigReal with_prec(prec_t prec) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Scientific notation with the given number of significant digits (0 = enough for prec).
  std::string to_string(int digits = 0) const;
  /// Number of decimal digits that round-trip this precision: ceil(prec*log10(2)) + 2.
  static int roundtrip_digits(prec_t prec);

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with |x| in [2^(e-1), 2^e); very negative for zero.
  long exponent() const;

  BigReal operator-() const;
  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal& operator+=(long o);
  BigReal& operator-=(long o);
  BigReal& operator*=(long o);
  BigReal& operator/=(long o);

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator+(const BigReal& a, long b);
  friend BigReal operator-(const BigReal& a, long b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator+(long a, const BigReal& b) { return b + a; }
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator/(long a, const BigReal& b);

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b);
  friend bool operator==(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, double b);

  friend std::ostream& operator<<(std::ostream& os, const BigReal& x);

 private:
  mpfr_t v_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal expm1(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log1p(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal tanh(const BigReal& x);
BigReal atan(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal asin(const BigReal& x);
BigReal acos(const BigReal& x);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, long k);
BigReal floor(const BigReal& x);
BigReal round(const BigReal& x);
BigReal ldexp(const BigReal& x, long e);
BigReal hypot(const BigReal& x, const BigReal& y);
BigReal max(const BigReal& a, const BigReal& b);
BigReal min(const BigReal& a, const BigReal& b);

class BigComplex {
 public:
  BigComplex() = default;
  explicit BigComplex(prec_t prec) : re_(prec), im_(prec) {}
  explicit BigComplex(const BigReal& re);
  BigComplex(const BigReal& re, const BigReal& im);
  BigComplex(double re, double im, prec_t prec) : re_(re, prec), im_(im, prec) {}

  static BigComplex i(prec_t prec) { return {BigReal(prec), BigReal(1L, prec)}; }
  /// e^{i*theta}
  static BigComplex polar(const BigReal& r, const BigReal& theta);

  const BigReal& re() const { return re_; }
  const BigReal& im() const { return im_; }
  prec_t prec() const { return re_.prec(); }
  BigComplex with_prec(prec_t prec) const { return {re_.with_prec(prec), im_.with_prec(prec)}; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  std::string to_string(int digits = 0) const;

  BigComplex operator-() const { return {-re_, -im_}; }
  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  BigComplex& operator*=(const BigReal& o);
  BigComplex& operator/=(const BigReal& o);

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator+(const BigComplex& a, const BigReal& b) { return {a.re_ + b, a.im_}; }
  friend BigComplex operator-(const BigComplex& a, const BigReal& b) { return {a.re_ - b, a.im_}; }
  friend BigComplex operator*(const BigComplex& a, const BigReal& b) { return {a.re_ * b, a.im_ * b}; }
  friend BigComplex operator/(const BigComplex& a, const BigReal& b) { return {a.re_ / b, a.im_ / b}; }
  friend BigComplex operator+(const BigReal& a, const BigComplex& b) { return b + a; }
  friend BigComplex operator-(const BigReal& a, const BigComplex& b) { return {a - b.re_, -b.im_}; }
  friend BigComplex operator*(const BigReal& a, const BigComplex& b) { return b * a; }
  friend BigComplex operator/(const BigReal& a, const BigComplex& b) { return BigComplex(a) / b; }
  friend BigComplex operator+(const BigComplex& a, long b) { return {a.re_ + b, a.im_}; }
  friend BigComplex operator-(const BigComplex& a, long b) { return {a.re_ - b, a.im_}; }
  friend BigComplex operator*(const BigComplex& a, long b) { return {a.re_ * b, a.im_ * b}; }
  friend BigComplex operator/(const BigComplex& a, long b) { return {a.re_ / b, a.im_ / b}; }
  friend BigComplex operator-(long a, const BigComplex& b) { return {a - b.re_, -b.im_}; }

  friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend std::ostream& operator<<(std::ostream& os, const BigComplex& z);

 private:
  BigReal re_;
  BigReal im_;
};

BigComplex conj(const BigComplex& z);
BigReal abs(const BigComplex& z);
BigReal norm(const BigComplex& z);  // |z|^2
BigReal arg(const BigComplex& z);   // principal, in (-pi, pi]
BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);   // principal branch
BigComplex sqrt(const BigComplex& z);  // principal branch, Re >= 0
BigComplex pow(const BigComplex& z, const BigReal& a);  // exp(a*log z), principal
BigComplex pow(const BigComplex& z, long k);
BigComplex sin(const BigComplex& z);
BigComplex cos(const BigComplex& z);
/// Principal arccos: arccos z = -i log(z + i sqrt(1 - z^2)).
BigComplex acos(const BigComplex& z);
/// Principal arcsin: arcsin z = -i log(i z + sqrt(1 - z^2)).
BigComplex asin(const BigComplex& z);

/// Multiply by i.
inline BigComplex times_i(const BigComplex& z) { return {-z.im(), z.re()}; }

}  // namespace oscq
