#include "oscq/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "oscq/errors.hpp"

namespace oscq {

namespace {

constexpr mpfr_rnd_t R = MPFR_RNDN;

prec_t clamp_prec(prec_t p) { return std::max(p, kMinPrec); }

// Transcendental functions run with this many extra bits, then round.
constexpr prec_t kGuard = 32;

template <class F>
BigReal unary(const BigReal& x, F f) {
  BigReal tmp(x.prec() + kGuard);
  f(tmp.get(), x.get(), R);
  return tmp.with_prec(x.prec());
}

std::partial_ordering from_cmp(int c) {
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

}  // namespace

// ---------------------------------------------------------------- BigReal

BigReal::BigReal() : BigReal(kMinPrec) {}

BigReal::BigReal(prec_t prec) {
  mpfr_init2(v_, clamp_prec(prec));
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(double v, prec_t prec) {
  mpfr_init2(v_, clamp_prec(prec));
  mpfr_set_d(v_, v, R);
}

BigReal::BigReal(long v, prec_t prec) {
  mpfr_init2(v_, clamp_prec(prec));
  mpfr_set_si(v_, v, R);
}

BigReal::BigReal(std::string_view decimal, prec_t prec) {
  mpfr_init2(v_, clamp_prec(prec));
  std::string s(decimal);
  if (mpfr_set_str(v_, s.c_str(), 10, R) != 0) {
    mpfr_clear(v_);
    throw std::invalid_argument("not a decimal number: " + s);
  }
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(v_, other.prec());
  mpfr_set(v_, other.v_, R);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(v_, kMinPrec);
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    if (prec() != other.prec()) mpfr_set_prec(v_, other.prec());
    mpfr_set(v_, other.v_, R);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::ratio(long p, long q, prec_t prec) {
  BigReal r(p, prec + kGuard);
  mpfr_div_si(r.v_, r.v_, q, R);
  return r.with_prec(prec);
}

BigReal BigReal::pi(prec_t prec) {
  BigReal r(prec);
  mpfr_const_pi(r.v_, R);
  return r;
}

BigReal BigReal::ln2(prec_t prec) {
  BigReal r(prec);
  mpfr_const_log2(r.v_, R);
  return r;
}

BigReal BigReal::euler_gamma(prec_t prec) {
  BigReal r(prec);
  mpfr_const_euler(r.v_, R);
  return r;
}

BigReal BigReal::pow2(long e, prec_t prec) {
  BigReal r(1L, prec);
  mpfr_mul_2si(r.v_, r.v_, e, R);
  return r;
}

BigReal BigReal::with_prec(prec_t p) const {
  BigReal r(p);
  mpfr_set(r.v_, v_, R);
  return r;
}

int BigReal::roundtrip_digits(prec_t prec) {
  return static_cast<int>(std::ceil(static_cast<double>(prec) * 0.30103)) + 2;
}

std::string BigReal::to_string(int digits) const {
  if (digits <= 0) digits = roundtrip_digits(prec());
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

long BigReal::exponent() const {
  if (mpfr_zero_p(v_)) return mpfr_get_emin();
  return mpfr_get_exp(v_);
}

BigReal BigReal::operator-() const {
  BigReal r(prec());
  mpfr_neg(r.v_, v_, R);
  return r;
}

#define OSCQ_COMPOUND(op, fn)                                        \
  BigReal& BigReal::operator op(const BigReal& o) {                  \
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), R);         \
    fn(v_, v_, o.v_, R);                                             \
    return *this;                                                    \
  }
OSCQ_COMPOUND(+=, mpfr_add)
OSCQ_COMPOUND(-=, mpfr_sub)
OSCQ_COMPOUND(*=, mpfr_mul)
OSCQ_COMPOUND(/=, mpfr_div)
#undef OSCQ_COMPOUND

BigReal& BigReal::operator+=(long o) { mpfr_add_si(v_, v_, o, R); return *this; }
BigReal& BigReal::operator-=(long o) { mpfr_sub_si(v_, v_, o, R); return *this; }
BigReal& BigReal::operator*=(long o) { mpfr_mul_si(v_, v_, o, R); return *this; }
BigReal& BigReal::operator/=(long o) { mpfr_div_si(v_, v_, o, R); return *this; }

#define OSCQ_BINARY(op, fn)                                          \
  BigReal operator op(const BigReal& a, const BigReal& b) {          \
    BigReal r(std::max(a.prec(), b.prec()));                         \
    fn(r.v_, a.v_, b.v_, R);                                         \
    return r;                                                        \
  }
OSCQ_BINARY(+, mpfr_add)
OSCQ_BINARY(-, mpfr_sub)
OSCQ_BINARY(*, mpfr_mul)
OSCQ_BINARY(/, mpfr_div)
#undef OSCQ_BINARY

#define OSCQ_BINARY_SI(op, fn)                                       \
  BigReal operator op(const BigReal& a, long b) {                    \
    BigReal r(a.prec());                                             \
    fn(r.v_, a.v_, b, R);                                            \
    return r;                                                        \
  }
OSCQ_BINARY_SI(+, mpfr_add_si)
OSCQ_BINARY_SI(-, mpfr_sub_si)
OSCQ_BINARY_SI(*, mpfr_mul_si)
OSCQ_BINARY_SI(/, mpfr_div_si)
#undef OSCQ_BINARY_SI

BigReal operator-(long a, const BigReal& b) {
  BigReal r(b.prec());
  mpfr_si_sub(r.v_, a, b.v_, R);
  return r;
}

BigReal operator/(long a, const BigReal& b) {
  BigReal r(b.prec());
  mpfr_si_div(r.v_, a, b.v_, R);
  return r;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp(a.v_, b.v_));
}

std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp_si(a.v_, b));
}

std::partial_ordering operator<=>(const BigReal& a, double b) {
  if (mpfr_nan_p(a.v_) || std::isnan(b)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp_d(a.v_, b));
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.to_string(); }

BigReal abs(const BigReal& x) {
  BigReal r(x.prec());
  mpfr_abs(r.get(), x.get(), R);
  return r;
}

BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative number");
  BigReal r(x.prec());
  mpfr_sqrt(r.get(), x.get(), R);
  return r;
}

BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }
BigReal expm1(const BigReal& x) { return unary(x, mpfr_expm1); }

BigReal log(const BigReal& x) {
  if (x.sign() <= 0) throw DomainError("log of a nonpositive number");
  return unary(x, mpfr_log);
}

BigReal log1p(const BigReal& x) {
  if (x <= -1L) throw DomainError("log1p argument <= -1");
  return unary(x, mpfr_log1p);
}

BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }
BigReal sinh(const BigReal& x) { return unary(x, mpfr_sinh); }
BigReal cosh(const BigReal& x) { return unary(x, mpfr_cosh); }
BigReal tanh(const BigReal& x) { return unary(x, mpfr_tanh); }
BigReal atan(const BigReal& x) { return unary(x, mpfr_atan); }

BigReal asin(const BigReal& x) {
  if (abs(x) > 1L) throw DomainError("asin argument outside [-1,1]");
  return unary(x, mpfr_asin);
}

BigReal acos(const BigReal& x) {
  if (abs(x) > 1L) throw DomainError("acos argument outside [-1,1]");
  return unary(x, mpfr_acos);
}

BigReal atan2(const BigReal& y, const BigReal& x) {
  prec_t p = std::max(x.prec(), y.prec());
  BigReal r(p + kGuard);
  mpfr_atan2(r.get(), y.get(), x.get(), R);
  return r.with_prec(p);
}

BigReal pow(const BigReal& x, const BigReal& y) {
  prec_t p = std::max(x.prec(), y.prec());
  BigReal r(p + kGuard);
  mpfr_pow(r.get(), x.get(), y.get(), R);
  return r.with_prec(p);
}

BigReal pow(const BigReal& x, long k) {
  BigReal r(x.prec() + kGuard);
  mpfr_pow_si(r.get(), x.get(), k, R);
  return r.with_prec(x.prec());
}

BigReal floor(const BigReal& x) {
  BigReal r(x.prec());
  mpfr_floor(r.get(), x.get());
  return r;
}

BigReal round(const BigReal& x) {
  BigReal r(x.prec());
  mpfr_round(r.get(), x.get());
  return r;
}

BigReal ldexp(const BigReal& x, long e) {
  BigReal r(x.prec());
  mpfr_mul_2si(r.get(), x.get(), e, R);
  return r;
}

BigReal hypot(const BigReal& x, const BigReal& y) {
  prec_t p = std::max(x.prec(), y.prec());
  BigReal r(p);
  mpfr_hypot(r.get(), x.get(), y.get(), R);
  return r;
}

BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }

// ------------------------------------------------------------- BigComplex

BigComplex::BigComplex(const BigReal& re) : re_(re), im_(re.prec()) {}

BigComplex::BigComplex(const BigReal& re, const BigReal& im) {
  prec_t p = std::max(re.prec(), im.prec());
  re_ = re.prec() == p ? re : re.with_prec(p);
  im_ = im.prec() == p ? im : im.with_prec(p);
}

BigComplex BigComplex::polar(const BigReal& r, const BigReal& theta) {
  prec_t p = std::max(r.prec(), theta.prec());
  BigReal s(p + kGuard), c(p + kGuard);
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return {(r * c).with_prec(p), (r * s).with_prec(p)};
}

std::string BigComplex::to_string(int digits) const {
  return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ")";
}

BigComplex& BigComplex::operator+=(const BigComplex& o) { return *this = *this + o; }
BigComplex& BigComplex::operator-=(const BigComplex& o) { return *this = *this - o; }
BigComplex& BigComplex::operator*=(const BigComplex& o) { return *this = *this * o; }
BigComplex& BigComplex::operator/=(const BigComplex& o) { return *this = *this / o; }
BigComplex& BigComplex::operator*=(const BigReal& o) { return *this = *this * o; }
BigComplex& BigComplex::operator/=(const BigReal& o) { return *this = *this / o; }

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  if (b.is_zero()) throw DomainError("complex division by zero");
  if (b.im_.is_zero()) return {a.re_ / b.re_, a.im_ / b.re_};
  BigReal d = b.re_ * b.re_ + b.im_ * b.im_;
  return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
}

std::ostream& operator<<(std::ostream& os, const BigComplex& z) { return os << z.to_string(); }

BigComplex conj(const BigComplex& z) { return {z.re(), -z.im()}; }
BigReal abs(const BigComplex& z) { return hypot(z.re(), z.im()); }
BigReal norm(const BigComplex& z) { return z.re() * z.re() + z.im() * z.im(); }
BigReal arg(const BigComplex& z) { return atan2(z.im(), z.re()); }

BigComplex exp(const BigComplex& z) {
  prec_t p = z.prec();
  BigComplex w = z.with_prec(p + kGuard);
  return BigComplex::polar(exp(w.re()), w.im()).with_prec(p);
}

BigComplex log(const BigComplex& z) {
  if (z.is_zero()) throw DomainError("log of zero");
  prec_t p = z.prec();
  BigComplex w = z.with_prec(p + kGuard);
  return BigComplex(log(abs(w)), arg(w)).with_prec(p);
}

BigComplex sqrt(const BigComplex& z) {
  prec_t p = z.prec();
  if (z.is_zero()) return BigComplex(p);
  BigComplex w = z.with_prec(p + kGuard);
  BigReal r = abs(w);
  if (w.re().sign() >= 0) {
    BigReal t = sqrt((r + w.re()) / 2L);
    return BigComplex(t, w.im() / (t * 2L)).with_prec(p);
  }
  BigReal t = sqrt((r - w.re()) / 2L);
  BigReal re = abs(w.im()) / (t * 2L);
  bool neg = mpfr_signbit(w.im().get()) != 0;
  return BigComplex(re, neg ? -t : t).with_prec(p);
}

BigComplex pow(const BigComplex& z, const BigReal& a) {
  prec_t p = std::max(z.prec(), a.prec());
  if (z.is_zero()) {
    if (a.sign() > 0) return BigComplex(p);
    throw DomainError("zero raised to a nonpositive power");
  }
  BigComplex w = z.with_prec(p + kGuard);
  return exp(log(w) * a.with_prec(p + kGuard)).with_prec(p);
}

BigComplex pow(const BigComplex& z, long k) {
  prec_t p = z.prec();
  BigComplex base = z.with_prec(p + kGuard);
  bool inv = k < 0;
  unsigned long e = inv ? static_cast<unsigned long>(-(k + 1)) + 1 : static_cast<unsigned long>(k);
  BigComplex acc(BigReal(1L, p + kGuard));
  while (e) {
    if (e & 1UL) acc *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  if (inv) acc = BigComplex(BigReal(1L, p + kGuard)) / acc;
  return acc.with_prec(p);
}

BigComplex sin(const BigComplex& z) {
  prec_t p = z.prec();
  BigComplex w = z.with_prec(p + kGuard);
  return BigComplex(sin(w.re()) * cosh(w.im()), cos(w.re()) * sinh(w.im())).with_prec(p);
}

BigComplex cos(const BigComplex& z) {
  prec_t p = z.prec();
  BigComplex w = z.with_prec(p + kGuard);
  return BigComplex(cos(w.re()) * cosh(w.im()), -(sin(w.re()) * sinh(w.im()))).with_prec(p);
}

BigComplex acos(const BigComplex& z) {
  prec_t p = z.prec();
  BigComplex w = z.with_prec(p + 2 * kGuard);
  BigComplex one(BigReal(1L, w.prec()));
  BigComplex s = sqrt(one - w * w);
  BigComplex l = log(w + times_i(s));
  return BigComplex(l.im(), -l.re()).with_prec(p);
}

BigComplex asin(const BigComplex& z) {
  prec_t p = z.prec();
  BigComplex w = z.with_prec(p + 2 * kGuard);
  BigComplex one(BigReal(1L, w.prec()));
  BigComplex s = sqrt(one - w * w);
  BigComplex l = log(times_i(w) + s);
  return BigComplex(l.im(), -l.re()).with_prec(p);
}

}  // namespace oscq
