#include "oscq/errors.hpp"
#include "oscq/special.hpp"

namespace oscq {

namespace {

bool is_nonpositive_integer(const BigReal& x) { return x.is_integer() && x.sign() <= 0; }

}  // namespace

BigReal gamma_fn(const BigReal& x, prec_t prec) {
  if (!x.is_finite()) throw DomainError("gamma of a non-finite value");
  if (is_nonpositive_integer(x)) throw PoleError("gamma pole at " + x.to_string(20));
  BigReal r(prec + 32);
  mpfr_gamma(r.get(), x.get(), MPFR_RNDN);
  return r.with_prec(prec);
}

BigReal recip_gamma(const BigReal& x, prec_t prec) {
  if (!x.is_finite()) throw DomainError("recip_gamma of a non-finite value");
  if (is_nonpositive_integer(x)) return BigReal(prec);
  BigReal r(prec + 32);
  mpfr_gamma(r.get(), x.get(), MPFR_RNDN);
  BigReal one(1L, prec + 32);
  return (one / r).with_prec(prec);
}

}  // namespace oscq
