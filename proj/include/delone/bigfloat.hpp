#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace delone {

/// Owning wrapper around an MPFR value with a fixed precision.
///
/// Only the handful of operations needed for bounded-error evaluation of
/// quadratic irrationals are exposed; every arithmetic entry point takes an
/// explicit rounding mode so callers can build rigorous enclosures.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = 53);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat from_rational(const mpq_class& q, mpfr_prec_t bits,
                                mpfr_rnd_t rnd = MPFR_RNDN);
  static BigFloat from_double(double v, mpfr_prec_t bits);

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const;
  /// Decimal rendering with `digits` significant digits.
  std::string to_string(int digits) const;
  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  mpz_class floor_to_integer() const;

  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }

 private:
  mpfr_t value_;
};

int compare(const BigFloat& a, const BigFloat& b);

}  // namespace delone
