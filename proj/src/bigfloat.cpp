#include "delone/bigfloat.hpp"

#include <utility>
#include <vector>

namespace delone {

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::from_rational(const mpq_class& q, mpfr_prec_t bits,
                                 mpfr_rnd_t rnd) {
  BigFloat out(bits);
  mpfr_set_q(out.value_, q.get_mpq_t(), rnd);
  return out;
}

BigFloat BigFloat::from_double(double v, mpfr_prec_t bits) {
  BigFloat out(bits);
  mpfr_set_d(out.value_, v, MPFR_RNDN);
  return out;
}

double BigFloat::to_double(mpfr_rnd_t rnd) const {
  return mpfr_get_d(value_, rnd);
}

std::string BigFloat::to_string(int digits) const {
  // %.*Rg gives a locale-independent, deterministic rendering.
  int len = mpfr_snprintf(nullptr, 0, "%.*Rg", digits, value_);
  std::vector<char> buf(static_cast<std::size_t>(len) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

mpz_class BigFloat::floor_to_integer() const {
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDD);
  return out;
}

int compare(const BigFloat& a, const BigFloat& b) {
  return mpfr_cmp(a.raw(), b.raw());
}

}  // namespace delone
