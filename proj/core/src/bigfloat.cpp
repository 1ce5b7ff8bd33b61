#include "ptspec/bigfloat.hpp"

#include <algorithm>
#include <memory>

namespace ptspec {

namespace {

mpfr_prec_t clamp_precision(mpfr_prec_t p) { return std::max<mpfr_prec_t>(p, MPFR_PREC_MIN); }

// Promotes lhs to the wider precision of the pair before an in-place op.
void widen(BigFloat& lhs, const BigFloat& rhs) {
  if (rhs.precision() > lhs.precision()) lhs.set_precision(rhs.precision());
}

}  // namespace

BigFloat::BigFloat(double value, mpfr_prec_t precision) {
  mpfr_init2(value_, clamp_precision(precision));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& value, mpfr_prec_t precision) {
  mpfr_init2(value_, clamp_precision(precision));
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class& value, mpfr_prec_t precision) {
  mpfr_init2(value_, clamp_precision(precision));
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Steal by swapping with a freshly initialised minimal value.
  mpfr_init2(value_, MPFR_PREC_MIN);
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

void BigFloat::set_precision(mpfr_prec_t precision) { mpfr_prec_round(value_, clamp_precision(precision), MPFR_RNDN); }

mpz_class BigFloat::round_to_integer() const {
  mpz_class out;
  BigFloat r(*this);
  mpfr_round(r.value_, value_);
  mpfr_get_z(out.get_mpz_t(), r.value_, MPFR_RNDN);
  return out;
}

std::string BigFloat::to_string(int significant_digits) const {
  std::unique_ptr<char, void (*)(char*)> buf(nullptr, mpfr_free_str);
  char* raw = nullptr;
  std::string fmt = "%." + std::to_string(std::max(1, significant_digits - 1)) + "Re";
  mpfr_asprintf(&raw, fmt.c_str(), value_);
  buf.reset(raw);
  return raw ? std::string(raw) : std::string();
}

long BigFloat::exponent() const {
  if (!mpfr_regular_p(value_)) return mpfr_zero_p(value_) ? -(1L << 40) : (1L << 40);
  return mpfr_get_exp(value_);
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  widen(*this, rhs);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  widen(*this, rhs);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  widen(*this, rhs);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  widen(*this, rhs);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

BigFloat abs(const BigFloat& x) {
  BigFloat out(x);
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat out = BigFloat::zero(x.precision());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat pow(const BigFloat& x, long exponent) {
  BigFloat out = BigFloat::zero(x.precision());
  mpfr_pow_si(out.get(), x.get(), exponent, MPFR_RNDN);
  return out;
}

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  BigFloat r = re * rhs.re - im * rhs.im;
  BigFloat i = re * rhs.im + im * rhs.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& rhs) {
  BigFloat d = rhs.norm();
  BigFloat r = (re * rhs.re + im * rhs.im) / d;
  BigFloat i = (im * rhs.re - re * rhs.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigFloat BigComplex::norm() const { return re * re + im * im; }

BigFloat BigComplex::abs() const { return sqrt(norm()); }

}  // namespace ptspec
