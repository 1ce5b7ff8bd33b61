#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>

namespace ptspec {

/// Binary-precision MPFR real with value semantics.
///
/// Every value carries its own precision; binary operations produce a result
/// at the larger of the two operand precisions. Rounding is to nearest.
class BigFloat {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 256;

  BigFloat() : BigFloat(0.0) {}
  static BigFloat zero(mpfr_prec_t precision) { return BigFloat(0.0, precision); }
  BigFloat(double value, mpfr_prec_t precision = kDefaultPrecision);
  BigFloat(const mpq_class& value, mpfr_prec_t precision = kDefaultPrecision);
  BigFloat(const mpz_class& value, mpfr_prec_t precision = kDefaultPrecision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  /// Rounds in place to a new precision.
  void set_precision(mpfr_prec_t precision);

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Nearest integer (ties away from zero).
  mpz_class round_to_integer() const;
  /// Scientific notation with the requested number of significant digits.
  std::string to_string(int significant_digits = 30) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  /// Base-2 exponent e with 0.5 <= |x| / 2^e < 1; very negative for zero.
  long exponent() const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);

  friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
  friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
  friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
  friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }
  BigFloat operator-() const;

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

 private:
  mpfr_t value_;
};

inline bool is_zero(const BigFloat& x) { return x.is_zero(); }
BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat pow(const BigFloat& x, long exponent);

/// Minimal complex number over BigFloat, enough for polynomial root polishing.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  BigComplex() = default;
  static BigComplex zero(mpfr_prec_t precision) { return {BigFloat::zero(precision), BigFloat::zero(precision)}; }
  BigComplex(BigFloat real, BigFloat imag) : re(std::move(real)), im(std::move(imag)) {}

  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator/=(const BigComplex& rhs);
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }

  BigFloat norm() const;  // re^2 + im^2
  BigFloat abs() const;
};

}  // namespace ptspec
