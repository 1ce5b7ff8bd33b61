#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>
#include <utility>

#include "ptspec/bigfloat.hpp"
#include "ptspec/error.hpp"

namespace ptspec {

/// Raised when an operation mixes two different quadratic fields Q(sqrt D1)
/// and Q(sqrt D2).
class RadicandConflict : public Error {
 public:
  RadicandConflict(const mpz_class& a, const mpz_class& b);
};

/// Writes n = s^2 * d with d square-free; returns {s, d}. n must be positive.
///
/// Trial division removes every prime below 2^20; a remaining cofactor is
/// absorbed into s when it is a perfect square and otherwise kept in d.
std::pair<mpz_class, mpz_class> squarefree_decompose(const mpz_class& n);

/// Exact scalar a + b * sqrt(D) with a, b rational and D square-free.
///
/// D == 0 marks a pure rational; canonical form keeps b == 0 <=> D == 0.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long value) : rat_(value) {}
  FieldElement(const mpq_class& value) : rat_(value) { rat_.canonicalize(); }
  /// a + b*sqrt(n) for any positive n; square factors of n are pulled into b.
  FieldElement(const mpq_class& a, const mpq_class& b, const mpz_class& n);

  const mpq_class& rational() const { return rat_; }
  const mpq_class& surd() const { return surd_; }
  const mpz_class& radicand() const { return radicand_; }

  bool is_zero() const { return sgn(rat_) == 0 && sgn(surd_) == 0; }
  bool is_rational() const { return sgn(surd_) == 0; }

  /// Exact sign of the real number a + b sqrt(D).
  int sign() const;
  /// Galois conjugate a - b sqrt(D).
  FieldElement conjugate() const;
  /// a^2 - b^2 D (the field norm).
  mpq_class norm() const;

  double to_double() const;
  BigFloat to_bigfloat(mpfr_prec_t precision) const;

  /// "p/q" or "p/q + r/s*sqrt(D)" ("-" replaces "+ -"); integers print without "/1".
  std::string to_string() const;
  /// Inverse of to_string; also accepts "+ -r/s*sqrt(D)" and bare "r/s*sqrt(D)".
  static FieldElement parse(std::string_view text);

  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);
  FieldElement operator-() const;

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.rat_ == b.rat_ && a.surd_ == b.surd_ && a.radicand_ == b.radicand_;
  }
  /// Exact ordering of the real values.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b);

 private:
  const mpz_class& merged_radicand(const FieldElement& rhs) const;
  void normalize();

  mpq_class rat_;
  mpq_class surd_;
  mpz_class radicand_;
};

inline bool is_zero(const FieldElement& x) { return x.is_zero(); }
inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }

}  // namespace ptspec
