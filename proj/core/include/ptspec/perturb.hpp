#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptspec/bigfloat.hpp"
#include "ptspec/field.hpp"
#include "ptspec/model.hpp"

namespace ptspec {

/// E_{nk}: level n of the unperturbed oscillator, branch k within the level.
struct LevelLabel {
  int n = 0;
  int k = 0;
  Parity parity = Parity::Even;

  friend bool operator==(const LevelLabel&, const LevelLabel&) = default;
};

std::string to_string(const LevelLabel& label);

/// Perturbative energy of one branch, E(g) = sum_j c_j g^(2j).
///
/// Odd powers vanish identically, so only even powers are stored. Exact
/// series keep every c_j in Q or in one quadratic field Q(sqrt fieldRadicand);
/// series from the floating-point fallback keep them in floatCoeffs instead.
struct EnergySeries {
  Model which = Model::Cubic12;
  LevelLabel label;
  bool exact = true;
  mpz_class fieldRadicand = 0;
  std::vector<FieldElement> coeffs;
  std::vector<BigFloat> floatCoeffs;
  int maxOrder = 0;
  /// Set when this branch stays degenerate with another branch of the same
  /// parity sector through maxOrder (the splitting was never resolved).
  bool sharedTail = false;

  /// Number of stored coefficients (powers g^0 .. g^(2 size - 2)).
  std::size_t size() const { return exact ? coeffs.size() : floatCoeffs.size(); }
  /// Exact coefficient of g^power; zero for odd powers and beyond maxOrder.
  /// Throws PerturbError on a floating-point series.
  FieldElement coefficient(int power) const;
  /// Coefficient of g^(2j) rounded to `precision` bits.
  BigFloat value(std::size_t j, mpfr_prec_t precision = 256) const;
};

class PerturbError : public Error {
 public:
  enum class Kind {
    /// Branch coefficients need two different quadratic fields.
    RadicandConflict,
    /// An effective-matrix eigenvalue lies outside every quadratic field.
    UnsupportedField,
    /// An effective matrix is not diagonalizable over its eigenvalue field.
    NonSemisimple,
    /// An exact coefficient was requested from a floating-point series.
    NotExact,
  };
  PerturbError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct SeriesOptions {
  /// When an effective matrix has eigenvalues outside every quadratic field,
  /// redo that parity sector in floating point instead of throwing.
  bool floatFallback = false;
  mpfr_prec_t floatPrecision = 384;
};

/// Degenerate Rayleigh-Schroedinger series for the n+1 branches of level n,
/// through g^maxOrder (maxOrder even, >= 2). Branches are labelled
/// k = 0..n by descending g^2 coefficient, then descending g^4 coefficient,
/// then even parity before odd, then descending higher coefficients.
std::vector<EnergySeries> effective_series(Model which, int n, int maxOrder, const SeriesOptions& options = {});

/// Pairs {label produced here, conventional label} for the branches whose
/// customary indices within a level differ from the ordering rule above.
std::vector<std::pair<std::string, std::string>> conventional_label_map(Model which);

/// Partial sum over powers <= orderCap at the working precision of g.
BigFloat evaluate_series(const EnergySeries& s, const BigFloat& g, int orderCap);
double evaluate_series(const EnergySeries& s, double g, int orderCap);

/// Signs (+1/-1) of the nonzero coefficients of g^2, g^4, ...
std::vector<int> sign_pattern(const EnergySeries& s);

}  // namespace ptspec
