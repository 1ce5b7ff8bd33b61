#pragma once

#include <cstddef>
#include <vector>

#include "ptspec/bigfloat.hpp"
#include "ptspec/error.hpp"
#include "ptspec/perturb.hpp"

namespace ptspec {

/// Rational approximant num(g) / den(g) with den[0] = 1; coefficients are
/// indexed by powers of g.
struct PadeApprox {
  int L = 0;
  int M = 0;
  std::vector<BigFloat> num;
  std::vector<BigFloat> den;
  /// True when the system was solved in exact arithmetic.
  bool exactSolve = false;
};

class PadeError : public Error {
 public:
  PadeError(const std::string& what, int rankDefect) : Error(what), rankDefect_(rankDefect) {}
  /// M minus the rank of the denominator system.
  int rankDefect() const { return rankDefect_; }

 private:
  int rankDefect_;
};

struct PadeOptions {
  mpfr_prec_t precision = 512;
  /// Largest L + M solved exactly when the series is exact.
  int exactLimit = 24;
};

/// [L/M] approximant of the series in g. Uses coefficients through g^(L+M).
/// Throws InvalidArgument when the series is too short and PadeError when
/// the denominator system is singular.
PadeApprox build_pade(const EnergySeries& s, int L, int M, const PadeOptions& options = {});

/// Same for raw coefficients c[i] of g^i.
PadeApprox build_pade(const std::vector<BigFloat>& coeffs, int L, int M, const PadeOptions& options = {});
PadeApprox build_pade(const std::vector<FieldElement>& coeffs, int L, int M, const PadeOptions& options = {});

struct PadeValue {
  double value = 0.0;
  /// |den(g)| < 1e-6 * sum_j |den_j| |g|^j.
  bool nearPole = false;
};

PadeValue evaluate(const PadeApprox& p, double g);
BigFloat evaluate_big(const PadeApprox& p, const BigFloat& g);

/// Real zeros of den in (a, b): sign changes on `gridPoints` equal cells,
/// refined by bisection to 1e-10. Zeros of even multiplicity are missed.
std::vector<double> real_poles(const PadeApprox& p, double a, double b, std::size_t gridPoints = 4000);

}  // namespace ptspec
