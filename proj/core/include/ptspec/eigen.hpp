#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ptspec/error.hpp"
#include "ptspec/matrix.hpp"

namespace ptspec {

struct EigenOptions {
  bool wantVectors = false;
  /// With wantVectors, compute vectors only for the this many eigenvalues of
  /// smallest real part (0: all of them).
  std::size_t vectorCount = 0;
  /// Relative reality tolerance; scaled by the Frobenius norm of the matrix.
  double realityTol = 1e-9;
};

/// Eigenvalues sorted by ascending real part, then ascending imaginary part.
struct Spectrum {
  std::vector<Complex> values;
  /// Parallel to values when vectors were requested; an entry is empty when
  /// its vector was not selected. Unit norm, first significant component
  /// real positive.
  std::vector<ComplexVector> vectors;
  /// Absolute tolerance: |Im| below it counts as real.
  double realityTol = 0.0;
  double matrixNorm = 0.0;

  bool has_vector(std::size_t i) const { return i < vectors.size() && !vectors[i].empty(); }
};

class EigenError : public Error {
 public:
  enum class Kind { InvalidInput, NoConvergence, Unpairable };
  EigenError(Kind kind, const std::string& what, std::vector<Complex> partial = {})
      : Error(what), kind_(kind), partial_(std::move(partial)) {}
  Kind kind() const { return kind_; }
  /// Eigenvalues that had converged before the iteration budget ran out.
  const std::vector<Complex>& partial() const { return partial_; }

 private:
  Kind kind_;
  std::vector<Complex> partial_;
};

/// Dense eigen-decomposition (Hessenberg reduction + shifted QR). Matrices
/// that a diagonal unitary similarity makes real are solved in real
/// arithmetic; eigenvectors are mapped back to the input basis.
Spectrum eigenvalues(const ComplexMatrix& m, const EigenOptions& options = {});
Spectrum eigenvalues(const SparseComplexMatrix& m, const EigenOptions& options = {});
Spectrum eigenvalues(const SparseComplexMatrix& m, bool wantVectors);

struct PairClassification {
  std::vector<std::size_t> reals;                           // indices into Spectrum::values
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (Im > 0, Im < 0)
};

/// Splits the spectrum into real values and complex-conjugate pairs. A pair
/// partner must lie within pairTol (relative to max(1, |lambda|)) of the
/// conjugate. Throws EigenError::Unpairable otherwise.
PairClassification classify_pairs(const Spectrum& spectrum, double pairTol = 1e-8);

/// Diagonal phases d (|d_i| = 1) with diag(d)^-1 M diag(d) real, if any.
std::optional<ComplexVector> real_gauge(const ComplexMatrix& m);

}  // namespace ptspec
