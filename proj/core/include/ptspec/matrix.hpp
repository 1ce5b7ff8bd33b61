#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace ptspec {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense column-major complex matrix (LAPACK layout).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }
  Complex* data() { return data_.data(); }
  const Complex* data() const { return data_.data(); }

  ComplexVector apply(const ComplexVector& v) const;
  /// Frobenius norm.
  double norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

enum class SymmetryTag { ComplexSymmetric, General };

struct MatrixEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  Complex value;
};

/// Coordinate-form complex matrix with at most one entry per (row, col).
class SparseComplexMatrix {
 public:
  SparseComplexMatrix() = default;
  /// Entries are sorted row-major; duplicates or out-of-range indices throw.
  SparseComplexMatrix(std::size_t dim, std::vector<MatrixEntry> entries, SymmetryTag tag = SymmetryTag::General);

  std::size_t dim() const { return dim_; }
  const std::vector<MatrixEntry>& entries() const { return entries_; }
  SymmetryTag symmetry() const { return tag_; }

  ComplexMatrix to_dense() const;
  Complex trace() const;
  /// True when M == M^T exactly.
  bool is_transpose_symmetric() const;

 private:
  std::size_t dim_ = 0;
  std::vector<MatrixEntry> entries_;
  SymmetryTag tag_ = SymmetryTag::General;
};

/// One "row col re im" line per entry, 17 significant digits.
void write_coordinate(const SparseComplexMatrix& m, std::ostream& out);

}  // namespace ptspec
