#include "ptspec/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "ptspec/error.hpp"

namespace ptspec {

ComplexVector ComplexMatrix::apply(const ComplexVector& v) const {
  ComplexVector out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    const Complex vc = v[c];
    if (vc == Complex{}) continue;
    const Complex* col = data_.data() + c * rows_;
    for (std::size_t r = 0; r < rows_; ++r) out[r] += col[r] * vc;
  }
  return out;
}

double ComplexMatrix::norm() const {
  double s = 0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

SparseComplexMatrix::SparseComplexMatrix(std::size_t dim, std::vector<MatrixEntry> entries, SymmetryTag tag)
    : dim_(dim), entries_(std::move(entries)), tag_(tag) {
  std::sort(entries_.begin(), entries_.end(),
            [](const MatrixEntry& a, const MatrixEntry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.row >= dim_ || e.col >= dim_) throw InvalidArgument("sparse entry index out of range");
    if (i > 0 && entries_[i - 1].row == e.row && entries_[i - 1].col == e.col)
      throw InvalidArgument("duplicate sparse entry");
  }
}

ComplexMatrix SparseComplexMatrix::to_dense() const {
  ComplexMatrix out(dim_, dim_);
  for (const auto& e : entries_) out(e.row, e.col) = e.value;
  return out;
}

Complex SparseComplexMatrix::trace() const {
  Complex t{};
  for (const auto& e : entries_)
    if (e.row == e.col) t += e.value;
  return t;
}

bool SparseComplexMatrix::is_transpose_symmetric() const {
  for (const auto& e : entries_) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), e, [](const MatrixEntry& a, const MatrixEntry& key) {
      return a.row != key.col ? a.row < key.col : a.col < key.row;
    });
    if (it == entries_.end() || it->row != e.col || it->col != e.row || it->value != e.value) return false;
  }
  return true;
}

void write_coordinate(const SparseComplexMatrix& m, std::ostream& out) {
  for (const auto& e : m.entries())
    out << fmt::format("{} {} {:.17g} {:.17g}\n", e.row, e.col, e.value.real(), e.value.imag());
}

}  // namespace ptspec
