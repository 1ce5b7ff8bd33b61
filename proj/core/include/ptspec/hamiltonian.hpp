#pragma once

#include <cstddef>
#include <vector>

#include "ptspec/basis.hpp"
#include "ptspec/matrix.hpp"
#include "ptspec/model.hpp"

namespace ptspec {

struct ModelSpec {
  Model which = Model::Cubic12;
  double g = 0.0;
  Parity parity = Parity::Even;
  TruncationScheme trunc;
};

struct ExactEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  Amplitude value;
};

/// Exact matrix of W on one parity sector. W is real symmetric in the
/// oscillator basis and vanishes on the diagonal (it is odd in x).
struct ExactOperatorMatrix {
  ParitySector sector;
  std::vector<ExactEntry> entries;  // row-major, nonzero only

  std::size_t dim() const { return sector.size(); }
};

ExactOperatorMatrix build_exact_W(Model which, Parity parity, TruncationScheme trunc);

/// H restricted to one y-parity sector: diag(2(nx+ny)+2) + i g W.
/// Tagged complex symmetric. Throws InvalidArgument for non-finite g.
SparseComplexMatrix build_block(const ModelSpec& spec);

/// Same as build_block but reuses an already assembled exact W.
SparseComplexMatrix build_block(const ExactOperatorMatrix& w, double g);

}  // namespace ptspec
