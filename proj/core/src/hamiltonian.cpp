#include "ptspec/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ptspec/error.hpp"

namespace ptspec {

ExactOperatorMatrix build_exact_W(Model which, Parity parity, TruncationScheme trunc) {
  ExactOperatorMatrix out{enumerate_sector(parity, trunc), {}};
  const auto op = decompose_potential(which);

  std::set<std::pair<int, int>> shifts;
  for (const auto& m : op) shifts.insert(word_shift(m));

  for (std::size_t row = 0; row < out.sector.size(); ++row) {
    const BasisState& bra = out.sector[row];
    std::vector<std::size_t> cols;
    for (auto [dx, dy] : shifts) {
      // ket = bra - shift
      BasisState ket{bra.nx - dx, bra.ny - dy};
      if (ket.nx < 0 || ket.ny < 0) continue;
      if (auto idx = out.sector.index_of(ket)) cols.push_back(*idx);
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    for (auto col : cols) {
      Amplitude a = matrix_element(op, bra, out.sector[col]);
      if (!a.is_zero()) out.entries.push_back({row, col, std::move(a)});
    }
  }
  return out;
}

SparseComplexMatrix build_block(const ExactOperatorMatrix& w, double g) {
  if (!std::isfinite(g)) throw InvalidArgument("coupling g must be finite");
  std::vector<MatrixEntry> entries;
  entries.reserve(w.entries.size() + w.dim());
  for (std::size_t i = 0; i < w.dim(); ++i)
    entries.push_back({i, i, Complex(static_cast<double>(w.sector[i].unperturbed_energy()), 0.0)});
  if (g != 0.0)
    for (const auto& e : w.entries) entries.push_back({e.row, e.col, Complex(0.0, g * e.value.to_double())});
  return SparseComplexMatrix(w.dim(), std::move(entries), SymmetryTag::ComplexSymmetric);
}

SparseComplexMatrix build_block(const ModelSpec& spec) {
  if (!std::isfinite(spec.g)) throw InvalidArgument("coupling g must be finite");
  return build_block(build_exact_W(spec.which, spec.parity, spec.trunc), spec.g);
}

}  // namespace ptspec
