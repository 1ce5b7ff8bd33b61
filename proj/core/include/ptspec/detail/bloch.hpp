#pragma once

// Building blocks of the degenerate perturbation engine, exposed for tests.
//
// Stage one folds the full oscillator basis onto one degenerate shell of one
// parity sector with Bloch's wave-operator recursion, producing an effective
// Hamiltonian series in t = mu^2, where the interaction is mu * What and
// mu = i g 2^(-3/2). Working in the unnormalised basis |n) = (a^dagger)^n|0>
// keeps every matrix element rational; the effective matrices are then only
// similar (by a diagonal matrix) to the symmetric ones, which leaves the
// eigenvalue series unchanged.
//
// Stage two splits a small matrix series N(t) = N0 + t N1 + ... into its
// eigenvalue branches by repeatedly reducing onto eigenspaces of the leading
// matrix over Q or Q(sqrt D).

#include <cstddef>
#include <vector>

#include "ptspec/basis.hpp"
#include "ptspec/bigfloat.hpp"
#include "ptspec/detail/dense.hpp"
#include "ptspec/field.hpp"
#include "ptspec/model.hpp"

namespace ptspec::detail {

using RationalMatrix = DenseMatrix<mpq_class>;
using FieldMatrix = DenseMatrix<FieldElement>;
using MatrixSeries = std::vector<FieldMatrix>;

struct ShellEffectiveHamiltonian {
  Parity parity = Parity::Even;
  std::vector<BasisState> shell;         // degenerate states, sector order
  std::vector<RationalMatrix> by_t;      // by_t[j]: coefficient of t^j, j = 0..maxOrder/2
};

/// Effective Hamiltonian of shell n within one parity sector through g^maxOrder.
/// Empty `shell` when the sector has no state with nx + ny == n.
ShellEffectiveHamiltonian shell_effective_hamiltonian(Model which, Parity parity, int n, int maxOrder);

struct ExactEigenvalue {
  FieldElement value;
  std::size_t multiplicity = 0;
};

/// Distinct eigenvalues of a diagonalizable matrix over Q or Q(sqrt D) whose
/// eigenvalues lie in Q or a single quadratic extension. Throws PerturbError.
std::vector<ExactEigenvalue> exact_eigenvalues(const FieldMatrix& a);

/// Bloch reduction of N(t) onto the alpha-eigenspace of N[0]; returns the
/// multiplicity x multiplicity series C(t) with C[0] = alpha I and the same
/// eigenvalue branches as N(t) restricted to that eigenspace.
MatrixSeries reduce_to_eigenspace(const MatrixSeries& series, const FieldElement& alpha, std::size_t multiplicity);

struct BranchCoefficients {
  std::vector<FieldElement> coeffs;  // power series in t
  bool sharedTail = false;
};

/// Eigenvalue branches of N(t) as power series in t through the series length.
std::vector<BranchCoefficients> eigen_series(const MatrixSeries& series);

using FloatMatrix = DenseMatrix<BigFloat>;

struct FloatBranch {
  std::vector<BigFloat> coeffs;
  bool sharedTail = false;
};

/// Floating-point counterpart of eigen_series for leading matrices whose
/// eigenvalues leave every quadratic field. Eigenvalues of each leading matrix
/// must be real; near-equal roots (relative 2^(-precision/8)) are merged.
std::vector<FloatBranch> eigen_series_float(const std::vector<FloatMatrix>& series, mpfr_prec_t precision);

}  // namespace ptspec::detail
