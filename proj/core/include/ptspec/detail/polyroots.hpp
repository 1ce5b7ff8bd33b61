#pragma once

#include <gmpxx.h>

#include <vector>

#include "ptspec/bigfloat.hpp"

namespace ptspec::detail {

/// All complex roots of a rational polynomial (coefficients low to high,
/// nonzero leading term) by Aberth-Ehrlich iteration at the given precision.
/// Roots are returned in no particular order, with multiplicity.
std::vector<BigComplex> polynomial_roots(const std::vector<mpq_class>& coeffs, mpfr_prec_t precision);

/// Same for real floating-point coefficients; iterates at `precision`.
/// A positive `targetBits` stops once every relative step is below
/// 2^-targetBits (after a few extra sweeps), which tolerates multiple roots.
std::vector<BigComplex> polynomial_roots(const std::vector<BigFloat>& coeffs, mpfr_prec_t precision,
                                         long targetBits = 0);

/// Bit length of the largest numerator/denominator among the coefficients.
std::size_t coefficient_bits(const std::vector<mpq_class>& coeffs);

}  // namespace ptspec::detail
