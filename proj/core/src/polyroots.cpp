#include "ptspec/detail/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ptspec::detail {

std::size_t coefficient_bits(const std::vector<mpq_class>& coeffs) {
  std::size_t bits = 1;
  for (const auto& c : coeffs) {
    bits = std::max(bits, mpz_sizeinbase(c.get_num_mpz_t(), 2));
    bits = std::max(bits, mpz_sizeinbase(c.get_den_mpz_t(), 2));
  }
  return bits;
}

namespace {

// p(z) and p'(z) by Horner.
void horner(const std::vector<BigComplex>& p, const BigComplex& z, BigComplex& value, BigComplex& deriv,
            mpfr_prec_t prec) {
  value = BigComplex::zero(prec);
  deriv = BigComplex::zero(prec);
  for (std::size_t i = p.size(); i-- > 0;) {
    deriv = deriv * z + value;
    value = value * z + p[i];
  }
}

}  // namespace

std::vector<BigComplex> polynomial_roots(const std::vector<mpq_class>& coeffs_in, mpfr_prec_t precision) {
  std::vector<mpq_class> coeffs = coeffs_in;
  while (!coeffs.empty() && sgn(coeffs.back()) == 0) coeffs.pop_back();
  std::vector<BigFloat> monic;
  for (const auto& c : coeffs) monic.emplace_back(mpq_class(c / coeffs.back()), precision);
  return polynomial_roots(monic, precision);
}

std::vector<BigComplex> polynomial_roots(const std::vector<BigFloat>& coeffs_in, mpfr_prec_t precision,
                                         long targetBits) {
  std::vector<BigFloat> coeffs = coeffs_in;
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.size() < 2) return {};
  const std::size_t degree = coeffs.size() - 1;

  // Monic copy in working precision.
  std::vector<BigComplex> p;
  p.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    BigFloat v = c;
    v.set_precision(precision);
    p.push_back({v / coeffs.back(), BigFloat::zero(precision)});
  }

  if (degree == 1) return {BigComplex{-p[0].re, BigFloat::zero(precision)}};

  // Cauchy bound for the initial circle.
  BigFloat radius(1.0, precision);
  for (std::size_t i = 0; i < degree; ++i) {
    BigFloat a = abs(p[i].re);
    if (a + BigFloat(1.0, precision) > radius) radius = a + BigFloat(1.0, precision);
  }
  radius = radius * BigFloat(0.5, precision);

  std::vector<BigComplex> z;
  z.reserve(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    double angle = 2.0 * M_PI * (static_cast<double>(k) + 0.25) / static_cast<double>(degree) + 0.4;
    z.push_back({radius * BigFloat(std::cos(angle), precision), radius * BigFloat(std::sin(angle), precision)});
  }

  const long bits = targetBits > 0 ? targetBits : static_cast<long>(precision) - 16;
  const BigFloat tol = pow(BigFloat(2.0, precision), -bits);
  int polish = targetBits > 0 ? 8 : 0;
  BigComplex value, deriv;
  constexpr int kMaxIterations = 5000;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool converged = true;
    for (std::size_t k = 0; k < degree; ++k) {
      horner(p, z[k], value, deriv, precision);
      if (value.re.is_zero() && value.im.is_zero()) continue;
      BigComplex ratio = value / deriv;
      BigComplex sum = BigComplex::zero(precision);
      for (std::size_t j = 0; j < degree; ++j) {
        if (j == k) continue;
        sum += BigComplex{BigFloat(1.0, precision), BigFloat::zero(precision)} / (z[k] - z[j]);
      }
      BigComplex denom = BigComplex{BigFloat(1.0, precision), BigFloat::zero(precision)} - ratio * sum;
      BigComplex step = ratio / denom;
      z[k] -= step;
      BigFloat scale = z[k].abs();
      if (scale < BigFloat(1.0, precision)) scale = BigFloat(1.0, precision);
      if (step.abs() > tol * scale) converged = false;
    }
    if (converged && polish-- == 0) return z;
  }
  throw std::runtime_error("polynomial root iteration did not converge");
}

}  // namespace ptspec::detail
