#include "ptspec/perturb.hpp"

#include <algorithm>

#include "ptspec/detail/bloch.hpp"

namespace ptspec {

std::string to_string(const LevelLabel& label) {
  return "E" + std::to_string(label.n) + std::to_string(label.k) + (label.parity == Parity::Even ? "+" : "-");
}

FieldElement EnergySeries::coefficient(int power) const {
  if (!exact) throw PerturbError(PerturbError::Kind::NotExact, "series has floating-point coefficients");
  if (power < 0 || power % 2 != 0) return FieldElement();
  std::size_t j = static_cast<std::size_t>(power / 2);
  return j < coeffs.size() ? coeffs[j] : FieldElement();
}

BigFloat EnergySeries::value(std::size_t j, mpfr_prec_t precision) const {
  if (j >= size()) return BigFloat::zero(precision);
  if (exact) return coeffs[j].to_bigfloat(precision);
  BigFloat out = floatCoeffs[j];
  out.set_precision(precision);
  return out;
}

namespace {

// Three-way comparison of the g^(2j) coefficients; floating-point values
// closer than a relative 2^-96 count as equal.
int compare_coefficient(const EnergySeries& a, const EnergySeries& b, std::size_t j) {
  if (a.exact && b.exact) {
    FieldElement x = j < a.coeffs.size() ? a.coeffs[j] : FieldElement();
    FieldElement y = j < b.coeffs.size() ? b.coeffs[j] : FieldElement();
    auto c = x <=> y;
    return c > 0 ? 1 : (c < 0 ? -1 : 0);
  }
  constexpr mpfr_prec_t prec = 256;
  BigFloat x = a.value(j, prec), y = b.value(j, prec);
  BigFloat scale = std::max(abs(x), abs(y));
  if (scale < BigFloat(1.0)) scale = BigFloat(1.0);
  BigFloat diff = x - y;
  if (abs(diff) <= scale * pow(BigFloat(2.0), -96)) return 0;
  return diff.sign();
}

// Labelling order: larger g^2 coefficient first, then larger g^4, then even
// parity, then larger higher coefficients.
bool label_before(const EnergySeries& a, const EnergySeries& b) {
  for (std::size_t j = 1; j <= 2; ++j)
    if (int c = compare_coefficient(a, b, j)) return c > 0;
  if (a.label.parity != b.label.parity) return a.label.parity == Parity::Even;
  for (std::size_t j = 3; j < std::max(a.size(), b.size()); ++j)
    if (int c = compare_coefficient(a, b, j)) return c > 0;
  return false;
}

// t = mu^2 = -g^2 / 8
const mpq_class kTToG2(-1, 8);

std::vector<EnergySeries> exact_sector(Model which, int n, int maxOrder, Parity parity,
                                       const detail::ShellEffectiveHamiltonian& shell) {
  using namespace detail;
  MatrixSeries series;
  for (const auto& m : shell.by_t) {
    FieldMatrix f(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) f(i, j) = FieldElement(m(i, j));
    series.push_back(std::move(f));
  }
  std::vector<BranchCoefficients> branches;
  try {
    branches = eigen_series(series);
  } catch (const RadicandConflict& e) {
    throw PerturbError(PerturbError::Kind::RadicandConflict, e.what());
  }
  std::vector<EnergySeries> out;
  for (auto& b : branches) {
    EnergySeries s;
    s.which = which;
    s.label = {n, 0, parity};
    s.maxOrder = maxOrder;
    s.sharedTail = b.sharedTail;
    mpq_class scale = 1;
    for (auto& c : b.coeffs) {
      s.coeffs.push_back(c * FieldElement(scale));
      scale *= kTToG2;
      if (sgn(s.coeffs.back().radicand()) != 0) {
        if (sgn(s.fieldRadicand) != 0 && s.fieldRadicand != s.coeffs.back().radicand())
          throw PerturbError(PerturbError::Kind::RadicandConflict, "branch coefficients span two quadratic fields");
        s.fieldRadicand = s.coeffs.back().radicand();
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<EnergySeries> float_sector(Model which, int n, int maxOrder, Parity parity,
                                       const detail::ShellEffectiveHamiltonian& shell, mpfr_prec_t prec) {
  using namespace detail;
  std::vector<FloatMatrix> series;
  for (const auto& m : shell.by_t) {
    FloatMatrix f(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) f(i, j) = BigFloat(m(i, j), prec);
    series.push_back(std::move(f));
  }
  std::vector<EnergySeries> out;
  for (auto& b : eigen_series_float(series, prec)) {
    EnergySeries s;
    s.which = which;
    s.label = {n, 0, parity};
    s.exact = false;
    s.maxOrder = maxOrder;
    s.sharedTail = b.sharedTail;
    BigFloat scale(1.0, prec);
    const BigFloat step(kTToG2, prec);
    for (auto& c : b.coeffs) {
      s.floatCoeffs.push_back(c * scale);
      scale *= step;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<EnergySeries> effective_series(Model which, int n, int maxOrder, const SeriesOptions& options) {
  using namespace detail;
  std::vector<EnergySeries> all;
  for (Parity parity : {Parity::Even, Parity::Odd}) {
    ShellEffectiveHamiltonian shell = shell_effective_hamiltonian(which, parity, n, maxOrder);
    if (shell.shell.empty()) continue;
    std::vector<EnergySeries> part;
    try {
      part = exact_sector(which, n, maxOrder, parity, shell);
    } catch (const PerturbError& e) {
      if (!options.floatFallback || e.kind() != PerturbError::Kind::UnsupportedField) throw;
      part = float_sector(which, n, maxOrder, parity, shell, options.floatPrecision);
    }
    for (auto& s : part) all.push_back(std::move(s));
  }
  std::stable_sort(all.begin(), all.end(), label_before);
  for (std::size_t k = 0; k < all.size(); ++k) all[k].label.k = static_cast<int>(k);
  return all;
}

std::vector<std::pair<std::string, std::string>> conventional_label_map(Model which) {
  // Pairs sharing the g^2 coefficient that are customarily indexed by
  // ascending g^4 coefficient.
  if (which == Model::HenonHeiles) return {{"E32", "E33"}, {"E33", "E32"}, {"E52", "E53"}, {"E53", "E52"}};
  return {};
}

BigFloat evaluate_series(const EnergySeries& s, const BigFloat& g, int orderCap) {
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(g.precision(), 128);
  BigFloat g2 = g * g;
  BigFloat acc = BigFloat::zero(prec);
  if (s.size() == 0) return acc;
  const std::size_t last = static_cast<std::size_t>(std::max(0, std::min(orderCap, s.maxOrder)) / 2);
  for (std::size_t j = std::min(last, s.size() - 1) + 1; j-- > 0;) acc = acc * g2 + s.value(j, prec);
  return acc;
}

double evaluate_series(const EnergySeries& s, double g, int orderCap) {
  return evaluate_series(s, BigFloat(g, 128), orderCap).to_double();
}

std::vector<int> sign_pattern(const EnergySeries& s) {
  std::vector<int> out;
  for (std::size_t j = 1; j < s.size(); ++j) {
    int sign = s.exact ? s.coeffs[j].sign() : s.floatCoeffs[j].sign();
    if (sign != 0) out.push_back(sign);
  }
  return out;
}

}  // namespace ptspec
