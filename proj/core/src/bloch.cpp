#include "ptspec/detail/bloch.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>

#include "ptspec/detail/polyroots.hpp"
#include "ptspec/perturb.hpp"

namespace ptspec::detail {

namespace {

struct SparseRow {
  std::vector<std::uint32_t> cols;
  std::vector<mpq_class> values;
};

// Rows of the interaction What in the unnormalised basis of `sector`.
std::vector<SparseRow> unnormalized_rows(Model which, const ParitySector& sector) {
  const auto ops = decompose_potential(which);
  std::vector<std::vector<std::pair<std::uint32_t, mpq_class>>> scatter(sector.size());
  for (std::size_t s = 0; s < sector.size(); ++s) {
    for (const auto& m : ops) {
      auto hit = apply_unnormalized(m, sector[s]);
      if (!hit) continue;
      auto row = sector.index_of(hit->first);
      if (!row) continue;  // outside the truncation
      scatter[*row].emplace_back(static_cast<std::uint32_t>(s), std::move(hit->second));
    }
  }
  std::vector<SparseRow> rows(sector.size());
  for (std::size_t r = 0; r < sector.size(); ++r) {
    auto& items = scatter[r];
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < items.size();) {
      std::uint32_t col = items[i].first;
      mpq_class sum = 0;
      for (; i < items.size() && items[i].first == col; ++i) sum += items[i].second;
      if (sgn(sum) != 0) {
        rows[r].cols.push_back(col);
        rows[r].values.push_back(std::move(sum));
      }
    }
  }
  return rows;
}

}  // namespace

ShellEffectiveHamiltonian shell_effective_hamiltonian(Model which, Parity parity, int n, int maxOrder) {
  if (n < 0) throw InvalidArgument("level index must be non-negative");
  if (maxOrder < 2 || maxOrder % 2 != 0) throw InvalidArgument("maxOrder must be an even integer >= 2");

  const int K = maxOrder / 2;  // orders in t
  const int mu_orders = 2 * K;
  // Each insertion of What moves the total quanta by 1 or 3.
  const ParitySector sector = enumerate_sector(parity, {n + 3 * K});
  const std::size_t dim = sector.size();

  ShellEffectiveHamiltonian out;
  out.parity = parity;
  std::vector<std::size_t> shell_rows;
  for (std::size_t i = 0; i < dim; ++i)
    if (sector[i].total() == n) {
      shell_rows.push_back(i);
      out.shell.push_back(sector[i]);
    }
  const std::size_t d = shell_rows.size();
  if (d == 0) return out;

  const auto vrows = unnormalized_rows(which, sector);
  std::vector<int> shift(dim);
  for (std::size_t i = 0; i < dim; ++i) shift[i] = sector[i].total() - n;

  // omega[k][r * d + c]: wave-operator coefficient of mu^k.
  std::vector<std::vector<mpq_class>> omega(mu_orders, std::vector<mpq_class>(dim * d));
  for (std::size_t c = 0; c < d; ++c) omega[0][shell_rows[c] * d + c] = 1;
  std::vector<RationalMatrix> heff(mu_orders + 1, RationalMatrix(d, d));

  mpq_class acc, term;
  for (int k = 1; k <= mu_orders; ++k) {
    const auto& prev = omega[k - 1];
    if (k % 2 == 0) {
      for (std::size_t a = 0; a < d; ++a) {
        const auto& row = vrows[shell_rows[a]];
        for (std::size_t c = 0; c < d; ++c) {
          acc = 0;
          for (std::size_t i = 0; i < row.cols.size(); ++i) {
            const mpq_class& w = prev[row.cols[i] * d + c];
            if (sgn(w) != 0) acc += row.values[i] * w;
          }
          heff[k](a, c) = acc;
        }
      }
    }
    if (k == mu_orders) break;

    const int radius = 3 * std::min(k, mu_orders - k);
    auto& cur = omega[k];
    for (std::size_t r = 0; r < dim; ++r) {
      const int q = shift[r];
      if (q == 0 || std::abs(q) > radius || (q - k) % 2 != 0) continue;
      const auto& row = vrows[r];
      for (std::size_t c = 0; c < d; ++c) {
        acc = 0;
        for (std::size_t i = 0; i < row.cols.size(); ++i) {
          const mpq_class& w = prev[row.cols[i] * d + c];
          if (sgn(w) != 0) acc -= row.values[i] * w;
        }
        for (int b = 2; b <= k - 1; b += 2) {
          const auto& older = omega[k - b];
          for (std::size_t cp = 0; cp < d; ++cp) {
            const mpq_class& o = older[r * d + cp];
            if (sgn(o) == 0 || sgn(heff[b](cp, c)) == 0) continue;
            acc += o * heff[b](cp, c);
          }
        }
        if (sgn(acc) != 0) cur[r * d + c] = acc / (2 * q);
      }
    }
  }

  out.by_t.resize(K + 1, RationalMatrix(d, d));
  for (std::size_t c = 0; c < d; ++c) out.by_t[0](c, c) = 2 * n + 2;
  for (int j = 1; j <= K; ++j) out.by_t[j] = heff[2 * j];
  return out;
}

namespace {

mpz_class field_radicand(const FieldMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j).radicand()) != 0) return a(i, j).radicand();
  return 0;
}

// Primitive integer multiple of a rational polynomial.
std::vector<mpz_class> integer_primitive(const Poly<mpq_class>& p) {
  mpz_class l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> out;
  mpz_class content = 0;
  for (const auto& c : p) {
    mpz_class v = c.get_num() * (l / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(v);
  }
  if (content != 0)
    for (auto& v : out) v /= content;
  return out;
}

std::size_t algebraic_multiplicity(Poly<FieldElement> p, const FieldElement& root) {
  Poly<FieldElement> linear{-root, FieldElement(1L)};
  std::size_t mult = 0;
  while (true) {
    auto [q, r] = divide(p, linear);
    if (!r.empty()) break;
    ++mult;
    p = std::move(q);
  }
  return mult;
}

}  // namespace

std::vector<ExactEigenvalue> exact_eigenvalues(const FieldMatrix& a) {
  const std::size_t m = a.rows();
  if (m == 0) return {};
  FieldElement scalar;
  if (a.is_scalar(&scalar)) return {{scalar, m}};

  const Poly<FieldElement> charpoly = characteristic_polynomial(a);
  const mpz_class D = field_radicand(a);

  // Rational polynomial vanishing on every eigenvalue and its conjugate.
  Poly<FieldElement> normpoly = charpoly;
  if (D != 0) {
    Poly<FieldElement> conj;
    for (const auto& c : charpoly) conj.push_back(c.conjugate());
    normpoly = multiply(charpoly, conj);
  }
  Poly<mpq_class> rational;
  for (const auto& c : normpoly) rational.push_back(c.rational());
  rational = squarefree_part(rational);

  const auto ints = integer_primitive(rational);
  const mpz_class lead = abs(ints.back());
  const std::size_t bits = coefficient_bits(rational) + mpz_sizeinbase(lead.get_mpz_t(), 2);
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(4 * bits + 256);
  const auto roots = polynomial_roots(rational, prec);

  const BigFloat small = pow(BigFloat(2.0, prec), -static_cast<long>(prec) / 4);
  const BigFloat lead_f(lead, prec);
  auto is_real = [&](const BigComplex& z) {
    BigFloat scale = abs(z.re);
    if (scale < BigFloat(1.0, prec)) scale = BigFloat(1.0, prec);
    return abs(z.im) < small * scale;
  };
  auto snap = [&](const BigFloat& x) { return mpq_class((x * lead_f).round_to_integer(), lead); };

  std::vector<FieldElement> candidates;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!is_real(roots[i])) continue;
    mpq_class c = snap(roots[i].re);
    c.canonicalize();
    if (sgn(evaluate(rational, c)) == 0) {
      candidates.emplace_back(c);
      used[i] = true;
    }
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      BigComplex sum = roots[i] + roots[j];
      BigComplex prod = roots[i] * roots[j];
      if (!is_real(sum) || !is_real(prod)) continue;
      mpq_class s = snap(sum.re), p = snap(prod.re);
      s.canonicalize();
      p.canonicalize();
      Poly<mpq_class> quad{p, -s, mpq_class(1)};
      if (!divide(rational, quad).second.empty()) continue;
      used[i] = used[j] = true;
      mpq_class disc = s * s - 4 * p;
      if (sgn(disc) <= 0) break;  // complex pair: never an eigenvalue here
      // (s +- sqrt(u/v)) / 2 = s/2 +- (1/(2v)) sqrt(u v)
      mpz_class uv = disc.get_num() * disc.get_den();
      mpq_class half_inv_v(1, 2 * disc.get_den());
      candidates.emplace_back(s / 2, half_inv_v, uv);
      candidates.emplace_back(s / 2, -half_inv_v, uv);
      break;
    }
  }

  std::vector<ExactEigenvalue> out;
  std::size_t algebraic_total = 0, geometric_total = 0;
  bool conflict = false;
  for (const auto& c : candidates) {
    try {
      if (!is_zero(evaluate(charpoly, c))) continue;
      std::size_t alg = algebraic_multiplicity(charpoly, c);
      FieldMatrix shifted = a;
      for (std::size_t i = 0; i < m; ++i) shifted(i, i) -= c;
      std::size_t geo = null_space(shifted).size();
      algebraic_total += alg;
      geometric_total += geo;
      out.push_back({c, geo});
    } catch (const RadicandConflict&) {
      conflict = true;
    }
  }
  if (algebraic_total != m) {
    if (conflict)
      throw PerturbError(PerturbError::Kind::RadicandConflict,
                         "effective-matrix eigenvalues need a second quadratic field");
    throw PerturbError(PerturbError::Kind::UnsupportedField,
                       "effective-matrix eigenvalues are not in Q or a quadratic field");
  }
  if (geometric_total != m)
    throw PerturbError(PerturbError::Kind::NonSemisimple, "effective matrix is not diagonalizable");
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.value > y.value; });
  return out;
}

namespace {

// Bloch recursion for N(t) written in a basis whose first m vectors span the
// alpha-eigenspace of N[0] and whose rest span an invariant complement.
template <class T, class Invert>
std::vector<DenseMatrix<T>> bloch_reduce(const std::vector<DenseMatrix<T>>& series, const T& alpha,
                                         const DenseMatrix<T>& basis, const DenseMatrix<T>& basis_inv,
                                         std::size_t m, Invert invert) {
  using M = DenseMatrix<T>;
  const std::size_t d = basis.rows();
  const std::size_t q = d - m;
  const std::size_t orders = series.size();
  std::vector<M> vpp(orders), vpq(orders), vqp(orders), vqq(orders);
  for (std::size_t j = 0; j < orders; ++j) {
    M t = basis_inv * series[j] * basis;
    vpp[j] = t.block(0, 0, m, m);
    vpq[j] = t.block(0, m, m, q);
    vqp[j] = t.block(m, 0, q, m);
    vqq[j] = t.block(m, m, q, q);
  }
  M resolvent = vqq[0];
  for (std::size_t i = 0; i < q; ++i) resolvent(i, i) -= alpha;
  auto resolvent_inv = invert(resolvent);
  if (!resolvent_inv) throw PerturbError(PerturbError::Kind::NonSemisimple, "degenerate complement in reduction");

  // omega_q[k] is the complement block of the wave operator.
  std::vector<M> omega_q(orders, M(q, m));
  std::vector<M> reduced(orders, M(m, m));
  for (std::size_t i = 0; i < m; ++i) reduced[0](i, i) = alpha;
  for (std::size_t k = 1; k < orders; ++k) {
    M h = vpp[k];
    for (std::size_t j = 1; j < k; ++j) h = h + vpq[j] * omega_q[k - j];
    reduced[k] = h;
    if (k + 1 == orders) break;
    M rhs(q, m);
    for (std::size_t b = 1; b < k; ++b) rhs = rhs + omega_q[k - b] * reduced[b];
    rhs = rhs - vqp[k];
    for (std::size_t j = 1; j < k; ++j) rhs = rhs - vqq[j] * omega_q[k - j];
    omega_q[k] = *resolvent_inv * rhs;
  }
  return reduced;
}

}  // namespace

MatrixSeries reduce_to_eigenspace(const MatrixSeries& series, const FieldElement& alpha, std::size_t multiplicity) {
  const FieldMatrix& lead = series.at(0);
  const std::size_t d = lead.rows();
  if (multiplicity == d) return series;

  FieldMatrix shifted = lead;
  for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= alpha;
  auto kernel = null_space(shifted);
  if (kernel.size() != multiplicity)
    throw PerturbError(PerturbError::Kind::NonSemisimple, "eigenspace dimension differs from multiplicity");
  auto image_cols = column_basis(shifted);

  // Basis adapted to lead: kernel first, then the invariant complement im(lead - alpha).
  FieldMatrix basis(d, d);
  for (std::size_t c = 0; c < multiplicity; ++c)
    for (std::size_t r = 0; r < d; ++r) basis(r, c) = kernel[c][r];
  for (std::size_t c = 0; c < image_cols.size(); ++c)
    for (std::size_t r = 0; r < d; ++r) basis(r, multiplicity + c) = shifted(r, image_cols[c]);
  auto basis_inv = inverse(basis);
  if (!basis_inv) throw PerturbError(PerturbError::Kind::NonSemisimple, "eigenspace and its complement overlap");

  return bloch_reduce(series, alpha, basis, *basis_inv, multiplicity,
                      [](const FieldMatrix& a) { return inverse(a); });
}

std::vector<BranchCoefficients> eigen_series(const MatrixSeries& series) {
  const std::size_t m = series.at(0).rows();
  const std::size_t orders = series.size();
  if (m == 1) {
    BranchCoefficients b;
    for (const auto& s : series) b.coeffs.push_back(s(0, 0));
    return {b};
  }
  std::vector<BranchCoefficients> out;
  for (const auto& eig : exact_eigenvalues(series[0])) {
    MatrixSeries reduced = reduce_to_eigenspace(series, eig.value, eig.multiplicity);
    if (eig.multiplicity == 1) {
      BranchCoefficients b;
      for (const auto& s : reduced) b.coeffs.push_back(s(0, 0));
      out.push_back(std::move(b));
      continue;
    }
    if (orders == 1) {
      for (std::size_t i = 0; i < eig.multiplicity; ++i) out.push_back({{eig.value}, true});
      continue;
    }
    MatrixSeries tail(reduced.begin() + 1, reduced.end());
    for (auto& sub : eigen_series(tail)) {
      BranchCoefficients b;
      b.coeffs.push_back(eig.value);
      b.coeffs.insert(b.coeffs.end(), sub.coeffs.begin(), sub.coeffs.end());
      b.sharedTail = sub.sharedTail;
      out.push_back(std::move(b));
    }
  }
  return out;
}

namespace {

// Gauss-Jordan with partial pivoting.
std::optional<FloatMatrix> float_inverse(const FloatMatrix& a) {
  const std::size_t n = a.rows();
  FloatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = BigFloat(1.0);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(aug(r, col)) > abs(aug(p, col))) p = r;
    if (aug(p, col).is_zero()) return std::nullopt;
    if (p != col)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug(p, j), aug(col, j));
    BigFloat inv = BigFloat(1.0) / aug(col, col);
    for (std::size_t j = 0; j < 2 * n; ++j) aug(col, j) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug(r, col).is_zero()) continue;
      BigFloat f = aug(r, col);
      for (std::size_t j = 0; j < 2 * n; ++j) aug(r, j) -= f * aug(col, j);
    }
  }
  return aug.block(0, n, n, n);
}

BigFloat max_abs(const FloatMatrix& a) {
  BigFloat out = BigFloat::zero(64);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (abs(a(i, j)) > out) out = abs(a(i, j));
  return out;
}

// `count` orthonormal vectors spanning the column space of a, picking the
// column with the largest remaining norm each time.
std::vector<std::vector<BigFloat>> range_basis(const FloatMatrix& a, std::size_t count) {
  const std::size_t d = a.rows();
  std::vector<std::vector<BigFloat>> cols(a.cols(), std::vector<BigFloat>(d));
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < d; ++r) cols[c][r] = a(r, c);
  auto norm2 = [](const std::vector<BigFloat>& v) {
    BigFloat s = BigFloat::zero(v.empty() ? 64 : v[0].precision());
    for (const auto& x : v) s += x * x;
    return s;
  };
  std::vector<std::vector<BigFloat>> out;
  std::vector<bool> taken(cols.size(), false);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t best = cols.size();
    BigFloat best_norm = BigFloat::zero(64);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (taken[c]) continue;
      BigFloat n2 = norm2(cols[c]);
      if (best == cols.size() || n2 > best_norm) {
        best = c;
        best_norm = n2;
      }
    }
    if (best == cols.size() || best_norm.is_zero())
      throw PerturbError(PerturbError::Kind::NonSemisimple, "eigenspace projector has deficient rank");
    taken[best] = true;
    std::vector<BigFloat> v = cols[best];
    BigFloat inv_norm = BigFloat(1.0) / sqrt(best_norm);
    for (auto& x : v) x *= inv_norm;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (taken[c]) continue;
      BigFloat dot = BigFloat::zero(64);
      for (std::size_t r = 0; r < d; ++r) dot += v[r] * cols[c][r];
      for (std::size_t r = 0; r < d; ++r) cols[c][r] -= dot * v[r];
    }
    out.push_back(std::move(v));
  }
  return out;
}

struct FloatEigenvalue {
  BigFloat value;
  std::size_t multiplicity = 0;
};

std::vector<FloatEigenvalue> float_eigenvalues(const FloatMatrix& a, mpfr_prec_t prec) {
  BigFloat scalar;
  if (a.is_scalar(&scalar)) return {{scalar, a.rows()}};
  BigFloat scale = max_abs(a);
  if (scale < BigFloat(1.0)) scale = BigFloat(1.0);
  const BigFloat merge_tol = pow(BigFloat(2.0, prec), -static_cast<long>(prec) / 8) * scale;

  const Poly<BigFloat> charpoly = characteristic_polynomial(a);
  auto roots = polynomial_roots(charpoly, prec, static_cast<long>(prec) / 8);
  std::vector<BigFloat> re;
  for (const auto& z : roots) {
    if (abs(z.im) > merge_tol)
      throw PerturbError(PerturbError::Kind::UnsupportedField, "effective matrix has a non-real eigenvalue");
    re.push_back(z.re);
  }
  std::sort(re.begin(), re.end(), [](const BigFloat& x, const BigFloat& y) { return x > y; });
  std::vector<FloatEigenvalue> out;
  const BigFloat newton_tol = pow(BigFloat(2.0, prec), -static_cast<long>(prec) + 16) * scale;
  for (std::size_t i = 0; i < re.size();) {
    std::size_t j = i + 1;
    BigFloat x = re[i];
    while (j < re.size() && re[j - 1] - re[j] < merge_tol) x += re[j++];
    const std::size_t mult = j - i;
    x /= BigFloat(static_cast<double>(mult));
    // A root of multiplicity k is a simple root of the (k-1)-th derivative.
    Poly<BigFloat> f = charpoly;
    for (std::size_t k = 1; k < mult; ++k) f = derivative(f);
    const Poly<BigFloat> df = derivative(f);
    for (int iter = 0; iter < 64; ++iter) {
      BigFloat slope = evaluate(df, x);
      if (slope.is_zero()) break;
      BigFloat step = evaluate(f, x) / slope;
      x -= step;
      if (abs(step) <= newton_tol) break;
    }
    out.push_back({x, mult});
    i = j;
  }
  return out;
}

}  // namespace

std::vector<FloatBranch> eigen_series_float(const std::vector<FloatMatrix>& series, mpfr_prec_t prec) {
  const FloatMatrix& lead = series.at(0);
  const std::size_t d = lead.rows();
  const std::size_t orders = series.size();
  if (d == 1) {
    FloatBranch b;
    for (const auto& s : series) b.coeffs.push_back(s(0, 0));
    return {b};
  }
  const auto eigs = float_eigenvalues(lead, prec);
  std::vector<FloatBranch> out;
  for (const auto& eig : eigs) {
    std::vector<FloatMatrix> reduced;
    if (eig.multiplicity == d) {
      reduced = series;
    } else {
      // Spectral projector onto the eigenvalue by Lagrange interpolation.
      FloatMatrix projector = FloatMatrix::identity(d);
      for (const auto& other : eigs) {
        if (&other == &eig) continue;
        FloatMatrix factor = lead;
        for (std::size_t i = 0; i < d; ++i) factor(i, i) -= other.value;
        BigFloat inv = BigFloat(1.0) / (eig.value - other.value);
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) factor(i, j) *= inv;
        projector = projector * factor;
      }
      FloatMatrix complement = FloatMatrix::identity(d) - projector;
      auto inside = range_basis(projector, eig.multiplicity);
      auto outside = range_basis(complement, d - eig.multiplicity);
      FloatMatrix basis(d, d);
      for (std::size_t c = 0; c < inside.size(); ++c)
        for (std::size_t r = 0; r < d; ++r) basis(r, c) = inside[c][r];
      for (std::size_t c = 0; c < outside.size(); ++c)
        for (std::size_t r = 0; r < d; ++r) basis(r, inside.size() + c) = outside[c][r];
      auto basis_inv = float_inverse(basis);
      if (!basis_inv) throw PerturbError(PerturbError::Kind::NonSemisimple, "eigenspace and its complement overlap");
      reduced = bloch_reduce(series, eig.value, basis, *basis_inv, eig.multiplicity,
                             [](const FloatMatrix& a) { return float_inverse(a); });
    }
    if (eig.multiplicity == 1) {
      FloatBranch b;
      for (const auto& s : reduced) b.coeffs.push_back(s(0, 0));
      out.push_back(std::move(b));
      continue;
    }
    if (orders == 1) {
      for (std::size_t i = 0; i < eig.multiplicity; ++i) out.push_back({{eig.value}, true});
      continue;
    }
    std::vector<FloatMatrix> tail(reduced.begin() + 1, reduced.end());
    for (auto& sub : eigen_series_float(tail, prec)) {
      FloatBranch b;
      b.coeffs.push_back(eig.value);
      b.coeffs.insert(b.coeffs.end(), sub.coeffs.begin(), sub.coeffs.end());
      b.sharedTail = sub.sharedTail;
      out.push_back(std::move(b));
    }
  }
  return out;
}

}  // namespace ptspec::detail
