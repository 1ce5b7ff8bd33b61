#include "ptspec/pade.hpp"

#include <algorithm>
#include <cmath>

#include "ptspec/detail/dense.hpp"

namespace ptspec {

namespace {

// Denominator of the [L/M] approximant (b[0] = 1) for coefficients c[0..L+M].
// Exact pivoting for field elements.
std::vector<FieldElement> solve_den(const std::vector<FieldElement>& c, int L, int M) {
  auto coef = [&](int i) { return i < 0 ? FieldElement() : c[static_cast<std::size_t>(i)]; };
  // sum_{j=1..M} b_j c_{k-j} = -c_k, k = L+1..L+M
  detail::DenseMatrix<FieldElement> aug(M, M + 1);
  for (int r = 0; r < M; ++r) {
    const int k = L + 1 + r;
    for (int j = 1; j <= M; ++j) aug(r, j - 1) = coef(k - j);
    aug(r, M) = -coef(k);
  }
  auto piv = detail::row_reduce(aug);
  int rank = 0;
  for (auto p : piv)
    if (static_cast<int>(p) < M) ++rank;
  if (rank < M) throw PadeError("singular Pade denominator system", M - rank);
  std::vector<FieldElement> b(M + 1);
  b[0] = FieldElement(1L);
  for (int r = 0; r < M; ++r) b[piv[r] + 1] = aug(r, M);
  return b;
}

// Gaussian elimination with full pivoting; pivots below 2^(-prec/2) of the
// largest entry count as zero.
std::vector<BigFloat> solve_den(const std::vector<BigFloat>& c, int L, int M, mpfr_prec_t prec) {
  auto coef = [&](int i) { return i < 0 ? BigFloat::zero(prec) : c[static_cast<std::size_t>(i)]; };
  std::vector<std::vector<BigFloat>> a(M, std::vector<BigFloat>(M + 1));
  BigFloat largest = BigFloat::zero(prec);
  for (int r = 0; r < M; ++r) {
    const int k = L + 1 + r;
    for (int j = 1; j <= M; ++j) {
      a[r][j - 1] = coef(k - j);
      a[r][j - 1].set_precision(prec);
      if (abs(a[r][j - 1]) > largest) largest = abs(a[r][j - 1]);
    }
    a[r][M] = -coef(k);
    a[r][M].set_precision(prec);
  }
  const BigFloat cutoff = largest * pow(BigFloat(2.0, prec), -static_cast<long>(prec) / 2);
  std::vector<int> col_of(M);
  for (int j = 0; j < M; ++j) col_of[j] = j;
  int rank = 0;
  for (; rank < M; ++rank) {
    int pr = rank, pc = rank;
    for (int r = rank; r < M; ++r)
      for (int j = rank; j < M; ++j)
        if (abs(a[r][j]) > abs(a[pr][pc])) {
          pr = r;
          pc = j;
        }
    if (abs(a[pr][pc]) <= cutoff) break;
    std::swap(a[rank], a[pr]);
    if (pc != rank) {
      for (int r = 0; r < M; ++r) std::swap(a[r][rank], a[r][pc]);
      std::swap(col_of[rank], col_of[pc]);
    }
    for (int r = rank + 1; r < M; ++r) {
      if (a[r][rank].is_zero()) continue;
      BigFloat f = a[r][rank] / a[rank][rank];
      for (int j = rank; j <= M; ++j) a[r][j] -= f * a[rank][j];
    }
  }
  if (rank < M) throw PadeError("singular Pade denominator system", M - rank);
  std::vector<BigFloat> x(M, BigFloat::zero(prec));
  for (int r = M - 1; r >= 0; --r) {
    BigFloat s = a[r][M];
    for (int j = r + 1; j < M; ++j) s -= a[r][j] * x[j];
    x[r] = s / a[r][r];
  }
  std::vector<BigFloat> b(M + 1, BigFloat::zero(prec));
  b[0] = BigFloat(1.0, prec);
  for (int j = 0; j < M; ++j) b[col_of[j] + 1] = x[j];
  return b;
}

template <class T>
std::vector<T> numerator(const std::vector<T>& c, const std::vector<T>& b, int L, T zero) {
  std::vector<T> a(L + 1, zero);
  for (int k = 0; k <= L; ++k)
    for (int j = 0; j <= std::min<int>(k, static_cast<int>(b.size()) - 1); ++j) a[k] += b[j] * c[k - j];
  return a;
}

void check_orders(int L, int M, std::size_t available) {
  if (L < 0 || M < 0) throw InvalidArgument("Pade degrees must be non-negative");
  if (static_cast<std::size_t>(L + M) >= available)
    throw InvalidArgument("series too short for the requested Pade degrees");
}

template <class T>
bool odd_part_vanishes(const std::vector<T>& c) {
  for (std::size_t i = 1; i < c.size(); i += 2)
    if (!is_zero(c[i])) return false;
  return true;
}

// Spreads coefficients of u = g^2 back onto powers of g.
std::vector<BigFloat> spread(const std::vector<BigFloat>& in, int degree, mpfr_prec_t prec) {
  std::vector<BigFloat> out(degree + 1, BigFloat::zero(prec));
  for (std::size_t i = 0; i < in.size(); ++i) out[2 * i] = in[i];
  return out;
}

}  // namespace

PadeApprox build_pade(const std::vector<FieldElement>& c_in, int L, int M, const PadeOptions& options) {
  check_orders(L, M, c_in.size());
  if (L + M > options.exactLimit) {
    std::vector<BigFloat> f;
    for (const auto& x : c_in) f.push_back(x.to_bigfloat(options.precision));
    return build_pade(f, L, M, options);
  }
  const mpfr_prec_t prec = options.precision;
  std::vector<FieldElement> c(c_in.begin(), c_in.begin() + L + M + 1);
  PadeApprox out;
  out.L = L;
  out.M = M;
  out.exactSolve = true;
  auto to_big = [&](const std::vector<FieldElement>& v) {
    std::vector<BigFloat> r;
    for (const auto& x : v) r.push_back(x.to_bigfloat(prec));
    return r;
  };
  if (L % 2 == 0 && M % 2 == 0 && odd_part_vanishes(c)) {
    std::vector<FieldElement> u;
    for (std::size_t i = 0; i < c.size(); i += 2) u.push_back(c[i]);
    auto b = solve_den(u, L / 2, M / 2);
    auto a = numerator(u, b, L / 2, FieldElement());
    out.num = spread(to_big(a), L, prec);
    out.den = spread(to_big(b), M, prec);
    return out;
  }
  auto b = solve_den(c, L, M);
  out.num = to_big(numerator(c, b, L, FieldElement()));
  out.den = to_big(b);
  return out;
}

PadeApprox build_pade(const std::vector<BigFloat>& c_in, int L, int M, const PadeOptions& options) {
  check_orders(L, M, c_in.size());
  const mpfr_prec_t prec = options.precision;
  std::vector<BigFloat> c;
  for (int i = 0; i <= L + M; ++i) {
    c.push_back(c_in[i]);
    c.back().set_precision(prec);
  }
  PadeApprox out;
  out.L = L;
  out.M = M;
  if (L % 2 == 0 && M % 2 == 0 && odd_part_vanishes(c)) {
    std::vector<BigFloat> u;
    for (std::size_t i = 0; i < c.size(); i += 2) u.push_back(c[i]);
    auto b = solve_den(u, L / 2, M / 2, prec);
    out.num = spread(numerator(u, b, L / 2, BigFloat::zero(prec)), L, prec);
    out.den = spread(b, M, prec);
    return out;
  }
  auto b = solve_den(c, L, M, prec);
  out.num = numerator(c, b, L, BigFloat::zero(prec));
  out.den = std::move(b);
  return out;
}

PadeApprox build_pade(const EnergySeries& s, int L, int M, const PadeOptions& options) {
  if (L + M > s.maxOrder) throw InvalidArgument("series order below L + M");
  if (s.exact) {
    std::vector<FieldElement> c;
    for (int p = 0; p <= L + M; ++p) c.push_back(s.coefficient(p));
    return build_pade(c, L, M, options);
  }
  std::vector<BigFloat> c;
  for (int p = 0; p <= L + M; ++p)
    c.push_back(p % 2 == 0 ? s.value(static_cast<std::size_t>(p / 2), options.precision)
                           : BigFloat::zero(options.precision));
  return build_pade(c, L, M, options);
}

namespace {

BigFloat horner(const std::vector<BigFloat>& p, const BigFloat& x) {
  BigFloat acc = BigFloat::zero(x.precision());
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

BigFloat abs_sum(const std::vector<BigFloat>& p, const BigFloat& x) {
  BigFloat ax = abs(x), acc = BigFloat::zero(x.precision());
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * ax + abs(p[i]);
  return acc;
}

}  // namespace

BigFloat evaluate_big(const PadeApprox& p, const BigFloat& g) { return horner(p.num, g) / horner(p.den, g); }

PadeValue evaluate(const PadeApprox& p, double g) {
  const mpfr_prec_t prec = p.den.empty() ? 256 : p.den[0].precision();
  BigFloat x(g, prec);
  BigFloat den = horner(p.den, x);
  PadeValue out;
  out.value = (horner(p.num, x) / den).to_double();
  out.nearPole = abs(den) < abs_sum(p.den, x) * BigFloat(1e-6, prec);
  return out;
}

std::vector<double> real_poles(const PadeApprox& p, double a, double b, std::size_t gridPoints) {
  if (!(a < b)) throw InvalidArgument("pole search interval must satisfy a < b");
  std::vector<double> out;
  if (p.den.size() <= 1 || gridPoints == 0) return out;
  const mpfr_prec_t prec = p.den[0].precision();
  auto sign_at = [&](double x) { return horner(p.den, BigFloat(x, prec)).sign(); };
  const double h = (b - a) / static_cast<double>(gridPoints);
  double x0 = a;
  int s0 = sign_at(x0);
  for (std::size_t i = 1; i <= gridPoints; ++i) {
    double x1 = (i == gridPoints) ? b : a + h * static_cast<double>(i);
    int s1 = sign_at(x1);
    if (s1 == 0) {
      if (x1 < b) out.push_back(x1);
    } else if (s0 != 0 && s0 != s1) {
      double lo = x0, hi = x1;
      while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        int sm = sign_at(mid);
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        (sm == s0 ? lo : hi) = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    s0 = s1;
  }
  return out;
}

}  // namespace ptspec
