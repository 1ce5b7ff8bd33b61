#include "ptspec/eigen.hpp"

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace ptspec {

namespace {

void normalize(ComplexVector& v) {
  double norm = 0.0, largest = 0.0;
  for (const auto& c : v) {
    norm += std::norm(c);
    largest = std::max(largest, std::abs(c));
  }
  norm = std::sqrt(norm);
  if (norm == 0.0) return;
  Complex phase = 1.0;
  for (const auto& c : v)
    if (std::abs(c) > 1e-8 * largest) {
      phase = std::abs(c) / c;
      break;
    }
  for (auto& c : v) c *= phase / norm;
}

void check_finite(const ComplexMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        throw EigenError(EigenError::Kind::InvalidInput, "matrix has a NaN or infinite entry");
}

// Indices of the `count` eigenvalues with smallest real part (ties by Im).
std::vector<bool> select_lowest(const std::vector<Complex>& w, std::size_t count) {
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return w[a].real() != w[b].real() ? w[a].real() < w[b].real() : w[a].imag() < w[b].imag();
  });
  std::vector<bool> sel(w.size(), false);
  for (std::size_t i = 0; i < std::min(count, w.size()); ++i) sel[order[i]] = true;
  return sel;
}

struct RawResult {
  std::vector<Complex> values;
  std::vector<ComplexVector> vectors;  // parallel, possibly empty entries
};

[[noreturn]] void no_convergence(lapack_int info, const std::vector<Complex>& w) {
  std::vector<Complex> partial(w.begin() + info, w.end());
  throw EigenError(EigenError::Kind::NoConvergence, "QR iteration did not converge", std::move(partial));
}

RawResult solve_real(const std::vector<double>& a_in, lapack_int n, const EigenOptions& opt) {
  std::vector<double> a = a_in;
  std::vector<double> wr(n), wi(n);
  RawResult out;
  auto values = [&] {
    std::vector<Complex> w(n);
    for (lapack_int i = 0; i < n; ++i) w[i] = {wr[i], wi[i]};
    return w;
  };
  const bool selected = opt.wantVectors && opt.vectorCount > 0 && opt.vectorCount < static_cast<std::size_t>(n);
  if (!opt.wantVectors || !selected) {
    std::vector<double> vr(opt.wantVectors ? static_cast<std::size_t>(n) * n : 1);
    lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', opt.wantVectors ? 'V' : 'N', n, a.data(), n, wr.data(),
                                    wi.data(), nullptr, 1, vr.data(), opt.wantVectors ? n : 1);
    if (info > 0) no_convergence(info, values());
    if (info < 0) throw EigenError(EigenError::Kind::InvalidInput, "dgeev rejected its arguments");
    out.values = values();
    if (opt.wantVectors) {
      out.vectors.resize(n);
      for (lapack_int j = 0; j < n; ++j) {
        ComplexVector v(n);
        if (wi[j] == 0.0) {
          for (lapack_int i = 0; i < n; ++i) v[i] = vr[j * n + i];
        } else {
          const double sign = wi[j] > 0 ? 1.0 : -1.0;
          const lapack_int c = wi[j] > 0 ? j : j - 1;
          for (lapack_int i = 0; i < n; ++i) v[i] = {vr[c * n + i], sign * vr[(c + 1) * n + i]};
        }
        out.vectors[j] = std::move(v);
      }
    }
    return out;
  }

  // Selected vectors: Hessenberg form, eigenvalues, inverse iteration, back-transform.
  std::vector<double> tau(std::max<lapack_int>(n - 1, 1));
  if (LAPACKE_dgehrd(LAPACK_COL_MAJOR, n, 1, n, a.data(), n, tau.data()) != 0)
    throw EigenError(EigenError::Kind::InvalidInput, "dgehrd failed");
  std::vector<double> h(a);
  for (lapack_int j = 0; j < n; ++j)
    for (lapack_int i = j + 2; i < n; ++i) h[j * n + i] = 0.0;
  std::vector<double> work(h);
  lapack_int info = LAPACKE_dhseqr(LAPACK_COL_MAJOR, 'E', 'N', n, 1, n, work.data(), n, wr.data(), wi.data(),
                                   nullptr, 1);
  if (info > 0) no_convergence(info, values());
  out.values = values();
  auto sel = select_lowest(out.values, opt.vectorCount);
  std::vector<lapack_logical> select(n, 0);
  lapack_int columns = 0;
  for (lapack_int j = 0; j < n; ++j) {
    if (!sel[j]) continue;
    // A conjugate pair shares one two-column slot, keyed on its first member.
    lapack_int first = (wi[j] < 0.0) ? j - 1 : j;
    if (!select[first]) {
      select[first] = 1;
      columns += (wi[first] != 0.0) ? 2 : 1;
    }
  }
  std::vector<double> vr(static_cast<std::size_t>(n) * std::max<lapack_int>(columns, 1));
  std::vector<lapack_int> ifail(std::max<lapack_int>(columns, 1));
  lapack_int used = 0;
  std::vector<double> wr_copy(wr);
  info = LAPACKE_dhsein(LAPACK_COL_MAJOR, 'R', 'Q', 'N', select.data(), n, h.data(), n, wr_copy.data(), wi.data(),
                        nullptr, 1, vr.data(), n, columns, &used, nullptr, ifail.data());
  if (info < 0) throw EigenError(EigenError::Kind::InvalidInput, "dhsein rejected its arguments");
  if (info > 0) throw EigenError(EigenError::Kind::NoConvergence, "inverse iteration did not converge", out.values);
  if (LAPACKE_dormhr(LAPACK_COL_MAJOR, 'L', 'N', n, columns, 1, n, a.data(), n, tau.data(), vr.data(), n) != 0)
    throw EigenError(EigenError::Kind::InvalidInput, "dormhr failed");

  out.vectors.resize(n);
  lapack_int col = 0;
  for (lapack_int j = 0; j < n; ++j) {
    if (!select[j]) continue;
    if (wi[j] == 0.0) {
      ComplexVector v(n);
      for (lapack_int i = 0; i < n; ++i) v[i] = vr[col * n + i];
      out.vectors[j] = std::move(v);
      col += 1;
    } else {
      ComplexVector v(n), w(n);
      for (lapack_int i = 0; i < n; ++i) {
        v[i] = {vr[col * n + i], vr[(col + 1) * n + i]};
        w[i] = std::conj(v[i]);
      }
      if (sel[j]) out.vectors[j] = std::move(v);
      if (sel[j + 1]) out.vectors[j + 1] = std::move(w);
      col += 2;
    }
  }
  return out;
}

RawResult solve_complex(const ComplexMatrix& m, const EigenOptions& opt) {
  const lapack_int n = static_cast<lapack_int>(m.rows());
  std::vector<Complex> a(m.data(), m.data() + static_cast<std::size_t>(n) * n);
  std::vector<Complex> w(n);
  RawResult out;
  const bool selected = opt.wantVectors && opt.vectorCount > 0 && opt.vectorCount < static_cast<std::size_t>(n);
  if (!selected) {
    std::vector<Complex> vr(opt.wantVectors ? static_cast<std::size_t>(n) * n : 1);
    lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', opt.wantVectors ? 'V' : 'N', n, a.data(), n, w.data(),
                                    nullptr, 1, vr.data(), opt.wantVectors ? n : 1);
    if (info > 0) no_convergence(info, w);
    if (info < 0) throw EigenError(EigenError::Kind::InvalidInput, "zgeev rejected its arguments");
    out.values = w;
    if (opt.wantVectors) {
      out.vectors.resize(n);
      for (lapack_int j = 0; j < n; ++j) out.vectors[j].assign(vr.begin() + j * n, vr.begin() + (j + 1) * n);
    }
    return out;
  }

  std::vector<Complex> tau(std::max<lapack_int>(n - 1, 1));
  if (LAPACKE_zgehrd(LAPACK_COL_MAJOR, n, 1, n, a.data(), n, tau.data()) != 0)
    throw EigenError(EigenError::Kind::InvalidInput, "zgehrd failed");
  std::vector<Complex> h(a);
  for (lapack_int j = 0; j < n; ++j)
    for (lapack_int i = j + 2; i < n; ++i) h[j * n + i] = 0.0;
  std::vector<Complex> work(h);
  lapack_int info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', n, 1, n, work.data(), n, w.data(), nullptr, 1);
  if (info > 0) no_convergence(info, w);
  out.values = w;
  auto sel = select_lowest(w, opt.vectorCount);
  std::vector<lapack_logical> select(n);
  lapack_int columns = 0;
  for (lapack_int j = 0; j < n; ++j) {
    select[j] = sel[j] ? 1 : 0;
    columns += select[j];
  }
  std::vector<Complex> vr(static_cast<std::size_t>(n) * columns);
  std::vector<lapack_int> ifail(columns);
  lapack_int used = 0;
  std::vector<Complex> w_copy(w);
  info = LAPACKE_zhsein(LAPACK_COL_MAJOR, 'R', 'Q', 'N', select.data(), n, h.data(), n, w_copy.data(), nullptr, 1,
                        vr.data(), n, columns, &used, nullptr, ifail.data());
  if (info < 0) throw EigenError(EigenError::Kind::InvalidInput, "zhsein rejected its arguments");
  if (info > 0) throw EigenError(EigenError::Kind::NoConvergence, "inverse iteration did not converge", out.values);
  if (LAPACKE_zunmhr(LAPACK_COL_MAJOR, 'L', 'N', n, columns, 1, n, a.data(), n, tau.data(), vr.data(), n) != 0)
    throw EigenError(EigenError::Kind::InvalidInput, "zunmhr failed");
  out.vectors.resize(n);
  lapack_int col = 0;
  for (lapack_int j = 0; j < n; ++j) {
    if (!select[j]) continue;
    out.vectors[j].assign(vr.begin() + col * n, vr.begin() + (col + 1) * n);
    ++col;
  }
  return out;
}

}  // namespace

std::optional<ComplexVector> real_gauge(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  const double scale = std::max(m.norm(), 1e-300);
  const double tol = 1e-14 * scale;
  ComplexVector phase(n, 0.0);
  std::vector<bool> seen(n, false);
  // Breadth-first over the coupling graph; each component starts at phase 1.
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    phase[root] = 1.0;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t a = queue.front();
      queue.pop_front();
      for (std::size_t b = 0; b < n; ++b) {
        if (seen[b]) continue;
        Complex mab = m(a, b), mba = m(b, a);
        Complex link = std::abs(mab) >= std::abs(mba) ? mab : std::conj(mba);
        if (std::abs(link) <= tol) continue;
        // want m(a,b) d_b / d_a real
        seen[b] = true;
        phase[b] = phase[a] * std::abs(link) / link;
        queue.push_back(b);
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      Complex t = m(i, j) * phase[j] / phase[i];
      if (std::abs(t.imag()) > tol) return std::nullopt;
    }
  return phase;
}

Spectrum eigenvalues(const ComplexMatrix& m, const EigenOptions& options) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw EigenError(EigenError::Kind::InvalidInput, "matrix must be square and non-empty");
  check_finite(m);
  const lapack_int n = static_cast<lapack_int>(m.rows());

  RawResult raw;
  if (auto gauge = real_gauge(m)) {
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (lapack_int j = 0; j < n; ++j)
      for (lapack_int i = 0; i < n; ++i) a[j * n + i] = (m(i, j) * (*gauge)[j] / (*gauge)[i]).real();
    raw = solve_real(a, n, options);
    for (auto& v : raw.vectors)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] *= (*gauge)[i];
  } else {
    raw = solve_complex(m, options);
  }

  std::vector<std::size_t> order(raw.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Complex& x = raw.values[a];
    const Complex& y = raw.values[b];
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  Spectrum out;
  out.matrixNorm = m.norm();
  out.realityTol = options.realityTol * std::max(out.matrixNorm, 1.0);
  for (std::size_t i : order) out.values.push_back(raw.values[i]);
  if (options.wantVectors) {
    for (std::size_t i : order) {
      ComplexVector v = std::move(raw.vectors[i]);
      normalize(v);
      out.vectors.push_back(std::move(v));
    }
  }
  return out;
}

Spectrum eigenvalues(const SparseComplexMatrix& m, const EigenOptions& options) {
  return eigenvalues(m.to_dense(), options);
}

Spectrum eigenvalues(const SparseComplexMatrix& m, bool wantVectors) {
  EigenOptions options;
  options.wantVectors = wantVectors;
  return eigenvalues(m, options);
}

PairClassification classify_pairs(const Spectrum& spectrum, double pairTol) {
  PairClassification out;
  const auto& w = spectrum.values;
  std::vector<std::size_t> upper, lower;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::abs(w[i].imag()) <= spectrum.realityTol)
      out.reals.push_back(i);
    else
      (w[i].imag() > 0 ? upper : lower).push_back(i);
  }
  std::vector<bool> taken(w.size(), false);
  for (std::size_t i : upper) {
    std::size_t best = w.size();
    double best_dist = 0.0;
    for (std::size_t j : lower) {
      if (taken[j]) continue;
      double dist = std::abs(w[j] - std::conj(w[i]));
      if (best == w.size() || dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    if (best == w.size() || best_dist > pairTol * std::max(1.0, std::abs(w[i])))
      throw EigenError(EigenError::Kind::Unpairable, "non-real eigenvalue without a conjugate partner");
    taken[best] = true;
    out.pairs.emplace_back(i, best);
  }
  for (std::size_t j : lower)
    if (!taken[j]) throw EigenError(EigenError::Kind::Unpairable, "non-real eigenvalue without a conjugate partner");
  return out;
}

}  // namespace ptspec
