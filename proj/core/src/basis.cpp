#include "ptspec/basis.hpp"

#include <cmath>
#include <stdexcept>

#include "ptspec/error.hpp"

namespace ptspec {

ParitySector::ParitySector(Parity parity, std::vector<BasisState> states) : parity_(parity), states_(std::move(states)) {
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].parity() != parity_) throw InvalidArgument("state parity does not match its sector");
    index_.emplace(states_[i], i);
  }
}

std::optional<std::size_t> ParitySector::index_of(const BasisState& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ParitySector enumerate_sector(Parity parity, TruncationScheme trunc) {
  if (trunc.maxTotalQuanta < 0) throw InvalidArgument("maxTotalQuanta must be non-negative");
  std::vector<BasisState> states;
  states.reserve(sector_size(parity, trunc.maxTotalQuanta));
  const int first_ny = parity == Parity::Even ? 0 : 1;
  for (int n = 0; n <= trunc.maxTotalQuanta; ++n) {
    // descending nx within a shell, so ascending ny
    for (int nx = n; nx >= 0; --nx) {
      int ny = n - nx;
      if (ny >= first_ny && (ny - first_ny) % 2 == 0) states.push_back({nx, ny});
    }
  }
  return ParitySector(parity, std::move(states));
}

std::size_t sector_size(Parity parity, int max_total_quanta) {
  if (max_total_quanta < 0) return 0;
  // Shell n holds floor(n/2)+1 even-ny states and floor((n+1)/2) odd-ny states.
  const long N = max_total_quanta;
  long total = 0;
  if (parity == Parity::Even) {
    // sum_{n=0}^{N} (floor(n/2) + 1)
    long m = N / 2;
    total = (N + 1) + (N % 2 == 0 ? m * m : m * (m + 1));
  } else {
    // sum_{n=0}^{N} floor((n+1)/2)
    long m = (N + 1) / 2;
    total = (N % 2 == 1) ? m * m : m * (m + 1);
  }
  return static_cast<std::size_t>(total);
}

namespace {

// Square-free reduction for the small radicands produced by ladder factors.
std::pair<std::uint64_t, std::uint64_t> small_squarefree(std::uint64_t n) {
  std::uint64_t root = 1;
  std::uint64_t core = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      root *= p;
    }
    if (n % p == 0) {
      n /= p;
      core *= p;
    }
  }
  core *= n;
  return {root, core};
}

mpq_class power_of_two(int k) {
  mpz_class v = 1;
  v <<= static_cast<unsigned>(std::abs(k));
  return k >= 0 ? mpq_class(v) : mpq_class(1, v);
}

}  // namespace

Amplitude::Amplitude(const mpq_class& coefficient, int half_powers_of_two, std::uint64_t radicand)
    : coefficient_(coefficient) {
  coefficient_.canonicalize();
  if (sgn(coefficient_) == 0 || radicand == 0) {
    coefficient_ = 0;
    return;
  }
  auto [root, core] = small_squarefree(radicand);
  coefficient_ *= mpz_class(static_cast<unsigned long>(root));
  int e = half_powers_of_two;
  if (core % 2 == 0) {
    core /= 2;
    e += 1;
  }
  int rem = ((e % 2) + 2) % 2;
  coefficient_ *= power_of_two((e - rem) / 2);
  half_powers_ = rem;
  radicand_ = core;
}

double Amplitude::to_double() const {
  double v = coefficient_.get_d() * std::sqrt(static_cast<double>(radicand_));
  return half_powers_ ? v * std::sqrt(2.0) : v;
}

std::string Amplitude::to_string() const {
  std::string out = coefficient_.get_str();
  std::uint64_t r = radicand_ * (half_powers_ ? 2u : 1u);
  if (r != 1 && !is_zero()) out += "*sqrt(" + std::to_string(r) + ")";
  return out;
}

Amplitude& Amplitude::operator+=(const Amplitude& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (rhs.half_powers_ != half_powers_ || rhs.radicand_ != radicand_)
    throw std::logic_error("cannot add amplitudes with different surds: " + to_string() + " + " + rhs.to_string());
  coefficient_ += rhs.coefficient_;
  if (sgn(coefficient_) == 0) *this = Amplitude();
  return *this;
}

namespace {

// Applies the word right-to-left; returns false if the state is annihilated.
// For each factor, `on_factor(k)` receives the integer n (lower) or n+1 (raise).
template <class F>
bool walk_word(const std::vector<Ladder>& word, BasisState& s, F&& on_factor) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    switch (*it) {
      case Ladder::RaiseX:
        on_factor(s.nx + 1, true);
        ++s.nx;
        break;
      case Ladder::LowerX:
        if (s.nx == 0) return false;
        on_factor(s.nx, false);
        --s.nx;
        break;
      case Ladder::RaiseY:
        on_factor(s.ny + 1, true);
        ++s.ny;
        break;
      case Ladder::LowerY:
        if (s.ny == 0) return false;
        on_factor(s.ny, false);
        --s.ny;
        break;
    }
  }
  return true;
}

}  // namespace

Amplitude matrix_element(std::span<const OperatorMonomial> op, const BasisState& bra, const BasisState& ket) {
  Amplitude total;
  for (const auto& m : op) {
    BasisState s = ket;
    std::uint64_t product = 1;
    if (!walk_word(m.word, s, [&](int k, bool) { product *= static_cast<std::uint64_t>(k); })) continue;
    if (s != bra) continue;
    total += Amplitude(m.coefficient, m.halfPowersOfTwo, product);
  }
  return total;
}

std::optional<std::pair<BasisState, mpq_class>> apply_unnormalized(const OperatorMonomial& m, const BasisState& ket) {
  BasisState s = ket;
  mpz_class factor = 1;
  if (!walk_word(m.word, s, [&](int k, bool raise) {
        if (!raise) factor *= k;
      }))
    return std::nullopt;
  return std::make_pair(s, mpq_class(m.coefficient * factor));
}

std::pair<int, int> word_shift(const OperatorMonomial& m) {
  int dx = 0, dy = 0;
  for (auto l : m.word) {
    switch (l) {
      case Ladder::RaiseX: ++dx; break;
      case Ladder::LowerX: --dx; break;
      case Ladder::RaiseY: ++dy; break;
      case Ladder::LowerY: --dy; break;
    }
  }
  return {dx, dy};
}

namespace {

// All 2^k words of (a + a^dagger)^k in one mode, left factor first.
void expand_mode(int k, Ladder raise, Ladder lower, std::vector<std::vector<Ladder>>& out) {
  out = {{}};
  for (int i = 0; i < k; ++i) {
    std::vector<std::vector<Ladder>> next;
    for (const auto& w : out) {
      auto a = w;
      a.push_back(lower);
      next.push_back(std::move(a));
      auto b = w;
      b.push_back(raise);
      next.push_back(std::move(b));
    }
    out = std::move(next);
  }
}

// x^px y^py with x = (a_x + a_x^dagger)/sqrt(2): prefactor 2^(-(px+py)/2).
void append_xy_power(int px, int py, const mpq_class& coeff, std::vector<OperatorMonomial>& out) {
  std::vector<std::vector<Ladder>> xw, yw;
  expand_mode(px, Ladder::RaiseX, Ladder::LowerX, xw);
  expand_mode(py, Ladder::RaiseY, Ladder::LowerY, yw);
  for (const auto& a : xw)
    for (const auto& b : yw) {
      OperatorMonomial m;
      m.word = a;
      m.word.insert(m.word.end(), b.begin(), b.end());
      m.coefficient = coeff;
      m.halfPowersOfTwo = -(px + py);
      out.push_back(std::move(m));
    }
}

}  // namespace

std::vector<OperatorMonomial> decompose_potential(Model which) {
  std::vector<OperatorMonomial> out;
  append_xy_power(1, 2, mpq_class(1), out);
  if (which == Model::HenonHeiles) append_xy_power(3, 0, mpq_class(-1, 3), out);
  return out;
}

}  // namespace ptspec
