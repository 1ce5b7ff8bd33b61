#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ptspec/model.hpp"

namespace ptspec {

/// Product oscillator state |nx> (x) |ny>.
struct BasisState {
  int nx = 0;
  int ny = 0;

  int total() const { return nx + ny; }
  Parity parity() const { return ny % 2 == 0 ? Parity::Even : Parity::Odd; }
  /// Unperturbed energy 2(nx + ny) + 2 for H0 = p_x^2 + p_y^2 + x^2 + y^2.
  int unperturbed_energy() const { return 2 * total() + 2; }

  friend auto operator<=>(const BasisState&, const BasisState&) = default;
};

struct BasisStateHash {
  std::size_t operator()(const BasisState& s) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(s.nx) << 32) ^ static_cast<std::uint32_t>(s.ny));
  }
};

struct TruncationScheme {
  int maxTotalQuanta = 0;
};

/// All states of one y-parity with nx + ny <= N, ordered by total quanta, then
/// by descending nx within a shell.
class ParitySector {
 public:
  ParitySector(Parity parity, std::vector<BasisState> states);

  Parity parity() const { return parity_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<BasisState>& states() const { return states_; }
  const BasisState& operator[](std::size_t i) const { return states_[i]; }
  std::optional<std::size_t> index_of(const BasisState& s) const;

 private:
  Parity parity_;
  std::vector<BasisState> states_;
  std::unordered_map<BasisState, std::size_t, BasisStateHash> index_;
};

ParitySector enumerate_sector(Parity parity, TruncationScheme trunc);

/// Closed-form count of states with nx + ny <= N and the given y-parity.
std::size_t sector_size(Parity parity, int max_total_quanta);

enum class Ladder : std::uint8_t { RaiseX, LowerX, RaiseY, LowerY };

/// coefficient * 2^(halfPowersOfTwo / 2) * word[0] word[1] ... word[k-1].
/// The rightmost ladder operator acts first.
struct OperatorMonomial {
  std::vector<Ladder> word;
  mpq_class coefficient;
  int halfPowersOfTwo = 0;
};

/// Exact amplitude coefficient * 2^(halfPowersOfTwo/2) * sqrt(radicand).
///
/// Stored canonically: radicand odd and square-free, halfPowersOfTwo in {0, 1},
/// so equal values compare equal field by field. Zero has coefficient 0,
/// exponent 0 and radicand 1.
class Amplitude {
 public:
  Amplitude() = default;
  Amplitude(const mpq_class& coefficient, int half_powers_of_two, std::uint64_t radicand);

  const mpq_class& coefficient() const { return coefficient_; }
  int halfPowersOfTwo() const { return half_powers_; }
  std::uint64_t radicand() const { return radicand_; }
  bool is_zero() const { return sgn(coefficient_) == 0; }

  double to_double() const;
  std::string to_string() const;

  /// Exact sum; throws std::logic_error if the surds are incommensurate.
  Amplitude& operator+=(const Amplitude& rhs);
  friend Amplitude operator+(Amplitude a, const Amplitude& b) { return a += b; }
  friend bool operator==(const Amplitude&, const Amplitude&) = default;

 private:
  mpq_class coefficient_ = 0;
  int half_powers_ = 0;
  std::uint64_t radicand_ = 1;
};

/// <bra| sum(op) |ket> using lower|n> = sqrt(n)|n-1>, raise|n> = sqrt(n+1)|n+1>.
Amplitude matrix_element(std::span<const OperatorMonomial> op, const BasisState& bra, const BasisState& ket);

/// Ladder expansion of W where the interaction is V = i g W, with x = (a + a^dagger)/sqrt(2):
///   Cubic12:     W = x y^2            -> 12 monomials, prefactor 2^(-3/2)
///   HenonHeiles: W = x y^2 - x^3 / 3  -> 12 + 8 monomials
std::vector<OperatorMonomial> decompose_potential(Model which);

/// Action of the ladder word on unnormalised states |n) = (a^dagger)^n |0>,
/// where a^dagger|n) = |n+1) and a|n) = n|n-1). The returned rational is the
/// monomial coefficient times the integer ladder factors; the 2^(e/2) prefactor
/// is not included. Empty when the word annihilates the state.
std::optional<std::pair<BasisState, mpq_class>> apply_unnormalized(const OperatorMonomial& m, const BasisState& ket);

/// Net (delta nx, delta ny) produced by a word.
std::pair<int, int> word_shift(const OperatorMonomial& m);

}  // namespace ptspec
