#include <cmath>
#include <vector>

#include "doctest.h"
#include "ptspec/basis.hpp"
#include "ptspec/hamiltonian.hpp"

using namespace ptspec;

namespace {

std::vector<BasisState> states(Parity p, int n) { return enumerate_sector(p, TruncationScheme{n}).states(); }

}  // namespace

TEST_SUITE("basis") {
  TEST_CASE("sector enumeration order and size") {
    CHECK(states(Parity::Even, 2) == std::vector<BasisState>{{0, 0}, {1, 0}, {2, 0}, {0, 2}});
    CHECK(states(Parity::Odd, 2) == std::vector<BasisState>{{0, 1}, {1, 1}});
    CHECK(states(Parity::Even, 0) == std::vector<BasisState>{{0, 0}});
    for (int n = 0; n <= 30; ++n)
      for (Parity p : {Parity::Even, Parity::Odd}) CHECK(sector_size(p, n) == states(p, n).size());
    auto s = enumerate_sector(Parity::Even, TruncationScheme{6});
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.index_of(s[i]) == i);
    CHECK_FALSE(s.index_of({0, 1}).has_value());
  }

  TEST_CASE("single ladder elements") {
    const std::vector<OperatorMonomial> x{{{Ladder::RaiseX}, 1, -1}, {{Ladder::LowerX}, 1, -1}};
    CHECK(matrix_element(x, {1, 0}, {0, 0}) == Amplitude(1, -1, 1));
    CHECK(matrix_element(x, {1, 0}, {0, 0}).to_double() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(matrix_element(x, {3, 0}, {2, 0}).to_double() == doctest::Approx(std::sqrt(3.0 / 2.0)));
  }

  TEST_CASE("potential matrix elements") {
    auto cubic = decompose_potential(Model::Cubic12);
    auto hh = decompose_potential(Model::HenonHeiles);
    // Ordered words: (a_x + a_x^+)(a_y + a_y^+)^2 has 2 * 2 * 2 of them, x^3 another 8.
    CHECK(cubic.size() == 8);
    CHECK(hh.size() == 16);
    CHECK(matrix_element(cubic, {1, 0}, {0, 0}).to_double() == doctest::Approx(1 / (2 * std::sqrt(2.0))));
    CHECK(matrix_element(cubic, {0, 1}, {0, 0}).is_zero());
    CHECK(matrix_element(hh, {3, 0}, {0, 0}).to_double() ==
          doctest::Approx(-std::sqrt(6.0) / (2 * std::sqrt(2.0)) / 3));
    for (const auto& m : cubic) {
      auto [dx, dy] = word_shift(m);
      CHECK(std::abs(dx) == 1);
      CHECK((dy == 0 || std::abs(dy) == 2));
    }
  }

  TEST_CASE("W has zero diagonal and is symmetric") {
    for (Model m : {Model::Cubic12, Model::HenonHeiles}) {
      auto op = decompose_potential(m);
      auto sector = enumerate_sector(Parity::Even, TruncationScheme{6});
      for (std::size_t i = 0; i < sector.size(); ++i) {
        CHECK(matrix_element(op, sector[i], sector[i]).is_zero());
        for (std::size_t j = 0; j < i; ++j)
          CHECK(matrix_element(op, sector[i], sector[j]) == matrix_element(op, sector[j], sector[i]));
      }
    }
  }
}

TEST_SUITE("hamiltonian") {
  TEST_CASE("unperturbed block is diagonal") {
    SparseComplexMatrix h = build_block(ModelSpec{Model::Cubic12, 0.0, Parity::Even, TruncationScheme{2}});
    ComplexMatrix d = h.to_dense();
    const double expected[] = {2, 4, 6, 6};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(d(i, j) == Complex(i == j ? expected[i] : 0.0, 0.0));
  }

  TEST_CASE("coupling entry") {
    ComplexMatrix d = build_block(ModelSpec{Model::Cubic12, 1.0, Parity::Even, TruncationScheme{1}}).to_dense();
    CHECK(d(0, 1).real() == 0.0);
    CHECK(d(0, 1).imag() == doctest::Approx(1 / (2 * std::sqrt(2.0))).epsilon(1e-15));
  }

  TEST_CASE("off-diagonal entries are imaginary and the block is transpose symmetric") {
    for (Model m : {Model::Cubic12, Model::HenonHeiles})
      for (Parity p : {Parity::Even, Parity::Odd}) {
        SparseComplexMatrix h = build_block(ModelSpec{m, 0.7, p, TruncationScheme{12}});
        CHECK(h.is_transpose_symmetric());
        for (const auto& e : h.entries()) {
          if (e.row == e.col)
            CHECK(e.value.imag() == 0.0);
          else
            CHECK(e.value.real() == 0.0);
        }
      }
  }

  TEST_CASE("exact W agrees with the floating-point block") {
    ExactOperatorMatrix w = build_exact_W(Model::HenonHeiles, Parity::Odd, TruncationScheme{10});
    ComplexMatrix a = build_block(w, 0.3).to_dense();
    ComplexMatrix b = build_block(ModelSpec{Model::HenonHeiles, 0.3, Parity::Odd, TruncationScheme{10}}).to_dense();
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) CHECK(std::abs(a(i, j) - b(i, j)) < 1e-15);
    for (const auto& e : w.entries) CHECK(e.row != e.col);
  }
}
