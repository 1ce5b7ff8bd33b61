#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "ptspec/eigen.hpp"
#include "ptspec/hamiltonian.hpp"

using namespace ptspec;

namespace {

double residual(const ComplexMatrix& a, Complex lambda, const ComplexVector& v) {
  ComplexVector av = a.apply(v);
  double r = 0;
  for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::abs(av[i] - lambda * v[i]));
  return r;
}

}  // namespace

TEST_SUITE("eigen") {
  TEST_CASE("analytic 2x2") {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1;
    m(1, 0) = -1;
    Spectrum s = eigenvalues(m);
    REQUIRE(s.values.size() == 2);
    CHECK(std::abs(s.values[0] - Complex(0, -1)) < 1e-14);
    CHECK(std::abs(s.values[1] - Complex(0, 1)) < 1e-14);
  }

  TEST_CASE("diagonal block") {
    Spectrum s = eigenvalues(build_block(ModelSpec{Model::Cubic12, 0.0, Parity::Even, TruncationScheme{2}}), false);
    REQUIRE(s.values.size() == 4);
    const double expected[] = {2, 4, 6, 6};
    for (int i = 0; i < 4; ++i) CHECK(s.values[i] == Complex(expected[i], 0));
  }

  TEST_CASE("random matrices against the characteristic polynomial oracle") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      ComplexMatrix a = testing::random_matrix(6, seed);
      Spectrum s = eigenvalues(a);
      CHECK(testing::multiset_distance(s.values, testing::oracle_eigenvalues(a)) < 1e-8);
    }
  }

  TEST_CASE("eigenvectors are normalized and satisfy the eigen equation") {
    ComplexMatrix a = testing::random_matrix(10, 77);
    Spectrum s = eigenvalues(a, EigenOptions{true, 0, 1e-9});
    REQUIRE(s.vectors.size() == s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      double norm = 0;
      for (const auto& c : s.vectors[i]) norm += std::norm(c);
      CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(residual(a, s.values[i], s.vectors[i]) < 1e-10);
      auto first = std::find_if(s.vectors[i].begin(), s.vectors[i].end(), [](Complex c) { return std::abs(c) > 1e-8; });
      REQUIRE(first != s.vectors[i].end());
      CHECK(first->imag() == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(first->real() > 0);
    }
  }

  TEST_CASE("selected eigenvectors on a Hamiltonian block") {
    SparseComplexMatrix h = build_block(ModelSpec{Model::HenonHeiles, 0.8, Parity::Odd, TruncationScheme{20}});
    Spectrum s = eigenvalues(h, EigenOptions{true, 5, 1e-9});
    ComplexMatrix d = h.to_dense();
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      CHECK(s.has_vector(i) == (i < 5));
      if (s.has_vector(i)) CHECK(residual(d, s.values[i], s.vectors[i]) < 1e-10);
    }
  }

  TEST_CASE("trace and similarity invariance") {
    for (std::size_t dim : {3u, 8u, 20u}) {
      ComplexMatrix a = testing::random_matrix(dim, 1000 + dim);
      ComplexMatrix p = testing::random_matrix(dim, 2000 + dim);
      Spectrum s = eigenvalues(a);
      Complex sum = 0, tr = 0;
      for (auto v : s.values) sum += v;
      for (std::size_t i = 0; i < dim; ++i) tr += a(i, i);
      CHECK(std::abs(sum - tr) < 1e-10 * dim);
      Spectrum similar = eigenvalues(testing::multiply(testing::multiply(p, a), testing::inverse(p)));
      CHECK(testing::multiset_distance(s.values, similar.values) < 1e-8);
    }
  }

  TEST_CASE("pair classification") {
    Spectrum s;
    s.values = {Complex(2.0, 0), Complex(3.1, -0.4), Complex(3.1, 0.4)};
    s.realityTol = 1e-12;
    PairClassification c = classify_pairs(s);
    CHECK(c.reals == std::vector<std::size_t>{0});
    REQUIRE(c.pairs.size() == 1);
    CHECK(s.values[c.pairs[0].first].imag() > 0);
    CHECK(s.values[c.pairs[0].second].imag() < 0);

    Spectrum t;
    t.values = {Complex(2.0, 1e-14)};
    t.realityTol = 1e-12;
    CHECK(classify_pairs(t).reals.size() == 1);
  }

  TEST_CASE("PT block spectrum is real or in conjugate pairs") {
    Spectrum s = eigenvalues(build_block(ModelSpec{Model::Cubic12, 2.0, Parity::Even, TruncationScheme{30}}), false);
    PairClassification c = classify_pairs(s);
    CHECK(c.reals.size() + 2 * c.pairs.size() == s.values.size());
    CHECK_FALSE(c.pairs.empty());
  }

  TEST_CASE("unpaired complex eigenvalue is reported") {
    ComplexMatrix m(2, 2);
    m(0, 0) = Complex(1, 1);
    m(1, 1) = 2;
    CHECK_THROWS_AS(classify_pairs(eigenvalues(m)), EigenError);
  }

  TEST_CASE("real gauge of a Hamiltonian block") {
    ComplexMatrix d = build_block(ModelSpec{Model::Cubic12, 1.3, Parity::Even, TruncationScheme{8}}).to_dense();
    auto phases = real_gauge(d);
    REQUIRE(phases.has_value());
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) {
        Complex v = std::conj((*phases)[i]) * d(i, j) * (*phases)[j];
        CHECK(std::abs(v.imag()) < 1e-14);
      }
    CHECK_FALSE(real_gauge(testing::random_matrix(4, 5)).has_value());
  }

  TEST_CASE("invalid input") {
    ComplexMatrix m(2, 3);
    CHECK_THROWS_AS(eigenvalues(m), EigenError);
    ComplexMatrix n(2, 2);
    n(0, 0) = std::nan("");
    CHECK_THROWS_AS(eigenvalues(n), EigenError);
  }
}
