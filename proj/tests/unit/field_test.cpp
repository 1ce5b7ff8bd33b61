#include <cmath>

#include "doctest.h"
#include "ptspec/field.hpp"

using ptspec::FieldElement;

TEST_SUITE("field") {
  TEST_CASE("square factors move out of the radicand") {
    FieldElement x(mpq_class(0), mpq_class(1), mpz_class(164));  // sqrt(164) = 2 sqrt(41)
    CHECK(x.radicand() == 41);
    CHECK(x.surd() == 2);
    FieldElement y(mpq_class(3), mpq_class(1), mpz_class(49));
    CHECK(y.is_rational());
    CHECK(y == FieldElement(10));
  }

  TEST_CASE("arithmetic stays in the field") {
    FieldElement a(mpq_class(17, 16), mpq_class(1, 8), mpz_class(41));
    FieldElement b = a.conjugate();
    CHECK((a + b) == FieldElement(mpq_class(17, 8)));
    CHECK((a * b) == FieldElement(a.norm()));
    CHECK(((a / b) * b) == a);
    CHECK((a - a).is_zero());
    CHECK((a - a).radicand() == 0);
  }

  TEST_CASE("mixing two quadratic fields throws") {
    FieldElement a(mpq_class(0), mpq_class(1), mpz_class(2));
    FieldElement b(mpq_class(0), mpq_class(1), mpz_class(3));
    CHECK_THROWS_AS(a + b, ptspec::RadicandConflict);
  }

  TEST_CASE("exact sign and ordering") {
    // (17/16)^2 = 289/256 > 41/64 = 164/256
    FieldElement a(mpq_class(17, 16), mpq_class(-1, 8), mpz_class(41));
    CHECK(a.sign() == 1);
    FieldElement b(mpq_class(115, 48), mpq_class(-1, 24), mpz_class(721));
    CHECK(b.sign() == 1);
    FieldElement c(mpq_class(1), mpq_class(-1), mpz_class(2));
    CHECK(c.sign() == -1);
    CHECK(c < FieldElement(0));
    CHECK(a < a.conjugate());
    CHECK(b < b.conjugate());
    CHECK_THROWS_AS((void)(a < c), ptspec::RadicandConflict);
    CHECK(FieldElement(mpq_class(-1, 3)) < FieldElement(mpq_class(-1, 4)));
  }

  TEST_CASE("string round trip") {
    for (const char* s : {"5/48", "-223/6912", "7", "17/16 + 1/8*sqrt(41)", "-329/384 - 3407/31488*sqrt(41)"}) {
      FieldElement x = FieldElement::parse(s);
      CHECK(FieldElement::parse(x.to_string()) == x);
    }
    CHECK(FieldElement::parse("17/16 + 1/8*sqrt(41)").to_string() == "17/16 + 1/8*sqrt(41)");
    CHECK(FieldElement::parse("1/8*sqrt(41)").radicand() == 41);
  }

  TEST_CASE("squarefree decomposition") {
    auto [s, d] = ptspec::squarefree_decompose(mpz_class(2 * 2 * 3 * 3 * 3 * 7));
    CHECK(s == 6);
    CHECK(d == 21);
    auto [s1, d1] = ptspec::squarefree_decompose(mpz_class(1));
    CHECK(s1 == 1);
    CHECK(d1 == 1);
  }

  TEST_CASE("conversion to floating point") {
    FieldElement a(mpq_class(17, 16), mpq_class(1, 8), mpz_class(41));
    CHECK(a.to_double() == doctest::Approx(17.0 / 16 + std::sqrt(41.0) / 8).epsilon(1e-15));
    CHECK(a.to_bigfloat(256).to_double() == doctest::Approx(a.to_double()).epsilon(1e-15));
  }
}
