#include <doctest.h>

#include "vostokov/error.hpp"
#include "vostokov/field.hpp"
#include "vostokov/oracles.hpp"

using namespace vostokov;

TEST_CASE("Q_3(zeta_3) basics") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1);
  CHECK(K->e() == 2);
  CHECK(K->pm() == 3);
  // minimal polynomial of pi = zeta - 1 is X^2 + 3X + 3
  REQUIRE(K->minpoly().size() == 3);
  CHECK(K->minpoly()[0][0] == 3);
  CHECK(K->minpoly()[1][0] == 3);
  CHECK(K->minpoly()[2][0] == 1);
  const std::uint64_t mod = K->ring()->modulus();
  const FieldElement pi = FieldElement::pi(K);
  CHECK(field_trace(FieldElement::from_int(K, 1)) == 2);
  CHECK(field_trace(pi) == mod - 3);
  CHECK(field_trace(pi * pi) == 3);
  // Tr(log(1 - pi)) = -3 mod 9
  CHECK(artin_hasse_zeta(FieldElement::from_int(K, 1) - pi) == 1);
}

TEST_CASE("element grammar") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1);
  CHECK(agree(parse_element("z - 1", K), FieldElement::pi(K)));
  CHECK(agree(parse_element("pi^-1 * pi", K), FieldElement::from_int(K, 1)));
  CHECK(agree(parse_element("z^3", K), FieldElement::from_int(K, 1)));
  CHECK(agree(parse_element("(1 + pi)^2", K), parse_element("1 + 2*pi + pi^2", K)));
  CHECK(parse_element("p", K).valuation()[1] == 2);
  CHECK_THROWS_AS(parse_element("1 +", K), DomainError);
  CHECK_THROWS_AS(parse_element("q", K), DomainError);
  CHECK_THROWS_AS(parse_element("t2", K), DomainError);
  CHECK_THROWS_AS(parse_element("0^-1", K), DomainError);
}

TEST_CASE("two-dimensional field and unramified coefficients") {
  const auto K = FieldSpec::cyclotomic(3, 2, 2, 2);
  CHECK(K->e() == 6);
  CHECK(K->f() == 2);
  CHECK(K->ring()->defining_polynomial()[0] == 1);
  const FieldElement t1 = FieldElement::t1(K);
  CHECK(t1.valuation()[0] == 1);
  CHECK(t1.valuation()[1] == 0);
  CHECK(agree(parse_element("t2", K), FieldElement::pi(K)));
  CHECK(agree(t1 * t1.inverse(), FieldElement::from_int(K, 1)));
}

TEST_CASE("invalid fields are rejected") {
  CHECK_THROWS_AS(FieldSpec::cyclotomic(2, 1, 1), DomainError);
  CHECK_THROWS_AS(FieldSpec::cyclotomic(3, 0, 1), DomainError);
  CHECK_THROWS_AS(FieldSpec::cyclotomic(3, 1, 3), DomainError);
}

TEST_CASE("zeta evaluates from the s-series") {
  const auto K = FieldSpec::cyclotomic(5, 1, 1);
  const FieldElement z = FieldElement::zeta(K);
  CHECK(agree(z.pow(5), FieldElement::from_int(K, 1)));
  CHECK_FALSE(agree(z, FieldElement::from_int(K, 1)));
  const IterSeries s = s_series(*K, 12);
  // s = X^(p^m) mod p
  for (int k = 0; k < 12; ++k) CHECK(s.coeff(k)[0] % 5 == (k == 5 ? 1u : 0u));
}

TEST_CASE("lifts evaluate back to the element") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1);
  const FieldElement x = parse_element("2 + pi^3 - pi", K);
  CHECK(agree(evaluate(lift_element(x), K), x));
}
