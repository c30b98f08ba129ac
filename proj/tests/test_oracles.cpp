#include <doctest.h>

#include "vostokov/error.hpp"
#include "vostokov/oracles.hpp"
#include "vostokov/sampling.hpp"

using namespace vostokov;

TEST_CASE("Kummer's formula on 1 + X, 1 - X") {
  const auto R = make_ring(3, 1, 4);
  IterSeries a = IterSeries::zero(R, 1, {0, 0}, 6), b = a;
  a.set({0, 0}, R->one());
  a.set({0, 1}, R->one());
  b.set({0, 0}, R->one());
  b.set({0, 1}, R->from_int(-1));
  CHECK(kummer_exponent(a, b) == 2);
  CHECK_THROWS_AS(kummer_exponent(a.scaled(R->from_int(2)), b), DomainError);
}

TEST_CASE("Sen's formula validates its inputs") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1);
  const WittRing& W = *K->ring();
  CHECK(sen_level(*K) == 2);
  const FieldElement a = parse_element("1 + pi^2", K);
  const FieldElement pi = FieldElement::pi(K);
  const WittPoly g{W.zero(), W.one()}, h{W.one(), W.one()};
  CHECK_NOTHROW(sen_exponent(a, pi, g, h));
  CHECK_THROWS_AS(sen_exponent(a, pi, h, h), DomainError);
  CHECK_THROWS_AS(sen_exponent(parse_element("1 + pi", K), pi, g, h), DomainError);
  CHECK(agree(evaluate_poly(polynomial_of(pi), K), pi));
}

TEST_CASE("Artin-Hasse exponents are additive in the unit") {
  const auto K = FieldSpec::cyclotomic(3, 2, 1);
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const FieldElement a = random_principal_unit(K, rng), b = random_principal_unit(K, rng);
    CHECK(artin_hasse_zeta(a * b) == (artin_hasse_zeta(a) + artin_hasse_zeta(b)) % 9);
    CHECK(artin_hasse_pi(a * b) == (artin_hasse_pi(a) + artin_hasse_pi(b)) % 9);
  }
}

TEST_CASE("norm membership") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1);
  const FieldElement beta = parse_element("1 + pi", K);
  // beta is trivially a norm from K(beta^(1/3)): N(-T) = beta
  CHECK(norm_membership(beta, beta, 4).member);
  CHECK_THROWS_AS(norm_membership(beta, parse_element("8", K), 4), DomainError);
  CHECK_THROWS_AS(norm_membership(beta, beta.pow(3), 4), DomainError);
  CHECK_THROWS_AS(norm_membership(FieldElement::pi(FieldSpec::cyclotomic(5, 1, 1)),
                                  FieldElement::pi(FieldSpec::cyclotomic(5, 1, 1))),
                  DomainError);
}
