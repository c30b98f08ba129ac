#include <doctest.h>

#include <set>

#include "vostokov/error.hpp"
#include "vostokov/oracles.hpp"
#include "vostokov/pairing.hpp"
#include "vostokov/sampling.hpp"

using namespace vostokov;

TEST_CASE("pinned value V(zeta_3, 1 - pi) = 2") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1);
  const SymbolExponent r = vostokov_exponent({parse_element("z", K), parse_element("1 - pi", K)});
  CHECK(r.value == 2);
  CHECK(r.modulus == 3);
  CHECK(r.plan.N > 0);
  CHECK(r.attempts >= 2);
}

TEST_CASE("trivial symbols") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1);
  CHECK(vostokov_exponent({parse_element("pi", K), parse_element("1", K)}).value == 0);
  CHECK(vostokov_exponent({parse_element("pi", K), parse_element("-pi", K)}).value == 0);
}

TEST_CASE("the global sign is the only one consistent with Kummer's formula") {
  const auto K = FieldSpec::cyclotomic(5, 1, 1);
  Rng rng(3);
  std::set<int> signs{1, -1};
  for (int t = 0; t < 12; ++t) {
    const FieldElement a = random_principal_unit(K, rng), b = random_principal_unit(K, rng);
    const std::uint64_t v = vostokov_exponent({a, b}).value;
    const std::uint64_t k = kummer_exponent(lift_element(a), lift_element(b));
    if (v != k) signs.erase(1);
    if (v != (5 - k) % 5) signs.erase(-1);
  }
  REQUIRE(signs.size() == 1);
  CHECK(*signs.begin() == kGlobalSign);
}

TEST_CASE("precision schedule") {
  const auto K = FieldSpec::cyclotomic(3, 2, 1);
  const PrecisionPlan a = initial_plan(*K);
  const PrecisionPlan b = grow_plan(*K, a);
  CHECK(b.N > a.N);
  CHECK(b.window > a.window);
  CHECK_FALSE(a == b);
  CHECK(vostokov_exponent_at({parse_element("z", K), parse_element("1 - pi", K)}, b) ==
        vostokov_exponent({parse_element("z", K), parse_element("1 - pi", K)}).value);
}

TEST_CASE("two-dimensional symbol") {
  const auto K = FieldSpec::cyclotomic(3, 1, 2);
  const FieldElement t1 = FieldElement::t1(K), pi = FieldElement::pi(K);
  const FieldElement z = FieldElement::zeta(K);
  // V(t1, pi, zeta) and its K-slot swap
  const std::uint64_t a = vostokov_exponent({t1, pi, z}).value;
  const std::uint64_t b = vostokov_exponent({pi, t1, z}).value;
  CHECK((a + b) % 3 == 0);
  CHECK(vostokov_exponent({t1, t1, z}).value == 0);
}

TEST_CASE("argument validation") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1);
  const FieldElement x = parse_element("1 + pi", K);
  CHECK_THROWS_AS(vostokov_exponent({x}), DomainError);
  CHECK_THROWS_AS(vostokov_exponent({x, FieldElement::zero(K)}), DomainError);
  const auto K2 = FieldSpec::cyclotomic(3, 1, 2);
  CHECK_THROWS_AS(vostokov_exponent({x, parse_element("1 + pi", K2)}), DomainError);
  CHECK(required_relprec(*K) == 5);
}

TEST_CASE("tame symbol") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1, 2);
  const WittRing& R = *K->ring();
  const FieldElement g = FieldElement::teichmuller(K, residue_generator(R));
  const FieldElement pi = FieldElement::pi(K);
  CHECK(residue_log(R, residue_generator(R)) == 1);
  // (g, pi) -> g^1
  CHECK(tame_symbol(g, pi, 8) == 1);
  CHECK(tame_symbol(pi, g, 8) == 7);
  // (pi, pi) -> -1 = g^4
  CHECK(tame_symbol(pi, pi, 8) == 4);
  CHECK(tame_symbol(pi, pi, 2) == 0);
  CHECK_THROWS_AS(tame_symbol(pi, g, 3), DomainError);
}
