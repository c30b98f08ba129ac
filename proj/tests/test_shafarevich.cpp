#include <doctest.h>

#include "vostokov/error.hpp"
#include "vostokov/sampling.hpp"
#include "vostokov/shafarevich.hpp"

using namespace vostokov;

TEST_CASE("index sets") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1);
  const auto I = basis_index_set(*K);
  // 0 < j < 3 with 3 not dividing j
  REQUIRE(I.size() == 2);
  CHECK(I[0][1] == 1);
  CHECK(I[1][1] == 2);
  const auto K2 = FieldSpec::cyclotomic(3, 1, 2);
  for (const Exponent& J : basis_index_set(*K2)) {
    CHECK(J[1] >= 0);
    CHECK(J[1] < 3);
    CHECK((J[0] % 3 != 0 || J[1] % 3 != 0));
  }
}

TEST_CASE("basis is orthogonal") {
  for (auto [p, m, n] : {std::tuple{3u, 1u, 1u}, {5u, 1u, 1u}, {3u, 1u, 2u}}) {
    const BasisDescription B = build_basis(FieldSpec::cyclotomic(p, m, n));
    CHECK(B.size() == B.params.size() + B.epsilons.size() + 1);
    const OrthogonalityReport r = verify_orthogonality(B);
    CHECK(r.all_pass());
    CHECK_FALSE(r.entries.empty());
  }
}

TEST_CASE("omega sits at level p e / (p - 1)") {
  const auto K = FieldSpec::cyclotomic(3, 2, 1);
  const FieldElement w = omega_element(K, omega_generator(*K));
  const FieldElement d = w - FieldElement::from_int(K, 1);
  CHECK(d.valuation()[1] == 9);
}

TEST_CASE("p-th roots") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1);
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const FieldElement x = random_unit(K, rng);
    const auto r = pth_root(x.pow(3), 1);
    REQUIRE(r.has_value());
    CHECK(agree(r->pow(3), x.pow(3)));
  }
  CHECK_FALSE(pth_root(FieldElement::pi(K), 1).has_value());
  CHECK_FALSE(pth_root(FieldElement::zeta(K), 1).has_value());
}

TEST_CASE("decomposition round-trip") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1);
  const BasisDescription B = build_basis(K);
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const FieldElement a = random_element(K, rng);
    const Decomposition d = decompose(a, B);
    CHECK(certificate_holds(a, d, B));
  }
  const Decomposition dp = decompose(FieldElement::pi(K), B);
  CHECK(dp.i == 1);
  CHECK(dp.c == 0);
}

TEST_CASE("dual partners exist at p = 3, m = 1") {
  const auto K = FieldSpec::cyclotomic(3, 1, 1);
  const auto cases = admissible_dual_cases(K);
  CHECK_FALSE(cases.empty());
  for (const DualCase& c : cases) {
    const DualResult r = dual_search(K, c);
    CHECK(r.found);
    CHECK(r.exponent == 1);
  }
}
