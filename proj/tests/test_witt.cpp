#include <doctest.h>

#include "vostokov/error.hpp"
#include "vostokov/sampling.hpp"
#include "vostokov/witt.hpp"

using namespace vostokov;

TEST_CASE("Teichmuller representatives of 2") {
  const auto R5 = make_ring(5, 1, 3);
  CHECK(R5->teichmuller(R5->from_int(2))[0] == 57);
  const auto R3 = make_ring(3, 1, 4);
  CHECK(R3->teichmuller(R3->from_int(2))[0] == 80);
}

TEST_CASE("quadratic unramified ring over Z_3") {
  const auto R = make_ring(3, 2, 4);
  const auto poly = R->defining_polynomial();
  REQUIRE(poly.size() == 3);
  CHECK(poly[0] == 1);
  CHECK(poly[1] == 0);
  CHECK(poly[2] == 1);
  const Coords y = R->generator();
  CHECK(R->frobenius(y) == R->neg(y));
  CHECK(R->trace(y) == 0);
  CHECK(R->trace(R->one()) == 2);
  CHECK(R->residue_size() == 9);
}

TEST_CASE("arithmetic identities on random elements") {
  Rng rng(7);
  for (auto [p, f, N] : {std::tuple{3u, 1u, 6u}, {5u, 2u, 3u}, {7u, 3u, 3u}, {3u, 4u, 3u}}) {
    const auto R = make_ring(p, f, N);
    for (int t = 0; t < 30; ++t) {
      const Coords x = random_coords(*R, rng);
      const Coords y = random_coords(*R, rng);
      CHECK(R->sub(R->add(x, y), y) == x);
      CHECK(R->frobenius(R->mul(x, y)) == R->mul(R->frobenius(x), R->frobenius(y)));
      CHECK(R->frobenius_power(x, f) == x);
      if (R->is_unit(x)) CHECK(R->mul(x, R->inverse(x)) == R->one());
      const Coords th = R->teichmuller(R->residue(x));
      CHECK(R->is_teichmuller(th));
      CHECK(R->pow(th, R->residue_size()) == th);
    }
  }
}

TEST_CASE("valuation and exact division") {
  const auto R = make_ring(3, 1, 5);
  const Coords x = R->from_int(18);
  CHECK(R->valuation(x) == 2);
  CHECK(R->exact_div_p(x, 2) == R->from_int(2));
  CHECK_FALSE(R->is_unit(x));
}

TEST_CASE("invalid rings are rejected") {
  CHECK_THROWS_AS(make_ring(2, 1, 4), DomainError);
  CHECK_THROWS_AS(make_ring(9, 1, 4), DomainError);
  const auto R = make_ring(3, 1, 3);
  CHECK_THROWS_AS(R->inverse(R->from_int(3)), DomainError);
}
