#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "vostokov/error.hpp"
#include "vostokov/pairing.hpp"
#include "vostokov/series.hpp"

using namespace vostokov;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

IterSeries poly(const WittRingPtr& R, const std::vector<std::int64_t>& c, int rows) {
  IterSeries s = IterSeries::zero(R, 1, {0, 0}, rows);
  for (std::size_t i = 0; i < c.size(); ++i) s.set({0, static_cast<int>(i)}, R->from_int(c[i]));
  return s;
}

std::uint64_t rational_mod(const cpp_rational& r, std::uint64_t mod) {
  const cpp_int m = mod;
  cpp_int num = boost::multiprecision::numerator(r) % m;
  if (num < 0) num += m;
  cpp_int den = boost::multiprecision::denominator(r) % m;
  const std::uint64_t d = modarith::inverse(static_cast<std::uint64_t>(den), mod);
  return static_cast<std::uint64_t>(num * d % m);
}

// Coefficients of exp(sum_k X^(p^k) / p^k) up to X^(D-1), exactly over Q.
std::vector<cpp_rational> artin_hasse_rational(unsigned p, int D) {
  std::vector<cpp_rational> g(D, 0);
  for (cpp_int pk = 1; pk < D; pk *= p) g[static_cast<int>(pk)] = cpp_rational(1) / pk;
  // E' = g' E
  std::vector<cpp_rational> e(D, 0);
  e[0] = 1;
  for (int k = 1; k < D; ++k) {
    cpp_rational acc = 0;
    for (int j = 1; j <= k; ++j) acc += j * g[j] * e[k - j];
    e[k] = acc / k;
  }
  return e;
}

}  // namespace

TEST_CASE("Artin-Hasse coefficients agree with exact rational arithmetic") {
  for (auto [p, N] : {std::pair{3u, 4u}, {5u, 3u}, {7u, 2u}}) {
    const auto R = make_ring(p, 1, N);
    const int D = 40;
    const auto ah = artin_hasse_coefficients(R, D);
    const auto ex = artin_hasse_rational(p, D);
    for (int k = 0; k < D; ++k) CHECK(ah[k][0] == rational_mod(ex[k], R->modulus()));
  }
}

TEST_CASE("E(X) mod 3") {
  const auto R = make_ring(3, 1, 3);
  IterSeries x = IterSeries::zero(R, 1, {0, 1}, 4);
  x.set({0, 1}, R->one());
  const IterSeries E = shafarevich_exp(x);
  CHECK(E.coeff(0)[0] % 3 == 1);
  CHECK(E.coeff(1)[0] % 3 == 1);
  CHECK(E.coeff(2)[0] % 3 == 2);
}

TEST_CASE("log((1+X)^3 / (1+X^3)) = 3X + 3X^2 mod (9, X^3)") {
  const auto R = make_ring(3, 1, 6);
  const IterSeries a = poly(R, {1, 1}, 8).pow(3) * poly(R, {1, 0, 0, 1}, 8).invert_unit();
  const LogSeries lg = log_unit(a);
  const std::uint64_t pd = modarith::ipow(3, lg.denominator_exp);
  CHECK(R->equal_mod(lg.numerator.coeff(1), R->from_int(3 * pd), 2 + lg.denominator_exp));
  CHECK(R->equal_mod(lg.numerator.coeff(2), R->from_int(3 * pd), 2 + lg.denominator_exp));
}

TEST_CASE("l(1 + X) = X + X^2 mod 3") {
  const auto R = make_ring(3, 1, 3);
  const IterSeries l = l_op(poly(R, {1, 1}, 6));
  CHECK(l.coeff(1)[0] % 3 == 1);
  CHECK(l.coeff(2)[0] % 3 == 1);
}

TEST_CASE("Delta twist applies Frobenius and X -> X^p") {
  const auto R = make_ring(3, 2, 3);
  IterSeries s = IterSeries::zero(R, 1, {0, 0}, 6);
  s.set({0, 1}, R->generator());
  const IterSeries d = s.delta_twist(12);
  CHECK(d.coeff(3) == R->frobenius(R->generator()));
  CHECK(R->is_zero(d.coeff(1)));
}

TEST_CASE("unit inversion and residues") {
  const auto R = make_ring(5, 1, 4);
  const IterSeries a = poly(R, {2, 1, 3}, 10);
  CHECK((a * a.invert_unit()).agrees_with(a.one_like()));
  // dlog of X^3 (1 + X) has residue 3
  const IterSeries b = poly(R, {1, 1}, 10).shifted({0, 3});
  CHECK(residue(dlog_form(b))[0] == 3);
}

TEST_CASE("bivariate residue of a wedge of dlogs") {
  const auto R = make_ring(3, 1, 3);
  const IterSeries x1 = IterSeries::monomial(R, 2, R->one(), {1, 0}, 4, 8, 1);
  const IterSeries x2 = IterSeries::monomial(R, 2, R->one(), {0, 1}, 4, 8, 1);
  CHECK(residue(wedge_dlog(x1, x2)) == R->one());
  CHECK(residue(wedge_dlog(x2, x1)) == R->neg(R->one()));
}

TEST_CASE("coefficients outside the window are refused") {
  const auto R = make_ring(3, 1, 3);
  const IterSeries a = poly(R, {1, 1}, 4);
  CHECK_THROWS_AS(a.coeff(10), WindowError);
  CHECK_THROWS_AS(log_unit(poly(R, {2, 1}, 4)), DomainError);
}
