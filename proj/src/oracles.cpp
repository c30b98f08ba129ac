#include "vostokov/oracles.hpp"

#include <algorithm>

#include "vostokov/error.hpp"
#include "vostokov/sampling.hpp"
#include "vostokov/shafarevich.hpp"

namespace vostokov {

std::uint64_t kummer_exponent(const IterSeries& eps, const IterSeries& eta) {
  const WittRingPtr& R = eps.ring();
  if (eps.n() != 1 || eta.n() != 1) throw DomainError("Kummer's formula is univariate");
  if (R->f() != 1) throw DomainError("Kummer's formula needs coefficients in Z_p");
  const int p = static_cast<int>(R->p());
  for (const IterSeries* s : {&eps, &eta})
    if (s->origin()[1] > 0 || !R->equal_mod(s->coeff(0), R->one(), R->precision()))
      throw DomainError("Kummer's formula needs principal units 1 + X(...)");
  const IterSeries eta_t = eta.truncated(p - eta.origin()[1]);
  const IterSeries eps_t = eps.truncated(p - eps.origin()[1]);

  // Below X^p every log coefficient is integral.
  const LogSeries lg = log_unit(eta_t);
  if (lg.denominator_exp != 0) throw PrecisionError("unexpected denominator in Kummer's log");
  const IterSeries inv = eps_t.invert_unit();

  std::vector<Coords> dl(static_cast<std::size_t>(p - 1));
  for (int k = 0; k < p - 1; ++k)
    for (int a = 0; a <= k; ++a) {
      const Coords d = R->mul(R->from_int(a + 1), eps.coeff(a + 1));
      dl[k] = R->add(dl[k], R->mul(d, inv.coeff(k - a)));
    }
  Coords res{};
  for (int j = 1; j < p; ++j) res = R->add(res, R->mul(lg.numerator.coeff(j), dl[p - 1 - j]));
  return res[0] % static_cast<std::uint64_t>(p);
}

std::uint64_t trace_over_pm(const FieldElement& x) {
  const FieldSpec& spec = *x.spec();
  if (x.is_zero()) return 0;
  const ScaledTrace t = field_trace_scaled(x);
  const unsigned m = spec.m(), p = spec.p();
  const unsigned need = t.den_exp + m;
  if (t.prec < need + m) throw PrecisionError("trace known to too few digits");
  const std::uint64_t known = t.value % modarith::ipow(p, t.prec);
  const std::uint64_t d = modarith::ipow(p, need);
  if (known % d != 0) throw PrecisionError("trace is not divisible by p^m");
  return (known / d) % spec.pm();
}

std::uint64_t artin_hasse_zeta(const FieldElement& eps) {
  if (eps.spec()->n() != 1) throw DomainError("Artin-Hasse formulas are one-dimensional");
  return trace_over_pm(-field_log(eps));
}

std::uint64_t artin_hasse_pi(const FieldElement& eps) {
  const FieldSpecPtr& spec = eps.spec();
  if (spec->n() != 1) throw DomainError("Artin-Hasse formulas are one-dimensional");
  const FieldElement lg = field_log(eps);
  if (lg.is_zero()) return 0;
  // not integral once m > 1 (the eps^p / p term); the trace absorbs it
  return trace_over_pm(lg.mul_pi_power(-1) * FieldElement::zeta(spec));
}

WittPoly polynomial_of(const FieldElement& x) {
  if (x.is_zero()) return {};
  if (x.spec()->n() != 1) throw DomainError("polynomial_of is one-dimensional");
  const auto& c = x.components().at(0);
  if (c.shift < 0) throw DomainError("polynomial_of needs an integral element");
  WittPoly g(static_cast<std::size_t>(c.shift), Coords{});
  g.insert(g.end(), c.unit.begin(), c.unit.end());
  return g;
}

FieldElement evaluate_poly(const WittPoly& g, const FieldSpecPtr& spec) {
  return FieldElement::from_pi_poly(spec, g);
}

WittPoly derivative(const WittPoly& g, const WittRing& R) {
  WittPoly d;
  for (std::size_t i = 1; i < g.size(); ++i)
    d.push_back(R.mul(g[i], R.from_int(static_cast<std::int64_t>(i))));
  return d;
}

int sen_level(const FieldSpec& spec) {
  const int e = static_cast<int>(spec.e()), p = static_cast<int>(spec.p());
  return (2 * e + p - 2) / (p - 1);
}

std::uint64_t sen_exponent(const FieldElement& alpha, const FieldElement& beta, const WittPoly& g,
                           const WittPoly& h) {
  const FieldSpecPtr& spec = alpha.spec();
  if (spec->n() != 1) throw DomainError("Sen's formula is one-dimensional");
  if (beta.is_zero()) throw DomainError("beta must be nonzero");
  if (!agree(evaluate_poly(g, spec), beta)) throw DomainError("g(pi) differs from beta");
  if (!agree(evaluate_poly(h, spec), FieldElement::zeta(spec)))
    throw DomainError("h(pi) differs from zeta");
  if (!alpha.is_principal_unit()) throw DomainError("alpha must be a principal unit");
  const FieldElement d = alpha - FieldElement::from_int(spec, 1);
  if (d.is_zero()) return 0;
  if (d.valuation()[1] < sen_level(*spec))
    throw DomainError("alpha - 1 must have valuation at least " + std::to_string(sen_level(*spec)));
  const WittRing& R = *spec->ring();
  const FieldElement hp = evaluate_poly(derivative(h, R), spec);
  const FieldElement gp = evaluate_poly(derivative(g, R), spec);
  if (hp.is_zero()) throw DomainError("h'(pi) vanishes");
  if (gp.is_zero()) return 0;
  const FieldElement y =
      FieldElement::zeta(spec) * hp.inverse() * gp * beta.inverse() * field_log(alpha);
  return trace_over_pm(y);
}

namespace {

using Vec = std::vector<std::uint64_t>;

// Row-reduces `v` against the echelon basis; returns true when independent
// (and then adds it).
bool insert_vector(std::vector<Vec>& basis, Vec v, std::uint64_t p) {
  for (const Vec& b : basis) {
    std::size_t piv = 0;
    while (b[piv] == 0) ++piv;
    if (v[piv] == 0) continue;
    const std::uint64_t f = v[piv] * modarith::inverse(b[piv], p) % p;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + p * p - f * b[i] % p) % p;
  }
  std::size_t piv = 0;
  while (piv < v.size() && v[piv] == 0) ++piv;
  if (piv == v.size()) return false;
  basis.push_back(std::move(v));
  std::sort(basis.begin(), basis.end(), [](const Vec& a, const Vec& b) {
    std::size_t i = 0, j = 0;
    while (a[i] == 0) ++i;
    while (b[j] == 0) ++j;
    return i < j;
  });
  return true;
}

Vec coordinates(const FieldElement& x, const BasisDescription& basis) {
  const Decomposition d = decompose(x, basis);
  const std::uint64_t p = basis.spec->p();
  Vec v;
  v.push_back(static_cast<std::uint64_t>(((d.i % static_cast<int>(p)) + static_cast<int>(p)) %
                                         static_cast<int>(p)));
  for (auto b : d.b) v.push_back(b % p);
  v.push_back(d.c % p);
  return v;
}

}  // namespace

NormMembership norm_membership(const FieldElement& alpha, const FieldElement& beta,
                               std::uint64_t seed) {
  const FieldSpecPtr& spec = alpha.spec();
  if (spec->n() != 1 || spec->p() != 3 || spec->m() != 1)
    throw DomainError("norm membership is implemented for p = 3, m = 1");
  if (alpha.is_zero() || beta.is_zero()) throw DomainError("arguments must be nonzero");
  const std::uint64_t p = spec->p();
  const BasisDescription basis = build_basis(spec);
  const Vec vb = coordinates(beta, basis);
  if (std::all_of(vb.begin(), vb.end(), [](auto x) { return x == 0; }))
    throw DomainError("beta is a p-th power; the extension is degenerate");

  NormMembership out;
  out.dimension = static_cast<int>(vb.size());
  const FieldElement b2 = beta * beta;
  const FieldElement three = FieldElement::from_int(spec, 3);
  Rng rng(seed);
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<Vec> span;
  int extra = 0;
  const int max_samples = 400;
  for (out.samples = 0; out.samples < max_samples; ++out.samples) {
    // a0 + a1 T + a2 T^2 in K[T]/(T^3 - beta), some coefficients zero
    FieldElement a[3] = {FieldElement(spec), FieldElement(spec), FieldElement(spec)};
    for (auto& x : a)
      if (pick(rng) != 0) x = random_element(spec, rng, 0, 2);
    const FieldElement nrm = a[0].pow(3) + a[1].pow(3) * beta + a[2].pow(3) * b2 -
                             three * a[0] * a[1] * a[2] * beta;
    if (nrm.is_zero()) continue;
    insert_vector(span, coordinates(nrm, basis), p);
    if (static_cast<int>(span.size()) == out.dimension)
      throw PrecisionError("norms span all of K^*/K^*p; precision is insufficient");
    if (static_cast<int>(span.size()) == out.dimension - 1 && ++extra > 24) break;
  }
  out.rank = static_cast<int>(span.size());
  if (out.rank != out.dimension - 1)
    throw PrecisionError("norm subgroup did not reach index p within the sample budget");
  std::vector<Vec> probe = span;
  out.member = !insert_vector(probe, coordinates(alpha, basis), p);
  return out;
}

}  // namespace vostokov
