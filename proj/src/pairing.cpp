#include "vostokov/pairing.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "vostokov/error.hpp"

namespace vostokov {

namespace {

unsigned vp(std::uint64_t k, unsigned p) {
  unsigned v = 0;
  while (k % p == 0) {
    k /= p;
    ++v;
  }
  return v;
}

unsigned floor_log(std::uint64_t k, unsigned p) {
  unsigned v = 0;
  while (k >= p) {
    k /= p;
    ++v;
  }
  return v;
}

// The unit-shaped series a / (teich(c) X^L) with constant term = 1 mod p.
IterSeries normalized_unit(const IterSeries& a) {
  const WittRingPtr& R = a.ring();
  const Exponent L = a.leading_exponent();
  const Coords c = a.coeff(L);
  if (!R->is_unit(c)) throw DomainError("leading coefficient of a lift must be a unit");
  const Coords theta = R->teichmuller(R->residue(c));
  return a.shifted(Exponent{-L[0], -L[1]}).scaled(R->inverse(theta));
}

IterSeries wedge(const std::vector<IterSeries>& a, const std::vector<IterSeries>& b) {
  return a[0] * b[1] - a[1] * b[0];
}

}  // namespace

PrecisionPlan initial_plan(const FieldSpec& spec) {
  const unsigned m = spec.m();
  return {m + 2, static_cast<int>(spec.pm() * (m + 2))};
}

PrecisionPlan grow_plan(const FieldSpec& spec, const PrecisionPlan& plan) {
  return {plan.N + spec.m() + 1, plan.window * 2};
}

std::string describe(const PrecisionPlan& plan) {
  std::ostringstream os;
  os << "N=" << plan.N << " window=" << plan.window;
  return os.str();
}

IterSeries l_op(const IterSeries& a) {
  const WittRingPtr& R = a.ring();
  const unsigned P = a.prec();
  if (P == 0) throw PrecisionError("l: series carries no precision");
  const unsigned p = R->p();
  const WittRingPtr hi = R->at_precision(P + 1);

  const IterSeries U = normalized_unit(a).lifted_to(hi);
  const IterSeries num = U.pow(p);
  IterSeries u = num * U.delta_twist().invert_unit() - num.one_like();
  for (int r = 0; r < u.rows(); ++r)
    for (int k = 0; k < u.cols(); ++k) {
      Coords& x = u.cell(r, k);
      if (!hi->residue_is_zero(x)) throw PrecisionError("l: a^p / Delta(a) is not 1 mod p");
      x = hi->exact_div_p(x, 1);
    }
  const IterSeries w = u.in_ring(R);

  // (1/p) log(1 + p w) = sum (-1)^(k+1) p^(k-1) w^k / k
  IterSeries acc = w.scaled(R->zero());
  IterSeries wk = w;
  for (std::uint64_t k = 1;; ++k) {
    const unsigned v = vp(k, p);
    const std::uint64_t ex = k - 1 - v;
    if (ex < P) {
      const std::uint64_t unit = k / modarith::ipow(p, v);
      Coords coef = R->scale(R->inverse(R->from_int(static_cast<std::int64_t>(unit))),
                             modarith::ipow(p, static_cast<unsigned>(ex)));
      if (k % 2 == 0) coef = R->neg(coef);
      acc = acc + wk.scaled(coef);
    }
    if (k - 1 - floor_log(k, p) >= P) break;
    wk = wk * w;
    if (wk.is_zero()) break;
  }
  return acc;
}

std::vector<IterSeries> dlog_components(const IterSeries& a) {
  const Exponent L = a.leading_exponent();
  const IterSeries V = a.shifted(Exponent{-L[0], -L[1]});
  const IterSeries inv = V.invert_unit();
  std::vector<IterSeries> out;
  const WittRingPtr& R = a.ring();
  const int first = a.n() == 1 ? 1 : 0;
  for (int v = first; v < 2; ++v)
    out.push_back(V.x_partial(v) * inv + V.constant_like(R->from_int(L[v])));
  return out;
}

DiffForm phi_form(const std::vector<IterSeries>& lifts) {
  if (lifts.empty()) throw DomainError("phi: no arguments");
  const int n = lifts[0].n();
  if (static_cast<int>(lifts.size()) != n + 1)
    throw DomainError("phi: expected n + 1 arguments");
  std::vector<IterSeries> l;
  std::vector<std::vector<IterSeries>> dl, tdl;
  for (const auto& a : lifts) {
    l.push_back(l_op(a));
    dl.push_back(dlog_components(a));
    std::vector<IterSeries> t;
    for (const auto& c : dl.back()) t.push_back(c.delta_twist());
    tdl.push_back(std::move(t));
  }
  if (n == 1) {
    const IterSeries g = l[1] * dl[0][0] - l[0] * tdl[1][0];
    return {g.shifted(Exponent{0, -1}), 1};
  }
  const IterSeries g = l[0] * wedge(tdl[1], tdl[2]) - l[1] * wedge(dl[0], tdl[2]) +
                       l[2] * wedge(dl[0], dl[1]);
  return {g.shifted(Exponent{-1, -1}), 1};
}

std::uint64_t trace_residue(const FieldSpec& spec, const DiffForm& w, unsigned N) {
  const WittRingPtr& R = w.body.ring();
  const std::uint64_t pm = spec.pm();
  // Every term p^k T_k of 1/s must be known up to exponent 0.
  const int rows = static_cast<int>(pm * (N + 1) + 2);
  const IterSeries s = s_series(spec, rows, R);
  const MixedInverse inv = invert_s(s, N);
  const Coords r = inv.residue_against(w);
  const std::uint64_t t = R->trace(r) % pm;
  return kGlobalSign > 0 ? t : (pm - t) % pm;
}

std::uint64_t pairing_at_plan(const FieldSpec& spec, const std::vector<SparseLift>& lifts,
                              const PrecisionPlan& plan) {
  const unsigned n = spec.n();
  if (lifts.size() != n + 1) throw DomainError("pairing expects n + 1 arguments");
  const WittRingPtr R = spec.ring()->at_precision(plan.N);
  int slope = 0;
  for (const auto& l : lifts) slope = std::max(slope, lift_slope(l));
  const int rows = plan.window;
  const int cols = n == 2 ? slope * (rows - 1) + 1 : 1;
  std::vector<IterSeries> series;
  for (const auto& l : lifts) series.push_back(materialize(l, R, n == 2 ? slope : 0, rows, cols));
  return trace_residue(spec, phi_form(series), plan.N);
}

int required_relprec(const FieldSpec& spec) {
  return static_cast<int>(spec.e() * (spec.m() + 1) + 1);
}

std::vector<LiftSource> canonical_sources(const std::vector<FieldElement>& args) {
  std::vector<LiftSource> out;
  for (const auto& x : args) out.push_back([x](int digits) { return lift_sparse(x, digits); });
  return out;
}

namespace {

void check_args(const std::vector<FieldElement>& args) {
  if (args.empty()) throw DomainError("no arguments");
  const FieldSpec& spec = *args[0].spec();
  if (args.size() != spec.n() + 1) throw DomainError("the pairing takes n + 1 arguments");
  const int need = required_relprec(spec);
  for (const auto& x : args) {
    if (x.spec().get() != args[0].spec().get() && x.spec()->kind() != spec.kind())
      throw DomainError("arguments belong to different fields");
    if (x.is_zero()) throw DomainError("arguments must be nonzero");
    for (const auto& [j, c] : x.components())
      if (c.relprec < need)
        throw PrecisionError("argument known to relative precision " + std::to_string(c.relprec) +
                             ", need " + std::to_string(need));
  }
}

std::vector<SparseLift> lifts_for(const std::vector<LiftSource>& sources, const PrecisionPlan& plan) {
  std::vector<SparseLift> lifts;
  for (const auto& src : sources) lifts.push_back(src(2 * plan.window));
  return lifts;
}

}  // namespace

SymbolExponent vostokov_exponent(const FieldSpecPtr& spec, const std::vector<LiftSource>& sources) {
  PrecisionPlan plan = initial_plan(*spec);
  std::optional<std::uint64_t> prev;
  PrecisionPlan prev_plan = plan;
  for (int attempt = 0; attempt <= kMaxPlanRetries; ++attempt) {
    std::optional<std::uint64_t> cur;
    try {
      cur = pairing_at_plan(*spec, lifts_for(sources, plan), plan);
    } catch (const WindowError&) {
    }
    if (cur && prev && *cur == *prev) return {*cur, spec->pm(), prev_plan, plan, attempt + 1};
    prev = cur;
    prev_plan = plan;
    plan = grow_plan(*spec, plan);
  }
  throw PrecisionError("pairing did not stabilize within " + std::to_string(kMaxPlanRetries) +
                       " plan increases");
}

SymbolExponent vostokov_exponent(const std::vector<FieldElement>& args) {
  check_args(args);
  return vostokov_exponent(args[0].spec(), canonical_sources(args));
}

std::uint64_t vostokov_exponent_at(const std::vector<FieldElement>& args, const PrecisionPlan& plan) {
  check_args(args);
  return pairing_at_plan(*args[0].spec(), lifts_for(canonical_sources(args), plan), plan);
}

Coords residue_generator(const WittRing& R) {
  const std::uint64_t q = R.residue_size();
  std::vector<std::uint64_t> primes;
  std::uint64_t t = q - 1;
  for (std::uint64_t d = 2; d * d <= t; ++d)
    if (t % d == 0) {
      primes.push_back(d);
      while (t % d == 0) t /= d;
    }
  if (t > 1) primes.push_back(t);
  const Coords one = R.residue(R.one());
  for (std::uint64_t idx = 1; idx < q; ++idx) {
    const Coords g = R.residue_from_index(idx);
    if (R.residue_is_zero(g)) continue;
    bool primitive = true;
    for (auto r : primes)
      if (R.residue_pow(g, (q - 1) / r) == one) {
        primitive = false;
        break;
      }
    if (primitive) return g;
  }
  throw DomainError("residue field has no primitive element");
}

std::uint64_t residue_log(const WittRing& R, const Coords& x) {
  if (R.residue_is_zero(x)) throw DomainError("discrete log of zero");
  const Coords g = residue_generator(R);
  const Coords target = R.residue(x);
  Coords y = R.residue(R.one());
  for (std::uint64_t d = 0; d + 1 < R.residue_size(); ++d) {
    if (y == target) return d;
    y = R.residue_mul(y, g);
  }
  throw DomainError("discrete log not found");
}

std::uint64_t tame_symbol(const FieldElement& a, const FieldElement& b, std::uint64_t l) {
  if (a.spec()->n() != 1) throw DomainError("the tame symbol is defined for n = 1");
  if (a.is_zero() || b.is_zero()) throw DomainError("tame symbol of zero");
  const WittRing& R = *a.spec()->ring();
  const std::uint64_t q1 = R.residue_size() - 1;
  if (l == 0 || q1 % l != 0) throw DomainError("l must divide q - 1");
  const std::int64_t va = a.valuation()[1], vb = b.valuation()[1];
  auto pw = [&](const Coords& x, std::int64_t e) {
    const std::int64_t r = ((e % static_cast<std::int64_t>(q1)) + static_cast<std::int64_t>(q1)) %
                           static_cast<std::int64_t>(q1);
    return R.residue_pow(x, static_cast<std::uint64_t>(r));
  };
  Coords c = R.residue_mul(pw(a.leading_residue(), vb), pw(b.leading_residue(), -va));
  if ((va * vb) % 2 != 0) c = R.residue(R.neg(c));
  return residue_log(R, c) % l;
}

}  // namespace vostokov
