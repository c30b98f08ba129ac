#include "vostokov/shafarevich.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "vostokov/error.hpp"

namespace vostokov {

namespace {

FieldElement one_plus(const FieldSpecPtr& spec, const Coords& theta_residue, Exponent J) {
  FieldElement term = FieldElement::teichmuller(spec, theta_residue).mul_pi_power(J[1]);
  if (J[0] != 0) term = term * FieldElement::t1(spec).pow(J[0]);
  return FieldElement::from_int(spec, 1) + term;
}

std::uint64_t signed_one(std::uint64_t pm) { return kGlobalSign > 0 ? 1 % pm : pm - 1; }

// One layer of the level walk: x = pi^i prod eps^b omega^c Y^p with b, c in
// [0, p).  Without a basis the eps and omega levels are obstructions and the
// walk reports failure by returning nothing.
struct Layer {
  int i = 0;
  std::vector<std::uint64_t> b;
  std::uint64_t c = 0;
  FieldElement Y;
};

std::optional<Layer> peel_layer(const FieldElement& x, const BasisDescription* basis) {
  const FieldSpecPtr& spec = x.spec();
  const WittRing& R = *spec->ring();
  const unsigned p = spec->p();
  const int e = static_cast<int>(spec->e());
  const int pm = static_cast<int>(spec->pm());
  const std::uint64_t q = R.residue_size();
  const FieldElement one = FieldElement::from_int(spec, 1);

  Layer out;
  if (basis) out.b.assign(basis->epsilons.size(), 0);
  std::map<std::pair<int, unsigned>, std::size_t> eps_index;
  if (basis)
    for (std::size_t t = 0; t < basis->epsilons.size(); ++t)
      eps_index[{basis->epsilons[t].J[1], basis->epsilons[t].k}] = t;

  out.i = x.valuation()[1];
  // Teichmuller part: teich(c0) = teich(c0^s)^p with s p = 1 mod (q - 1)
  const std::uint64_t s = modarith::inverse(p % (q - 1), q - 1);
  const Coords r0 = R.residue_pow(x.leading_residue(), s);
  const FieldElement th = FieldElement::teichmuller(spec, r0);
  out.Y = th;
  FieldElement u = x.mul_pi_power(-out.i) * th.pow(-static_cast<std::int64_t>(p));

  const Coords eps0 = spec->p_unit_residue();
  Coords omega_bar{};
  if (basis) omega_bar = (basis->omega - one).leading_residue();

  const int budget = static_cast<int>(p) * e * (static_cast<int>(spec->m()) + 2) +
                     e * static_cast<int>(spec->precision());
  for (int step = 0;; ++step) {
    if (step > budget) throw PrecisionError("level walk did not terminate within its budget");
    const FieldElement d = u - one;
    if (d.is_zero()) break;
    const int j = d.valuation()[1];
    const Coords c = d.leading_residue();
    if (j < pm && j % static_cast<int>(p) != 0) {
      if (!basis) return std::nullopt;
      for (unsigned k = 0; k < R.f(); ++k) {
        const std::uint64_t a = c[k] % p;
        if (a == 0) continue;
        const std::size_t idx = eps_index.at({j, k});
        out.b[idx] = (out.b[idx] + a) % p;
        u = u * basis->epsilons[idx].value.pow(-static_cast<std::int64_t>(a));
      }
    } else if (j < pm) {
      const Coords root = R.residue_pow(c, q / p);
      const FieldElement y = one_plus(spec, root, Exponent{0, j / static_cast<int>(p)});
      u = u * y.pow(-static_cast<std::int64_t>(p));
      out.Y = out.Y * y;
    } else if (j == pm) {
      // c = x^p + eps0 x + t omega_bar
      std::optional<std::pair<Coords, std::uint64_t>> sol;
      const std::uint64_t tmax = basis ? p : 1;
      for (std::uint64_t t = 0; t < tmax && !sol; ++t)
        for (std::uint64_t idx = 0; idx < q && !sol; ++idx) {
          const Coords xr = R.residue_from_index(idx);
          Coords lhs = R.residue(R.add(R.residue_pow(xr, p), R.residue_mul(eps0, xr)));
          lhs = R.residue(R.add(lhs, R.residue(R.scale(omega_bar, t))));
          if (lhs == R.residue(c)) sol = std::make_pair(xr, t);
        }
      if (!sol) return std::nullopt;
      const auto [xr, t] = *sol;
      if (!R.residue_is_zero(xr)) {
        const FieldElement y = one_plus(spec, xr, Exponent{0, pm / static_cast<int>(p)});
        u = u * y.pow(-static_cast<std::int64_t>(p));
        out.Y = out.Y * y;
      }
      if (t != 0) {
        u = u * basis->omega.pow(-static_cast<std::int64_t>(t));
        out.c = (out.c + t) % p;
      }
    } else {
      const Coords a = R.residue_mul(R.residue(c), R.residue_inverse(eps0));
      const FieldElement y = one_plus(spec, a, Exponent{0, j - e});
      u = u * y.pow(-static_cast<std::int64_t>(p));
      out.Y = out.Y * y;
    }
  }
  return out;
}

}  // namespace

std::vector<Exponent> basis_index_set(const FieldSpec& spec, int j1_range) {
  const int p = static_cast<int>(spec.p());
  const int pm = static_cast<int>(spec.pm());
  std::vector<Exponent> out;
  if (spec.n() == 1) {
    for (int j = 1; j < pm; ++j)
      if (j % p != 0) out.push_back({0, j});
    return out;
  }
  for (int j1 = 1; j1 <= j1_range; ++j1)
    if (j1 % p != 0) out.push_back({j1, 0});
  for (int j2 = 1; j2 < pm; ++j2)
    for (int j1 = -j1_range; j1 <= j1_range; ++j1)
      if (std::gcd(std::abs(j1), j2) % p != 0) out.push_back({j1, j2});
  std::sort(out.begin(), out.end(), tuple_less);
  return out;
}

Coords omega_generator(const FieldSpec& spec) {
  const WittRing& R = *spec.ring();
  if (R.f() == 1) return R.one();
  for (std::uint64_t idx = 1; idx < R.residue_size(); ++idx) {
    const Coords c = R.teichmuller(R.residue_from_index(idx));
    const std::uint64_t tr = R.trace(c);
    if (tr % spec.p() != 0)
      return R.mul(c, R.inverse(R.from_int(static_cast<std::int64_t>(tr))));
  }
  throw DomainError("no element of unit trace found");
}

IterSeries omega_series(const FieldSpecPtr& spec, const Coords& a, int rows) {
  const IterSeries f = s_series(*spec, rows).scaled(a);
  if (f.is_zero()) return f.one_like();
  return shafarevich_exp(f);
}

FieldElement omega_element(const FieldSpecPtr& spec, const Coords& a) {
  const int rows = static_cast<int>(spec->e() * spec->precision()) + 1;
  FieldElement w = evaluate(omega_series(spec, a, rows), spec);
  if (spec->ring()->is_zero(a)) return w;
  const FieldElement d = w - FieldElement::from_int(spec, 1);
  if (d.is_zero() || d.valuation()[1] != static_cast<int>(spec->pm()) || d.valuation()[0] != 0)
    throw PrecisionError("omega does not sit at level p e / (p - 1)");
  return w;
}

BasisDescription build_basis(const FieldSpecPtr& spec, int j1_range) {
  BasisDescription b;
  b.spec = spec;
  b.j1_range = j1_range;
  if (spec->n() == 2) b.params.push_back(FieldElement::t1(spec));
  b.params.push_back(FieldElement::pi(spec));
  const WittRing& R = *spec->ring();
  const Coords y = R.residue(R.generator());
  for (const Exponent& J : basis_index_set(*spec, j1_range))
    for (unsigned k = 0; k < R.f(); ++k) {
      BasisEpsilon eps;
      eps.J = J;
      eps.k = k;
      const Coords res = R.residue_pow(y, k);
      eps.theta = R.teichmuller(res);
      eps.value = one_plus(spec, res, J);
      eps.label = "eps(" + std::to_string(J[0]) + "," + std::to_string(J[1]) + ";y^" +
                  std::to_string(k) + ")";
      b.epsilons.push_back(std::move(eps));
    }
  b.omega_generator = omega_generator(*spec);
  b.omega = omega_element(spec, b.omega_generator);
  return b;
}

bool OrthogonalityReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

OrthogonalityReport verify_orthogonality(const BasisDescription& basis) {
  OrthogonalityReport report;
  const std::uint64_t pm = basis.spec->pm();
  auto run = [&](const std::string& label, const FieldElement& x, std::uint64_t expected) {
    std::vector<FieldElement> args = basis.params;
    args.push_back(x);
    OrthogonalityEntry entry;
    entry.label = label;
    entry.expected = expected;
    const SymbolExponent r = vostokov_exponent(args);
    entry.exponent = r.value;
    entry.plan = r.plan;
    entry.pass = r.value == expected;
    report.entries.push_back(entry);
  };
  for (const auto& eps : basis.epsilons) run(eps.label, eps.value, 0);
  run("omega", basis.omega, signed_one(pm));
  return report;
}

std::vector<DualCase> admissible_dual_cases(const FieldSpecPtr& spec, int j1_range) {
  const WittRing& R = *spec->ring();
  const int p = static_cast<int>(spec->p());
  std::vector<DualCase> out;
  for (const Exponent& I : basis_index_set(*spec, j1_range))
    for (int l = 1; l <= static_cast<int>(spec->n()); ++l) {
      const int il = spec->n() == 1 ? I[1] : I[l - 1];
      if (il % p == 0) continue;
      for (std::uint64_t idx = 0; idx < R.residue_size(); ++idx) {
        const Coords th = R.residue_from_index(idx);
        if (R.residue_is_zero(th)) continue;
        out.push_back({th, I, l});
      }
    }
  return out;
}

DualResult dual_search(const FieldSpecPtr& spec, const DualCase& c) {
  const WittRing& R = *spec->ring();
  const int p = static_cast<int>(spec->p());
  const int n = static_cast<int>(spec->n());
  const int pm = static_cast<int>(spec->pm());
  if (c.l < 1 || c.l > n) throw DomainError("dual search: parameter index out of range");
  const int il = n == 1 ? c.I[1] : c.I[c.l - 1];
  if (il % p == 0) throw DomainError("dual search: i_l must be prime to p");
  if (!tuple_less(Exponent{0, 0}, c.I) || !tuple_less(c.I, Exponent{0, pm}))
    throw DomainError("dual search: I must satisfy 0 < I < p e / (p - 1)");
  if (R.residue_is_zero(c.theta)) throw DomainError("dual search: theta must be a unit");

  std::vector<FieldElement> args{one_plus(spec, c.theta, c.I)};
  if (n == 2) args.push_back(c.l == 1 ? FieldElement::pi(spec) : FieldElement::t1(spec));
  const Exponent dual{-c.I[0], pm - c.I[1]};
  DualResult res;
  for (std::uint64_t idx = 0; idx < R.residue_size(); ++idx) {
    const Coords th = R.residue_from_index(idx);
    if (R.residue_is_zero(th)) continue;
    ++res.candidates;
    std::vector<FieldElement> full = args;
    full.push_back(one_plus(spec, th, dual));
    const SymbolExponent v = vostokov_exponent(full);
    if (v.value == signed_one(spec->pm())) {
      res.found = true;
      res.theta_prime = th;
      res.partner = full.back();
      res.exponent = v.value;
      return res;
    }
  }
  return res;
}

std::optional<FieldElement> pth_root(const FieldElement& u, unsigned k) {
  const FieldSpecPtr& spec = u.spec();
  if (spec->n() != 1) throw DomainError("p-th roots are implemented for n = 1");
  if (u.is_zero()) throw DomainError("p-th root of zero");
  const int p = static_cast<int>(spec->p());
  FieldElement x = u;
  for (unsigned t = 0; t < k; ++t) {
    const auto layer = peel_layer(x, nullptr);
    if (!layer || layer->i % p != 0) return std::nullopt;
    const FieldElement r = layer->Y.mul_pi_power(layer->i / p);
    if (!agree(r.pow(p), x)) return std::nullopt;
    x = r;
  }
  return x;
}

Decomposition decompose(const FieldElement& alpha, const BasisDescription& basis) {
  const FieldSpecPtr& spec = alpha.spec();
  if (spec->n() != 1) throw DomainError("decomposition is implemented for n = 1");
  if (alpha.is_zero()) throw DomainError("cannot decompose zero");
  const std::uint64_t pm = spec->pm();
  Decomposition d;
  d.b.assign(basis.epsilons.size(), 0);
  FieldElement x = alpha;
  std::uint64_t weight = 1;
  for (unsigned t = 0; t < spec->m(); ++t) {
    const auto layer = peel_layer(x, &basis);
    if (!layer) throw PrecisionError("level walk hit an unsolvable level");
    d.i += static_cast<int>(weight) * layer->i;
    for (std::size_t s = 0; s < d.b.size(); ++s) d.b[s] = (d.b[s] + weight * layer->b[s]) % pm;
    d.c = (d.c + weight * layer->c) % pm;
    weight *= spec->p();
    x = layer->Y;
  }
  d.certificate = x;
  return d;
}

FieldElement reconstruct(const Decomposition& d, const BasisDescription& basis) {
  FieldElement out = FieldElement::from_int(basis.spec, 1).mul_pi_power(d.i);
  for (std::size_t s = 0; s < d.b.size(); ++s)
    if (d.b[s] != 0) out = out * basis.epsilons[s].value.pow(static_cast<std::int64_t>(d.b[s]));
  if (d.c != 0) out = out * basis.omega.pow(static_cast<std::int64_t>(d.c));
  return out;
}

bool certificate_holds(const FieldElement& alpha, const Decomposition& d,
                       const BasisDescription& basis) {
  const FieldElement back =
      reconstruct(d, basis) * d.certificate.pow(static_cast<std::int64_t>(basis.spec->pm()));
  return agree(back, alpha);
}

}  // namespace vostokov
