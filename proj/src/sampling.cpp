#include "vostokov/sampling.hpp"

namespace vostokov {

Coords random_coords(const WittRing& R, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, R.modulus() - 1);
  Coords c{};
  for (unsigned i = 0; i < R.f(); ++i) c[i] = d(rng);
  return c;
}

FieldElement random_integral(const FieldSpecPtr& spec, Rng& rng) {
  std::vector<Coords> c(spec->e());
  for (auto& x : c) x = random_coords(*spec->ring(), rng);
  return FieldElement::from_pi_poly(spec, c);
}

FieldElement random_unit(const FieldSpecPtr& spec, Rng& rng) {
  const WittRing& R = *spec->ring();
  std::vector<Coords> c(spec->e());
  for (auto& x : c) x = random_coords(R, rng);
  std::uniform_int_distribution<std::uint64_t> idx(1, R.residue_size() - 1);
  // force a unit constant term: nonzero residue plus a random multiple of p
  c[0] = R.add(R.teichmuller(R.residue_from_index(idx(rng))), R.scale(c[0], R.p()));
  return FieldElement::from_pi_poly(spec, c);
}

FieldElement random_principal_unit(const FieldSpecPtr& spec, Rng& rng, int level) {
  const FieldElement one = FieldElement::from_int(spec, 1);
  for (;;) {
    const FieldElement x = random_integral(spec, rng);
    if (!x.is_zero()) return one + x.mul_pi_power(level);
  }
}

FieldElement random_element(const FieldSpecPtr& spec, Rng& rng, int vmin, int vmax) {
  std::uniform_int_distribution<int> v(vmin, vmax);
  if (spec->n() == 1) return random_unit(spec, rng).mul_pi_power(v(rng));
  std::uniform_int_distribution<int> count(1, 2), j1(-1, 1);
  FieldElement out(spec);
  while (out.is_zero()) {
    const int terms = count(rng);
    for (int t = 0; t < terms; ++t) {
      FieldElement term = random_unit(spec, rng).mul_pi_power(v(rng));
      const int j = j1(rng);
      if (j != 0) term = term * FieldElement::t1(spec).pow(j);
      out = out + term;
    }
  }
  return out;
}

}  // namespace vostokov
