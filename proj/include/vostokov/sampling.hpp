#pragma once

// Random field elements for property tests.  All draws go through the
// supplied engine so a seed fixes the whole sequence.

#include <random>

#include "vostokov/field.hpp"

namespace vostokov {

using Rng = std::mt19937_64;

// Uniform element of W(F_q) mod p^N.
Coords random_coords(const WittRing& R, Rng& rng);
// sum_{i<e} c_i pi^i with uniform c_i (possibly zero or of positive valuation).
FieldElement random_integral(const FieldSpecPtr& spec, Rng& rng);
// A unit of O_K.
FieldElement random_unit(const FieldSpecPtr& spec, Rng& rng);
// 1 + pi^level * (random integral), never equal to 1.
FieldElement random_principal_unit(const FieldSpecPtr& spec, Rng& rng, int level = 1);
// pi^v * unit with v uniform in [vmin, vmax] (n == 1), or a short sum of
// t1^j * pi^v * unit terms (n == 2).
FieldElement random_element(const FieldSpecPtr& spec, Rng& rng, int vmin = -2, int vmax = 2);

}  // namespace vostokov
