#pragma once

// The explicit pairing V(a_1, ..., a_{n+1}) = Tr res(Phi / s) mod p^m and the
// tame symbol of the one-dimensional field.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vostokov/field.hpp"
#include "vostokov/series.hpp"

namespace vostokov {

// Global sign applied to every reported exponent.  Frozen; a unit test refits
// it from the cyclotomic symbol (zeta, 1 - pi) against the Kummer oracle.
inline constexpr int kGlobalSign = 1;

struct PrecisionPlan {
  unsigned N = 0;  // coefficient precision p^N of the series arithmetic
  int window = 0;  // degree bound in the pi-variable
};

inline bool operator==(const PrecisionPlan& a, const PrecisionPlan& b) {
  return a.N == b.N && a.window == b.window;
}

// N = m + 2, window = p^m (m + 2).
PrecisionPlan initial_plan(const FieldSpec& spec);
// Doubles the window and adds m + 1 to N.
PrecisionPlan grow_plan(const FieldSpec& spec, const PrecisionPlan& plan);

struct SymbolExponent {
  std::uint64_t value = 0;
  std::uint64_t modulus = 1;
  PrecisionPlan plan;       // first of the two agreeing plans
  PrecisionPlan confirmed;  // the plan that confirmed it
  int attempts = 0;
};

inline constexpr int kMaxPlanRetries = 5;

// l(a) = (1/p) log(a^p / Delta(a)) for a unit-shaped series c X^I (1 + h).
// The arithmetic is done one p-adic digit higher than the ring of `a`, whose
// coefficients are read as exact representatives.  The result lives in the
// ring of `a`.
IterSeries l_op(const IterSeries& a);

// dlog components (X_v d/dX_v a) / a in the dX/X basis, v = 0..n-1 (n == 1:
// one component in the pi-variable).
std::vector<IterSeries> dlog_components(const IterSeries& a);

// Phi(a_1, ..., a_{n+1}) with the twisted logarithmic differentials, as a
// form in dX_1 ^ ... ^ dX_n.  All inputs share a ring and window.
DiffForm phi_form(const std::vector<IterSeries>& lifts);

// Tr res(w / s) mod p^m with 1/s expanded to p-adic order N.
std::uint64_t trace_residue(const FieldSpec& spec, const DiffForm& w, unsigned N);

// Exponent at one plan from sparse lifts; WindowError when the plan is too
// small to read the residue.
std::uint64_t pairing_at_plan(const FieldSpec& spec, const std::vector<SparseLift>& lifts,
                              const PrecisionPlan& plan);

// Produces the lift of one argument given a digit budget.
using LiftSource = std::function<SparseLift(int digits)>;

// Runs the plan schedule until two consecutive plans agree.
SymbolExponent vostokov_exponent(const FieldSpecPtr& spec, const std::vector<LiftSource>& sources);
// Same with the canonical Teichmuller-digit lifts of the arguments.
SymbolExponent vostokov_exponent(const std::vector<FieldElement>& args);
// Single evaluation at a fixed plan with canonical lifts.
std::uint64_t vostokov_exponent_at(const std::vector<FieldElement>& args, const PrecisionPlan& plan);

// Canonical lift sources for field elements (n + 1 of them).
std::vector<LiftSource> canonical_sources(const std::vector<FieldElement>& args);
// Minimum relative precision required of each argument.
int required_relprec(const FieldSpec& spec);

// Tame symbol (a, b)_l of the one-dimensional field: the discrete log, mod l,
// of (-1)^(v(a) v(b)) abar^v(b) / bbar^v(a) to the smallest generator of F_q^*.
std::uint64_t tame_symbol(const FieldElement& a, const FieldElement& b, std::uint64_t l);
// Smallest primitive element of F_q^* by residue index.
Coords residue_generator(const WittRing& R);
// Discrete log of a nonzero residue to residue_generator(R).
std::uint64_t residue_log(const WittRing& R, const Coords& x);

std::string describe(const PrecisionPlan& plan);

}  // namespace vostokov
