#pragma once

// Shafarevich basis {t_i, eps_J, omega} and the tools built on it.

#include <optional>
#include <string>
#include <vector>

#include "vostokov/field.hpp"
#include "vostokov/pairing.hpp"

namespace vostokov {

// For n == 2 the index set is infinite in the t1-exponent; it is enumerated
// for |j1| <= this bound.
inline constexpr int kDefaultJ1Range = 2;

struct BasisEpsilon {
  Exponent J{0, 0};
  unsigned k = 0;     // theta = teich(y^k), y generating F_q over F_p
  Coords theta{};
  FieldElement value; // 1 + theta t^J
  std::string label;
};

struct BasisDescription {
  FieldSpecPtr spec;
  std::vector<FieldElement> params;  // t1, ..., tn
  std::vector<BasisEpsilon> epsilons;
  Coords omega_generator{};
  FieldElement omega;
  int j1_range = kDefaultJ1Range;

  std::size_t size() const { return params.size() + epsilons.size() + 1; }
};

// J with 0 < J < p e_vec / (p - 1) in the tuple order and p not dividing gcd(J).
std::vector<Exponent> basis_index_set(const FieldSpec& spec, int j1_range = kDefaultJ1Range);
// a = c / Tr(c) for the first Teichmuller c with unit trace (a = 1 when f = 1).
Coords omega_generator(const FieldSpec& spec);
// E(a s(X)) as a series in the pi-variable, dense below `rows`.
IterSeries omega_series(const FieldSpecPtr& spec, const Coords& a, int rows);
FieldElement omega_element(const FieldSpecPtr& spec, const Coords& a);
BasisDescription build_basis(const FieldSpecPtr& spec, int j1_range = kDefaultJ1Range);

struct OrthogonalityEntry {
  std::string label;
  std::uint64_t exponent = 0;
  std::uint64_t expected = 0;
  bool pass = false;
  PrecisionPlan plan;
};

struct OrthogonalityReport {
  std::vector<OrthogonalityEntry> entries;
  bool all_pass() const;
};

// V(t_1, ..., t_n, eps_J) = 0 for all J and V(t_1, ..., t_n, omega) = 1.
OrthogonalityReport verify_orthogonality(const BasisDescription& basis);

struct DualCase {
  Coords theta{};  // residue
  Exponent I{0, 0};
  int l = 1;       // 1-based index of the omitted parameter
};

struct DualResult {
  bool found = false;
  Coords theta_prime{};  // residue of the partner's Teichmuller coefficient
  FieldElement partner;
  std::uint64_t exponent = 0;
  int candidates = 0;
};

// Every (theta, I, l) with theta a nonzero residue, I in the index set and
// i_l prime to p.
std::vector<DualCase> admissible_dual_cases(const FieldSpecPtr& spec,
                                            int j1_range = kDefaultJ1Range);
// Searches theta' with V(1 + theta t^I, t_1..(t_l omitted)..t_n,
// 1 + theta' t^(p e/(p-1) - I)) = 1.
DualResult dual_search(const FieldSpecPtr& spec, const DualCase& c);

// r with r^(p^k) = u, or nothing when u is not a p^k-th power at the
// available precision (n == 1).
std::optional<FieldElement> pth_root(const FieldElement& u, unsigned k);

struct Decomposition {
  int i = 0;                        // exponent of pi
  std::vector<std::uint64_t> b;     // one per basis epsilon, mod p^m
  std::uint64_t c = 0;              // exponent of omega, mod p^m
  FieldElement certificate;         // alpha = reconstruct * certificate^(p^m)
};

// alpha = pi^i prod eps_J^b_J omega^c r^(p^m) (n == 1).
Decomposition decompose(const FieldElement& alpha, const BasisDescription& basis);
FieldElement reconstruct(const Decomposition& d, const BasisDescription& basis);
bool certificate_holds(const FieldElement& alpha, const Decomposition& d,
                       const BasisDescription& basis);

}  // namespace vostokov
