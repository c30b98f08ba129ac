#pragma once

// Classical formulas used as independent ground truth for the pairing.

#include <cstdint>
#include <vector>

#include "vostokov/field.hpp"
#include "vostokov/series.hpp"

namespace vostokov {

// res(log(eta) dlog(eps) X^-p), mod p.  eps and eta are principal-unit
// series over Z_p (f == 1) in the variable of Q_p(zeta_p).
std::uint64_t kummer_exponent(const IterSeries& eps, const IterSeries& eta);

// Tr(x) / p^m mod p^m; PrecisionError unless p^m divides the trace.
std::uint64_t trace_over_pm(const FieldElement& x);

// Tr(-log eps) / p^m.
std::uint64_t artin_hasse_zeta(const FieldElement& eps);
// Tr(pi^-1 zeta log eps) / p^m.
std::uint64_t artin_hasse_pi(const FieldElement& eps);

// A polynomial over W(F_q), constant term first.
using WittPoly = std::vector<Coords>;

// Power-basis polynomial g with g(pi) = x for x of nonnegative valuation.
WittPoly polynomial_of(const FieldElement& x);
FieldElement evaluate_poly(const WittPoly& g, const FieldSpecPtr& spec);
WittPoly derivative(const WittPoly& g, const WittRing& R);

// Lower bound on v(alpha - 1) for the Sen formula: 2 e / (p - 1).
int sen_level(const FieldSpec& spec);

// (1/p^m) Tr(zeta / h'(pi) * g'(pi) / beta * log alpha) with g(pi) = beta and
// h(pi) = zeta, both validated.
std::uint64_t sen_exponent(const FieldElement& alpha, const FieldElement& beta, const WittPoly& g,
                           const WittPoly& h);

struct NormMembership {
  bool member = false;
  int rank = 0;       // rank of the norm subgroup in K^*/K^*p
  int dimension = 0;  // dimension of K^*/K^*p
  int samples = 0;
};

// Whether alpha is a norm from K(beta^(1/p)) modulo p-th powers, by spanning
// the norm subgroup with norms of random elements (p = 3, m = 1).
NormMembership norm_membership(const FieldElement& alpha, const FieldElement& beta,
                               std::uint64_t seed = 1);

}  // namespace vostokov
