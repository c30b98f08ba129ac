#pragma once

// The fields under test: K = Q_p(zeta_{p^m}) (n = 1) and K{{t1}} with
// t2 = pi = zeta - 1 (n = 2), with coefficients extended by W(F_q).
//
// Elements of the base field are stored as pi^shift * c where c is a unit of
// O_K in the power basis 1, pi, ..., pi^(e-1) and is known modulo
// pi^relprec.  Two-dimensional elements are finite sums t1^j * c_j.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vostokov/series.hpp"
#include "vostokov/witt.hpp"

namespace vostokov {

class FieldSpec;
using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

// Exponent tuples compare with the last coordinate most significant.
inline constexpr const char* kTupleOrder = "last-coordinate-most-significant";
inline bool tuple_less(Exponent a, Exponent b) {
  return a[1] != b[1] ? a[1] < b[1] : a[0] < b[0];
}

class FieldSpec {
 public:
  // precision 0 selects the default 6m + 8.
  static FieldSpecPtr cyclotomic(unsigned p, unsigned m, unsigned n, unsigned f = 1,
                                 unsigned precision = 0);

  unsigned p() const { return p_; }
  unsigned m() const { return m_; }
  unsigned n() const { return n_; }
  unsigned f() const { return ring_->f(); }
  unsigned e() const { return e_; }
  std::uint64_t pm() const { return pm_; }  // p^m
  unsigned precision() const { return ring_->precision(); }
  const WittRingPtr& ring() const { return ring_; }
  std::string kind() const;
  std::vector<unsigned> e_vec() const;

  // Monic Eisenstein polynomial of pi, constant term first (e + 1 entries).
  const std::vector<Coords>& minpoly() const { return minpoly_; }
  // Unit p / pi^e in the power basis.
  const std::vector<Coords>& p_unit() const { return p_unit_; }
  // Residue of p / pi^e in F_q.
  Coords p_unit_residue() const { return ring_->residue(p_unit_[0]); }
  // Tr_{K/Q_p}(pi^i) for i < e.
  const std::vector<std::uint64_t>& basis_traces() const { return basis_traces_; }

  // Power-basis arithmetic in O_K (vectors of length e).
  std::vector<Coords> poly_mul(const std::vector<Coords>& a, const std::vector<Coords>& b) const;
  std::vector<Coords> poly_mul_pi(const std::vector<Coords>& a) const;
  // Exact division by pi; requires the constant coefficient to vanish mod p.
  std::vector<Coords> poly_div_pi(const std::vector<Coords>& a) const;
  std::vector<Coords> poly_inverse(const std::vector<Coords>& a) const;
  std::vector<Coords> poly_from(const Coords& c) const;

 private:
  FieldSpec() = default;
  unsigned p_ = 0, m_ = 0, n_ = 0, e_ = 0;
  std::uint64_t pm_ = 0;
  WittRingPtr ring_;
  std::vector<Coords> minpoly_;
  std::vector<Coords> p_unit_;
  std::vector<Coords> p_over_pi_;
  std::vector<std::uint64_t> basis_traces_;
};

class FieldElement {
 public:
  struct Component {
    int shift = 0;
    std::vector<Coords> unit;  // e coordinates, constant term a unit
    int relprec = 0;           // unit known modulo pi^relprec
  };

  FieldElement() = default;
  explicit FieldElement(FieldSpecPtr spec) : spec_(std::move(spec)) {}

  static FieldElement zero(FieldSpecPtr spec) { return FieldElement(std::move(spec)); }
  static FieldElement from_int(FieldSpecPtr spec, std::int64_t v);
  static FieldElement from_coords(FieldSpecPtr spec, const Coords& c);
  static FieldElement teichmuller(FieldSpecPtr spec, const Coords& residue);
  static FieldElement pi(FieldSpecPtr spec);
  static FieldElement zeta(FieldSpecPtr spec);
  static FieldElement t1(FieldSpecPtr spec);  // pi when n == 1
  // pi^shift * (sum coeffs[i] pi^i), any length; full precision.
  static FieldElement from_pi_poly(FieldSpecPtr spec, const std::vector<Coords>& coeffs,
                                   int shift = 0, int relprec = -1);

  const FieldSpecPtr& spec() const { return spec_; }
  const std::map<int, Component>& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement pow(std::int64_t k) const;
  FieldElement inverse() const;
  FieldElement mul_pi_power(int k) const;

  // Leading exponent {j1, pi-exponent} in the tuple order (n == 1: {0, v}).
  Exponent valuation() const;
  // Leading coefficient reduced to the residue field.
  Coords leading_residue() const;
  // Smallest relprec + shift over components: the absolute pi-adic precision.
  int absolute_precision() const;
  bool is_principal_unit() const;  // n == 1: v = 0 and leading residue 1
  std::string to_string() const;

 private:
  void check_same(const FieldElement& o) const;
  void add_component(int j, Component c);
  static Component normalize(const FieldSpec& spec, Component c, bool& zero);
  static Component comp_add(const FieldSpec& spec, const Component& a, const Component& b,
                            bool& zero);

  FieldSpecPtr spec_;
  std::map<int, Component> comps_;
};

// True when a - b vanishes at the available precision.
bool agree(const FieldElement& a, const FieldElement& b);

FieldElement parse_element(std::string_view text, const FieldSpecPtr& spec);

// Monomials of a lift X^lead * theta * (1 + ...), all with absolute exponents.
struct SparseLift {
  int n = 1;
  Exponent lead{0, 0};
  Coords theta{};
  std::vector<std::pair<Exponent, Coords>> terms;  // includes the leading term
};

// Teichmuller digit expansion of x, digits of each component below `digits`.
SparseLift lift_sparse(const FieldElement& x, int digits);
// Smallest slope that puts every monomial of the lift in the cone at its lead.
int lift_slope(const SparseLift& l);
// Dense series with origin at the lead exponent.
IterSeries materialize(const SparseLift& l, const WittRingPtr& ring, int slope, int rows,
                       int cols);
// Canonical lift on its natural window (n == 1: digits below relprec).
IterSeries lift_element(const FieldElement& x);
// lift + X^(v+1) r(X) minpoly(X) with r random of degree < 4 (n == 1).
SparseLift relift_random_sparse(const FieldElement& x, std::uint64_t seed, int digits);
IterSeries relift_random(const FieldElement& x, std::uint64_t seed);
// Substitutes pi (and t1) into a series.
FieldElement evaluate(const IterSeries& s, const FieldSpecPtr& spec);

// (1 + X)^(p^m) - 1 in the pi-variable, dense below `rows`.
IterSeries s_series(const FieldSpec& spec, int rows, WittRingPtr ring = nullptr);

// Tr_{K/Q_p}(x) = value / p^den_exp with value known mod p^prec.
struct ScaledTrace {
  std::uint64_t value = 0;
  unsigned den_exp = 0;
  unsigned prec = 0;
};
ScaledTrace field_trace_scaled(const FieldElement& x);
// Integral trace; PrecisionError when the trace has a denominator.
std::uint64_t field_trace(const FieldElement& x);
// Logarithm of a principal unit (n == 1).
FieldElement field_log(const FieldElement& u);

}  // namespace vostokov
