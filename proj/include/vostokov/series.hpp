#pragma once

// Truncated iterated Laurent series in one or two variables over a WittRing.
//
// Storage is a dense block in "cone coordinates".  With origin (o1, o2) and
// slope L, cell (r, k) holds the coefficient of
//     X1^(o1 + k - L*r) * X2^(o2 + r).
// The block is truncated at r < rows, k < cols, which is exactly the
// quotient by the monomial ideal {E2 - o2 >= rows} + {E1 - o1 + L(E2 - o2) >= cols}.
// That ideal is stable under products and under the twist X -> X^p, so
// every operation below is exact on the window it reports.
//
// Univariate series (n == 1) use rows as the degree bound, cols == 1 and
// slope 0; their exponents live in the second slot of Exponent.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vostokov/witt.hpp"

namespace vostokov {

// {exponent of X1, exponent of X2}.  The last slot is the pi-variable; for
// n == 1 the first slot is always 0.
using Exponent = std::array<int, 2>;

class IterSeries {
 public:
  IterSeries() = default;

  // Zero series with the given origin and window.
  static IterSeries zero(WittRingPtr ring, int n, Exponent origin, int rows, int cols = 1,
                         int slope = 0);
  static IterSeries constant(WittRingPtr ring, int n, const Coords& c, int rows, int cols = 1,
                             int slope = 0);
  static IterSeries monomial(WittRingPtr ring, int n, const Coords& c, Exponent e, int rows,
                             int cols = 1, int slope = 0);
  // Univariate from dense coefficients c[0] + c[1] X + ... (window = size).
  static IterSeries univariate(WittRingPtr ring, const std::vector<std::int64_t>& c,
                               int origin = 0);

  const WittRingPtr& ring() const { return ring_; }
  int n() const { return n_; }
  unsigned prec() const { return prec_; }
  Exponent origin() const { return origin_; }
  int slope() const { return slope_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  // Exponent stored at cell (r, k) and the inverse map (no range check).
  Exponent exponent_at(int r, int k) const;
  std::pair<int, int> cell_of(Exponent e) const;
  bool in_window(Exponent e) const;

  // Coefficient of X^e.  Exponents below the origin read as zero; exponents
  // beyond the window raise WindowError.
  Coords coeff(Exponent e) const;
  Coords coeff(int e) const { return coeff(Exponent{0, e}); }
  const Coords& cell(int r, int k) const { return c_[static_cast<std::size_t>(r) * cols_ + k]; }
  Coords& cell(int r, int k) { return c_[static_cast<std::size_t>(r) * cols_ + k]; }
  void set(Exponent e, const Coords& v);
  void add_to(Exponent e, const Coords& v);

  bool is_zero() const;
  // Visits every nonzero cell as (exponent, coefficient).
  void for_each(const std::function<void(Exponent, const Coords&)>& fn) const;

  IterSeries operator+(const IterSeries& o) const;
  IterSeries operator-(const IterSeries& o) const;
  IterSeries operator*(const IterSeries& o) const;
  IterSeries operator-() const;
  IterSeries scaled(const Coords& c) const;
  IterSeries pow(std::uint64_t e) const;

  // The constant 1 on a window that covers this series' window.
  IterSeries one_like() const;
  IterSeries constant_like(const Coords& c) const { return one_like().scaled(c); }

  // Multiplies by X^e (moves the origin; the window moves with it).
  IterSeries shifted(Exponent e) const;
  // Re-expresses in a larger slope; entries leaving the window are dropped.
  IterSeries with_slope(int slope) const;
  // Narrows the window (never widens it).
  IterSeries truncated(int rows, int cols = 1) const;
  // Same coefficients read in another ring of the same field (representatives
  // are reduced when the target precision is lower).
  IterSeries in_ring(WittRingPtr ring) const;
  IterSeries with_prec(unsigned prec) const;
  // Moves to a ring of higher precision reading the current representatives
  // as exact values.
  IterSeries lifted_to(WittRingPtr ring) const;

  // Coefficient-wise Frobenius together with X_i -> X_i^p.  The output
  // window is the input window unless larger dimensions are requested.
  IterSeries delta_twist(int rows_out = 0, int cols_out = 0) const;
  // X_v * d/dX_v (v = 0 for X1, 1 for X2; univariate series use v = 1).
  IterSeries x_partial(int v) const;
  // Formal derivative d/dX_v.
  IterSeries partial(int v) const;

  // Inverse of c X^L (1 + h) where X^L is the leading monomial in the tuple
  // order (outer exponent first) and c is a unit.  The slope is raised when
  // needed so that h lies in the cone.
  IterSeries invert_unit() const;
  // Leading monomial in the tuple order; throws DomainError on zero.
  Exponent leading_exponent() const;

  // True when both agree mod p^min(prec) on the common window.
  bool agrees_with(const IterSeries& o) const;
  std::string to_string() const;

 private:
  IterSeries(WittRingPtr ring, int n, Exponent origin, int rows, int cols, int slope);
  void require_compatible(const IterSeries& o) const;
  IterSeries aligned_sum(const IterSeries& o, bool subtract) const;

  WittRingPtr ring_;
  int n_ = 1;
  unsigned prec_ = 0;
  Exponent origin_{0, 0};
  int slope_ = 0;
  int rows_ = 0;
  int cols_ = 1;
  std::vector<Coords> c_;
};

// log(a) = numerator / p^denominator_exp.
struct LogSeries {
  IterSeries numerator;
  unsigned denominator_exp = 0;
};

// Logarithm of a = 1 + u.  When u is divisible by p the result is integral
// (denominator_exp == 0); otherwise u must have positive order and the
// denominators p^v(k) are carried in denominator_exp.
LogSeries log_unit(const IterSeries& a);

// Artin-Hasse exponential exp(sum Y^(p^k) / p^k) truncated below degree D,
// with coefficients in Z_p reduced into `ring`.
std::vector<Coords> artin_hasse_coefficients(const WittRingPtr& ring, int D);

// E(f) = exp((1 + Delta/p + Delta^2/p^2 + ...) f) for f of positive order.
IterSeries shafarevich_exp(const IterSeries& f);

// An n-form g dX1 ^ ... ^ dXn.
struct DiffForm {
  IterSeries body;
  int orientation = 1;

  DiffForm transposed() const { return {body, -orientation}; }
};

DiffForm dlog_form(const IterSeries& a);                       // n == 1
DiffForm wedge_dlog(const IterSeries& a, const IterSeries& b);  // n == 2
// Coefficient of X1^-1 ... Xn^-1 times the orientation.
Coords residue(const DiffForm& w);

// 1/s kept unexpanded as sum_k p^k T_k; T_k is meaningful mod p^(prec - k).
// Every T_k is a Laurent polynomial in the last variable.
struct MixedInverse {
  struct Term {
    unsigned k;
    IterSeries series;
  };
  std::vector<Term> terms;
  unsigned k_max = 0;
  unsigned prec = 0;

  // sum_k p^k T_k materialized as one univariate series on a window.
  IterSeries expanded(int rows) const;
  // res(w * (1/s)) computed term by term.  Raises WindowError when a needed
  // coefficient of w lies outside its window.
  Coords residue_against(const DiffForm& w) const;
};

// Decomposes s = X^c u (1 + p r) with u an invertible power series (taken
// from the coefficients of s at degrees >= c, where c is the first unit
// coefficient) and builds the inverse to precision prec_target.
MixedInverse invert_s(const IterSeries& s, unsigned prec_target);

}  // namespace vostokov
