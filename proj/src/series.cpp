#include "vostokov/series.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "vostokov/error.hpp"

namespace vostokov {

namespace {

constexpr std::uint64_t kLazyModulusBound = std::uint64_t{1} << 40;

int ceil_div(int a, int b) {  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

bool same_ring(const WittRing& a, const WittRing& b) {
  return a.same_field(b) && a.precision() == b.precision();
}

int mobius(int n) {
  int result = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

IterSeries::IterSeries(WittRingPtr ring, int n, Exponent origin, int rows, int cols, int slope)
    : ring_(std::move(ring)), n_(n), prec_(ring_->precision()), origin_(origin), slope_(slope),
      rows_(std::max(rows, 0)), cols_(std::max(cols, 0)) {
  if (n_ != 1 && n_ != 2) throw DomainError("series arity must be 1 or 2");
  if (n_ == 1) {
    cols_ = std::min(cols_, 1);
    slope_ = 0;
    origin_[0] = 0;
  }
  if (slope_ < 0) throw DomainError("slope must be non-negative");
  c_.assign(static_cast<std::size_t>(rows_) * cols_, Coords{});
}

IterSeries IterSeries::zero(WittRingPtr ring, int n, Exponent origin, int rows, int cols,
                            int slope) {
  return IterSeries(std::move(ring), n, origin, rows, cols, slope);
}

IterSeries IterSeries::constant(WittRingPtr ring, int n, const Coords& c, int rows, int cols,
                                int slope) {
  return monomial(std::move(ring), n, c, Exponent{0, 0}, rows, cols, slope);
}

IterSeries IterSeries::monomial(WittRingPtr ring, int n, const Coords& c, Exponent e, int rows,
                                int cols, int slope) {
  IterSeries s(std::move(ring), n, e, rows, cols, slope);
  if (s.rows_ > 0 && s.cols_ > 0) s.cell(0, 0) = c;
  return s;
}

IterSeries IterSeries::univariate(WittRingPtr ring, const std::vector<std::int64_t>& c,
                                  int origin) {
  IterSeries s(ring, 1, Exponent{0, origin}, static_cast<int>(c.size()), 1, 0);
  for (std::size_t i = 0; i < c.size(); ++i) s.c_[i] = ring->from_int(c[i]);
  return s;
}

Exponent IterSeries::exponent_at(int r, int k) const {
  if (n_ == 1) return {0, origin_[1] + r};
  return {origin_[0] + k - slope_ * r, origin_[1] + r};
}

std::pair<int, int> IterSeries::cell_of(Exponent e) const {
  const int r = e[1] - origin_[1];
  if (n_ == 1) {
    if (e[0] != 0) throw DomainError("univariate series has no X1 exponent");
    return {r, 0};
  }
  return {r, e[0] - origin_[0] + slope_ * r};
}

bool IterSeries::in_window(Exponent e) const {
  auto [r, k] = cell_of(e);
  return r >= 0 && k >= 0 && r < rows_ && k < cols_;
}

Coords IterSeries::coeff(Exponent e) const {
  auto [r, k] = cell_of(e);
  if (r < 0 || k < 0) return Coords{};
  if (r >= rows_ || k >= cols_)
    throw WindowError("coefficient requested outside the guaranteed window");
  return cell(r, k);
}

void IterSeries::set(Exponent e, const Coords& v) {
  auto [r, k] = cell_of(e);
  if (r < 0 || k < 0 || r >= rows_ || k >= cols_)
    throw WindowError("cannot store a coefficient outside the window");
  cell(r, k) = ring_->reduce_to(v, prec_);
}

void IterSeries::add_to(Exponent e, const Coords& v) {
  auto [r, k] = cell_of(e);
  if (r < 0 || k < 0 || r >= rows_ || k >= cols_)
    throw WindowError("cannot store a coefficient outside the window");
  cell(r, k) = ring_->reduce_to(ring_->add(cell(r, k), v), prec_);
}

bool IterSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [&](const Coords& x) { return ring_->is_zero(x); });
}

void IterSeries::for_each(const std::function<void(Exponent, const Coords&)>& fn) const {
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k)
      if (!ring_->is_zero(cell(r, k))) fn(exponent_at(r, k), cell(r, k));
}

void IterSeries::require_compatible(const IterSeries& o) const {
  if (!ring_ || !o.ring_) throw DomainError("operation on an empty series");
  if (!same_ring(*ring_, *o.ring_)) throw DomainError("series over different coefficient rings");
  if (n_ != o.n_) throw DomainError("series of different arity");
}

IterSeries IterSeries::aligned_sum(const IterSeries& o, bool subtract) const {
  require_compatible(o);
  const int L = std::max(slope_, o.slope_);
  const IterSeries aa = with_slope(L);
  const IterSeries b = o.with_slope(L);
  Exponent origin{0, std::min(aa.origin_[1], b.origin_[1])};
  if (n_ == 2) {
    origin[0] = std::min(aa.origin_[0] + L * (aa.origin_[1] - origin[1]),
                         b.origin_[0] + L * (b.origin_[1] - origin[1]));
  }
  auto shift_of = [&](const IterSeries& x) {
    const int dr = x.origin_[1] - origin[1];
    const int dk = n_ == 2 ? x.origin_[0] - origin[0] + L * dr : 0;
    return std::pair<int, int>{dr, dk};
  };
  auto [dra, dka] = shift_of(aa);
  auto [drb, dkb] = shift_of(b);
  const int rows = std::min(aa.rows_ + dra, b.rows_ + drb);
  const int cols = n_ == 2 ? std::min(aa.cols_ + dka, b.cols_ + dkb) : 1;
  IterSeries out(ring_, n_, origin, rows, cols, L);
  out.prec_ = std::min(prec_, o.prec_);
  for (int r = 0; r < aa.rows_ && r + dra < rows; ++r)
    for (int k = 0; k < aa.cols_ && k + dka < cols; ++k) out.cell(r + dra, k + dka) = aa.cell(r, k);
  for (int r = 0; r < b.rows_ && r + drb < rows; ++r)
    for (int k = 0; k < b.cols_ && k + dkb < cols; ++k) {
      Coords& dst = out.cell(r + drb, k + dkb);
      dst = subtract ? ring_->sub(dst, b.cell(r, k)) : ring_->add(dst, b.cell(r, k));
    }
  if (out.prec_ < ring_->precision())
    for (auto& x : out.c_) x = ring_->reduce_to(x, out.prec_);
  return out;
}

IterSeries IterSeries::operator+(const IterSeries& o) const { return aligned_sum(o, false); }
IterSeries IterSeries::operator-(const IterSeries& o) const { return aligned_sum(o, true); }

IterSeries IterSeries::operator-() const {
  IterSeries out = *this;
  for (auto& x : out.c_) x = ring_->neg(x);
  return out;
}

IterSeries IterSeries::operator*(const IterSeries& o) const {
  require_compatible(o);
  const int L = std::max(slope_, o.slope_);
  const IterSeries a = with_slope(L);
  const IterSeries b = o.with_slope(L);
  const int rows = std::min(a.rows_, b.rows_);
  const int cols = std::min(a.cols_, b.cols_);
  IterSeries out(ring_, n_, Exponent{a.origin_[0] + b.origin_[0], a.origin_[1] + b.origin_[1]},
                 rows, cols, L);
  out.prec_ = std::min(prec_, o.prec_);
  const WittRing& R = *ring_;
  const std::uint64_t mod = R.modulus();

  // nonzero cells of b, used as the inner loop
  struct Cell {
    int r, k;
    Coords v;
  };
  std::vector<Cell> bnz;
  for (int r = 0; r < rows; ++r)
    for (int k = 0; k < cols; ++k)
      if (!R.is_zero(b.cell(r, k))) bnz.push_back({r, k, b.cell(r, k)});

  if (R.f() == 1) {
    std::vector<unsigned __int128> acc(static_cast<std::size_t>(rows) * cols, 0);
    const bool lazy = mod < kLazyModulusBound;
    for (int r1 = 0; r1 < rows; ++r1)
      for (int k1 = 0; k1 < cols; ++k1) {
        const std::uint64_t x = a.cell(r1, k1)[0];
        if (x == 0) continue;
        for (const Cell& c : bnz) {
          const int r = r1 + c.r, k = k1 + c.k;
          if (r >= rows || k >= cols) continue;
          const unsigned __int128 prod = static_cast<unsigned __int128>(x) * c.v[0];
          acc[static_cast<std::size_t>(r) * cols + k] += lazy ? prod : prod % mod;
        }
      }
    for (std::size_t i = 0; i < acc.size(); ++i)
      out.c_[i][0] = static_cast<std::uint64_t>(acc[i] % mod);
  } else {
    for (int r1 = 0; r1 < rows; ++r1)
      for (int k1 = 0; k1 < cols; ++k1) {
        const Coords& x = a.cell(r1, k1);
        if (R.is_zero(x)) continue;
        for (const Cell& c : bnz) {
          const int r = r1 + c.r, k = k1 + c.k;
          if (r >= rows || k >= cols) continue;
          Coords& dst = out.cell(r, k);
          dst = R.add(dst, R.mul(x, c.v));
        }
      }
  }
  if (out.prec_ < R.precision())
    for (auto& x : out.c_) x = R.reduce_to(x, out.prec_);
  return out;
}

IterSeries IterSeries::scaled(const Coords& c) const {
  IterSeries out = *this;
  for (auto& x : out.c_) x = ring_->reduce_to(ring_->mul(x, c), prec_);
  return out;
}

IterSeries IterSeries::pow(std::uint64_t e) const {
  if (e == 0) return constant(ring_, n_, ring_->one(), rows_, cols_, slope_).with_prec(prec_);
  IterSeries base = *this;
  std::optional<IterSeries> result;
  for (;;) {
    if (e & 1) result = result ? *result * base : base;
    e >>= 1;
    if (!e) break;
    base = base * base;
  }
  return *result;
}

IterSeries IterSeries::one_like() const {
  const int rows = std::max(1, rows_ + origin_[1]);
  const int cols = n_ == 1 ? 1 : std::max(1, cols_ + origin_[0] + slope_ * origin_[1]);
  return constant(ring_, n_, ring_->one(), rows, cols, slope_).with_prec(prec_);
}

IterSeries IterSeries::shifted(Exponent e) const {
  IterSeries out = *this;
  if (n_ == 1 && e[0] != 0) throw DomainError("univariate series has no X1 exponent");
  out.origin_[0] += e[0];
  out.origin_[1] += e[1];
  return out;
}

IterSeries IterSeries::with_slope(int slope) const {
  if (slope == slope_ || n_ == 1) return *this;
  if (slope < slope_) throw DomainError("slope can only be raised");
  IterSeries out(ring_, n_, origin_, rows_, cols_, slope);
  out.prec_ = prec_;
  const int d = slope - slope_;
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k + d * r < cols_ && k < cols_; ++k) out.cell(r, k + d * r) = cell(r, k);
  return out;
}

IterSeries IterSeries::truncated(int rows, int cols) const {
  rows = std::min(rows, rows_);
  cols = n_ == 1 ? 1 : std::min(cols, cols_);
  if (rows == rows_ && cols == cols_) return *this;
  IterSeries out(ring_, n_, origin_, rows, cols, slope_);
  out.prec_ = prec_;
  for (int r = 0; r < rows; ++r)
    for (int k = 0; k < cols; ++k) out.cell(r, k) = cell(r, k);
  return out;
}

IterSeries IterSeries::in_ring(WittRingPtr ring) const {
  if (!ring->same_field(*ring_)) throw DomainError("in_ring requires the same residue field");
  IterSeries out(ring, n_, origin_, rows_, cols_, slope_);
  out.prec_ = std::min(prec_, ring->precision());
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = ring->reduce_to(c_[i], out.prec_);
  return out;
}

IterSeries IterSeries::lifted_to(WittRingPtr ring) const {
  if (!ring->same_field(*ring_)) throw DomainError("lifted_to requires the same residue field");
  if (ring->precision() < ring_->precision()) return in_ring(std::move(ring));
  IterSeries out(ring, n_, origin_, rows_, cols_, slope_);
  out.prec_ = ring->precision();
  out.c_ = c_;
  return out;
}

IterSeries IterSeries::with_prec(unsigned prec) const {
  IterSeries out = *this;
  out.prec_ = std::min(prec, prec_);
  for (auto& x : out.c_) x = ring_->reduce_to(x, out.prec_);
  return out;
}

IterSeries IterSeries::delta_twist(int rows_out, int cols_out) const {
  const int p = static_cast<int>(ring_->p());
  if (rows_out <= 0) rows_out = rows_;
  if (cols_out <= 0) cols_out = cols_;
  rows_out = std::min(rows_out, p * rows_);
  cols_out = n_ == 1 ? 1 : std::min(cols_out, p * cols_);
  IterSeries out(ring_, n_, Exponent{p * origin_[0], p * origin_[1]}, rows_out, cols_out, slope_);
  out.prec_ = prec_;
  for (int r = 0; r * p < rows_out && r < rows_; ++r)
    for (int k = 0; k * p < cols_out && k < cols_; ++k)
      out.cell(r * p, k * p) = ring_->frobenius(cell(r, k));
  return out;
}

IterSeries IterSeries::x_partial(int v) const {
  if (v < 0 || v > 1 || (n_ == 1 && v != 1)) throw DomainError("bad variable index");
  IterSeries out = *this;
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      Coords& x = out.cell(r, k);
      if (ring_->is_zero(x)) continue;
      const int e = exponent_at(r, k)[v];
      x = ring_->reduce_to(ring_->mul(x, ring_->from_int(e)), prec_);
    }
  return out;
}

IterSeries IterSeries::partial(int v) const {
  Exponent shift{0, 0};
  shift[v] = -1;
  return x_partial(v).shifted(shift);
}

Exponent IterSeries::leading_exponent() const {
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k)
      if (!ring_->is_zero(cell(r, k))) return exponent_at(r, k);
  throw DomainError("zero series has no leading term");
}

IterSeries IterSeries::invert_unit() const {
  const Exponent L = leading_exponent();
  const Coords lead = coeff(L);
  if (!ring_->is_unit(lead)) throw DomainError("leading coefficient is not a unit");
  const auto [rstar, kstar] = cell_of(L);

  int slope = slope_;
  if (n_ == 2) {
    for_each([&](Exponent e, const Coords&) {
      if (e[1] > L[1]) slope = std::max(slope, ceil_div(L[0] - e[0], e[1] - L[1]));
    });
  }
  const int rows = rows_ - rstar;
  const int cols = n_ == 2 ? cols_ - kstar : 1;
  if (rows <= 0 || cols <= 0) throw WindowError("no guaranteed window left after inversion");

  const Coords inv_lead = ring_->inverse(lead);
  IterSeries h(ring_, n_, L, rows, cols, slope);
  h.prec_ = prec_;
  for_each([&](Exponent e, const Coords& c) {
    auto [r, k] = h.cell_of(e);
    if (r < rows && k < cols) h.cell(r, k) = ring_->mul(c, inv_lead);
  });

  struct Cell {
    int r, k;
    Coords v;
  };
  std::vector<Cell> hnz;
  for (int r = 0; r < rows; ++r)
    for (int k = 0; k < cols; ++k)
      if ((r || k) && !ring_->is_zero(h.cell(r, k))) hnz.push_back({r, k, h.cell(r, k)});

  IterSeries x(ring_, n_, Exponent{-L[0], -L[1]}, rows, cols, slope);
  x.prec_ = prec_;
  const WittRing& R = *ring_;
  for (int r = 0; r < rows; ++r)
    for (int k = 0; k < cols; ++k) {
      Coords acc = (r == 0 && k == 0) ? R.one() : Coords{};
      for (const Cell& c : hnz) {
        if (c.r > r || c.k > k) continue;
        const Coords& prev = x.cell(r - c.r, k - c.k);
        if (R.is_zero(prev)) continue;
        acc = R.sub(acc, R.mul(c.v, prev));
      }
      x.cell(r, k) = acc;
    }
  return x.scaled(inv_lead);
}

bool IterSeries::agrees_with(const IterSeries& o) const {
  const IterSeries d = *this - o;
  return d.is_zero();
}

std::string IterSeries::to_string() const {
  std::ostringstream os;
  bool any = false;
  for_each([&](Exponent e, const Coords& c) {
    if (any) os << " + ";
    any = true;
    os << WittElement(ring_, c).to_string();
    if (n_ == 1) {
      if (e[1] != 0) os << "*X^" << e[1];
    } else {
      if (e[0] != 0) os << "*X1^" << e[0];
      if (e[1] != 0) os << "*X2^" << e[1];
    }
  });
  if (!any) os << "0";
  os << " [window " << rows_ << "x" << cols_ << ", prec " << prec_ << "]";
  return os.str();
}

static Coords integer_coords(std::uint64_t v) {
  Coords c{};
  c[0] = v;
  return c;
}

// Signed scalar (-1)^(k+1) p^s / k' for the log series, k' the prime-to-p part.
static Coords log_scalar(const WittRing& R, unsigned k, unsigned s) {
  const unsigned p = R.p();
  const std::uint64_t mod = R.modulus();
  const unsigned v = modarith::valuation(k, p, 64);
  const std::uint64_t kk = k / modarith::ipow(p, v);
  std::uint64_t scale =
      s >= R.precision() ? 0 : modarith::mul(modarith::ipow(p, s), modarith::inverse(kk % mod, mod), mod);
  if (k % 2 == 0) scale = (mod - scale) % mod;
  return integer_coords(scale);
}

LogSeries log_unit(const IterSeries& a) {
  const WittRingPtr& R = a.ring();
  const unsigned p = R->p();
  IterSeries u = a - a.one_like();
  if (u.origin()[1] < 0 || (u.n() == 2 && u.origin()[0] + u.slope() * u.origin()[1] < 0)) {
    bool bad = false;
    u.for_each([&](Exponent e, const Coords&) {
      if (e[1] < 0 || (u.n() == 2 && e[0] + u.slope() * e[1] < 0)) bad = true;
    });
    if (bad) throw DomainError("log_unit: argument is not of the form 1 + (small)");
  }
  if (!R->residue_is_zero(u.coeff(Exponent{0, 0})))
    throw DomainError("log_unit: constant term is not congruent to 1 mod p");

  const unsigned prec = u.prec();
  bool divisible = true;
  u.for_each([&](Exponent, const Coords& c) {
    if (!R->residue_is_zero(c)) divisible = false;
  });

  LogSeries out;
  if (divisible) {
    // u = p w: sum (-1)^(k+1) p^(k - v(k)) w^k / k' is integral
    IterSeries w = u;
    for (int r = 0; r < w.rows(); ++r)
      for (int k = 0; k < w.cols(); ++k) w.cell(r, k) = R->exact_div_p(w.cell(r, k), 1);
    IterSeries acc = IterSeries::zero(R, u.n(), u.origin(), u.rows(), u.cols(), u.slope());
    IterSeries wk = w;
    for (unsigned k = 1;; ++k) {
      const unsigned v = modarith::valuation(k, p, 64);
      if (k - v < prec) acc = acc + wk.scaled(log_scalar(*R, k, k - v));
      // k - v(k) >= k - log_p(k), which is non-decreasing
      unsigned logk = 0;
      for (unsigned t = k; t >= p; t /= p) ++logk;
      if (k - logk >= prec || wk.is_zero()) break;
      wk = wk * w;
    }
    out.numerator = acc.with_prec(prec);
    out.denominator_exp = 0;
    return out;
  }

  // positive-order case: collect powers until they vanish
  std::vector<IterSeries> powers;
  IterSeries uk = u;
  while (!uk.is_zero()) {
    powers.push_back(uk);
    if (powers.size() > 4096) throw PrecisionError("log_unit: argument is not topologically nilpotent");
    uk = uk * u;
  }
  unsigned D = 0;
  for (unsigned k = 1; k <= powers.size(); ++k) D = std::max(D, modarith::valuation(k, p, 64));
  IterSeries acc = IterSeries::zero(R, u.n(), u.origin(), u.rows(), u.cols(), u.slope());
  for (unsigned k = 1; k <= powers.size(); ++k) {
    const unsigned v = modarith::valuation(k, p, 64);
    acc = acc + powers[k - 1].scaled(log_scalar(*R, k, D - v));
  }
  out.numerator = acc;
  out.denominator_exp = D;
  return out;
}

std::vector<Coords> artin_hasse_coefficients(const WittRingPtr& ring, int D) {
  const unsigned p = ring->p();
  const std::uint64_t mod = ring->modulus();
  if (D <= 0) return {};
  unsigned logD = 0;
  for (long long t = 1; t < D; t *= p) ++logD;
  const unsigned M = ring->precision() + logD + 1;
  long double bound = 1;
  for (unsigned i = 0; i < M; ++i) bound *= p;
  if (bound > 4.0e18L) throw DomainError("Artin-Hasse exponent range exceeds 62 bits");
  const std::uint64_t pM = modarith::ipow(p, M);

  std::vector<std::uint64_t> result(D, 0);
  result[0] = 1 % mod;
  auto mul_trunc = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                       std::size_t len) {
    std::vector<std::uint64_t> c(len, 0);
    for (std::size_t i = 0; i < std::min(a.size(), len); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
        if (b[j]) c[i + j] = modarith::add(c[i + j], modarith::mul(a[i], b[j], mod), mod);
    }
    return c;
  };

  for (int n = 1; n < D; ++n) {
    if (n % static_cast<int>(p) == 0) continue;
    const int mu = mobius(n);
    if (mu == 0) continue;
    // exponent -mu/n as an integer representative mod p^M
    std::uint64_t A = modarith::inverse(static_cast<std::uint64_t>(n) % pM, pM);
    if (mu > 0) A = (pM - A) % pM;
    // (1 - Z)^A in Z = Y^n, truncated to degree < len
    const std::size_t len = static_cast<std::size_t>((D - 1) / n + 1);
    std::vector<std::uint64_t> base(len, 0), acc(len, 0);
    base[0] = 1 % mod;
    if (len > 1) base[1] = mod - 1;
    acc[0] = 1 % mod;
    for (std::uint64_t e = A; e; e >>= 1) {
      if (e & 1) acc = mul_trunc(acc, base, len);
      if (e > 1) base = mul_trunc(base, base, len);
    }
    std::vector<std::uint64_t> spread(D, 0);
    for (std::size_t i = 0; i < len; ++i)
      if (static_cast<int>(i) * n < D) spread[i * n] = acc[i];
    result = mul_trunc(result, spread, D);
  }
  std::vector<Coords> out(D);
  for (int i = 0; i < D; ++i) out[i] = ring->from_int(static_cast<std::int64_t>(result[i]));
  return out;
}

IterSeries shafarevich_exp(const IterSeries& f) {
  const WittRingPtr& R = f.ring();
  const int n = f.n();
  const int L = f.slope();
  const Exponent o = f.origin();
  // result window: everything below the first unknown exponent of f
  const int rows = o[1] + f.rows();
  const int cols = n == 2 ? o[0] + L * o[1] + f.cols() : 1;
  if (rows <= 0 || cols <= 0) throw WindowError("shafarevich_exp: empty window");
  IterSeries result = IterSeries::constant(R, n, R->one(), rows, cols, L);
  result = result.with_prec(f.prec());

  std::vector<std::pair<Exponent, Coords>> monos;
  f.for_each([&](Exponent e, const Coords& c) {
    const bool positive = n == 1 ? e[1] > 0
                                 : (e[1] > 0 || (e[1] == 0 && e[0] > 0)) && e[0] + L * e[1] >= 0;
    if (!positive) throw DomainError("shafarevich_exp: argument must have positive order");
    monos.emplace_back(e, c);
  });
  if (monos.empty()) return result;

  const auto ah = artin_hasse_coefficients(R, rows + cols);
  const unsigned p = R->p();
  for (const auto& [e, c0] : monos) {
    Coords c = c0;
    for (unsigned j = 0; j < f.prec() && !R->is_zero(c); ++j) {
      const Coords theta = R->teichmuller(R->residue(c));
      c = R->exact_div_p(R->sub(c, theta), 1);
      if (R->residue_is_zero(theta)) continue;
      // AH(theta X^e) on the result window
      IterSeries term = IterSeries::zero(R, n, Exponent{0, 0}, rows, cols, L);
      Coords th_pow = R->one();
      for (std::size_t m = 0; m < ah.size(); ++m) {
        const Exponent me{static_cast<int>(m) * e[0], static_cast<int>(m) * e[1]};
        auto [r, k] = term.cell_of(me);
        if (r >= rows || k >= cols) break;
        term.cell(r, k) = R->mul(ah[m], th_pow);
        th_pow = R->mul(th_pow, theta);
      }
      for (unsigned t = 0; t < j; ++t) term = term.pow(p);
      result = result * term;
    }
  }
  // f is known mod p^N only, and E(p^N h) = E(h)^(p^N) differs from 1 in
  // degree k by p^(N - v_p(k)); drop the digits that can be affected.
  unsigned lost = 0;
  for (std::int64_t k = p; k < rows + (n == 2 ? cols : 0); k *= p) ++lost;
  if (lost >= f.prec()) throw PrecisionError("shafarevich_exp: window too large for the precision");
  return result.with_prec(f.prec() - lost);
}

DiffForm dlog_form(const IterSeries& a) {
  if (a.n() != 1) throw DomainError("dlog_form expects a univariate series");
  return {a.partial(1) * a.invert_unit(), 1};
}

DiffForm wedge_dlog(const IterSeries& a, const IterSeries& b) {
  if (a.n() != 2 || b.n() != 2) throw DomainError("wedge_dlog expects bivariate series");
  const IterSeries ia = a.invert_unit();
  const IterSeries ib = b.invert_unit();
  const IterSeries a1 = a.partial(0) * ia, a2 = a.partial(1) * ia;
  const IterSeries b1 = b.partial(0) * ib, b2 = b.partial(1) * ib;
  return {a1 * b2 - a2 * b1, 1};
}

Coords residue(const DiffForm& w) {
  const Exponent e = w.body.n() == 1 ? Exponent{0, -1} : Exponent{-1, -1};
  const Coords c = w.body.coeff(e);
  return w.orientation > 0 ? c : w.body.ring()->neg(c);
}

IterSeries MixedInverse::expanded(int rows) const {
  if (terms.empty()) throw DomainError("empty inverse");
  const WittRingPtr& R = terms.front().series.ring();
  int lo = terms.front().series.origin()[1];
  for (const auto& t : terms) lo = std::min(lo, t.series.origin()[1]);
  IterSeries out = IterSeries::zero(R, 1, Exponent{0, lo}, rows);
  for (const auto& t : terms) {
    const Coords pk = R->from_int(static_cast<std::int64_t>(modarith::ipow(R->p(), t.k)));
    t.series.for_each([&](Exponent e, const Coords& c) {
      if (out.in_window(e)) out.add_to(e, R->mul(pk, c));
    });
  }
  return out.with_prec(prec);
}

Coords MixedInverse::residue_against(const DiffForm& w) const {
  const IterSeries& body = w.body;
  const WittRingPtr& R = body.ring();
  const bool bi = body.n() == 2;
  const int top_needed = -1 - body.origin()[1];
  Coords total{};
  for (const auto& t : terms) {
    if (t.series.origin()[1] + t.series.rows() <= top_needed)
      throw WindowError("inverse of s is not known far enough for this residue");
    Coords part{};
    t.series.for_each([&](Exponent e, const Coords& c) {
      const Exponent need = bi ? Exponent{-1, -1 - e[1]} : Exponent{0, -1 - e[1]};
      const Coords g = body.coeff(need);
      if (!R->is_zero(g)) part = R->add(part, R->mul(g, c));
    });
    const Coords pk = R->from_int(static_cast<std::int64_t>(modarith::ipow(R->p(), t.k)));
    total = R->add(total, R->mul(pk, part));
  }
  total = R->reduce_to(total, prec);
  return w.orientation > 0 ? total : R->neg(total);
}

MixedInverse invert_s(const IterSeries& s, unsigned prec_target) {
  if (s.n() != 1) throw DomainError("invert_s expects a series in the last variable");
  const WittRingPtr& R = s.ring();
  int c = 0;
  bool found = false;
  for (int r = 0; r < s.rows() && !found; ++r)
    if (R->is_unit(s.cell(r, 0))) {
      c = s.origin()[1] + r;
      found = true;
    }
  if (!found) throw DomainError("invert_s: no unit coefficient inside the window");

  const int o = s.origin()[1];
  IterSeries u = IterSeries::zero(R, 1, Exponent{0, 0}, s.rows() - (c - o));
  u = u.with_prec(s.prec());
  for (int e = c; e < o + s.rows(); ++e) u.set(Exponent{0, e - c}, s.coeff(e));
  const IterSeries v = u.invert_unit();

  MixedInverse inv;
  inv.prec = std::min(prec_target, s.prec());
  inv.k_max = inv.prec;
  const IterSeries base = v.shifted(Exponent{0, -c});
  inv.terms.push_back({0, base});
  if (c == o) return inv;

  // y = -(s_lo / (p X^c)) * v, a Laurent series with negative exponents
  IterSeries lo = IterSeries::zero(R, 1, Exponent{0, o - c}, (c - o) + v.rows());
  for (int e = o; e < c; ++e) {
    const Coords x = s.coeff(e);
    if (!R->residue_is_zero(x)) throw DomainError("invert_s: low coefficients must be divisible by p");
    lo.set(Exponent{0, e - c}, R->neg(R->exact_div_p(x, 1)));
  }
  lo = lo.with_prec(s.prec() - 1);
  const IterSeries y = lo * v;
  IterSeries term = base;
  for (unsigned k = 1; k < inv.k_max; ++k) {
    term = term * y;
    inv.terms.push_back({k, term.with_prec(inv.prec - k)});
  }
  return inv;
}

}  // namespace vostokov
