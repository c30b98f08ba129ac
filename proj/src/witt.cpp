#include "vostokov/witt.hpp"

#include <sstream>

#include "vostokov/error.hpp"

namespace vostokov {

namespace modarith {

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul(r, a, m);
    a = mul(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t m) {
  // extended Euclid on signed 128-bit to avoid overflow
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw DomainError("element is not invertible modulo p^N");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce(std::int64_t a, std::uint64_t m) {
  __int128 r = static_cast<__int128>(a) % static_cast<__int128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

unsigned valuation(std::uint64_t a, unsigned p, unsigned cap) {
  if (a == 0) return cap;
  unsigned v = 0;
  while (a % p == 0 && v < cap) {
    a /= p;
    ++v;
  }
  return v;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace modarith

namespace {

// Polynomials over F_p, constant term first.
using FpPoly = std::vector<std::uint64_t>;

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a modulo monic b over F_p
FpPoly fp_rem(FpPoly a, const FpPoly& b, unsigned p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    std::uint64_t c = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = (a[shift + i] + p - (c * b[i]) % p) % p;
    trim(a);
  }
  return a;
}

bool fp_irreducible(const FpPoly& poly, unsigned p) {
  const unsigned deg = static_cast<unsigned>(poly.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = modarith::ipow(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      FpPoly g(d + 1);
      std::uint64_t t = idx;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = t % p;
        t /= p;
      }
      g[d] = 1;
      if (fp_rem(poly, g, p).empty()) return false;
    }
  }
  return true;
}

FpPoly smallest_irreducible(unsigned p, unsigned f) {
  const std::uint64_t count = modarith::ipow(p, f);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    FpPoly cand(f + 1);
    // c_{f-1} is the most significant digit of idx
    std::uint64_t t = idx;
    for (unsigned i = 0; i < f; ++i) {
      cand[i] = t % p;
      t /= p;
    }
    cand[f] = 1;
    if (fp_irreducible(cand, p)) return cand;
  }
  throw DomainError("no irreducible polynomial found");
}

}  // namespace

WittRingPtr WittRing::make(unsigned p, unsigned f, unsigned N) {
  if (p == 2) throw DomainError("p = 2 is not supported (odd primes only)");
  if (!modarith::is_prime(p)) throw DomainError("p must be prime");
  if (f < 1 || f > kMaxResidueDegree)
    throw DomainError("residue degree f must be in [1, " +
                      std::to_string(kMaxResidueDegree) + "]");
  if (N < 1) throw DomainError("precision N must be positive");
  // p^N must leave headroom below 2^62
  long double bound = 1;
  for (unsigned i = 0; i < N; ++i) bound *= p;
  if (bound > 4.0e18L) throw DomainError("p^N exceeds the 62-bit kernel range");
  std::vector<std::uint64_t> poly;
  if (f > 1) poly = smallest_irreducible(p, f);
  auto ring = std::shared_ptr<WittRing>(new WittRing(p, f, N, std::move(poly)));
  ring->init_tables();
  return ring;
}

WittRing::WittRing(unsigned p, unsigned f, unsigned N, std::vector<std::uint64_t> poly)
    : p_(p), f_(f), N_(N), mod_(modarith::ipow(p, N)), q_(modarith::ipow(p, f)),
      poly_(std::move(poly)) {}

void WittRing::init_tables() {
  frob_images_.assign(f_, Coords{});
  basis_traces_.assign(f_, 0);
  if (f_ == 1) {
    frob_images_[0] = one();
    basis_traces_[0] = 1;
    return;
  }
  // Hensel-lift the p-power map: Frob(y) is the root of the defining
  // polynomial congruent to y^p.
  auto eval = [&](const Coords& z) {
    Coords acc{};
    for (std::size_t i = poly_.size(); i-- > 0;) {
      acc = mul(acc, z);
      acc[0] = modarith::add(acc[0], poly_[i] % mod_, mod_);
    }
    return acc;
  };
  auto eval_deriv = [&](const Coords& z) {
    Coords acc{};
    for (std::size_t i = poly_.size(); i-- > 1;) {
      acc = mul(acc, z);
      acc[0] = modarith::add(acc[0], modarith::mul(poly_[i], i, mod_), mod_);
    }
    return acc;
  };
  Coords z = pow(generator(), p_);
  for (unsigned iter = 0; iter < 2 * N_ + 4; ++iter) {
    Coords next = sub(z, mul(eval(z), inverse(eval_deriv(z))));
    if (next == z) break;
    z = next;
  }
  if (!is_zero(eval(z))) throw PrecisionError("Frobenius lift did not converge");
  Coords power = one();
  for (unsigned i = 0; i < f_; ++i) {
    frob_images_[i] = power;
    power = mul(power, z);
  }
  for (unsigned i = 0; i < f_; ++i) {
    Coords basis{};
    basis[i] = 1;
    Coords sum{};
    Coords conj = basis;
    for (unsigned k = 0; k < f_; ++k) {
      sum = add(sum, conj);
      conj = frobenius(conj);
    }
    for (unsigned j = 1; j < f_; ++j)
      if (sum[j] != 0) throw PrecisionError("trace is not Frobenius-invariant");
    basis_traces_[i] = sum[0];
  }
}

std::string WittRing::describe_modulus() const {
  if (f_ == 1) return "y";
  std::ostringstream os;
  os << "y^" << f_;
  for (std::size_t i = f_; i-- > 0;) {
    if (poly_[i] == 0) continue;
    os << " + " << poly_[i];
    if (i >= 1) os << "*y";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

WittRingPtr WittRing::at_precision(unsigned N) const {
  if (N == N_) return shared_from_this();
  return make(p_, f_, N);
}

Coords WittRing::one() const {
  Coords c{};
  c[0] = 1 % mod_;
  return c;
}

Coords WittRing::from_int(std::int64_t v) const {
  Coords c{};
  c[0] = modarith::reduce(v, mod_);
  return c;
}

Coords WittRing::generator() const {
  Coords c{};
  if (f_ > 1) c[1] = 1;
  return c;
}

Coords WittRing::add(const Coords& a, const Coords& b) const {
  Coords r{};
  for (unsigned i = 0; i < f_; ++i) r[i] = modarith::add(a[i], b[i], mod_);
  return r;
}

Coords WittRing::sub(const Coords& a, const Coords& b) const {
  Coords r{};
  for (unsigned i = 0; i < f_; ++i) r[i] = modarith::sub(a[i], b[i], mod_);
  return r;
}

Coords WittRing::neg(const Coords& a) const { return sub(Coords{}, a); }

Coords WittRing::mul(const Coords& a, const Coords& b) const {
  if (f_ == 1) {
    Coords r{};
    r[0] = modarith::mul(a[0], b[0], mod_);
    return r;
  }
  std::array<unsigned __int128, 2 * kMaxResidueDegree> acc{};
  for (unsigned i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < f_; ++j)
      acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
  }
  std::array<std::uint64_t, 2 * kMaxResidueDegree> t{};
  for (unsigned i = 0; i + 1 < 2 * f_; ++i) t[i] = static_cast<std::uint64_t>(acc[i] % mod_);
  for (unsigned i = 2 * f_ - 2; i >= f_; --i) {
    const std::uint64_t c = t[i];
    if (c == 0) continue;
    t[i] = 0;
    for (unsigned k = 0; k < f_; ++k) {
      const std::size_t idx = i - f_ + k;
      t[idx] = modarith::sub(t[idx], modarith::mul(c, poly_[k], mod_), mod_);
    }
  }
  Coords r{};
  for (unsigned i = 0; i < f_; ++i) r[i] = t[i];
  return r;
}

Coords WittRing::scale(const Coords& a, std::uint64_t k) const {
  Coords r{};
  k %= mod_;
  for (unsigned i = 0; i < f_; ++i) r[i] = modarith::mul(a[i], k, mod_);
  return r;
}

Coords WittRing::pow(Coords a, std::uint64_t e) const {
  Coords r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Coords WittRing::reduce_to(const Coords& a, unsigned prec) const {
  if (prec >= N_) return a;
  const std::uint64_t m = modarith::ipow(p_, prec);
  Coords r{};
  for (unsigned i = 0; i < f_; ++i) r[i] = a[i] % m;
  return r;
}

bool WittRing::is_zero(const Coords& a) const {
  for (unsigned i = 0; i < f_; ++i)
    if (a[i] != 0) return false;
  return true;
}

bool WittRing::is_zero_mod(const Coords& a, unsigned prec) const {
  return is_zero(reduce_to(a, prec));
}

bool WittRing::equal_mod(const Coords& a, const Coords& b, unsigned prec) const {
  return is_zero_mod(sub(a, b), prec);
}

bool WittRing::is_unit(const Coords& a) const { return !residue_is_zero(residue(a)); }

unsigned WittRing::valuation(const Coords& a) const {
  unsigned v = N_;
  for (unsigned i = 0; i < f_; ++i) v = std::min(v, modarith::valuation(a[i], p_, N_));
  return v;
}

Coords WittRing::inverse(const Coords& a) const {
  if (!is_unit(a)) throw DomainError("Witt element is not a unit");
  if (f_ == 1) {
    Coords r{};
    r[0] = modarith::inverse(a[0], mod_);
    return r;
  }
  // Newton iteration from the residue-field inverse
  Coords x = residue_inverse(residue(a));
  const Coords two = from_int(2);
  for (unsigned prec = 1; prec < N_; prec *= 2) x = mul(x, sub(two, mul(a, x)));
  x = mul(x, sub(two, mul(a, x)));
  return x;
}

Coords WittRing::exact_div_p(const Coords& a, unsigned k) const {
  if (k == 0) return a;
  const std::uint64_t d = modarith::ipow(p_, k);
  Coords r{};
  for (unsigned i = 0; i < f_; ++i) {
    if (a[i] % d != 0) throw PrecisionError("coefficient not divisible by p^k");
    r[i] = a[i] / d;
  }
  return r;
}

Coords WittRing::frobenius(const Coords& a) const {
  if (f_ == 1) return a;
  Coords r{};
  for (unsigned i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    r = add(r, scale(frob_images_[i], a[i]));
  }
  return r;
}

Coords WittRing::frobenius_power(const Coords& a, unsigned k) const {
  Coords r = a;
  for (unsigned i = 0; i < k % f_; ++i) r = frobenius(r);
  return r;
}

std::uint64_t WittRing::trace(const Coords& a) const {
  std::uint64_t t = 0;
  for (unsigned i = 0; i < f_; ++i)
    t = modarith::add(t, modarith::mul(a[i], basis_traces_[i], mod_), mod_);
  return t;
}

Coords WittRing::residue(const Coords& a) const {
  Coords r{};
  for (unsigned i = 0; i < f_; ++i) r[i] = a[i] % p_;
  return r;
}

Coords WittRing::residue_mul(const Coords& a, const Coords& b) const {
  return residue(mul(a, b));
}

Coords WittRing::residue_pow(Coords a, std::uint64_t e) const {
  Coords r = one();
  r = residue(r);
  a = residue(a);
  while (e) {
    if (e & 1) r = residue_mul(r, a);
    a = residue_mul(a, a);
    e >>= 1;
  }
  return r;
}

Coords WittRing::residue_inverse(const Coords& a) const {
  if (residue_is_zero(a)) throw DomainError("zero has no inverse in the residue field");
  return residue_pow(a, q_ - 2);
}

bool WittRing::residue_is_zero(const Coords& a) const {
  for (unsigned i = 0; i < f_; ++i)
    if (a[i] % p_ != 0) return false;
  return true;
}

Coords WittRing::residue_from_index(std::uint64_t index) const {
  Coords r{};
  for (unsigned i = 0; i < f_; ++i) {
    r[i] = index % p_;
    index /= p_;
  }
  return r;
}

std::uint64_t WittRing::residue_index(const Coords& a) const {
  std::uint64_t idx = 0;
  for (unsigned i = f_; i-- > 0;) idx = idx * p_ + a[i] % p_;
  return idx;
}

Coords WittRing::teichmuller(const Coords& residue_elem) const {
  Coords x = residue(residue_elem);
  for (unsigned i = 0; i <= N_ + 1; ++i) {
    Coords next = pow(x, q_);
    if (next == x) return x;
    x = next;
  }
  throw PrecisionError("Teichmuller iteration did not reach a fixed point");
}

bool WittRing::is_teichmuller(const Coords& a) const { return pow(a, q_) == a; }

WittElement WittElement::from_int(WittRingPtr ring, std::int64_t v) {
  Coords c = ring->from_int(v);
  return {std::move(ring), c};
}

void WittElement::check_same(const WittElement& o) const {
  if (!ring_ || !o.ring_ || !ring_->same_field(*o.ring_) ||
      ring_->precision() != o.ring_->precision())
    throw DomainError("arithmetic between elements of different Witt rings");
}

WittElement WittElement::operator+(const WittElement& o) const {
  check_same(o);
  return {ring_, ring_->add(c_, o.c_)};
}
WittElement WittElement::operator-(const WittElement& o) const {
  check_same(o);
  return {ring_, ring_->sub(c_, o.c_)};
}
WittElement WittElement::operator*(const WittElement& o) const {
  check_same(o);
  return {ring_, ring_->mul(c_, o.c_)};
}
WittElement WittElement::operator-() const { return {ring_, ring_->neg(c_)}; }
bool WittElement::operator==(const WittElement& o) const {
  check_same(o);
  return c_ == o.c_;
}

std::string WittElement::to_string() const {
  std::ostringstream os;
  if (ring_->f() == 1) {
    os << c_[0];
    return os.str();
  }
  os << "(";
  for (unsigned i = 0; i < ring_->f(); ++i) os << (i ? "," : "") << c_[i];
  os << ")";
  return os.str();
}

WittRingPtr make_ring(unsigned p, unsigned f, unsigned N) { return WittRing::make(p, f, N); }

WittElement frobenius(const WittElement& x) {
  return {x.ring(), x.ring()->frobenius(x.coords())};
}

WittElement teichmuller(const WittRingPtr& ring, const Coords& residue) {
  return {ring, ring->teichmuller(residue)};
}

std::uint64_t trace_wzp(const WittElement& x) { return x.ring()->trace(x.coords()); }

}  // namespace vostokov
