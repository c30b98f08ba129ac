#include "vostokov/field.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <random>
#include <sstream>

#include "vostokov/error.hpp"

namespace vostokov {

namespace {

// Exact integer polynomial division for the Eisenstein polynomial.
std::vector<__int128> cyclotomic_minpoly(unsigned p, unsigned m) {
  auto shifted_power = [](std::uint64_t n) {
    // (1 + X)^n - 1
    std::vector<__int128> c(n + 1);
    c[0] = 1;
    for (std::uint64_t k = 1; k <= n; ++k) c[k] = c[k - 1] * (n - k + 1) / k;
    c[0] -= 1;
    return c;
  };
  const std::uint64_t pm = modarith::ipow(p, m);
  const std::uint64_t pm1 = pm / p;
  std::vector<__int128> num = shifted_power(pm);
  const std::vector<__int128> den = shifted_power(pm1);
  std::vector<__int128> quo(num.size() - den.size() + 1, 0);
  for (std::size_t i = quo.size(); i-- > 0;) {
    const __int128 c = num[i + den.size() - 1] / den.back();
    quo[i] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  for (auto v : num)
    if (v != 0) throw Error("cyclotomic division left a remainder");
  return quo;
}

Coords coords_of(const WittRing& R, __int128 v) {
  const __int128 m = R.modulus();
  __int128 r = v % m;
  if (r < 0) r += m;
  Coords c{};
  c[0] = static_cast<std::uint64_t>(r);
  return c;
}

}  // namespace

FieldSpecPtr FieldSpec::cyclotomic(unsigned p, unsigned m, unsigned n, unsigned f,
                                   unsigned precision) {
  if (m < 1) throw DomainError("m must be at least 1");
  if (n != 1 && n != 2) throw DomainError("dimension n must be 1 or 2");
  if (precision == 0) precision = 6 * m + 8;
  auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
  spec->ring_ = WittRing::make(p, f, precision);
  spec->p_ = p;
  spec->m_ = m;
  spec->n_ = n;
  spec->pm_ = modarith::ipow(p, m);
  spec->e_ = static_cast<unsigned>(spec->pm_ / p * (p - 1));
  const WittRing& R = *spec->ring_;

  const auto mp = cyclotomic_minpoly(p, m);
  if (mp.size() != spec->e_ + 1) throw Error("unexpected minimal polynomial degree");
  for (auto v : mp) spec->minpoly_.push_back(coords_of(R, v));

  // p / pi^e = -(sum_{i<e} (a_i/p) pi^i)^{-1}
  std::vector<Coords> s(spec->e_);
  for (unsigned i = 0; i < spec->e_; ++i) {
    if (mp[i] % p != 0) throw Error("minimal polynomial is not Eisenstein");
    s[i] = coords_of(R, mp[i] / p);
  }
  std::vector<Coords> inv = spec->poly_inverse(s);
  for (auto& x : inv) x = R.neg(x);
  spec->p_unit_ = inv;
  spec->p_over_pi_ = inv;
  for (unsigned i = 0; i + 1 < spec->e_; ++i) spec->p_over_pi_ = spec->poly_mul_pi(spec->p_over_pi_);

  std::vector<std::vector<Coords>> powers(2 * spec->e_);
  powers[0] = spec->poly_from(R.one());
  for (unsigned k = 1; k < powers.size(); ++k) powers[k] = spec->poly_mul_pi(powers[k - 1]);
  spec->basis_traces_.assign(spec->e_, 0);
  for (unsigned i = 0; i < spec->e_; ++i) {
    std::uint64_t t = 0;
    for (unsigned j = 0; j < spec->e_; ++j)
      t = modarith::add(t, spec->poly_mul(powers[i], powers[j])[j][0], R.modulus());
    spec->basis_traces_[i] = t;
  }
  return spec;
}

std::string FieldSpec::kind() const {
  std::ostringstream os;
  os << "Q_" << p_ << "(zeta_" << pm_ << ")";
  if (f() > 1) os << " * W(F_" << ring_->residue_size() << ")";
  if (n_ == 2) os << "{{t1}}";
  return os.str();
}

std::vector<unsigned> FieldSpec::e_vec() const {
  if (n_ == 1) return {e_};
  return {0, e_};
}

std::vector<Coords> FieldSpec::poly_from(const Coords& c) const {
  std::vector<Coords> v(e_);
  v[0] = c;
  return v;
}

std::vector<Coords> FieldSpec::poly_mul(const std::vector<Coords>& a,
                                        const std::vector<Coords>& b) const {
  const WittRing& R = *ring_;
  std::vector<Coords> t(2 * e_ - 1);
  for (unsigned i = 0; i < e_; ++i) {
    if (R.is_zero(a[i])) continue;
    for (unsigned j = 0; j < e_; ++j) t[i + j] = R.add(t[i + j], R.mul(a[i], b[j]));
  }
  for (unsigned d = 2 * e_ - 2; d >= e_; --d) {
    const Coords c = t[d];
    if (R.is_zero(c)) continue;
    for (unsigned j = 0; j < e_; ++j) t[d - e_ + j] = R.sub(t[d - e_ + j], R.mul(c, minpoly_[j]));
  }
  t.resize(e_);
  return t;
}

std::vector<Coords> FieldSpec::poly_mul_pi(const std::vector<Coords>& a) const {
  const WittRing& R = *ring_;
  std::vector<Coords> t(e_);
  const Coords top = a[e_ - 1];
  for (unsigned i = e_ - 1; i > 0; --i) t[i] = a[i - 1];
  t[0] = Coords{};
  if (!R.is_zero(top))
    for (unsigned j = 0; j < e_; ++j) t[j] = R.sub(t[j], R.mul(top, minpoly_[j]));
  return t;
}

std::vector<Coords> FieldSpec::poly_div_pi(const std::vector<Coords>& a) const {
  const WittRing& R = *ring_;
  if (!R.residue_is_zero(a[0])) throw PrecisionError("element is not divisible by pi");
  // a / pi = (a - a0)/pi + (a0/p) * (p/pi), with p/pi = pi^(e-1) * (p/pi^e)
  std::vector<Coords> rest(e_);
  for (unsigned i = 1; i < e_; ++i) rest[i - 1] = a[i];
  const Coords a0p = R.exact_div_p(a[0], 1);
  if (!R.is_zero(a0p))
    for (unsigned i = 0; i < e_; ++i) rest[i] = R.add(rest[i], R.mul(a0p, p_over_pi_[i]));
  return rest;
}

std::vector<Coords> FieldSpec::poly_inverse(const std::vector<Coords>& a) const {
  const WittRing& R = *ring_;
  if (!R.is_unit(a[0])) throw DomainError("element is not a unit of O_K");
  std::vector<Coords> x = poly_from(R.inverse(a[0]));
  std::vector<Coords> two = poly_from(R.from_int(2));
  for (int iter = 0; iter < 64; ++iter) {
    std::vector<Coords> ax = poly_mul(a, x);
    for (unsigned i = 0; i < e_; ++i) ax[i] = R.sub(two[i], ax[i]);
    std::vector<Coords> next = poly_mul(x, ax);
    if (next == x) return x;
    x = std::move(next);
  }
  throw PrecisionError("unit inversion did not converge");
}

// ---------------------------------------------------------------------------

FieldElement::Component FieldElement::normalize(const FieldSpec& spec, Component c, bool& zero) {
  const WittRing& R = *spec.ring();
  const int cap = static_cast<int>(spec.e() * spec.precision());
  c.relprec = std::min(c.relprec, cap);
  zero = false;
  if (std::all_of(c.unit.begin(), c.unit.end(), [&](const Coords& x) { return R.is_zero(x); })) {
    zero = true;
    return c;
  }
  for (;;) {
    if (c.relprec <= 0) {
      zero = true;
      return c;
    }
    if (!R.residue_is_zero(c.unit[0])) return c;
    c.unit = spec.poly_div_pi(c.unit);
    ++c.shift;
    --c.relprec;
  }
}

FieldElement::Component FieldElement::comp_add(const FieldSpec& spec, const Component& a0,
                                               const Component& b0, bool& zero) {
  const WittRing& R = *spec.ring();
  const Component& a = a0.shift <= b0.shift ? a0 : b0;
  const Component& b = a0.shift <= b0.shift ? b0 : a0;
  const int d = b.shift - a.shift;
  if (d >= a.relprec) {
    zero = false;
    return a;
  }
  std::vector<Coords> bb = b.unit;
  for (int i = 0; i < d; ++i) bb = spec.poly_mul_pi(bb);
  Component out;
  out.shift = a.shift;
  out.relprec = std::min(a.relprec, b.relprec + d);
  out.unit.resize(spec.e());
  for (unsigned i = 0; i < spec.e(); ++i) out.unit[i] = R.add(a.unit[i], bb[i]);
  return normalize(spec, out, zero);
}

void FieldElement::add_component(int j, Component c) {
  auto it = comps_.find(j);
  if (it == comps_.end()) {
    comps_.emplace(j, std::move(c));
    return;
  }
  bool zero = false;
  Component sum = comp_add(*spec_, it->second, c, zero);
  if (zero)
    comps_.erase(it);
  else
    it->second = std::move(sum);
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!spec_ || !o.spec_) throw DomainError("uninitialized field element");
  if (spec_ != o.spec_) {
    const FieldSpec& a = *spec_;
    const FieldSpec& b = *o.spec_;
    if (a.p() != b.p() || a.m() != b.m() || a.n() != b.n() || a.f() != b.f() ||
        a.precision() != b.precision())
      throw DomainError("elements of different fields");
  }
}

FieldElement FieldElement::from_pi_poly(FieldSpecPtr spec, const std::vector<Coords>& coeffs,
                                        int shift, int relprec) {
  FieldElement x(spec);
  if (relprec < 0) relprec = static_cast<int>(spec->e() * spec->precision());
  std::vector<Coords> acc(spec->e());
  const WittRing& R = *spec->ring();
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = spec->poly_mul_pi(acc);
    acc[0] = R.add(acc[0], R.reduce_to(coeffs[i], R.precision()));
  }
  bool zero = false;
  Component c = normalize(*spec, Component{shift, acc, relprec}, zero);
  if (!zero) x.comps_.emplace(0, std::move(c));
  return x;
}

FieldElement FieldElement::from_int(FieldSpecPtr spec, std::int64_t v) {
  FieldElement x(spec);
  if (v == 0) return x;
  const WittRing& R = *spec->ring();
  int k = 0;
  while (v % static_cast<std::int64_t>(spec->p()) == 0) {
    v /= static_cast<std::int64_t>(spec->p());
    ++k;
  }
  std::vector<Coords> unit = spec->poly_from(R.from_int(v));
  for (int i = 0; i < k; ++i) unit = spec->poly_mul(unit, spec->p_unit());
  x.comps_.emplace(0, Component{static_cast<int>(spec->e()) * k, unit,
                                static_cast<int>(spec->e() * spec->precision())});
  return x;
}

FieldElement FieldElement::from_coords(FieldSpecPtr spec, const Coords& c) {
  return from_pi_poly(spec, {c});
}

FieldElement FieldElement::teichmuller(FieldSpecPtr spec, const Coords& residue) {
  const Coords t = spec->ring()->teichmuller(residue);
  return from_pi_poly(spec, {t});
}

FieldElement FieldElement::pi(FieldSpecPtr spec) {
  return from_pi_poly(spec, {spec->ring()->one()}, 1);
}

FieldElement FieldElement::zeta(FieldSpecPtr spec) {
  const Coords one = spec->ring()->one();
  return from_pi_poly(spec, {one, one});
}

FieldElement FieldElement::t1(FieldSpecPtr spec) {
  if (spec->n() == 1) return pi(spec);
  FieldElement x = from_int(spec, 1);
  FieldElement out(spec);
  out.comps_.emplace(1, x.comps_.at(0));
  return out;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  FieldElement out = *this;
  for (const auto& [j, c] : o.comps_) out.add_component(j, c);
  return out;
}

FieldElement FieldElement::operator-() const {
  FieldElement out = *this;
  const WittRing& R = *spec_->ring();
  for (auto& [j, c] : out.comps_)
    for (auto& x : c.unit) x = R.neg(x);
  return out;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  FieldElement out(spec_);
  for (const auto& [ja, ca] : comps_)
    for (const auto& [jb, cb] : o.comps_) {
      Component prod{ca.shift + cb.shift, spec_->poly_mul(ca.unit, cb.unit),
                     std::min(ca.relprec, cb.relprec)};
      out.add_component(ja + jb, std::move(prod));
    }
  return out;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DomainError("zero is not invertible");
  if (comps_.size() != 1)
    throw DomainError("only monomials in t1 are invertible in the two-dimensional model");
  const auto& [j, c] = *comps_.begin();
  FieldElement out(spec_);
  out.comps_.emplace(-j, Component{-c.shift, spec_->poly_inverse(c.unit), c.relprec});
  return out;
}

FieldElement FieldElement::pow(std::int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  FieldElement result = from_int(spec_, 1);
  FieldElement base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

FieldElement FieldElement::mul_pi_power(int k) const {
  FieldElement out = *this;
  for (auto& [j, c] : out.comps_) c.shift += k;
  return out;
}

Exponent FieldElement::valuation() const {
  if (is_zero()) throw DomainError("zero has no valuation");
  std::optional<Exponent> best;
  for (const auto& [j, c] : comps_) {
    const Exponent v{spec_->n() == 1 ? 0 : j, c.shift};
    if (!best || tuple_less(v, *best)) best = v;
  }
  return *best;
}

Coords FieldElement::leading_residue() const {
  const Exponent v = valuation();
  const Component& c = comps_.at(spec_->n() == 1 ? 0 : v[0]);
  return spec_->ring()->residue(c.unit[0]);
}

int FieldElement::absolute_precision() const {
  int best = static_cast<int>(spec_->e() * spec_->precision());
  for (const auto& [j, c] : comps_) best = std::min(best, c.shift + c.relprec);
  return best;
}

bool FieldElement::is_principal_unit() const {
  if (is_zero() || spec_->n() != 1) return false;
  const Exponent v = valuation();
  const WittRing& R = *spec_->ring();
  return v[1] == 0 && leading_residue() == R.residue(R.one());
}

std::string FieldElement::to_string() const {
  if (is_zero()) return "0";
  const WittRing& R = *spec_->ring();
  std::ostringstream os;
  bool first = true;
  for (const auto& [j, c] : comps_) {
    if (!first) os << " + ";
    first = false;
    if (spec_->n() == 2 && j != 0) os << "t1^" << j << "*";
    if (c.shift != 0) os << "pi^" << c.shift << "*";
    os << "(";
    for (unsigned i = 0; i < c.unit.size(); ++i) {
      if (i) os << ", ";
      os << WittElement(spec_->ring(), c.unit[i]).to_string();
    }
    os << ")";
  }
  (void)R;
  return os.str();
}

bool agree(const FieldElement& a, const FieldElement& b) { return (a - b).is_zero(); }

// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view text, const FieldSpecPtr& spec) : s_(text), spec_(spec) {}

  FieldElement parse() {
    FieldElement v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("syntax error at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::int64_t integer() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected an integer");
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (INT64_MAX - 9) / 10) fail("integer literal too large");
      v = v * 10 + (s_[pos_++] - '0');
    }
    return neg ? -v : v;
  }
  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  FieldElement expr() {
    FieldElement v = term();
    for (;;) {
      if (accept('+'))
        v = v + term();
      else if (accept('-'))
        v = v - term();
      else
        return v;
    }
  }
  FieldElement term() {
    FieldElement v = unary();
    while (accept('*')) v = v * unary();
    return v;
  }
  FieldElement unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  FieldElement power() {
    FieldElement base = atom();
    if (accept('^')) {
      const std::int64_t k = integer();
      if (k < 0 && base.is_zero()) fail("negative power of zero");
      return base.pow(k);
    }
    return base;
  }
  FieldElement atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElement v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return FieldElement::from_int(spec_, integer());
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected character '") + c + "'");
    const std::string id = identifier();
    if (id == "p") return FieldElement::from_int(spec_, spec_->p());
    if (id == "z") return FieldElement::zeta(spec_);
    if (id == "pi") return FieldElement::pi(spec_);
    if (id == "t1") return FieldElement::t1(spec_);
    if (id == "t2") {
      if (spec_->n() != 2) fail("t2 is only defined for two-dimensional fields");
      return FieldElement::pi(spec_);
    }
    if (id == "T") {
      expect('(');
      const std::int64_t idx = integer();
      expect(')');
      const WittRing& R = *spec_->ring();
      const auto q = static_cast<std::int64_t>(R.residue_size());
      const auto index = static_cast<std::uint64_t>(((idx % q) + q) % q);
      return FieldElement::teichmuller(spec_, R.residue_from_index(index));
    }
    fail("unknown identifier '" + id + "'");
  }

  std::string_view s_;
  FieldSpecPtr spec_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElement parse_element(std::string_view text, const FieldSpecPtr& spec) {
  return Parser(text, spec).parse();
}

// ---------------------------------------------------------------------------

SparseLift lift_sparse(const FieldElement& x, int digits) {
  if (x.is_zero()) throw DomainError("cannot lift zero");
  const FieldSpec& spec = *x.spec();
  const WittRing& R = *spec.ring();
  SparseLift out;
  out.n = static_cast<int>(spec.n());
  for (const auto& [j, c] : x.components()) {
    std::vector<Coords> u = c.unit;
    const int count = std::min(digits, c.relprec);
    for (int t = 0; t < count; ++t) {
      const Coords res = R.residue(u[0]);
      if (!R.residue_is_zero(res)) {
        const Coords th = R.teichmuller(res);
        out.terms.push_back({Exponent{out.n == 1 ? 0 : j, c.shift + t}, th});
        u[0] = R.sub(u[0], th);
      }
      if (t + 1 < count) u = spec.poly_div_pi(u);
    }
  }
  if (out.terms.empty()) throw PrecisionError("no digits available for the lift");
  auto lead = std::min_element(out.terms.begin(), out.terms.end(), [](const auto& a, const auto& b) {
    return tuple_less(a.first, b.first);
  });
  out.lead = lead->first;
  out.theta = lead->second;
  return out;
}

int lift_slope(const SparseLift& l) {
  int slope = 0;
  if (l.n == 1) return 0;
  for (const auto& [e, c] : l.terms) {
    const int d1 = e[0] - l.lead[0], d2 = e[1] - l.lead[1];
    if (d2 > 0 && d1 < 0) slope = std::max(slope, (-d1 + d2 - 1) / d2);
  }
  return slope;
}

IterSeries materialize(const SparseLift& l, const WittRingPtr& ring, int slope, int rows,
                       int cols) {
  IterSeries s = IterSeries::zero(ring, l.n, l.lead, rows, cols, slope);
  for (const auto& [e, c] : l.terms) {
    auto [r, k] = s.cell_of(e);
    if (r < 0 || k < 0) throw DomainError("lift term lies outside the cone of its leading term");
    if (r < rows && k < cols) s.add_to(e, ring->reduce_to(c, ring->precision()));
  }
  return s;
}

IterSeries lift_element(const FieldElement& x) {
  if (x.is_zero()) throw DomainError("cannot lift zero");
  const FieldSpec& spec = *x.spec();
  int digits = static_cast<int>(spec.e() * spec.precision());
  for (const auto& [j, c] : x.components()) digits = std::min(digits, c.relprec);
  const SparseLift l = lift_sparse(x, digits);
  if (l.n == 1) return materialize(l, spec.ring(), 0, digits, 1);
  const int slope = lift_slope(l);
  int cols = slope * (digits - 1) + 1;
  for (const auto& [e, c] : l.terms)
    cols = std::max(cols, e[0] - l.lead[0] + slope * (e[1] - l.lead[1]) + 1);
  return materialize(l, spec.ring(), slope, digits, cols);
}

SparseLift relift_random_sparse(const FieldElement& x, std::uint64_t seed, int digits) {
  const FieldSpec& spec = *x.spec();
  if (spec.n() != 1) throw DomainError("random relifts are defined for n = 1");
  SparseLift l = lift_sparse(x, digits);
  const WittRing& R = *spec.ring();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> coord(0, R.modulus() - 1);
  const int v = l.lead[1];
  std::map<int, Coords> extra;
  for (int i = 0; i < 4; ++i) {
    Coords r{};
    for (unsigned t = 0; t < R.f(); ++t) r[t] = coord(rng);
    for (unsigned j = 0; j <= spec.e(); ++j) {
      Coords& dst = extra[v + 1 + i + static_cast<int>(j)];
      dst = R.add(dst, R.mul(r, spec.minpoly()[j]));
    }
  }
  for (auto& [e, c] : l.terms) {
    auto it = extra.find(e[1]);
    if (it != extra.end()) {
      c = R.add(c, it->second);
      extra.erase(it);
    }
  }
  for (const auto& [deg, c] : extra)
    if (!R.is_zero(c)) l.terms.push_back({Exponent{0, deg}, c});
  return l;
}

IterSeries relift_random(const FieldElement& x, std::uint64_t seed) {
  const FieldSpec& spec = *x.spec();
  int digits = static_cast<int>(spec.e() * spec.precision());
  for (const auto& [j, c] : x.components()) digits = std::min(digits, c.relprec);
  return materialize(relift_random_sparse(x, seed, digits), spec.ring(), 0, digits, 1);
}

FieldElement evaluate(const IterSeries& s, const FieldSpecPtr& spec) {
  if (static_cast<unsigned>(s.n()) != spec->n() && !(s.n() == 1 && spec->n() == 2))
    throw DomainError("series arity does not match the field");
  const WittRing& R = *spec->ring();
  const int cap = static_cast<int>(spec->e() * std::min(spec->precision(), s.prec()));
  // group by X1 exponent
  std::map<int, std::map<int, Coords>> rows_by_e1;
  s.for_each([&](Exponent e, const Coords& c) { rows_by_e1[e[0]][e[1]] = c; });
  FieldElement out(spec);
  const Exponent o = s.origin();
  for (const auto& [e1, row] : rows_by_e1) {
    int rmax = s.rows();
    if (s.n() == 2 && s.slope() > 0) {
      const int k0 = e1 - o[0];  // k at r = 0
      rmax = std::min(rmax, (s.cols() - k0 + s.slope() - 1) / s.slope());
    }
    const int low = o[1];
    std::vector<Coords> coeffs(static_cast<std::size_t>(std::max(0, o[1] + rmax - low)));
    for (const auto& [e2, c] : row)
      if (e2 - low >= 0 && e2 - low < static_cast<int>(coeffs.size()))
        coeffs[e2 - low] = R.reduce_to(c, R.precision());
    FieldElement part = FieldElement::from_pi_poly(spec, coeffs, low,
                                                   std::min(cap, o[1] + rmax - low));
    if (spec->n() == 2 && e1 != 0) part = part * FieldElement::t1(spec).pow(e1);
    out = out + part;
  }
  return out;
}

IterSeries s_series(const FieldSpec& spec, int rows, WittRingPtr ring) {
  const std::uint64_t pm = spec.pm();
  const WittRingPtr R = ring ? ring : spec.ring();
  const std::uint64_t M = R->modulus();
  // binomial row of p^m mod p^N by Pascal's rule
  std::vector<std::uint64_t> row(pm + 1, 0);
  row[0] = 1;
  for (std::uint64_t i = 1; i <= pm; ++i)
    for (std::uint64_t k = i; k >= 1; --k) row[k] = modarith::add(row[k], row[k - 1], M);
  IterSeries s = IterSeries::zero(R, 1, Exponent{0, 0}, rows);
  for (std::uint64_t k = 1; k <= pm && static_cast<int>(k) < rows; ++k) {
    Coords c{};
    c[0] = row[k];
    s.set(Exponent{0, static_cast<int>(k)}, c);
  }
  return s;
}

ScaledTrace field_trace_scaled(const FieldElement& x) {
  const FieldSpec& spec = *x.spec();
  if (spec.n() != 1) throw DomainError("field trace is defined for n = 1");
  const WittRing& R = *spec.ring();
  const unsigned N = spec.precision();
  if (x.is_zero()) return {0, 0, N};
  const FieldElement::Component& c = x.components().at(0);
  const int e = static_cast<int>(spec.e());
  unsigned D = 0;
  if (c.shift < 0) D = static_cast<unsigned>((-c.shift + e - 1) / e);
  std::vector<Coords> y = c.unit;
  for (unsigned i = 0; i < D; ++i) y = spec.poly_mul(y, spec.p_unit());
  const int raise = c.shift + e * static_cast<int>(D);
  for (int i = 0; i < raise && i < e * static_cast<int>(N); ++i) y = spec.poly_mul_pi(y);
  std::uint64_t t = 0;
  for (unsigned i = 0; i < spec.e(); ++i)
    t = modarith::add(t, modarith::mul(spec.basis_traces()[i], R.trace(y[i]), R.modulus()),
                      R.modulus());
  const int known = (raise + c.relprec) / e;
  return {t, D, static_cast<unsigned>(std::clamp(known, 0, static_cast<int>(N)))};
}

std::uint64_t field_trace(const FieldElement& x) {
  const ScaledTrace t = field_trace_scaled(x);
  if (t.den_exp == 0) return t.value;
  const std::uint64_t d = modarith::ipow(x.spec()->p(), t.den_exp);
  if (t.prec < t.den_exp || t.value % d != 0)
    throw PrecisionError("trace is not integral at the available precision");
  return t.value / d;
}

FieldElement field_log(const FieldElement& u) {
  if (!u.is_principal_unit()) throw DomainError("logarithm requires a principal unit");
  const FieldSpecPtr& spec = u.spec();
  const FieldElement y = u - FieldElement::from_int(spec, 1);
  if (y.is_zero()) return y;
  const unsigned p = spec->p();
  const int e = static_cast<int>(spec->e());
  const int vy = y.valuation()[1];
  const int target = std::min(static_cast<int>(e * spec->precision()), u.absolute_precision());
  auto ilog = [&](int k) {
    int l = 0;
    for (int t = k; t >= static_cast<int>(p); t /= static_cast<int>(p)) ++l;
    return l;
  };
  // terms with k*v(y) - e*v_p(k) < target; beyond the scan bound
  // k - e*log_p(k) already exceeds the target
  int K = 1;
  const int bound = target + e * (ilog(target + 1) + 2) + 2;
  for (int k = 1; k <= bound; ++k)
    if (k * vy - e * static_cast<int>(modarith::valuation(k, p, 64)) < target) K = k;
  unsigned D = 0;
  for (int k = 1; k <= K; ++k) D = std::max(D, modarith::valuation(k, p, 64));
  const std::uint64_t mod = spec->ring()->modulus();
  FieldElement sum(spec);
  FieldElement yk = y;
  for (int k = 1; k <= K; ++k) {
    const unsigned v = modarith::valuation(k, p, 64);
    const std::uint64_t kk = static_cast<std::uint64_t>(k) / modarith::ipow(p, v);
    std::uint64_t scale = modarith::mul(modarith::ipow(p, D - v) % mod, modarith::inverse(kk % mod, mod), mod);
    if (k % 2 == 0) scale = (mod - scale) % mod;
    if (scale != 0) sum = sum + yk * FieldElement::from_int(spec, static_cast<std::int64_t>(scale));
    if (k < K) yk = yk * y;
  }
  if (D == 0) return sum;
  return sum * FieldElement::from_int(spec, static_cast<std::int64_t>(p)).pow(-static_cast<std::int64_t>(D));
}

}  // namespace vostokov
