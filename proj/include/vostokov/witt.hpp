#pragma once

// Truncated unramified coefficient ring W(F_q) / p^N with Frobenius,
// Teichmuller representatives and the trace down to Z_p.
//
// Elements are stored in the power basis 1, y, ..., y^{f-1} where y is a
// root of a fixed monic lift of an irreducible polynomial over F_p.  Every
// coordinate is kept in the canonical range [0, p^N).

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace vostokov {

inline constexpr unsigned kMaxResidueDegree = 4;

using Coords = std::array<std::uint64_t, kMaxResidueDegree>;

namespace modarith {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t m);
// Inverse of a unit modulo m (m a prime power p^N, a coprime to p).
std::uint64_t inverse(std::uint64_t a, std::uint64_t m);
std::uint64_t reduce(std::int64_t a, std::uint64_t m);
// Largest v with p^v | a (returns cap when a == 0).
unsigned valuation(std::uint64_t a, unsigned p, unsigned cap);
bool is_prime(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned e);

}  // namespace modarith

class WittRing : public std::enable_shared_from_this<WittRing> {
 public:
  // Builds W(F_{p^f}) / p^N.  The defining polynomial is the lexicographically
  // smallest monic irreducible over F_p (coefficient of y^{f-1} most
  // significant), lifted with coefficients in [0, p).
  static std::shared_ptr<const WittRing> make(unsigned p, unsigned f, unsigned N);

  unsigned p() const { return p_; }
  unsigned f() const { return f_; }
  unsigned precision() const { return N_; }
  std::uint64_t modulus() const { return mod_; }
  std::uint64_t residue_size() const { return q_; }
  // Monic, f+1 coefficients, constant term first.  Empty when f == 1.
  std::span<const std::uint64_t> defining_polynomial() const { return poly_; }
  std::string describe_modulus() const;

  std::shared_ptr<const WittRing> at_precision(unsigned N) const;
  bool same_field(const WittRing& other) const {
    return p_ == other.p_ && f_ == other.f_;
  }

  Coords zero() const { return Coords{}; }
  Coords one() const;
  Coords from_int(std::int64_t v) const;
  Coords generator() const;  // y (or 0 when f == 1)

  Coords add(const Coords& a, const Coords& b) const;
  Coords sub(const Coords& a, const Coords& b) const;
  Coords neg(const Coords& a) const;
  Coords mul(const Coords& a, const Coords& b) const;
  Coords scale(const Coords& a, std::uint64_t k) const;
  Coords pow(Coords a, std::uint64_t e) const;
  Coords reduce_to(const Coords& a, unsigned prec) const;  // mod p^prec

  bool is_zero(const Coords& a) const;
  bool is_zero_mod(const Coords& a, unsigned prec) const;
  bool equal_mod(const Coords& a, const Coords& b, unsigned prec) const;
  bool is_unit(const Coords& a) const;
  // min over coordinates of v_p; returns precision() for zero.
  unsigned valuation(const Coords& a) const;
  Coords inverse(const Coords& a) const;
  // a / p^k; throws PrecisionError unless every coordinate is divisible.
  Coords exact_div_p(const Coords& a, unsigned k) const;

  Coords frobenius(const Coords& a) const;
  Coords frobenius_power(const Coords& a, unsigned k) const;
  std::uint64_t trace(const Coords& a) const;

  // Residue field F_q: coordinates reduced mod p.
  Coords residue(const Coords& a) const;
  Coords residue_mul(const Coords& a, const Coords& b) const;
  Coords residue_pow(Coords a, std::uint64_t e) const;
  Coords residue_inverse(const Coords& a) const;
  bool residue_is_zero(const Coords& a) const;
  // Enumerates F_q by index in [0, q): digits base p are the coordinates.
  Coords residue_from_index(std::uint64_t index) const;
  std::uint64_t residue_index(const Coords& a) const;

  // Teichmuller lift of a residue-field element: w^q = w, w = c mod p.
  Coords teichmuller(const Coords& residue) const;
  bool is_teichmuller(const Coords& a) const;

 private:
  WittRing(unsigned p, unsigned f, unsigned N, std::vector<std::uint64_t> poly);
  void init_tables();

  unsigned p_;
  unsigned f_;
  unsigned N_;
  std::uint64_t mod_;
  std::uint64_t q_;
  std::vector<std::uint64_t> poly_;
  std::vector<Coords> frob_images_;  // frob(y^i), i < f
  std::vector<std::uint64_t> basis_traces_;  // Tr(y^i), i < f
};

using WittRingPtr = std::shared_ptr<const WittRing>;

// Value-semantic element of a WittRing.
class WittElement {
 public:
  WittElement() = default;
  WittElement(WittRingPtr ring, Coords c) : ring_(std::move(ring)), c_(c) {}
  static WittElement from_int(WittRingPtr ring, std::int64_t v);

  const WittRingPtr& ring() const { return ring_; }
  const Coords& coords() const { return c_; }

  WittElement operator+(const WittElement& o) const;
  WittElement operator-(const WittElement& o) const;
  WittElement operator*(const WittElement& o) const;
  WittElement operator-() const;
  bool operator==(const WittElement& o) const;

  bool is_zero() const { return ring_->is_zero(c_); }
  bool is_unit() const { return ring_->is_unit(c_); }
  WittElement inverse() const { return {ring_, ring_->inverse(c_)}; }
  WittElement pow(std::uint64_t e) const { return {ring_, ring_->pow(c_, e)}; }
  std::string to_string() const;

 private:
  void check_same(const WittElement& o) const;
  WittRingPtr ring_;
  Coords c_{};
};

// Free-function forms of the ring operations.
WittRingPtr make_ring(unsigned p, unsigned f, unsigned N);
WittElement frobenius(const WittElement& x);
WittElement teichmuller(const WittRingPtr& ring, const Coords& residue);
std::uint64_t trace_wzp(const WittElement& x);

}  // namespace vostokov
