#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ltwist/common.hpp"

namespace ltwist {

namespace qdetail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("rational arithmetic overflow (add)");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("rational arithmetic overflow (mul)");
  return r;
}

}  // namespace qdetail

/// Reduced fraction num/den with den >= 1; den(0) = 1.
class Rational {
 public:
  Rational() = default;

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    num_ = num / g;
    den_ = den / g;
  }

  static Rational integer(std::int64_t n) { return Rational(n, 1); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ <
           static_cast<__int128>(o.num_) * den_;
  }

  Rational operator-() const { return Rational(-num_, den_); }

  Rational operator+(const Rational& o) const {
    using qdetail::checked_add;
    using qdetail::checked_mul;
    return Rational(checked_add(checked_mul(num_, o.den_),
                                checked_mul(o.num_, den_)),
                    checked_mul(den_, o.den_));
  }
  Rational operator-(const Rational& o) const { return *this + (-o); }

  /// fractional part in [0, 1)
  Rational mod1() const {
    std::int64_t r = num_ % den_;
    if (r < 0) r += den_;
    return Rational(r, den_);
  }

  bool is_integer() const { return den_ == 1; }

  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Continued-fraction expansion record for a rational in (0,1): the partial
/// quotients of the Euclid run, and the alternating signs (-1)^{j-1} the
/// Gauss-map cocycle attaches to the orbit points.
struct CFExpansion {
  std::vector<std::int64_t> partial_quotients;
  std::vector<int> signs;
  /// the orbit T^0 x, T^1 x, ..., T^{r-1} x (the last nonzero iterates)
  std::vector<Rational> orbit;
};

/// Integer 2x2 matrix acting by fractional linear maps.  Determinant is
/// restricted to 1 (group elements) or q > 0 (Fricke-type normalizers);
/// the canonical representative has c >= 0 (and d > 0 when c = 0).
struct GL2Int {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  GL2Int() = default;
  GL2Int(std::int64_t aa, std::int64_t bb, std::int64_t cc, std::int64_t dd)
      : a(aa), b(bb), c(cc), d(dd) {
    std::int64_t det = qdetail::checked_mul(a, d) - qdetail::checked_mul(b, c);
    if (det <= 0) throw ValidationError("GL2Int: determinant must be positive");
    canonicalize();
  }

  static GL2Int identity() { return GL2Int(1, 0, 0, 1); }
  static GL2Int inversion() { return GL2Int(0, -1, 1, 0); }  // z -> -1/z
  static GL2Int translation(std::int64_t n) { return GL2Int(1, n, 0, 1); }
  static GL2Int fricke(std::int64_t q) { return GL2Int(0, -1, q, 0); }

  std::int64_t det() const {
    return qdetail::checked_mul(a, d) - qdetail::checked_mul(b, c);
  }

  bool unimodular() const { return det() == 1; }

  void canonicalize() {
    if (c < 0 || (c == 0 && d < 0)) {
      a = -a;
      b = -b;
      c = -c;
      d = -d;
    }
  }

  GL2Int operator*(const GL2Int& o) const {
    using qdetail::checked_add;
    using qdetail::checked_mul;
    return GL2Int(checked_add(checked_mul(a, o.a), checked_mul(b, o.c)),
                  checked_add(checked_mul(a, o.b), checked_mul(b, o.d)),
                  checked_add(checked_mul(c, o.a), checked_mul(d, o.c)),
                  checked_add(checked_mul(c, o.b), checked_mul(d, o.d)));
  }

  GL2Int inverse_unimodular() const {
    if (det() != 1) throw ValidationError("GL2Int: inverse needs det 1");
    return GL2Int(d, -b, -c, a);
  }
};

/// Result of a Moebius action: a rational or the cusp at infinity.
struct MoebiusResult {
  std::optional<Rational> value;  // nullopt <=> infinity
  bool is_infinity() const { return !value.has_value(); }
};

inline MoebiusResult act_moebius(const GL2Int& g, const Rational& x) {
  using qdetail::checked_add;
  using qdetail::checked_mul;
  std::int64_t nu = checked_add(checked_mul(g.a, x.num()),
                                checked_mul(g.b, x.den()));
  std::int64_t de = checked_add(checked_mul(g.c, x.num()),
                                checked_mul(g.d, x.den()));
  if (de == 0) return MoebiusResult{std::nullopt};
  return MoebiusResult{Rational(nu, de)};
}

/// Image of the cusp at infinity: g(inf) = a/c (or infinity when c = 0).
inline MoebiusResult act_moebius_infinity(const GL2Int& g) {
  if (g.c == 0) return MoebiusResult{std::nullopt};
  return MoebiusResult{Rational(g.a, g.c)};
}

/// Extended-Euclid modular inverse of a modulo m (m >= 1, gcd(a,m) = 1).
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m <= 0) throw DomainError("mod_inverse: modulus must be positive");
  std::int64_t r0 = m, r1 = ((a % m) + m) % m;
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw NotInvertible("mod_inverse: gcd(a, m) != 1");
  return ((s0 % m) + m) % m;
}

/// The functional-equation dual point of x = a/q: the rational -d/q mod 1
/// normalized into (0,1), where a d == 1 (mod q).  Writing x = gamma(inf)
/// for gamma = [[a,b],[q,d']] in SL2(Z), this is gamma^{-1}(inf) mod 1.
inline Rational modular_inverse_bar(const Rational& x) {
  std::int64_t q = x.den();
  if (q < 2) throw DomainError("modular_inverse_bar: denominator must be >= 2");
  std::int64_t d = mod_inverse(x.num(), q);
  std::int64_t r = ((-d) % q + q) % q;
  return Rational(r, q);
}

/// A matrix gamma = [[a, b], [q, d]] in SL2(Z) with gamma(inf) = x = a/q,
/// q > 0.  Exists for every reduced fraction.
inline GL2Int cusp_scaling_matrix(const Rational& x) {
  std::int64_t q = x.den();
  std::int64_t a = x.num();
  if (q == 0) throw DomainError("cusp_scaling_matrix: x must be finite");
  if (q == 1) {
    // x integral: [[a, a*0-1], [1, 0]] has det a*0 - (-1) = 1
    return GL2Int(a, -1, 1, 0);
  }
  std::int64_t ainv = mod_inverse(a, q);
  // a d - b q = 1 with d = ainv mod q
  std::int64_t d = ainv;
  __int128 bb = (static_cast<__int128>(a) * d - 1) / q;
  if (bb > INT64_MAX || bb < INT64_MIN)
    throw OverflowError("cusp_scaling_matrix: entry overflow");
  return GL2Int(a, static_cast<std::int64_t>(bb), q, d);
}

/// Gauss-map orbit of x in (0,1): T x = {1/x}, iterated until 0.
/// Reconstructing from the partial quotients reproduces x exactly.
inline CFExpansion gauss_map_orbit(const Rational& x) {
  if (!(Rational(0, 1) < x) || !(x < Rational(1, 1)))
    throw DomainError("gauss_map_orbit: x must lie in (0,1)");
  CFExpansion cf;
  Rational cur = x;
  int sign = 1;
  while (cur.num() != 0) {
    cf.orbit.push_back(cur);
    cf.signs.push_back(sign);
    // 1/cur = den/num; quotient and remainder
    std::int64_t q = cur.den() / cur.num();
    std::int64_t r = cur.den() % cur.num();
    cf.partial_quotients.push_back(q);
    cur = Rational(r, cur.num());
    sign = -sign;
  }
  return cf;
}

/// Rebuild the rational from its partial quotients (continued fraction
/// [0; a1, a2, ...]).
inline Rational cf_reconstruct(const std::vector<std::int64_t>& quotients) {
  Rational acc(0, 1);
  for (auto it = quotients.rbegin(); it != quotients.rend(); ++it) {
    // acc <- 1/(q + acc)
    Rational q(*it, 1);
    Rational s = q + acc;
    acc = Rational(s.den(), s.num());
  }
  return acc;
}

/// Forward-only ascending enumeration of the Farey fractions in (0,1) with
/// denominator <= Q, by the classical next-term recurrence.  Cloneable, so
/// scans can shard the stream.
class FareyIterator {
 public:
  explicit FareyIterator(std::int64_t Q) : Q_(Q) {
    if (Q < 2) throw DomainError("FareyIterator: Q must be >= 2");
    // start at 0/1, 1/Q; first emitted value is 1/Q
    p0_ = 0;
    q0_ = 1;
    p1_ = 1;
    q1_ = Q;
  }

  bool next(Rational& out) {
    if (p1_ == 1 && q1_ == 1) return false;  // reached right endpoint
    out = Rational(p1_, q1_);
    std::int64_t k = (Q_ + q0_) / q1_;
    std::int64_t p2 = k * p1_ - p0_;
    std::int64_t q2 = k * q1_ - q0_;
    p0_ = p1_;
    q0_ = q1_;
    p1_ = p2;
    q1_ = q2;
    return true;
  }

  std::int64_t Q() const { return Q_; }

 private:
  std::int64_t Q_, p0_, q0_, p1_, q1_;
};

/// Euler phi by trial division (moduli here stay small).
inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

/// |Omega_Q| = sum_{q=2..Q} phi(q).
inline std::int64_t farey_count(std::int64_t Q) {
  std::int64_t s = 0;
  for (std::int64_t q = 2; q <= Q; ++q) s += euler_phi(q);
  return s;
}

}  // namespace ltwist
