#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

#include "ltwist/common.hpp"
#include "ltwist/qrat.hpp"
#include "ltwist/specfun/hurwitz.hpp"

namespace ltwist {

namespace adetail {

inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.push_back({p, e});
    }
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

inline std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
  __int128 r = 1, bb = ((b % m) + m) % m;
  while (e > 0) {
    if (e & 1) r = r * bb % m;
    bb = bb * bb % m;
    e >>= 1;
  }
  return static_cast<std::int64_t>(r);
}

inline std::int64_t primitive_root(std::int64_t p) {
  // p an odd prime
  std::int64_t order = p - 1;
  auto fac = factorize(order);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto [q, e] : fac) {
      (void)e;
      if (pow_mod(g, order / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw Error("primitive_root: none found (not an odd prime?)");
}

// One cyclic factor of (Z/m)^*: a generator with its order, and discrete
// logs of every unit with respect to the full local basis.
struct CyclicFactor {
  std::int64_t generator;
  std::int64_t order;
};

// The unit-group structure of Z/p^e with discrete-log tables.
struct LocalUnitGroup {
  std::int64_t prime;
  int exponent;
  std::int64_t modulus;                 // p^e
  std::vector<CyclicFactor> factors;    // 1 factor (odd p, or 2^e<=4), else 2
  std::vector<std::int32_t> dlog;       // dlog[a] packed; -1 for non-units
  int factor_count() const { return static_cast<int>(factors.size()); }

  // packed dlog layout: for two factors, dlog[a] = i0 + i1 * factors[0].order
  void build() {
    modulus = 1;
    for (int i = 0; i < exponent; ++i) modulus *= prime;
    factors.clear();
    if (prime == 2) {
      if (exponent == 1) {
        factors.push_back({1, 1});
      } else if (exponent == 2) {
        factors.push_back({3, 2});
      } else {
        factors.push_back({modulus - 1, 2});              // -1
        factors.push_back({5, modulus / 4});              // 5 has order 2^{e-2}
      }
    } else {
      std::int64_t g = primitive_root(prime);
      if (exponent > 1 &&
          pow_mod(g, prime - 1, prime * prime) == 1)
        g += prime;  // lift to a generator mod p^e
      factors.push_back({g % modulus, euler_phi(modulus)});
    }
    dlog.assign(modulus, -1);
    if (factor_count() == 1) {
      std::int64_t x = 1;
      for (std::int64_t i = 0; i < factors[0].order; ++i) {
        dlog[x] = static_cast<std::int32_t>(i);
        x = static_cast<std::int64_t>(
            static_cast<__int128>(x) * factors[0].generator % modulus);
      }
    } else {
      std::int64_t x0 = 1;
      for (std::int64_t i0 = 0; i0 < factors[0].order; ++i0) {
        std::int64_t x = x0;
        for (std::int64_t i1 = 0; i1 < factors[1].order; ++i1) {
          dlog[x] = static_cast<std::int32_t>(i0 + i1 * factors[0].order);
          x = static_cast<std::int64_t>(
              static_cast<__int128>(x) * factors[1].generator % modulus);
        }
        x0 = static_cast<std::int64_t>(
            static_cast<__int128>(x0) * factors[0].generator % modulus);
      }
    }
  }
};

struct UnitGroupTables {
  std::int64_t modulus;
  std::vector<LocalUnitGroup> locals;
  std::vector<std::int64_t> cyc_orders;  // flattened cyclic orders

  void build(std::int64_t m) {
    modulus = m;
    locals.clear();
    cyc_orders.clear();
    for (auto [p, e] : factorize(m)) {
      LocalUnitGroup g;
      g.prime = p;
      g.exponent = e;
      g.build();
      locals.push_back(std::move(g));
    }
    for (const auto& l : locals)
      for (const auto& f : l.factors) cyc_orders.push_back(f.order);
  }
};

inline const UnitGroupTables& unit_tables(std::int64_t m) {
  static std::map<std::int64_t, std::unique_ptr<UnitGroupTables>> cache;
  static std::mutex mu;
  std::scoped_lock lk(mu);
  auto it = cache.find(m);
  if (it == cache.end()) {
    auto t = std::make_unique<UnitGroupTables>();
    t->build(m);
    it = cache.emplace(m, std::move(t)).first;
  }
  return *it->second;
}

}  // namespace adetail

/// A Dirichlet character mod `modulus`, represented by its exponents on a
/// fixed CRT generator basis.  chi(n) = 0 iff gcd(n, modulus) > 1.
class DirichletChar {
 public:
  DirichletChar() : modulus_(1) {}

  DirichletChar(std::int64_t modulus, std::vector<std::int64_t> exponents)
      : modulus_(modulus), exps_(std::move(exponents)) {
    const auto& t = adetail::unit_tables(modulus_);
    if (exps_.size() != t.cyc_orders.size())
      throw ValidationError("DirichletChar: exponent vector length mismatch");
    for (std::size_t i = 0; i < exps_.size(); ++i)
      exps_[i] = ((exps_[i] % t.cyc_orders[i]) + t.cyc_orders[i]) %
                 t.cyc_orders[i];
    compute_conductor();
  }

  static DirichletChar principal(std::int64_t modulus) {
    const auto& t = adetail::unit_tables(modulus);
    return DirichletChar(modulus,
                         std::vector<std::int64_t>(t.cyc_orders.size(), 0));
  }

  std::int64_t modulus() const { return modulus_; }
  std::int64_t conductor() const { return conductor_; }
  const std::vector<std::int64_t>& exponents() const { return exps_; }
  bool is_principal() const { return conductor_ == 1; }
  bool is_primitive() const { return conductor_ == modulus_; }

  /// chi(-1) as +1 / -1
  int parity() const {
    // exact: the phase at -1 is 0 or 1/2 mod 1
    double e2 = exponent_at(modulus_ - 1);
    if (e2 < 0) throw Error("DirichletChar: -1 not a unit?");
    long long twice = llround(2.0 * e2);
    return (twice % 2 == 0) ? +1 : -1;
  }

  Complex operator()(std::int64_t n) const {
    double e = exponent_at(n);
    if (e < 0.0) return Complex(0.0, 0.0);
    return std::polar(1.0, kTwoPi * e);
  }

  DirichletChar conjugate() const {
    std::vector<std::int64_t> e(exps_.size());
    const auto& t = adetail::unit_tables(modulus_);
    for (std::size_t i = 0; i < e.size(); ++i)
      e[i] = (t.cyc_orders[i] - exps_[i]) % t.cyc_orders[i];
    return DirichletChar(modulus_, std::move(e));
  }

  DirichletChar times(const DirichletChar& o) const {
    if (o.modulus_ != modulus_)
      throw ValidationError("DirichletChar::times: modulus mismatch");
    std::vector<std::int64_t> e(exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = exps_[i] + o.exps_[i];
    return DirichletChar(modulus_, std::move(e));
  }

  /// The primitive character (mod conductor) that induces this one.
  DirichletChar primitive() const {
    if (is_primitive()) return *this;
    const auto& tc = adetail::unit_tables(conductor_);
    std::vector<std::int64_t> e;
    for (const auto& loc : tc.locals) {
      for (std::size_t fi = 0; fi < loc.factors.size(); ++fi) {
        // lift the local generator to a unit mod modulus_ congruent to it
        // mod p^f and to 1 mod every other prime power of modulus_
        std::int64_t g = loc.factors[fi].generator;
        std::int64_t lifted = crt_lift(g, loc.prime);
        double ph = exponent_at(lifted);
        if (ph < 0) throw Error("DirichletChar::primitive: lift not a unit");
        // phase = k / order exactly
        std::int64_t ord = loc.factors[fi].order;
        e.push_back(llround(ph * static_cast<double>(ord)) % ord);
      }
    }
    return DirichletChar(conductor_, std::move(e));
  }

 private:
  // phase exponent in [0,1) as an exact small rational evaluated in double;
  // returns -1 for non-units
  double exponent_at(std::int64_t n) const {
    const auto& t = adetail::unit_tables(modulus_);
    n = ((n % modulus_) + modulus_) % modulus_;
    if (modulus_ == 1) return 0.0;
    if (std::gcd(n, modulus_) != 1) return -1.0;
    double phase = 0.0;
    std::size_t idx = 0;
    for (const auto& loc : t.locals) {
      std::int64_t r = n % loc.modulus;
      std::int32_t d = loc.dlog[r];
      if (d < 0) return -1.0;
      if (loc.factor_count() == 1) {
        phase += static_cast<double>(
                     (static_cast<__int128>(exps_[idx]) * d) %
                     loc.factors[0].order) /
                 loc.factors[0].order;
        idx += 1;
      } else {
        std::int64_t i0 = d % loc.factors[0].order;
        std::int64_t i1 = d / loc.factors[0].order;
        phase += static_cast<double>(
                     (static_cast<__int128>(exps_[idx]) * i0) %
                     loc.factors[0].order) /
                 loc.factors[0].order;
        phase += static_cast<double>(
                     (static_cast<__int128>(exps_[idx + 1]) * i1) %
                     loc.factors[1].order) /
                 loc.factors[1].order;
        idx += 2;
      }
    }
    return phase - std::floor(phase);
  }

  std::int64_t crt_lift(std::int64_t residue, std::int64_t prime) const {
    // x = residue mod p^(e of modulus), x = 1 mod (modulus/p^e)
    const auto& t = adetail::unit_tables(modulus_);
    std::int64_t pe = 1;
    for (const auto& loc : t.locals)
      if (loc.prime == prime) pe = loc.modulus;
    std::int64_t rest = modulus_ / pe;
    if (rest == 1) return residue % pe;
    std::int64_t inv = mod_inverse(rest % pe, pe);
    // x = 1 + rest * k with rest*k = residue-1 mod pe
    std::int64_t k = static_cast<std::int64_t>(
        (static_cast<__int128>(((residue - 1) % pe + pe) % pe) * inv) % pe);
    return 1 + rest * k;
  }

  void compute_conductor() {
    const auto& t = adetail::unit_tables(modulus_);
    conductor_ = 1;
    std::size_t idx = 0;
    for (const auto& loc : t.locals) {
      if (loc.prime == 2) {
        if (loc.factor_count() == 1) {
          // modulus 2 or 4
          std::int64_t k = exps_[idx];
          std::int64_t ord = loc.factors[0].order;
          if (k % ord != 0) conductor_ *= 4;
          idx += 1;
        } else {
          std::int64_t km = exps_[idx] % 2;
          std::int64_t k5 = exps_[idx + 1];
          if (k5 != 0) {
            // order of the 5-component is 2^j >= 2: conductor 2^{j+2}
            std::int64_t o = loc.factors[1].order /
                             std::gcd(loc.factors[1].order, k5);
            conductor_ *= 4 * o;
          } else if (km != 0) {
            conductor_ *= 4;
          }
          idx += 2;
        }
      } else {
        std::int64_t k = exps_[idx];
        std::int64_t ord = loc.factors[0].order;
        std::int64_t o = ord / std::gcd(ord, k == 0 ? ord : k);
        if (o > 1) {
          // p-part of conductor: p^{v_p(o)+1}
          std::int64_t v = 0, oo = o;
          while (oo % loc.prime == 0) {
            oo /= loc.prime;
            ++v;
          }
          std::int64_t pf = loc.prime;
          for (std::int64_t i = 0; i < v; ++i) pf *= loc.prime;
          conductor_ *= pf;
        }
        idx += 1;
      }
    }
  }

  std::int64_t modulus_;
  std::vector<std::int64_t> exps_;
  std::int64_t conductor_ = 1;
};

/// All phi(c) characters mod c, in lexicographic exponent order.
inline std::vector<DirichletChar> character_group(std::int64_t c) {
  if (c < 1 || c > 100000)
    throw DomainError("character_group: modulus outside [1, 1e5]");
  const auto& t = adetail::unit_tables(c);
  std::vector<DirichletChar> out;
  std::vector<std::int64_t> e(t.cyc_orders.size(), 0);
  while (true) {
    out.emplace_back(c, e);
    std::size_t i = 0;
    for (; i < e.size(); ++i) {
      if (++e[i] < t.cyc_orders[i]) break;
      e[i] = 0;
    }
    if (i == e.size()) break;
    if (e.empty()) break;
  }
  return out;
}

/// Gauss sum tau(chi) = sum_{a mod c} chi(a) e(a/c).
inline Complex gauss_sum(const DirichletChar& chi) {
  std::int64_t c = chi.modulus();
  Complex s(0.0, 0.0);
  for (std::int64_t a = 0; a < c; ++a) {
    Complex v = chi(a);
    if (v != Complex(0.0, 0.0))
      s += v * std::polar(1.0, kTwoPi * static_cast<double>(a) / c);
  }
  if (c == 1) return Complex(1.0, 0.0);
  return s;
}

/// Dirichlet L(chi, s) through the Hurwitz zeta; works for imprimitive chi
/// as well (the defining series of that modulus).  Non-principal characters
/// are analytic at s = 1 (the Hurwitz poles cancel against sum chi = 0, so
/// the deflated Hurwitz zeta is used there).
inline Complex dirichlet_l(const DirichletChar& chi, Complex s) {
  std::int64_t m = chi.modulus();
  if (chi.is_principal() && std::abs(s - Complex(1.0, 0.0)) < 1e-14)
    throw PoleError("dirichlet_l: pole of the principal L at s=1");
  if (m == 1) return specfun::riemann_zeta(s);
  bool deflate = !chi.is_principal();
  Complex acc(0.0, 0.0);
  for (std::int64_t a = 1; a <= m; ++a) {
    Complex v = chi(a);
    if (v == Complex(0.0, 0.0)) continue;
    Complex h = deflate
                    ? specfun::hurwitz_zeta_deflated(s, static_cast<double>(a) / m)
                    : specfun::hurwitz_zeta(s, static_cast<double>(a) / m);
    acc += v * h;
  }
  return std::pow(Complex(static_cast<double>(m), 0.0), -s) * acc;
}

/// Ramanujan sum c_q(n) by the mu/phi closed form:
/// c_q(n) = mu(q/g) phi(q) / phi(q/g), g = gcd(q, n).
inline std::int64_t ramanujan_sum(std::int64_t q, std::int64_t n) {
  if (q < 1) throw DomainError("ramanujan_sum: q must be >= 1");
  std::int64_t g = std::gcd(q, n < 0 ? -n : n);
  if (n == 0) g = q;
  std::int64_t m = q / g;
  // mu(m)
  std::int64_t mu = 1;
  for (auto [p, e] : adetail::factorize(m)) {
    (void)p;
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu * (euler_phi(q) / euler_phi(m));
}

}  // namespace ltwist
