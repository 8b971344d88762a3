#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ltwist/arith.hpp"
#include "ltwist/common.hpp"
#include "ltwist/specfun/afe_kernel.hpp"
#include "ltwist/specfun/gamma.hpp"

namespace ltwist {

enum class FormKind { maass_cusp, holomorphic_cusp, eisenstein_newform };

inline const char* to_string(FormKind k) {
  switch (k) {
    case FormKind::maass_cusp: return "maass_cusp";
    case FormKind::holomorphic_cusp: return "holomorphic_cusp";
    case FormKind::eisenstein_newform: return "eisenstein_newform";
  }
  return "?";
}

/// Complete arithmetic description of one automorphic form.
struct FormSpec {
  FormKind kind = FormKind::maass_cusp;
  std::int64_t level = 1;
  int weight = 0;                     // k
  Complex spectral_t{0.0, 0.0};       // t; s = 1/2 + i t with Re s >= 1/2
  int sign_eps = 0;                   // Q-involution eigenvalue (0 if none)
  DirichletChar nebentypus = DirichletChar::principal(1);
  std::optional<Complex> fricke_eta;
  Complex const_term_A{0.0, 0.0};
  Complex const_term_B{0.0, 0.0};
  std::string label;

  // Hecke eigenvalues at the primes the fixture ships (1-indexed dense
  // table would waste space; map prime -> lambda(p)).
  std::map<std::int64_t, Complex> lambda_p;
  std::int64_t n_max_hint = 0;  // largest index extendable from the primes

  // Eisenstein data: lambda = chi1 * conj(chi2) convolution
  DirichletChar chi1 = DirichletChar::principal(1);
  DirichletChar chi2 = DirichletChar::principal(1);
  /// extra scalar on all coefficients (used by the lattice-count series,
  /// which is 1/4 of the chi4 Eisenstein one)
  Complex coeff_scale{1.0, 0.0};

  Complex s_phi() const { return Complex(0.5, 0.0) + Complex(0.0, 1.0) * spectral_t; }

  bool cuspidal() const { return kind != FormKind::eisenstein_newform; }
  bool holomorphic() const { return kind == FormKind::holomorphic_cusp; }

  /// a(-n) = sign_eps * Gamma(s+k/2)/Gamma(s-k/2) * a(n)
  Complex negative_coefficient_multiplier() const {
    if (sign_eps == 0) return Complex(0.0, 0.0);
    Complex s = s_phi();
    double k2 = weight / 2.0;
    return static_cast<double>(sign_eps) *
           specfun::gamma_ratio(s + k2, s - k2);
  }
};

/// Dense coefficient table lambda(n), 1 <= n <= N, extended from the primes
/// by the Hecke recursion; a(n) = lambda(n)/sqrt(n).
class CoefficientCache {
 public:
  CoefficientCache() = default;

  const std::vector<Complex>& lambda() const { return lambda_; }
  std::int64_t n_max() const { return static_cast<std::int64_t>(lambda_.size()) - 1; }

  Complex lambda_at(std::int64_t n) const {
    if (n < 1 || n > n_max())
      throw DomainError("CoefficientCache: index out of range");
    return lambda_[n];
  }

  Complex a(std::int64_t n) const {
    return lambda_at(n) / std::sqrt(static_cast<double>(n));
  }

  Complex neg_multiplier() const { return neg_mult_; }

  static CoefficientCache build(const FormSpec& spec, std::int64_t N);

 private:
  std::vector<Complex> lambda_;
  Complex neg_mult_{0.0, 0.0};
};

/// lambda(n) for the newform Eisenstein series: (chi1 * conj(chi2))(n).
inline Complex eisenstein_lambda(const DirichletChar& chi1,
                                 const DirichletChar& chi2, std::int64_t n) {
  if (n < 1) throw DomainError("eisenstein_lambda: n must be positive");
  Complex s(0.0, 0.0);
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    std::int64_t e = n / d;
    s += chi1(d) * std::conj(chi2(e));
    if (d != e) s += chi1(e) * std::conj(chi2(d));
  }
  return s;
}

/// Sum of two squares counting function r(n) = 4 (1 * chi4)(n); the factor
/// 4 is pinned by the lattice count r(5) = 8.
inline std::int64_t r_two_squares(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    int m = static_cast<int>(d % 4);
    if (m == 1) s += 1;
    if (m == 3) s -= 1;
  }
  return 4 * s;
}

inline CoefficientCache CoefficientCache::build(const FormSpec& spec,
                                                std::int64_t N) {
  CoefficientCache c;
  c.lambda_.assign(N + 1, Complex(0.0, 0.0));
  c.lambda_[1] = Complex(1.0, 0.0);
  if (spec.kind == FormKind::eisenstein_newform) {
    // direct divisor convolution; cost N log N via the sieve below
    for (std::int64_t d = 1; d <= N; ++d) {
      Complex cd = spec.chi1(d);
      if (cd == Complex(0.0, 0.0)) continue;
      for (std::int64_t n = d; n <= N; n += d) {
        c.lambda_[n] += cd * std::conj(spec.chi2(n / d));
      }
    }
  } else {
    // multiplicative extension from the primes
    std::vector<std::int64_t> least_prime(N + 1, 0);
    for (std::int64_t p = 2; p <= N; ++p) {
      if (least_prime[p] != 0) continue;
      for (std::int64_t m = p; m <= N; m += p)
        if (least_prime[m] == 0) least_prime[m] = p;
    }
    for (std::int64_t n = 2; n <= N; ++n) {
      std::int64_t p = least_prime[n];
      std::int64_t pe = p, m = n / p;
      while (m % p == 0) {
        m /= p;
        pe *= p;
      }
      if (m > 1) {
        c.lambda_[n] = c.lambda_[m] * c.lambda_[pe];  // coprime split
        continue;
      }
      // n = p^e: recursion lambda(p^{e}) = lambda(p) lambda(p^{e-1})
      //                                    - chi(p) lambda(p^{e-2})
      if (pe == p) {
        auto it = spec.lambda_p.find(p);
        if (it == spec.lambda_p.end())
          throw MissingPrime("hecke_extend: missing lambda(" +
                             std::to_string(p) + ")");
        c.lambda_[n] = it->second;
      } else {
        std::int64_t pem1 = n / p, pem2 = pem1 / p;
        c.lambda_[n] = c.lambda_[p] * c.lambda_[pem1] -
                       spec.nebentypus(p) * c.lambda_[pem2];
      }
    }
    for (std::int64_t n = 1; n <= N; ++n) c.lambda_[n] *= spec.coeff_scale;
    if (spec.coeff_scale != Complex(1.0, 0.0)) c.lambda_[1] = spec.coeff_scale;
  }
  if (spec.kind == FormKind::eisenstein_newform &&
      spec.coeff_scale != Complex(1.0, 0.0)) {
    for (std::int64_t n = 1; n <= N; ++n) c.lambda_[n] *= spec.coeff_scale;
  }
  c.neg_mult_ = spec.negative_coefficient_multiplier();
  return c;
}

/// Hecke extension entry point (spec operation name).
inline CoefficientCache hecke_extend(const FormSpec& spec, std::int64_t N) {
  return CoefficientCache::build(spec, N);
}

/// Constant term phi_inf(y): A y^s + B y^{1-s}, with the logarithmic branch
/// A sqrt(y) + B sqrt(y) log(y) at s = 1/2.
inline Complex constant_term(const FormSpec& spec, double y) {
  if (!(y > 0.0)) throw DomainError("constant_term: y must be positive");
  if (spec.cuspidal()) return Complex(0.0, 0.0);
  Complex s = spec.s_phi();
  if (std::abs(s - Complex(0.5, 0.0)) < 1e-12) {
    double ry = std::sqrt(y);
    return spec.const_term_A * ry + spec.const_term_B * ry * std::log(y);
  }
  return spec.const_term_A * std::pow(Complex(y, 0.0), s) +
         spec.const_term_B * std::pow(Complex(y, 0.0), 1.0 - s);
}

/// Eisenstein constant-term data for E*_{chi1,chi2}(z, 1/2).
inline void eisenstein_constant_terms(const DirichletChar& chi1,
                                      const DirichletChar& chi2, int k,
                                      Complex& A, Complex& B) {
  std::int64_t q1 = chi1.modulus(), q2 = chi2.modulus();
  if (q1 == 1 && q2 == 1) {
    B = Complex(1.0, 0.0);
    A = Complex(kEulerGamma - std::log(4.0 * kPi), 0.0);
    return;
  }
  B = Complex(0.0, 0.0);
  if (q1 == 1 && q2 > 1) {
    Complex ik = std::pow(Complex(0.0, 1.0), k);
    A = static_cast<double>(q2) * ik /
        (std::sqrt(kPi) * gauss_sum(chi2)) *
        specfun::gamma_complex(Complex((1.0 + k) / 2.0, 0.0)) *
        dirichlet_l(chi2, Complex(1.0, 0.0));
    return;
  }
  A = Complex(0.0, 0.0);
}

/// Assemble the newform Eisenstein series E*_{chi1,chi2}(z,1/2) as a
/// FormSpec (weight k fixed by the parities, level q1 q2).
inline FormSpec make_eisenstein(const DirichletChar& chi1,
                                const DirichletChar& chi2,
                                Complex coeff_scale = Complex(1.0, 0.0)) {
  if (!chi1.is_primitive() || !chi2.is_primitive())
    throw ValidationError("make_eisenstein: characters must be primitive");
  int k = (chi1.parity() * chi2.parity() == 1) ? 0 : 1;
  FormSpec f;
  f.kind = FormKind::eisenstein_newform;
  f.level = chi1.modulus() * chi2.modulus();
  f.weight = k;
  f.spectral_t = Complex(0.0, 0.0);  // s = 1/2
  f.sign_eps = chi2.parity();
  f.chi1 = chi1;
  f.chi2 = chi2;
  f.coeff_scale = coeff_scale;
  f.label = "eisenstein_" + std::to_string(chi1.modulus()) + "_" +
            std::to_string(chi2.modulus());
  // nebentypus chi1 conj(chi2) mod level would need a product-group rep;
  // evaluators query chi1/chi2 directly, so the principal placeholder is
  // only a tag here.
  f.nebentypus = DirichletChar::principal(1);
  eisenstein_constant_terms(chi1, chi2, k, f.const_term_A, f.const_term_B);
  Complex eta = std::pow(Complex(-1.0, 0.0), k) * gauss_sum(chi1.conjugate()) *
                gauss_sum(chi2) /
                std::sqrt(static_cast<double>(chi1.modulus() * chi2.modulus()));
  f.fricke_eta = eta;
  return f;
}

namespace fdetail {

inline int divisor_count(std::int64_t n) {
  int c = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) c += (d * d == n) ? 1 : 2;
  }
  return c;
}

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

}  // namespace fdetail

/// Parse a coefficient fixture file.  Format: `#key value...` header lines,
/// then `n lambda_re [lambda_im]` rows (primes suffice; composites, when
/// present, are validated against the Hecke extension by the test suite).
inline FormSpec ingest_form(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("ingest_form: cannot open " + path);
  FormSpec spec;
  spec.label = path;
  bool have_kind = false;
  std::string line;
  std::int64_t max_n = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = fdetail::trim(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      std::istringstream hs(s.substr(1));
      std::string key;
      hs >> key;
      if (key == "kind") {
        std::string v;
        hs >> v;
        if (v == "maass_cusp") spec.kind = FormKind::maass_cusp;
        else if (v == "holomorphic_cusp") spec.kind = FormKind::holomorphic_cusp;
        else if (v == "eisenstein_newform") spec.kind = FormKind::eisenstein_newform;
        else throw ParseError("ingest_form: unknown kind " + v);
        have_kind = true;
      } else if (key == "level") {
        hs >> spec.level;
      } else if (key == "weight") {
        hs >> spec.weight;
      } else if (key == "spectral_t") {
        double re = 0.0, im = 0.0;
        hs >> re;
        if (!(hs >> im)) im = 0.0;
        spec.spectral_t = Complex(re, im);
      } else if (key == "sign_eps") {
        hs >> spec.sign_eps;
      } else if (key == "fricke_eta") {
        double re = 0.0, im = 0.0;
        hs >> re >> im;
        spec.fricke_eta = Complex(re, im);
      } else if (key == "nebentypus") {
        std::string v;
        hs >> v;
        if (v != "1" && v != "trivial")
          throw ParseError("ingest_form: only trivial nebentypus fixtures");
        spec.nebentypus = DirichletChar::principal(1);
      } else if (key == "label") {
        std::string v;
        hs >> v;
        spec.label = v;
      }
      continue;
    }
    std::istringstream ls(s);
    std::int64_t n;
    double re, im = 0.0;
    if (!(ls >> n >> re))
      throw ParseError("ingest_form: bad row at line " +
                       std::to_string(lineno));
    ls >> im;
    if (n == 1) {
      if (std::abs(Complex(re, im) - Complex(1.0, 0.0)) > 1e-12)
        throw ValidationError("ingest_form: lambda(1) != 1 (normalization)");
      continue;
    }
    spec.lambda_p[n] = Complex(re, im);
    max_n = std::max(max_n, n);
  }
  if (!have_kind) throw ParseError("ingest_form: missing #kind header");
  spec.n_max_hint = max_n;

  if (spec.holomorphic()) {
    // s = k/2 encoded through t = -i (k-1)/2
    spec.spectral_t = Complex(0.0, -(spec.weight - 1) / 2.0);
    if (spec.sign_eps != 0)
      throw ValidationError("ingest_form: holomorphic forms have sign_eps 0");
  }
  if (spec.cuspidal()) {
    if (spec.const_term_A != Complex(0.0, 0.0) ||
        spec.const_term_B != Complex(0.0, 0.0))
      throw ValidationError("ingest_form: cuspidal forms have no constant term");
    // Kim-Sarnak bound |lambda(p)| <= d(p) p^{7/64} = 2 p^{7/64}
    for (const auto& [p, lam] : spec.lambda_p) {
      double bound = 2.0 * std::pow(static_cast<double>(p), 7.0 / 64.0) + 1e-9;
      if (std::abs(lam) > bound)
        throw ValidationError("ingest_form: lambda(" + std::to_string(p) +
                              ") violates the coefficient bound");
    }
  }
  return spec;
}

/// Symmetric-square value L(sym^2 phi, 1) for a level-1 cuspidal form, via
/// the degree-3 functional equation at the edge with the smoothed cutoff.
/// The two balance scales X and 2X must agree to tol (two-scale oracle).
double sym2_l_value(const FormSpec& spec, const CoefficientCache& coeffs,
                    double tol = 1e-6);

namespace fdetail {

inline double sym2_at_scale(const std::vector<Complex>& shifts,
                            const std::vector<double>& b, double X) {
  // Lambda(s) = pi^{-3s/2} prod Gamma((s+mu)/2) L(s) = Lambda(1-s).
  // At s0 = 1:  L(1) = sum_n b(n)/n V_main(n pi^{3/2} / X)
  //             + sum_n b(n) V_dual(n pi^{3/2} X) * gamma-normalization,
  // where V_main uses base 1 and V_dual uses base 0 of the gamma factor.
  specfun::CutoffKernel main_k(shifts, 1.25, /*base=*/1.0, /*norm=*/1.0);
  specfun::CutoffKernel dual_k(shifts, 1.25, /*base=*/0.0, /*norm=*/1.0);
  const double pref = std::pow(kPi, 1.5);
  double acc = 0.0;
  for (std::size_t n = 1; n < b.size(); ++n) {
    if (b[n] == 0.0) continue;
    double y = pref * static_cast<double>(n) / X;
    Complex v = main_k.fast(y);
    acc += b[n] / static_cast<double>(n) * v.real();
    if (std::abs(v) < 1e-15 && y > 20.0) break;
  }
  // gamma(u)/gamma(1) carries the constant pi^{3/2} once the pi-powers of
  // the completed form are absorbed into the kernel argument
  double acc2 = 0.0;
  for (std::size_t n = 1; n < b.size(); ++n) {
    if (b[n] == 0.0) continue;
    double y = pref * static_cast<double>(n) * X;
    Complex v = dual_k.fast(y);
    acc2 += b[n] * v.real();
    if (std::abs(v) < 1e-15 && y > 20.0) break;
  }
  return acc + pref * acc2;
}

}  // namespace fdetail

inline double sym2_l_value(const FormSpec& spec, const CoefficientCache& coeffs,
                           double tol) {
  if (!spec.cuspidal() || spec.level != 1)
    throw DomainError("sym2_l_value: needs a cuspidal level-1 form");
  // Dirichlet coefficients of L(sym^2, s) = zeta(2s) sum lambda(n^2) n^{-s}:
  // b(n) = sum_{d^2 m = n} lambda(m^2)
  std::int64_t N = std::min<std::int64_t>(coeffs.n_max(), 20000);
  std::vector<double> b(N + 1, 0.0);
  for (std::int64_t d = 1; d * d <= N; ++d) {
    for (std::int64_t m = 1; m * m <= coeffs.n_max() && d * d * m <= N; ++m) {
      b[d * d * m] += coeffs.lambda_at(m * m).real();
    }
  }
  std::vector<Complex> shifts;
  if (spec.holomorphic()) {
    double k = spec.weight;
    shifts = {Complex(1.0, 0.0), Complex(k - 1.0, 0.0), Complex(k, 0.0)};
  } else {
    double t = spec.spectral_t.real();
    shifts = {Complex(0.0, 0.0), Complex(0.0, 2.0 * t), Complex(0.0, -2.0 * t)};
  }
  double v1 = fdetail::sym2_at_scale(shifts, b, 1.0);
  double v2 = fdetail::sym2_at_scale(shifts, b, 2.0);
  if (!spec.holomorphic() && std::abs(v1 - v2) > tol) {
    // parity-shifted archimedean factor: try {1, 2it, -2it}
    double t = spec.spectral_t.real();
    std::vector<Complex> alt = {Complex(1.0, 0.0), Complex(0.0, 2.0 * t),
                                Complex(0.0, -2.0 * t)};
    double w1 = fdetail::sym2_at_scale(alt, b, 1.0);
    double w2 = fdetail::sym2_at_scale(alt, b, 2.0);
    if (std::abs(w1 - w2) < std::abs(v1 - v2)) {
      v1 = w1;
      v2 = w2;
    }
  }
  if (std::abs(v1 - v2) > tol)
    throw NoConvergence("sym2_l_value: balance scales disagree");
  if (!(v1 > 0.0))
    throw ValidationError("sym2_l_value: non-positive edge value");
  return 0.5 * (v1 + v2);
}

}  // namespace ltwist
