#pragma once

#include <array>
#include <cmath>

#include "ltwist/common.hpp"
#include "ltwist/specfun/gamma.hpp"

namespace ltwist::specfun {

namespace detail {

// Even Bernoulli numbers B_2, B_4, ..., B_32.
inline constexpr std::array<double, 16> kBernoulli2n = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0};

}  // namespace detail

/// Hurwitz zeta zeta(s, a) for 0 < a <= 1 by Euler-Maclaurin summation.
/// Absolute error <= ~1e-13 for |s| <= 30 with the default orders.
/// n0 and corrections are exposed so tests can run two independent schemes.
inline Complex hurwitz_zeta_em(Complex s, double a, int n0, int corrections) {
  if (!(a > 0.0 && a <= 1.0))
    throw DomainError("hurwitz_zeta: a outside (0, 1]");
  if (std::abs(s - Complex(1.0, 0.0)) < 1e-14)
    throw PoleError("hurwitz_zeta: pole at s = 1");
  require_finite(s, "hurwitz_zeta");

  Complex sum(0.0, 0.0);
  for (int k = 0; k < n0; ++k) sum += std::pow(Complex(a + k, 0.0), -s);

  const Complex N(a + n0, 0.0);
  sum += std::pow(N, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(N, -s);

  // Euler-Maclaurin tail: sum_j B_{2j}/(2j)! * (s)_{2j-1} * N^{-s-2j+1}
  Complex poch = s;            // (s)_1
  Complex npow = std::pow(N, -s - 1.0);
  double fact = 2.0;           // (2j)!
  for (int j = 1; j <= corrections; ++j) {
    sum += detail::kBernoulli2n[j - 1] / fact * poch * npow;
    // advance: (s)_{2j+1} = (s)_{2j-1} (s+2j-1)(s+2j)
    poch *= (s + Complex(2.0 * j - 1.0, 0.0)) * (s + Complex(2.0 * j, 0.0));
    npow /= N * N;
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return sum;
}

inline Complex hurwitz_zeta(Complex s, double a) {
  int n0 = std::max(18, static_cast<int>(1.4 * std::abs(s)) + 4);
  return hurwitz_zeta_em(s, a, n0, 12);
}

/// zeta(s, a) - 1/(s-1): entire in s, so usable at and around s = 1 where
/// character sums cancel the pole term.
inline Complex hurwitz_zeta_deflated(Complex s, double a) {
  if (!(a > 0.0 && a <= 1.0))
    throw DomainError("hurwitz_zeta_deflated: a outside (0, 1]");
  int n0 = std::max(18, static_cast<int>(1.4 * std::abs(s)) + 4);
  const int corrections = 12;
  Complex sum(0.0, 0.0);
  for (int k = 0; k < n0; ++k) sum += std::pow(Complex(a + k, 0.0), -s);
  const Complex N(a + n0, 0.0);
  // (N^{1-s} - 1)/(s-1), stable near s=1 via expm1 on the exponent
  Complex w = (1.0 - s) * std::log(N);
  Complex frac;
  if (std::abs(s - Complex(1.0, 0.0)) < 1e-18) {
    frac = -std::log(N);
  } else if (std::abs(w) < 0.25) {
    // expm1 for complex w by series (|w| small)
    Complex e(0.0, 0.0), term(1.0, 0.0);
    for (int k = 1; k <= 20; ++k) {
      term *= w / static_cast<double>(k);
      e += term;
      if (std::abs(term) < 1e-18) break;
    }
    frac = -e / (1.0 - s);  // (e^{w}-1)/(s-1)
  } else {
    frac = (std::exp(w) - 1.0) / (s - 1.0);
  }
  sum += frac;
  sum += 0.5 * std::pow(N, -s);
  Complex poch = s;
  Complex npow = std::pow(N, -s - 1.0);
  double fact = 2.0;
  for (int j = 1; j <= corrections; ++j) {
    sum += detail::kBernoulli2n[j - 1] / fact * poch * npow;
    poch *= (s + Complex(2.0 * j - 1.0, 0.0)) * (s + Complex(2.0 * j, 0.0));
    npow /= N * N;
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return sum;
}

/// Riemann zeta through the Hurwitz special case a = 1.
inline Complex riemann_zeta(Complex s) { return hurwitz_zeta(s, 1.0); }

/// Gauss hypergeometric series 2F1(a,b;c;z), raw series on |z| <= 0.75.
/// Kahan-compensated accumulation in long double.
inline Complex hyp2f1(Complex a, Complex b, Complex c, Complex z,
                      const Precision& prec = Precision{}) {
  if (detail::near_nonpositive_integer(c))
    throw PoleError("hyp2f1: c is a non-positive integer");
  if (std::abs(z) > 0.75)
    throw DomainError("hyp2f1: |z| > 3/4 outside supported disc");

  std::complex<long double> term(1.0L, 0.0L), sum(1.0L, 0.0L), comp(0.0L, 0.0L);
  const std::complex<long double> zl(z.real(), z.imag());
  const std::complex<long double> al(a.real(), a.imag()), bl(b.real(), b.imag()),
      cl(c.real(), c.imag());
  for (int n = 0; n < prec.max_terms; ++n) {
    const long double nl = n;
    term *= (al + nl) * (bl + nl) / ((cl + nl) * (nl + 1.0L)) * zl;
    // Kahan step
    std::complex<long double> y = term - comp;
    std::complex<long double> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) < prec.abs_tol * 1e-3L && n > 4)
      return Complex(static_cast<double>(sum.real()),
                     static_cast<double>(sum.imag()));
  }
  throw NoConvergence("hyp2f1: series did not converge within max_terms");
}

}  // namespace ltwist::specfun
