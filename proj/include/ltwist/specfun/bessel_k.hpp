#pragma once

#include <cmath>

#include "ltwist/common.hpp"
#include "ltwist/specfun/gamma.hpp"
#include "ltwist/specfun/ode.hpp"

namespace ltwist::specfun {

namespace detail {

// K_it(y) * e^{pi t / 2} by the ascending series through I_{it}.
// Valid (well-conditioned) for y up to roughly |t|; loses ~ y/ln(10) digits.
inline double bessel_k_it_series_scaled(double t, double y,
                                        const Precision& prec) {
  t = std::abs(t);
  // I_{it}(y) = sum_k (y/2)^{2k+it} / (k! Gamma(k+1+it))
  std::complex<long double> term, sum(0.0L, 0.0L);
  Complex g1 = gamma_complex(Complex(1.0, t));
  std::complex<long double> denom(g1.real(), g1.imag());
  long double ly = std::log(static_cast<long double>(y) / 2.0L);
  std::complex<long double> phase(std::cos(t * ly), std::sin(t * ly));
  term = phase / denom;
  sum = term;
  long double q = (static_cast<long double>(y) / 2.0L) *
                  (static_cast<long double>(y) / 2.0L);
  for (int k = 1; k < prec.max_terms; ++k) {
    term *= q / (static_cast<long double>(k) *
                 std::complex<long double>(k, t));
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum) && k > 4) break;
  }
  // K_it = -pi Im(I_it)/sinh(pi t);  scaled by e^{pi t/2}:
  //   K~ = -2 pi Im(I_it) e^{-pi t/2} / (1 - e^{-2 pi t})
  long double im = sum.imag();
  if (t < 1e-12) return static_cast<double>(sum.real());  // unreachable guard
  long double e = std::exp(-static_cast<long double>(kPi) * t);
  return static_cast<double>(-2.0L * static_cast<long double>(kPi) * im *
                             std::sqrt(e) / (1.0L - e * e));
}

// K_0-type series is not needed; t ~ 0 always goes through quadrature
// (the integrand is positive there, no cancellation).

// integral representation K_it(y) = int_0^inf e^{-y cosh u} cos(t u) du,
// trapezoid with node doubling.  Returns the unscaled value.
inline double bessel_k_it_quadrature(double t, double y, const Precision& prec,
                                     int min_doublings = 0) {
  t = std::abs(t);
  double u_max = std::acosh(std::max(2.0, 745.0 / y));
  double h = std::min(0.05, 0.5 / std::max(1.0, t));
  auto f = [&](double u) { return std::exp(-y * std::cosh(u)) * std::cos(t * u); };
  // trapezoid over [0, u_max] with half weight at 0
  int n = static_cast<int>(std::ceil(u_max / h));
  h = u_max / n;
  double s = 0.5 * f(0.0);
  for (int i = 1; i <= n; ++i) s += f(i * h);
  double prev = s * h;
  for (int d = 0; d < 24; ++d) {
    // halve h: add midpoints
    double mid = 0.0;
    for (int i = 0; i < n; ++i) mid += f((i + 0.5) * h);
    n *= 2;
    h *= 0.5;
    double cur = 0.5 * prev + h * mid;
    if (d >= min_doublings &&
        std::abs(cur - prev) < 0.25 * prec.abs_tol * std::max(1.0, std::abs(cur)) &&
        d > 1)
      return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace detail

/// K_{it}(y) for real order parameter t and y > 0.  Real-valued and even
/// in t.  Ascending series for y <= max(2, |t|/2), the integral
/// representation otherwise.  Values below 1e-300 underflow to exact 0.
inline double bessel_k_imag(double t, double y,
                            const Precision& prec = Precision{}) {
  if (!(y > 0.0)) throw DomainError("bessel_k_imag: y must be positive");
  if (!(std::abs(t) <= 100.0))
    throw DomainError("bessel_k_imag: |t| > 100 unsupported");
  t = std::abs(t);
  if (y - kPi * t / 2.0 > 709.0) return 0.0;  // e^{-y} scale underflow
  double v;
  if (t > 1e-7 && y <= std::max(2.0, t / 2.0)) {
    v = detail::bessel_k_it_series_scaled(t, y, prec) * std::exp(-kPi * t / 2.0);
  } else {
    v = detail::bessel_k_it_quadrature(t, y, prec);
  }
  if (std::abs(v) < 1e-300) return 0.0;
  return v;
}

/// e^{pi |t| / 2} K_{it}(y): the natural working scale for spectral
/// parameter t of size >~ 5, where K itself is uniformly tiny.
inline double bessel_k_imag_scaled(double t, double y,
                                   const Precision& prec = Precision{}) {
  if (!(y > 0.0)) throw DomainError("bessel_k_imag_scaled: y must be positive");
  t = std::abs(t);
  if (t > 1e-7 && y <= std::max(2.0, t / 2.0))
    return detail::bessel_k_it_series_scaled(t, y, prec);
  double s = kPi * t / 2.0 - y;
  if (s < -700.0) return 0.0;
  return detail::bessel_k_it_quadrature(t, y, prec) * std::exp(kPi * t / 2.0);
}

/// Dense table of w -> e^{pi t/2} K_{it}(w) on [w_min, w_max], built by
/// integrating the Bessel equation backward from an asymptotic seed.
/// Point evaluations are quintic-Hermite interpolations (abs err <~ 1e-11).
class KBesselTable {
 public:
  KBesselTable() = default;

  KBesselTable(double t, double w_min, double w_max) { build(t, w_min, w_max); }

  void build(double t, double w_min, double w_max) {
    t_ = std::abs(t);
    // seed where the asymptotic series bottoms out below 1e-17
    double w0 = std::max({w_max + 5.0, 40.0, 1.6 * t_ * t_ + 30.0});
    double tt = t_;
    // K_it(w) ~ sqrt(pi/2w) e^{-w} sum_k prod_j (4nu^2-(2j-1)^2) / (k! (8w)^k)
    auto seed = [tt](double w, double& f, double& df) {
      long double nu2 = -static_cast<long double>(tt) * tt;  // nu^2 = (it)^2
      long double sum = 1.0L, dsum = 0.0L, term = 1.0L;
      for (int k = 1; k <= 40; ++k) {
        long double j = 2 * k - 1;
        term *= (4.0L * nu2 - j * j) / (8.0L * w * k);
        sum += term;
        dsum += -k * term / w;
        if (std::abs(term) < 1e-19L) break;
      }
      // scaled working function F = e^{pi t/2} K
      long double pref = std::sqrt(static_cast<long double>(kPi) / (2.0L * w));
      long double es = std::exp(static_cast<long double>(kPi) * tt / 2.0L - w);
      f = static_cast<double>(pref * es * sum);
      df = static_cast<double>(pref * es * (dsum - sum * (1.0L + 0.5L / w)));
    };
    auto coeff = [t2 = static_cast<long double>(t_) * t_](
                     long double w, long double& p, long double& q) {
      p = -1.0L / w;
      q = 1.0L - t2 / (w * w);
    };
    auto step_of = [tt](double w) {
      double osc = (w < tt) ? std::sqrt(tt * tt / (w * w) - 1.0) : 0.0;
      double freq = std::max(1.0, osc);
      return std::min(1e-3, 8e-4 / freq);
    };
    table_.solve_backward(coeff, w_min, w0, seed, 0.005, step_of);
  }

  double t() const { return t_; }
  double w_min() const { return table_.x_min(); }
  double scaled(double w) const { return table_.value(w); }
  double scaled_deriv(double w) const { return table_.deriv(w); }

 private:
  double t_ = 0.0;
  detail::LinearOdeTable table_;
};

}  // namespace ltwist::specfun
