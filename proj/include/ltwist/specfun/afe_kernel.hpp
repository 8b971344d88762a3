#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ltwist/common.hpp"
#include "ltwist/specfun/gamma.hpp"

namespace ltwist::specfun {

/// Smoothed Mellin cutoff attached to an archimedean factor
/// gamma(s) = prod_j Gamma((s + mu_j)/2):
///
///   V(y) = (1/2 pi i) int_(sigma) [gamma(1/2+u)/gamma(1/2)] y^{-u} du/u
///
/// V(0+) = 1 and V(y) decays exponentially in y^{2/d} (d = number of
/// shifts), since the decay is inherited from the inverse Mellin transform
/// of the Gamma factors themselves.  Conductor powers are the caller's
/// business (absorb them into y).
///
/// For y below 0.05 the contour is taken left of u = 0 (picking up the
/// residue 1), which avoids the cancellation the main contour suffers when
/// y^{-u} is large.
class CutoffKernel {
 public:
  /// base: the point s0 such that the kernel weighs gamma(s0 + u);
  /// norm: the normalization point (gamma(norm) divides the ratio).
  /// The classical central-value cutoff is base = norm = 1/2.
  explicit CutoffKernel(std::vector<Complex> shifts, double sigma = 1.25,
                        double base = 0.5, double norm_base = -1.0)
      : shifts_(std::move(shifts)), sigma_(sigma), base_(base),
        norm_(norm_base < 0.0 ? base : norm_base) {
    if (shifts_.empty()) throw DomainError("CutoffKernel: no gamma shifts");
    lg_denom_ = Complex(0.0, 0.0);
    double rho = -1e9;
    double im_max = 0.0;
    for (const Complex& mu : shifts_) {
      lg_denom_ += lgamma_complex((Complex(norm_, 0.0) + mu) / 2.0);
      rho = std::max(rho, -(base_ + mu.real()));
      im_max = std::max(im_max, std::abs(mu.imag()));
    }
    sigma_left_ = std::max(-0.8, 0.55 * rho);
    left_ok_ = rho < -0.1;
    if (sigma_left_ >= -0.05) sigma_left_ = -0.05;
    if (left_ok_) {
      Complex lg(0.0, 0.0);
      for (const Complex& mu : shifts_)
        lg += lgamma_complex((Complex(base_, 0.0) + mu) / 2.0);
      residue_at_zero_ = std::exp(lg - lg_denom_);
    }
    decay_rate_ = shifts_.size() * kPi / 4.0;
    tail_T_ = (40.0 + 2.0 * std::log1p(im_max)) / decay_rate_ + im_max + 8.0;
  }

  const std::vector<Complex>& shifts() const { return shifts_; }
  double sigma() const { return sigma_; }

  /// Contour evaluation with node doubling until two refinements agree to
  /// tol or to the cancellation floor of the integrand.
  Complex value(double y, double tol = 1e-11) const {
    if (!(y > 0.0)) throw DomainError("CutoffKernel: y must be positive");
    if (y < 0.05 && left_ok_)
      return residue_at_zero_ + line_integral(sigma_left_, y, tol);
    return line_integral(sigma_, y, tol);
  }

  /// Piecewise-Chebyshev accelerator in log y.  Below the grid the direct
  /// evaluation is used; decades above it the kernel is numerically zero.
  void build_grid(double y_lo, double y_hi, double tol = 1e-12) {
    grid_lo_ = std::log(y_lo);
    grid_hi_ = std::log(y_hi);
    int panels = std::max(24, static_cast<int>((grid_hi_ - grid_lo_) / 0.30));
    panel_w_ = (grid_hi_ - grid_lo_) / panels;
    coeff_re_.assign(panels * kDeg, 0.0);
    coeff_im_.assign(panels * kDeg, 0.0);
    std::vector<Complex> samples(kDeg);
    for (int p = 0; p < panels; ++p) {
      double a = grid_lo_ + p * panel_w_, b = a + panel_w_;
      for (int j = 0; j < kDeg; ++j) {
        double xj = std::cos(kPi * (j + 0.5) / kDeg);
        double u = 0.5 * (a + b) + 0.5 * (b - a) * xj;
        samples[j] = value(std::exp(u), tol);
      }
      for (int m = 0; m < kDeg; ++m) {
        double cre = 0.0, cim = 0.0;
        for (int j = 0; j < kDeg; ++j) {
          double w = std::cos(kPi * m * (j + 0.5) / kDeg);
          cre += samples[j].real() * w;
          cim += samples[j].imag() * w;
        }
        double scale = (m == 0 ? 1.0 : 2.0) / kDeg;
        coeff_re_[p * kDeg + m] = cre * scale;
        coeff_im_[p * kDeg + m] = cim * scale;
      }
    }
  }

  bool has_grid() const { return !coeff_re_.empty(); }

  Complex fast(double y) const {
    double u = std::log(y);
    if (!has_grid() || u > grid_hi_ || u < grid_lo_) return value(y);
    int p = std::min<int>((u - grid_lo_) / panel_w_,
                          coeff_re_.size() / kDeg - 1);
    double a = grid_lo_ + p * panel_w_;
    double x = 2.0 * (u - a) / panel_w_ - 1.0;
    return Complex(clenshaw(&coeff_re_[p * kDeg], x),
                   clenshaw(&coeff_im_[p * kDeg], x));
  }

 private:
  static constexpr int kDeg = 16;

  static double clenshaw(const double* c, double x) {
    double b1 = 0.0, b2 = 0.0;
    for (int m = kDeg - 1; m >= 1; --m) {
      double tmp = 2.0 * x * b1 - b2 + c[m];
      b2 = b1;
      b1 = tmp;
    }
    return x * b1 - b2 + c[0];
  }

  // trapezoid for (1/2 pi i) int_(s0) Gamma-ratio y^{-u} du/u with doubling
  Complex line_integral(double s0, double y, double tol) const {
    const double T = tail_T_;
    const double ly = std::log(y);
    int n = std::max(512, static_cast<int>(2.0 * T * (1.0 + 0.5 * std::abs(ly))));
    Complex prev = trapezoid(s0, y, T, n, nullptr);
    for (int d = 0; d < 9; ++d) {
      n *= 2;
      double abs_mass = 0.0;
      Complex cur = trapezoid(s0, y, T, n, &abs_mass);
      double floor = 4e-16 * abs_mass;
      if (std::abs(cur - prev) < std::max(0.5 * tol, floor)) return cur;
      prev = cur;
    }
    throw NoConvergence("CutoffKernel: contour integral did not settle");
  }

  Complex trapezoid(double s0, double y, double T, int n,
                    double* abs_mass) const {
    const double h = 2.0 * T / n;
    const double ly = std::log(y);
    Complex acc(0.0, 0.0);
    double mass = 0.0;
    for (int i = 0; i <= n; ++i) {
      double tau = -T + i * h;
      Complex u(s0, tau);
      Complex lg(0.0, 0.0);
      for (const Complex& mu : shifts_)
        lg += lgamma_complex((Complex(base_, 0.0) + u + mu) / 2.0);
      Complex f = std::exp(lg - lg_denom_ - u * ly) / u;
      double w = (i == 0 || i == n) ? 0.5 : 1.0;
      acc += w * f;
      mass += w * std::abs(f);
    }
    if (abs_mass) *abs_mass = mass * h / (2.0 * kPi);
    // du = i h; the 1/(2 pi i) cancels the i
    return acc * h / (2.0 * kPi);
  }

  std::vector<Complex> shifts_;
  double sigma_;
  double base_ = 0.5, norm_ = 0.5;
  bool left_ok_ = true;
  Complex residue_at_zero_{1.0, 0.0};
  double sigma_left_ = -0.25;
  double decay_rate_ = kPi / 2.0;
  double tail_T_ = 30.0;
  Complex lg_denom_;
  double grid_lo_ = 0.0, grid_hi_ = 0.0, panel_w_ = 0.0;
  std::vector<double> coeff_re_, coeff_im_;
};

/// One-shot cutoff evaluation (see CutoffKernel).
inline Complex afe_cutoff(const std::vector<Complex>& gamma_shifts, double y,
                          double tol = 1e-11, double sigma = 1.25) {
  CutoffKernel k(gamma_shifts, sigma);
  return k.value(y, tol);
}

}  // namespace ltwist::specfun
