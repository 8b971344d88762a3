#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "ltwist/common.hpp"

namespace ltwist::specfun::detail {

// Dense solution of a linear second-order ODE  y'' = p(x) y' + q(x) y,
// integrated with fixed-step RK4 in long double and stored as
// (value, derivative, second derivative) on a uniform grid, so that
// two-point quintic Hermite interpolation is available.
//
// Integration runs from x_hi down to x_lo (the decaying solution of our
// equations is stable in that direction).
class LinearOdeTable {
 public:
  using Coeff = std::function<void(long double x, long double& p, long double& q)>;
  using StepOf = std::function<double(double x)>;
  // seed(x_top, y, dy): initial data evaluated exactly at the grid top
  using SeedFn = std::function<void(double x_top, double& y, double& dy)>;

  void solve_backward(Coeff coeff, double x_lo, double x_hi, SeedFn seed,
                      double store_h, StepOf step_of) {
    coeff_ = std::move(coeff);
    x_lo_ = x_lo;
    h_ = store_h;
    n_ = static_cast<std::size_t>(std::ceil((x_hi - x_lo) / store_h)) + 1;
    val_.assign(n_, 0.0);
    der_.assign(n_, 0.0);
    sec_.assign(n_, 0.0);

    long double x = x_lo + (n_ - 1) * static_cast<long double>(h_);
    double y0, dy0;
    seed(static_cast<double>(x), y0, dy0);
    long double y = y0, dy = dy0;
    record(n_ - 1, x, y, dy);
    for (std::size_t i = n_ - 1; i-- > 0;) {
      long double target = x_lo + i * static_cast<long double>(h_);
      long double span = x - target;
      double want = step_of(static_cast<double>(target));
      int steps = std::max(1, static_cast<int>(std::ceil(span / want)));
      long double hs = -span / steps;
      for (int s = 0; s < steps; ++s) rk4_step(x, y, dy, hs);
      x = target;
      record(i, x, y, dy);
    }
  }

  double x_min() const { return x_lo_; }
  double x_max() const { return x_lo_ + (n_ - 1) * h_; }

  double value(double x) const { return eval(x, 0); }
  double deriv(double x) const { return eval(x, 1); }

 private:
  void record(std::size_t i, long double x, long double y, long double dy) {
    long double p, q;
    coeff_(x, p, q);
    val_[i] = static_cast<double>(y);
    der_[i] = static_cast<double>(dy);
    sec_[i] = static_cast<double>(p * dy + q * y);
  }

  void rk4_step(long double& x, long double& y, long double& dy,
                long double h) const {
    auto f = [this](long double xx, long double yy, long double dyy,
                    long double& oy, long double& ody) {
      long double p, q;
      coeff_(xx, p, q);
      oy = dyy;
      ody = p * dyy + q * yy;
    };
    long double k1y, k1d, k2y, k2d, k3y, k3d, k4y, k4d;
    f(x, y, dy, k1y, k1d);
    f(x + h / 2, y + h / 2 * k1y, dy + h / 2 * k1d, k2y, k2d);
    f(x + h / 2, y + h / 2 * k2y, dy + h / 2 * k2d, k3y, k3d);
    f(x + h, y + h * k3y, dy + h * k3d, k4y, k4d);
    y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
    dy += h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
    x += h;
  }

  double eval(double x, int order) const {
    if (x < x_lo_ - 1e-12 || x > x_max() + 1e-12)
      throw DomainError("LinearOdeTable: x outside tabulated range");
    double t = (x - x_lo_) / h_;
    std::size_t i = std::min(n_ - 2, static_cast<std::size_t>(std::max(0.0, t)));
    double u = (x - (x_lo_ + i * h_)) / h_;  // in [0,1]
    double f0 = val_[i], f1 = val_[i + 1];
    double d0 = der_[i] * h_, d1 = der_[i + 1] * h_;
    double s0 = sec_[i] * h_ * h_, s1 = sec_[i + 1] * h_ * h_;
    double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
    double H0 = 1 - 10 * u3 + 15 * u4 - 6 * u5;
    double H1 = u - 6 * u3 + 8 * u4 - 3 * u5;
    double H2 = 0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5;
    double H3 = 0.5 * u3 - u4 + 0.5 * u5;
    double H4 = -4 * u3 + 7 * u4 - 3 * u5;
    double H5 = 10 * u3 - 15 * u4 + 6 * u5;
    if (order == 0)
      return H0 * f0 + H1 * d0 + H2 * s0 + H3 * s1 + H4 * d1 + H5 * f1;
    double dH0 = -30 * u2 + 60 * u3 - 30 * u4;
    double dH1 = 1 - 18 * u2 + 32 * u3 - 15 * u4;
    double dH2 = u - 4.5 * u2 + 6 * u3 - 2.5 * u4;
    double dH3 = 1.5 * u2 - 4 * u3 + 2.5 * u4;
    double dH4 = -12 * u2 + 28 * u3 - 15 * u4;
    double dH5 = 30 * u2 - 60 * u3 + 30 * u4;
    return (dH0 * f0 + dH1 * d0 + dH2 * s0 + dH3 * s1 + dH4 * d1 + dH5 * f1) /
           h_;
  }

  Coeff coeff_;
  double x_lo_ = 0.0, h_ = 0.0;
  std::size_t n_ = 0;
  std::vector<double> val_, der_, sec_;
};

}  // namespace ltwist::specfun::detail
