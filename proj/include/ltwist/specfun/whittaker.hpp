#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "ltwist/common.hpp"
#include "ltwist/specfun/bessel_k.hpp"
#include "ltwist/specfun/ode.hpp"

namespace ltwist::specfun {

/// Decaying Whittaker function W_{alpha,beta}(y) for the parameter ranges the
/// Fourier expansions need: alpha real with |alpha| <= 2 and beta^2 real
/// (beta = it on the spectral line, or real beta in the exceptional range),
/// plus the elementary case alpha = k/2, beta = (k-1)/2.
///
/// The generic case integrates the Whittaker equation backward from a
/// large-y asymptotic seed, which is the stable direction for the decaying
/// solution; the working variable is e^{y/2} W (polynomially sized).
class WhittakerTable {
 public:
  WhittakerTable() = default;

  WhittakerTable(double alpha, double mu2, double y_min, double y_max) {
    build(alpha, mu2, y_min, y_max);
  }

  // mu2 = beta^2 (real by assumption)
  void build(double alpha, double mu2, double y_min, double y_max) {
    alpha_ = alpha;
    mu2_ = mu2;
    double y0 = std::max({40.0, 2.6 * (std::abs(mu2) + 4.0), y_max + 5.0});
    auto seed = [alpha, mu2](double y, double& f, double& df) {
      long double sum = 1.0L, dsum = 0.0L, term = 1.0L;
      for (int s = 1; s <= 48; ++s) {
        long double c = alpha - s + 0.5L;
        term *= (static_cast<long double>(mu2) - c * c) /
                (static_cast<long double>(s) * y);
        sum += term;
        dsum += -s * term / y;
        if (std::abs(term) < 1e-19L) break;
      }
      long double ya = std::pow(static_cast<long double>(y), alpha);
      f = static_cast<double>(ya * sum);
      df = static_cast<double>(alpha * ya / y * sum + ya * dsum);
    };
    auto coeff = [a = static_cast<long double>(alpha),
                  m = static_cast<long double>(mu2)](
                     long double y, long double& p, long double& q) {
      p = 1.0L;
      q = -(a / y + (0.25L - m) / (y * y));
    };
    auto step_of = [m = mu2, a = alpha](double y) {
      double loc = std::max(0.0, (0.25 - m) / (y * y) - 0.25 + std::abs(a) / y);
      double freq = std::max(1.0, std::sqrt(loc));
      return std::min(1e-3, 8e-4 / freq);
    };
    table_.solve_backward(coeff, y_min, y0, seed, 0.005, step_of);
  }

  double alpha() const { return alpha_; }
  double mu2() const { return mu2_; }
  double y_min() const { return table_.x_min(); }
  double y_max() const { return table_.x_max(); }

  /// e^{y/2} W_{alpha,beta}(y)
  double scaled(double y) const { return table_.value(y); }
  double scaled_deriv(double y) const { return table_.deriv(y); }

  double value(double y) const { return scaled(y) * std::exp(-0.5 * y); }
  /// W'(y)
  double deriv(double y) const {
    return (scaled_deriv(y) - 0.5 * scaled(y)) * std::exp(-0.5 * y);
  }

 private:
  double alpha_ = 0.0, mu2_ = 0.0;
  detail::LinearOdeTable table_;
};

namespace detail {

inline bool is_holomorphic_whittaker(double alpha, Complex beta) {
  // W_{k/2,(k-1)/2}(y) = y^{k/2} e^{-y/2}
  return std::abs(beta.imag()) < 1e-13 &&
         std::abs(beta.real() - (alpha - 0.5)) < 1e-13 && alpha > 0.0;
}

inline const WhittakerTable& whittaker_cache(double alpha, double mu2,
                                             double y_hint) {
  static std::mutex mu;
  static std::map<std::pair<long long, long long>,
                  std::unique_ptr<WhittakerTable>>
      cache;
  std::scoped_lock lk(mu);
  auto key = std::make_pair(static_cast<long long>(std::llround(alpha * 1e6)),
                            static_cast<long long>(std::llround(mu2 * 1e6)));
  auto it = cache.find(key);
  if (it == cache.end() || it->second->y_max() < y_hint) {
    auto tab = std::make_unique<WhittakerTable>(
        alpha, mu2, 0.05, std::max(60.0, 1.3 * y_hint));
    it = cache.insert_or_assign(key, std::move(tab)).first;
  }
  return *it->second;
}

}  // namespace detail

/// W_{alpha,beta}(y).  beta must be real or purely imaginary; alpha real
/// with |alpha| <= 2, or the elementary pair (k/2, (k-1)/2).
inline Complex whittaker_w(double alpha, Complex beta, double y,
                           const Precision& prec = Precision{}) {
  if (!(y > 0.0)) throw DomainError("whittaker_w: y must be positive");
  prec.validate();
  if (detail::is_holomorphic_whittaker(alpha, beta))
    return Complex(std::pow(y, alpha) * std::exp(-0.5 * y), 0.0);
  bool imag_axis = std::abs(beta.real()) < 1e-13;
  bool real_axis = std::abs(beta.imag()) < 1e-13;
  if (!imag_axis && !real_axis)
    throw UnsupportedParameter("whittaker_w: beta off the real/imaginary axes");
  if (std::abs(alpha) < 1e-14) {
    // W_{0,it}(y) = sqrt(y/pi) K_{it}(y/2); same shape for real beta
    if (imag_axis)
      return Complex(std::sqrt(y / kPi) * bessel_k_imag(beta.imag(), 0.5 * y, prec),
                     0.0);
    // real order: positive integrand, quadrature is uncancelled
    double t = beta.real();
    double u_max = std::acosh(std::max(2.0, 745.0 / (0.5 * y)));
    auto f = [&](double u) {
      return std::exp(-0.5 * y * std::cosh(u)) * std::cosh(t * u);
    };
    int n = 512;
    double h = u_max / n, s = 0.5 * f(0.0);
    for (int i = 1; i <= n; ++i) s += f(i * h);
    double prev = s * h;
    for (int d = 0; d < 16; ++d) {
      double mid = 0.0;
      for (int i = 0; i < n; ++i) mid += f((i + 0.5) * h);
      n *= 2;
      h *= 0.5;
      double cur = 0.5 * prev + h * mid;
      if (std::abs(cur - prev) < 0.25 * prec.abs_tol && d > 1) {
        prev = cur;
        break;
      }
      prev = cur;
    }
    return Complex(std::sqrt(y / kPi) * prev, 0.0);
  }
  if (std::abs(alpha) > 2.0 + 1e-12)
    throw UnsupportedParameter("whittaker_w: |alpha| > 2 unsupported");
  double mu2 = imag_axis ? -beta.imag() * beta.imag() : beta.real() * beta.real();
  const WhittakerTable& tab = detail::whittaker_cache(alpha, mu2, y);
  if (y < tab.y_min())
    throw DomainError("whittaker_w: y below tabulated range");
  return Complex(tab.value(y), 0.0);
}

}  // namespace ltwist::specfun
