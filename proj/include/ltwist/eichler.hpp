#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ltwist/common.hpp"
#include "ltwist/forms.hpp"
#include "ltwist/qrat.hpp"
#include "ltwist/specfun.hpp"

namespace ltwist {

/// Quadrature result with an error estimate from the panel refinement.
struct EichlerValue {
  Complex value{0.0, 0.0};
  double est_error = 0.0;
};

/// Point evaluation of a level-1 form and of its raised companion, backed by
/// dense K-Bessel/Whittaker tables.  Immutable after construction.
class FormEvaluator {
 public:
  FormEvaluator(const FormSpec& spec, const CoefficientCache& coeffs)
      : spec_(&spec), coeffs_(&coeffs) {
    const double t = spec.spectral_t.real();
    if (spec.kind == FormKind::maass_cusp) {
      t_ = t;
      w_cut_ = kPi * t_ / 2.0 + 46.0;
      kb_ = std::make_unique<specfun::KBesselTable>(t_, 1.0, w_cut_ + 2.0);
      wp_ = std::make_unique<specfun::WhittakerTable>(
          spec.weight / 2.0 + 1.0, -t_ * t_, 1.0, w_cut_ + 2.0);
      wm_ = std::make_unique<specfun::WhittakerTable>(
          -(spec.weight / 2.0 + 1.0), -t_ * t_, 1.0, w_cut_ + 2.0);
      kscale_ = std::exp(-kPi * t_ / 2.0);
    } else if (spec.kind == FormKind::eisenstein_newform) {
      t_ = 0.0;
      w_cut_ = 46.0;
      if (spec.weight == 0) {
        kb_ = std::make_unique<specfun::KBesselTable>(0.0, 1.0, w_cut_ + 2.0);
      } else {
        wh_ = std::make_unique<specfun::WhittakerTable>(0.5, 0.0, 1.0,
                                                        w_cut_ + 2.0);
        whm_ = std::make_unique<specfun::WhittakerTable>(-0.5, 0.0, 1.0,
                                                         w_cut_ + 2.0);
      }
      kscale_ = 1.0;
    } else {
      // holomorphic: elementary Whittaker, argument 4 pi n y
      t_ = 0.0;
      w_cut_ = 100.0 + 10.0 * spec.weight;
      kscale_ = 1.0;
    }
  }

  const FormSpec& spec() const { return *spec_; }
  const CoefficientCache& coeffs() const { return *coeffs_; }

  /// largest y at which the Fourier tail still matters
  double y_cusp_cut() const { return w_cut_ / kTwoPi; }

  /// phi(z), with unimodular reduction when Im z is small (level 1).
  Complex eval_point(Complex z, const Precision& prec = Precision{}) const {
    if (!(z.imag() > 0.0)) throw DomainError("eval_point: Im z must be > 0");
    if (spec_->level == 1) {
      auto [zr, u] = reduce(z, spec_->weight);
      return expansion(zr, prec) / u;
    }
    if (z.imag() < 0.05)
      throw DomainError("eval_point: Im z too small for an unreduced level");
    return expansion(z, prec);
  }

  /// psi(z) = (R_k phi)(z), the raised form of weight k+2 (Maass only).
  Complex eval_raised_point(Complex z, const Precision& prec = Precision{}) const {
    if (spec_->kind != FormKind::maass_cusp)
      throw DomainError("eval_raised_point: raised forms only for Maass input");
    if (!(z.imag() > 0.0)) throw DomainError("eval_raised_point: Im z <= 0");
    if (spec_->level == 1) {
      auto [zr, u] = reduce(z, spec_->weight + 2);
      return raised_expansion(zr, prec) / u;
    }
    if (z.imag() < 0.05)
      throw DomainError("eval_raised_point: Im z too small");
    return raised_expansion(z, prec);
  }

 private:
  // reduce to the level-1 fundamental domain, tracking the unitary weight-k
  // automorphy factor: returns (z*, u) with phi(z*) = u * phi(z)
  std::pair<Complex, Complex> reduce(Complex z, int k) const {
    Complex u(1.0, 0.0);
    for (int it = 0; it < 200; ++it) {
      double shift = std::round(z.real());
      z -= shift;
      if (std::norm(z) >= 1.0 - 1e-15) break;
      if (k != 0) {
        Complex j = z / std::abs(z);
        u *= std::pow(j, k);
      }
      z = -1.0 / z;
    }
    z -= std::round(z.real());
    return {z, u};
  }

  Complex expansion(Complex z, const Precision& prec) const {
    const double x = z.real(), y = z.imag();
    const FormSpec& f = *spec_;
    Complex acc = f.cuspidal() ? Complex(0.0, 0.0) : constant_term(f, y);
    if (f.kind == FormKind::maass_cusp) {
      // a(n) [e(nx) + eps e(-nx)] 2 sqrt(n y) K_{it}(2 pi n y)
      const double sy = std::sqrt(y);
      const std::int64_t n_max =
          std::min<double>(coeffs_->n_max(), w_cut_ / (kTwoPi * y) + 1.0);
      for (std::int64_t n = 1; n <= n_max; ++n) {
        double w = kTwoPi * n * y;
        if (w >= w_cut_) break;
        double kv = kb_->scaled(w) * kscale_;
        Complex lam = coeffs_->lambda_at(n);  // a(n) sqrt(n) = lambda(n)
        double trig = kTwoPi * n * x;
        Complex pair = (f.sign_eps > 0)
                           ? Complex(2.0 * std::cos(trig), 0.0)
                           : Complex(0.0, 2.0 * std::sin(trig));
        acc += lam.real() * 2.0 * sy * kv * pair /
               1.0;  // a(n) W = lambda/sqrt(n) * 2 sqrt(ny) K = 2 lambda sqrt(y) K
      }
      if (kTwoPi * (coeffs_->n_max() + 1) * y < w_cut_)
        throw NoConvergence("eval_point: coefficient table too short");
      return acc;
    }
    if (f.kind == FormKind::holomorphic_cusp) {
      const double k2 = f.weight / 2.0;
      const std::int64_t n_max =
          std::min<double>(coeffs_->n_max(), w_cut_ / (4.0 * kPi * y) + 1.0);
      bool tail_ok = false;
      for (std::int64_t n = 1; n <= n_max; ++n) {
        double w = 4.0 * kPi * n * y;
        double W = std::pow(w, k2) * std::exp(-0.5 * w);
        if (W < 1e-20 && w > 4.0 * k2) {
          tail_ok = true;
          break;
        }
        acc += coeffs_->a(n) * std::polar(1.0, kTwoPi * n * x) * W;
      }
      if (!tail_ok && n_max == coeffs_->n_max() &&
          4.0 * kPi * (n_max + 1) * y < w_cut_)
        throw NoConvergence("eval_point: coefficient table too short");
      return acc;
    }
    // Eisenstein (k in {0,1}, s = 1/2)
    const double sy = std::sqrt(y);
    Complex negm = coeffs_->neg_multiplier();
    if (f.weight == 1) negm = Complex(0.0, 0.0);  // s = k/2 case
    const std::int64_t n_max = std::min<double>(
        coeffs_->n_max(),
        w_cut_ / ((f.weight == 0 ? kTwoPi : 4.0 * kPi) * y) + 1.0);
    for (std::int64_t n = 1; n <= n_max; ++n) {
      Complex a = coeffs_->a(n);
      Complex Wp, Wm;
      if (f.weight == 0) {
        double w = kTwoPi * n * y;
        if (w >= w_cut_) break;
        double kv = 2.0 * std::sqrt(static_cast<double>(n)) * sy *
                    kb_->scaled(w);
        Wp = Wm = Complex(kv, 0.0);
      } else {
        double w4 = 4.0 * kPi * n * y;
        if (w4 >= w_cut_) break;
        Wp = Complex(wh_->value(w4), 0.0);
        Wm = Complex(whm_->value(w4), 0.0);
      }
      acc += a * std::polar(1.0, kTwoPi * n * x) * Wp;
      acc += negm * a * std::polar(1.0, -kTwoPi * n * x) * Wm;
    }
    return acc;
  }

  Complex raised_expansion(Complex z, const Precision& prec) const {
    (void)prec;
    const double x = z.real(), y = z.imag();
    const FormSpec& f = *spec_;
    // a_psi(n) = -a(n) for n > 0, (s+k/2)(1-s+k/2) a(n) for n < 0
    Complex s = f.s_phi();
    double k2 = f.weight / 2.0;
    Complex upfac = (s + k2) * (1.0 - s + k2);
    Complex negm = coeffs_->neg_multiplier();
    const std::int64_t n_max =
        std::min<double>(coeffs_->n_max(), w_cut_ / (4.0 * kPi * y) + 2.0);
    Complex acc(0.0, 0.0);
    for (std::int64_t n = 1; n <= n_max; ++n) {
      double w = 4.0 * kPi * n * y;
      if (w >= w_cut_ + 2.0) break;
      Complex a = coeffs_->a(n);
      double Wp = (w < w_cut_) ? wp_->value(w) : 0.0;
      double Wm = (w < w_cut_) ? wm_->value(w) : 0.0;
      acc += -a * std::polar(1.0, kTwoPi * n * x) * Wp;
      acc += upfac * negm * a * std::polar(1.0, -kTwoPi * n * x) * Wm;
    }
    if (4.0 * kPi * (coeffs_->n_max() + 1) * y < w_cut_)
      throw NoConvergence("eval_raised_point: coefficient table too short");
    return acc;
  }

  const FormSpec* spec_;
  const CoefficientCache* coeffs_;
  double t_ = 0.0, w_cut_ = 46.0, kscale_ = 1.0;
  std::unique_ptr<specfun::KBesselTable> kb_;
  std::unique_ptr<specfun::WhittakerTable> wp_, wm_;   // raised weights
  std::unique_ptr<specfun::WhittakerTable> wh_, whm_;  // Eisenstein k=1
};

namespace edetail {

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
inline const double kGLx[8] = {0.0950125098376374, 0.2816035507792589,
                               0.4580167776572274, 0.6178762444026438,
                               0.7554044083550030, 0.8656312023878318,
                               0.9445750230732326, 0.9894009349916499};
inline const double kGLw[8] = {0.1894506104550685, 0.1826034150449236,
                               0.1691565193950025, 0.1495959888165767,
                               0.1246289712555339, 0.0951585116824928,
                               0.0622535239386479, 0.0271524594117541};

template <typename F>
Complex gl_panel(F&& f, double a, double b) {
  Complex acc(0.0, 0.0);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < 8; ++i) {
    acc += kGLw[i] * (f(mid + half * kGLx[i]) + f(mid - half * kGLx[i]));
  }
  return acc * half;
}

template <typename F>
Complex adaptive_log_quadrature(F&& f, double u_lo, double u_hi, double tol,
                                double* est_err) {
  int panels = std::max(8, static_cast<int>((u_hi - u_lo) / 0.5));
  Complex coarse(0.0, 0.0);
  for (int p = 0; p < panels; ++p) {
    double a = u_lo + (u_hi - u_lo) * p / panels;
    double b = u_lo + (u_hi - u_lo) * (p + 1) / panels;
    coarse += gl_panel(f, a, b);
  }
  for (int ref = 0; ref < 5; ++ref) {
    panels *= 2;
    Complex fine(0.0, 0.0);
    for (int p = 0; p < panels; ++p) {
      double a = u_lo + (u_hi - u_lo) * p / panels;
      double b = u_lo + (u_hi - u_lo) * (p + 1) / panels;
      fine += gl_panel(f, a, b);
    }
    double change = std::abs(fine - coarse);
    coarse = fine;
    if (change < tol) {
      if (est_err) *est_err = change;
      return coarse;
    }
  }
  if (est_err) *est_err = -1.0;
  throw NoConvergence("eichler quadrature did not settle");
}

}  // namespace edetail

/// Eichler integral E(phi, x, s) = int_0^inf (phi(x+iy) - phi_inf(y))
/// y^{s-1/2} dy/y by panelled quadrature in log y.  Cuspidal input only
/// (the constant-term subtraction would otherwise leave a non-decaying
/// integrand near 0 unless Re s > 1).
inline EichlerValue eichler_integral(const FormEvaluator& ev, const Rational& x,
                                     Complex s,
                                     const Precision& prec = Precision{},
                                     bool raised = false) {
  const FormSpec& f = ev.spec();
  if (!f.cuspidal() && s.real() <= 1.0)
    throw DomainError("eichler_integral: non-cuspidal input needs Re s > 1");
  if (f.level != 1)
    throw DomainError("eichler_integral: level-1 reduction only");
  const double q = static_cast<double>(x.den());
  const double xx = x.to_double();
  const double y_hi = ev.y_cusp_cut() * (raised ? 0.5 : 1.0) + 1.0;
  const double y_lo = kTwoPi / (q * q * (kTwoPi * ev.y_cusp_cut()));
  auto integrand = [&](double u) -> Complex {
    double y = std::exp(u);
    Complex z(xx, y);
    Complex val = raised ? ev.eval_raised_point(z, prec) : ev.eval_point(z, prec);
    return val * std::exp(u * (s - 0.5));
  };
  EichlerValue out;
  out.value = edetail::adaptive_log_quadrature(
      integrand, std::log(y_lo), std::log(y_hi), prec.abs_tol, &out.est_error);
  return out;
}

enum class OmegaMethod { quadrature, hypergeometric, closed_half };

/// Mellin transform Omega_beta(alpha, s) of the Whittaker function.
inline Complex omega_mellin(double alpha, Complex beta, Complex s,
                            OmegaMethod method,
                            const Precision& prec = Precision{}) {
  const bool imag_axis = std::abs(beta.real()) < 1e-13;
  const bool real_axis = std::abs(beta.imag()) < 1e-13;
  if (!imag_axis && !real_axis)
    throw UnsupportedParameter("omega_mellin: beta off both axes");
  if (real_axis && !(beta.real() >= 0.0 && beta.real() < 0.5) && method != OmegaMethod::hypergeometric)
    throw DomainError("omega_mellin: Re beta outside [0, 1/2)");
  switch (method) {
    case OmegaMethod::closed_half: {
      // s = 1/2 closed form
      return std::pow(kPi, 1.5) * std::pow(2.0, alpha) /
             (std::cos(kPi * beta) *
              specfun::gamma_complex(Complex(0.75 - alpha / 2.0, 0.0) + beta / 2.0) *
              specfun::gamma_complex(Complex(0.75 - alpha / 2.0, 0.0) - beta / 2.0));
    }
    case OmegaMethod::hypergeometric: {
      Complex c = s - alpha + 0.5;
      if (std::abs(c.imag()) < 1e-12 &&
          std::abs(c.real() - std::round(c.real())) < 1e-12 &&
          c.real() < 0.5) {
        // the series representation degenerates; at the central point the
        // closed form covers every alpha
        if (std::abs(s - Complex(0.5, 0.0)) < 1e-12)
          return omega_mellin(alpha, beta, s, OmegaMethod::closed_half, prec);
        throw UnsupportedParameter(
            "omega_mellin: hypergeometric parameter degenerates here");
      }
      return specfun::gamma_complex(s + beta) * specfun::gamma_complex(s - beta) /
             specfun::gamma_complex(c) *
             specfun::hyp2f1(s - beta, s + beta, c, Complex(0.5, 0.0), prec);
    }
    case OmegaMethod::quadrature: {
      double mu2 = imag_axis ? -beta.imag() * beta.imag()
                             : beta.real() * beta.real();
      if (!(s.real() > std::abs(beta.real())))
        throw DomainError("omega_mellin: quadrature needs Re s > |Re beta|");
      // upper range via the table, then the oscillatory descent in log y
      specfun::WhittakerTable tab(alpha, mu2, 1.5,
                                  90.0 + 3.0 * std::abs(s.real()));
      auto upper = [&](double u) {
        double y = std::exp(u);
        return Complex(tab.value(y), 0.0) * std::exp(u * (s - 0.5));
      };
      Complex hi = edetail::adaptive_log_quadrature(
          upper, std::log(2.0), std::log(tab.y_max() - 1.0), prec.abs_tol,
          nullptr);
      // augmented ODE descent from y = 2 with the Mellin accumulator:
      // state (W, dW/du, Q), dQ/du = W e^{u(s-1/2)}
      long double W = tab.value(2.0);
      long double dW = 2.0L * tab.deriv(2.0);  // dW/du = y W'
      std::complex<long double> Q(0.0L, 0.0L);
      const std::complex<long double> sshift(s.real() - 0.5, s.imag());
      double freq = std::sqrt(std::abs(mu2)) + 1.0;
      const long double h = -8e-4 / freq;
      // stop once the remaining amplitude y^{1/2}-scale cannot matter
      double decay_pow = 0.5 - std::max(0.0, beta.real()) + s.real() - 0.5;
      double u_min = std::log(prec.abs_tol) / std::max(0.25, decay_pow) - 3.0;
      u_min = std::max(u_min, -44.0);
      long double u = std::log(2.0L);
      auto rhs = [&](long double uu, long double w, long double dw,
                     long double& ow, long double& odw,
                     std::complex<long double>& oq) {
        long double e_u = std::exp(uu);
        ow = dw;
        odw = dw + (e_u * e_u / 4.0L - alpha * e_u - (0.25L - mu2)) * w;
        oq = w * std::exp(sshift * uu);
      };
      while (u > u_min) {
        long double k1w, k1d, k2w, k2d, k3w, k3d, k4w, k4d;
        std::complex<long double> k1q, k2q, k3q, k4q;
        rhs(u, W, dW, k1w, k1d, k1q);
        rhs(u + h / 2, W + h / 2 * k1w, dW + h / 2 * k1d, k2w, k2d, k2q);
        rhs(u + h / 2, W + h / 2 * k2w, dW + h / 2 * k2d, k3w, k3d, k3q);
        rhs(u + h, W + h * k3w, dW + h * k3d, k4w, k4d, k4q);
        W += h / 6 * (k1w + 2 * k2w + 2 * k3w + k4w);
        dW += h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
        Q += h / 6 * (k1q + 2.0L * k2q + 2.0L * k3q + k4q);
        u += h;
      }
      // descending integration accumulates -int_{u_min}^{log 2}; flip sign
      return hi + Complex(static_cast<double>(-Q.real()),
                          static_cast<double>(-Q.imag()));
    }
  }
  throw Error("omega_mellin: unreachable");
}

/// Determinant combination of four Omega values and its closed Gamma form.
struct DeltaDet {
  Complex combination;
  Complex closed;
};

inline DeltaDet delta_det(double alpha, Complex beta, Complex s,
                          const Precision& prec = Precision{}) {
  auto om = [&](double a) {
    return omega_mellin(a, beta, s, OmegaMethod::hypergeometric, prec);
  };
  Complex comb = (0.5 + alpha + beta) * (0.5 + alpha - beta) *
                     om(-alpha - 1.0) * om(alpha) +
                 om(-alpha) * om(alpha + 1.0);
  Complex closed = std::pow(Complex(4.0, 0.0), s) *
                   specfun::gamma_complex(s + beta) *
                   specfun::gamma_complex(s - beta);
  return {comb, closed};
}

enum class UpsilonMethod { geodesic_quadrature, closed };

/// Geodesic boundary integral Upsilon_{k,eta}(tau) and its closed form.
inline Complex upsilon(int k, int eta, Complex tau, UpsilonMethod method,
                       const Precision& prec = Precision{}) {
  if (!(tau.real() > 0.0)) throw DomainError("upsilon: Re tau must be > 0");
  if (eta != 1 && eta != -1) throw DomainError("upsilon: eta must be +-1");
  if (method == UpsilonMethod::closed) {
    Complex phase = std::exp(Complex(0.0, kPi * (2.0 - eta) * k / 4.0));
    // denominator Gamma poles (odd k at half-integer tau) give a zero value
    auto rgamma = [](Complex z) -> Complex {
      try {
        return 1.0 / specfun::gamma_complex(z);
      } catch (const PoleError&) {
        return Complex(0.0, 0.0);
      }
    };
    return phase * 2.0 * kPi * specfun::gamma_complex(tau) /
           std::pow(Complex(4.0, 0.0), tau) *
           rgamma((tau + 1.0 + k / 2.0) / 2.0) *
           rgamma((tau + 1.0 - k / 2.0) / 2.0);
  }
  // quadrature: Upsilon_{k,1}(tau) = 2^{-tau} int_0^pi e^{ik theta/2}
  // (sin theta)^{tau-1} dtheta; eta = -1 reduces by k -> -k with (-1)^k
  int keff = (eta == 1) ? k : -k;
  // f evaluated with the distance to the nearer endpoint carried exactly,
  // so that (sin theta)^{tau-1} does not amplify representation noise
  auto f = [&](double theta, double edge_dist) -> Complex {
    return std::exp(Complex(0.0, keff * theta / 2.0) +
                    (tau - 1.0) * std::log(std::sin(edge_dist)));
  };
  Complex acc(0.0, 0.0);
  const double H = 4.0;
  int n = 160;
  Complex prev(0.0, 0.0);
  for (int ref = 0; ref < 8; ++ref) {
    double h = 2.0 * H / n;
    acc = Complex(0.0, 0.0);
    for (int i = 0; i <= n; ++i) {
      double w = -H + i * h;
      double x = kPi / 2.0 * std::sinh(std::abs(w));
      double delta = kPi / (1.0 + std::exp(2.0 * x));  // (pi/2)(1 - tanh x)
      double theta = (w < 0.0) ? delta : kPi - delta;
      double dtheta = kPi / 2.0 * (kPi / 2.0) * std::cosh(w) /
                      std::pow(std::cosh(x), 2);
      if (delta <= 0.0) continue;
      acc += f(theta, delta) * dtheta * h;
    }
    if (ref > 0 && std::abs(acc - prev) < 0.5 * prec.abs_tol) break;
    prev = acc;
    n *= 2;
  }
  Complex val = std::pow(Complex(2.0, 0.0), -tau) * acc;
  if (eta == -1 && (k % 2 != 0)) val = -val;
  return val;
}

/// The linear-combination constants carrying L^± values to Eichler
/// integrals of phi and psi (Maass case) or of f (holomorphic case).
struct SpectralConstants {
  Complex c_phi_plus{0.0, 0.0}, c_phi_minus{0.0, 0.0};
  Complex c_psi_plus{0.0, 0.0}, c_psi_minus{0.0, 0.0};
  Complex c_f{0.0, 0.0};
  bool holomorphic = false;
};

namespace edetail {

// Cramer-route constants at general s (Maass case): the solved column of
// the 2x2 Whittaker-Mellin system, combined with the sign split.
inline void cramer_constants(int k, double t, int eps, Complex s,
                             Complex& c_phi_pm_plus, Complex& c_phi_pm_minus,
                             Complex& c_psi_pm_plus, Complex& c_psi_pm_minus,
                             const Precision& prec = Precision{}) {
  Complex beta(0.0, t);
  Complex s_phi(0.5, t);
  double k2 = k / 2.0;
  auto om = [&](double a) {
    return omega_mellin(a, beta, s, OmegaMethod::hypergeometric, prec);
  };
  Complex fourpi = std::pow(Complex(4.0 * kPi, 0.0), s - 0.5);
  Complex gphi_p = fourpi * om(-k2 - 1.0) * (s_phi + k2) * (1.0 - s_phi + k2);
  Complex gpsi_p = -fourpi * om(-k2);
  Complex gphi_m = fourpi * om(k2 + 1.0);
  Complex gpsi_m = fourpi * om(k2);
  Complex delta = std::pow(Complex(4.0, 0.0), s) *
                  specfun::gamma_complex(s + beta) *
                  specfun::gamma_complex(s - beta);
  Complex ratio = static_cast<double>(eps) *
                  specfun::gamma_ratio(s_phi - k2, s_phi + k2);
  c_phi_pm_plus = (gphi_p + ratio * gphi_m) / (2.0 * delta);
  c_phi_pm_minus = (gphi_p - ratio * gphi_m) / (2.0 * delta);
  c_psi_pm_plus = (gpsi_p + ratio * gpsi_m) / (2.0 * delta);
  c_psi_pm_minus = (gpsi_p - ratio * gpsi_m) / (2.0 * delta);
}

}  // namespace edetail

/// Closed-form spectral constants at s = 1/2, cross-checked against the
/// Cramer-rule route.
inline SpectralConstants spectral_constants(const FormSpec& spec,
                                            bool crosscheck = true) {
  SpectralConstants out;
  if (spec.holomorphic()) {
    out.holomorphic = true;
    int k = spec.weight;
    // c_f = Gamma(k) / (2^{k/2} Gamma(k/2) Gamma(1) Gamma(k)) for l = k
    out.c_f = Complex(1.0 / (std::pow(2.0, k / 2.0) *
                             specfun::gamma_complex(Complex(k / 2.0, 0.0)).real()),
                      0.0);
    return out;
  }
  if (spec.kind != FormKind::maass_cusp)
    throw DomainError("spectral_constants: Maass or holomorphic input only");
  int k = spec.weight;
  if (k != 0 && k != 1)
    throw DomainError("spectral_constants: weights 0 and 1 only");
  double t = spec.spectral_t.real();
  int eps = spec.sign_eps;
  const Complex it_half(0.0, t / 2.0);
  const double pref = std::sqrt(kPi) * std::pow(2.0, -1.0 - k / 2.0);
  Complex g1 = specfun::gamma_complex(Complex((1.0 + k) / 4.0, 0.0) + it_half) *
               specfun::gamma_complex(Complex((1.0 + k) / 4.0, 0.0) - it_half);
  Complex g3 = specfun::gamma_complex(Complex((3.0 + k) / 4.0, 0.0) + it_half) *
               specfun::gamma_complex(Complex((3.0 + k) / 4.0, 0.0) - it_half);
  Complex arg_p = kPi / 2.0 * Complex((1.0 + k) / 2.0, t);
  Complex arg_m = kPi / 2.0 * Complex((1.0 + k) / 2.0, -t);
  Complex T1 = std::cos(arg_p) / std::sin(arg_m);
  Complex T2 = std::sin(arg_p) / std::cos(arg_m);
  out.c_phi_plus = pref / g1 * (1.0 + static_cast<double>(eps) * T1);
  out.c_phi_minus = pref / g1 * (1.0 - static_cast<double>(eps) * T1);
  out.c_psi_plus = pref / g3 * (-1.0 + static_cast<double>(eps) * T2);
  out.c_psi_minus = pref / g3 * (-1.0 - static_cast<double>(eps) * T2);
  if (crosscheck) {
    Complex cpp, cpm, cqp, cqm;
    edetail::cramer_constants(k, t, eps, Complex(0.5, 0.0), cpp, cpm, cqp, cqm);
    double worst = std::max({std::abs(cpp - out.c_phi_plus),
                             std::abs(cpm - out.c_phi_minus),
                             std::abs(cqp - out.c_psi_plus),
                             std::abs(cqm - out.c_psi_minus)});
    if (worst > 1e-10)
      throw NoConvergence("spectral_constants: closed and Cramer routes disagree");
  }
  return out;
}

/// One row of the identity-suite report.
struct IdentityResult {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool pass() const { return max_residual <= threshold; }
};

/// Randomized residual checks of the hypergeometric product identities and
/// the functional-equation constant relation.
inline std::vector<IdentityResult> appendix_identity_suite(int trials,
                                                           std::uint64_t seed) {
  if (trials < 1) throw DomainError("appendix_identity_suite: trials >= 1");
  std::vector<IdentityResult> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(-1.4, 1.4), uz(-0.42, 0.42);
  auto F = [&](Complex a, Complex b, Complex c, Complex z) {
    return specfun::hyp2f1(a, b, c, z);
  };
  auto G = [&](Complex z) { return specfun::gamma_complex(z); };

  {
    IdentityResult r{"product-wronskian identity", 0.0, 1e-9};
    for (int i = 0; i < trials; ++i) {
      Complex a(ur(rng), ur(rng)), b(ur(rng), ur(rng));
      Complex c(ur(rng) + 0.37, ur(rng));
      if (std::abs(c.real() - std::round(c.real())) < 0.08 &&
          std::abs(c.imag()) < 0.08) {
        --i;
        continue;
      }
      Complex z(uz(rng), uz(rng));
      if (std::abs(z) > 0.6 || std::abs(z) < 1e-3) {
        --i;
        continue;
      }
      Complex lhs = (c - a) * (c - b) / (c * (c - 1.0)) * z *
                        F(a - c + 1.0, b - c + 1.0, 2.0 - c, z) *
                        F(a, b, c + 1.0, z) +
                    F(a - c, b - c, 1.0 - c, z) * F(a, b, c, z);
      Complex rhs = std::pow(1.0 - z, c - a - b);
      r.max_residual = std::max(r.max_residual, std::abs(lhs - rhs));
    }
    out.push_back(r);
  }

  {
    IdentityResult r{"half-argument gamma evaluation", 0.0, 1e-9};
    for (int i = 0; i < trials; ++i) {
      Complex a(ur(rng), ur(rng)), b(ur(rng), ur(rng));
      Complex c(ur(rng) + 0.21, ur(rng));
      Complex abc = a + b - c;
      auto near_int = [](Complex w) {
        return std::abs(w.real() - std::round(w.real())) < 0.1 &&
               std::abs(w.imag()) < 0.1;
      };
      if (near_int(c) || near_int(abc) || near_int(a) || near_int(b)) {
        --i;
        continue;
      }
      Complex half(0.5, 0.0);
      Complex lhs = (c - a) * (c - b) * F(a, b, abc + 1.0, half) *
                        F(a, b, c + 1.0, half) +
                    c * abc * F(a, b, abc, half) * F(a, b, c, half);
      Complex rhs = std::pow(Complex(2.0, 0.0), a + b) / (G(a) * G(b)) *
                    G(abc + 1.0) * G(c + 1.0);
      double scale = std::max(1.0, std::abs(rhs));
      r.max_residual = std::max(r.max_residual, std::abs(lhs - rhs) / scale);
    }
    out.push_back(r);
  }

  {
    IdentityResult r{"half-argument quotient with integer offset", 0.0, 1e-8};
    std::uniform_int_distribution<int> un(-3, 3);
    auto Gpm = [&](Complex a, Complex b, Complex c, int sign) {
      return G(c) / G(1.0 - c + a + b) * F(a, b, 1.0 - c + a + b, Complex(0.5, 0.0)) +
             static_cast<double>(sign) * G(c - a) / G(1.0 - c + b) *
                 F(a, b, c, Complex(0.5, 0.0));
    };
    for (int i = 0; i < trials; ++i) {
      Complex a(ur(rng), ur(rng)), b(ur(rng), ur(rng));
      int n = un(rng);
      Complex c = (a + b - static_cast<double>(n)) / 2.0;
      auto bad = [](Complex w) {
        return std::abs(w.real() - std::round(w.real())) < 0.12 &&
               std::abs(w.imag()) < 0.12;
      };
      Complex nab(static_cast<double>(n), 0.0);
      if (bad(c) || bad(a) || bad(b) || bad(c - a) || bad(c - b) ||
          bad(1.0 - c + a) || bad(1.0 - c + b) || bad(1.0 - c + a + b) ||
          bad(1.0 + c - a - b) || bad((2.0 + nab - a - b) / 2.0) ||
          bad((2.0 - nab - a - b) / 2.0)) {
        --i;
        continue;
      }
      for (int sign : {+1, -1}) {
        Complex lhs = Gpm(a, b, c, sign) /
                      Gpm(1.0 - a, 1.0 - b, 1.0 + c - a - b, sign);
        Complex nab = Complex(static_cast<double>(n), 0.0);
        Complex rhs = std::pow(Complex(-1.0, 0.0), n) *
                      std::pow(Complex(2.0, 0.0), a + b - 1.0) * G(1.0 - a) *
                      G(1.0 - b) /
                      (G((2.0 + nab - a - b) / 2.0) * G((2.0 - nab - a - b) / 2.0)) *
                      (-1.0 + static_cast<double>(sign) *
                                  std::sin(kPi / 2.0 * (nab + a - b)) /
                                  std::sin(kPi / 2.0 * (nab + a + b)));
        double scale = std::max(1.0, std::abs(rhs));
        r.max_residual = std::max(r.max_residual, std::abs(lhs - rhs) / scale);
      }
    }
    out.push_back(r);
  }

  {
    // functional-equation constants: c_phi^pm(s) = Psi_pm(s)
    // c_phi^{pm(-1)^k}(1-s), c_psi flips sign, at a few s off the center
    IdentityResult r{"spectral-constant reflection", 0.0, 1e-8};
    for (double t : {9.5336952613532, 13.7797513518907}) {
      for (int k : {0, 1}) {
        for (int eps : {+1, -1}) {
          for (double soff : {0.13, -0.21}) {
            Complex s(0.5 + soff, 0.0);
            Complex cpp, cpm, cqp, cqm, dpp, dpm, dqp, dqm;
            edetail::cramer_constants(k, t, eps, s, cpp, cpm, cqp, cqm);
            edetail::cramer_constants(k, t, eps, 1.0 - s, dpp, dpm, dqp, dqm);
            auto psi = [&](int pm) {
              double d1 = (1.0 - pm * eps * ((k % 2 == 0) ? 1.0 : -1.0)) / 4.0;
              double d2 = (1.0 - pm * eps) / 4.0;
              int nu_exp = static_cast<int>(
                  std::floor(k / 2.0 - (1.0 - pm * eps) / 4.0));
              double nu = (nu_exp % 2 == 0) ? 1.0 : -1.0;
              Complex it(0.0, t);
              return nu * std::pow(Complex(kPi, 0.0), 2.0 * s - 1.0) *
                     specfun::gamma_complex((1.0 - s - it) / 2.0 + d1) *
                     specfun::gamma_complex((1.0 - s + it) / 2.0 + d2) /
                     (specfun::gamma_complex((s + it) / 2.0 + d1) *
                      specfun::gamma_complex((s - it) / 2.0 + d2));
            };
            bool keven = (k % 2 == 0);
            Complex rp1 = cpp - psi(+1) * (keven ? dpp : dpm);
            Complex rp2 = cpm - psi(-1) * (keven ? dpm : dpp);
            Complex rq1 = cqp + psi(+1) * (keven ? dqp : dqm);
            Complex rq2 = cqm + psi(-1) * (keven ? dqm : dqp);
            double scale = std::max(
                {1.0, std::abs(cpp), std::abs(cpm), std::abs(cqp), std::abs(cqm)});
            r.max_residual = std::max(
                {r.max_residual, std::abs(rp1) / scale, std::abs(rp2) / scale,
                 std::abs(rq1) / scale, std::abs(rq2) / scale});
          }
        }
      }
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace ltwist
