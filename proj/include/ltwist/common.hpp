#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ltwist {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Target accuracy and effort bounds shared by the iterative evaluators.
// One table of defaults so CI has a single tuning point.
struct Precision {
  double abs_tol = 1e-11;
  int max_terms = 1 << 20;

  static Precision strict() { return Precision{1e-13, 1 << 22}; }
  static Precision loose() { return Precision{1e-8, 1 << 18}; }

  void validate() const {
    if (!(abs_tol >= 1e-14 && abs_tol <= 1e-3))
      throw std::invalid_argument("Precision.abs_tol outside [1e-14, 1e-3]");
    if (max_terms < 16) throw std::invalid_argument("Precision.max_terms < 16");
  }
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what) : Error(what) {}
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(const std::string& what) : Error(what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

class UnsupportedParameter : public Error {
 public:
  explicit UnsupportedParameter(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

class NotInvertible : public Error {
 public:
  explicit NotInvertible(const std::string& what) : Error(what) {}
};

class MissingPrime : public Error {
 public:
  explicit MissingPrime(const std::string& what) : Error(what) {}
};

class NonCuspidal : public Error {
 public:
  explicit NonCuspidal(const std::string& what) : Error(what) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what) : Error(what) {}
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Complex z, const char* where) {
  if (!is_finite(z)) throw Error(std::string("non-finite value in ") + where);
}

}  // namespace ltwist
