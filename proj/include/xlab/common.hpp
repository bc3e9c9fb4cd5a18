#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace xlab {

using cd = std::complex<double>;

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline constexpr double TWO_PI = 2.0 * PI;

// Configuration rejected; carries every offending field, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "invalid configuration:";
    for (const auto& e : v) { s += "\n  - "; s += e; }
    return s;
  }
  std::vector<std::string> issues_;
};

// Input outside the mathematical domain of an operation (point inside the
// region, modulus below the working annulus, non-symmetric measure, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative method ran out of iterations; carries the last iterate's
// residual so callers can decide whether "almost" is good enough.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations(iterations), residual(residual) {}
  int iterations;
  double residual;
};

// Factorization lost positivity before the requested degree.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, int largest_usable_degree)
      : std::runtime_error(what), largest_usable_degree(largest_usable_degree) {}
  int largest_usable_degree;
};

}  // namespace xlab
