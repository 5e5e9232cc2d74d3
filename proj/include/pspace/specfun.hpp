#pragma once

#include <cmath>
#include <vector>

namespace pspace {

/// Generalized Laguerre polynomial L_n^{(k)}(x) by the three-term recurrence
/// in the degree. Requires n >= 0 and n + k >= 0 (polynomial regime).
double laguerre_assoc(int n, int k, double x);

/// n-th normalized harmonic-oscillator eigenfunction (hbar = 1), so that
/// integral of hermite_psi(n,x)^2 over the line is 1.
double hermite_psi(int n, double x);

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }
inline double sech(double x) { return 1.0 / std::cosh(x); }
inline double arcsinh(double x) { return std::asinh(x); }

/// Table of ln(n!) for n = 0..n_max; values[0] = 0, strictly increasing from n = 1.
class LogFactorialTable {
 public:
  explicit LogFactorialTable(int n_max);
  double operator()(int n) const { return values_.at(static_cast<size_t>(n)); }
  int n_max() const { return static_cast<int>(values_.size()) - 1; }

 private:
  std::vector<double> values_;
};

/// ln(n!) from a shared table (covers the spec's overflow guard up to n = 2000
/// and beyond); falls back to lgamma for larger n.
double log_factorial(int n);

/// sqrt(n!/m!) evaluated through log-space differences.
inline double sqrt_factorial_ratio(int n, int m) {
  return std::exp(0.5 * (log_factorial(n) - log_factorial(m)));
}

}  // namespace pspace
