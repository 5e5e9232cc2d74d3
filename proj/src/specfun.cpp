#include "pspace/specfun.hpp"

#include <stdexcept>

namespace pspace {

double laguerre_assoc(int n, int k, double x) {
  if (n < 0) throw std::domain_error("laguerre_assoc: n must be >= 0");
  if (n + k < 0) throw std::domain_error("laguerre_assoc: n + k must be >= 0");
  if (n == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + k - x;
  for (int i = 1; i < n; ++i) {
    double lp1 = ((2.0 * i + 1.0 + k - x) * l - (i + k) * lm1) / (i + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

double hermite_psi(int n, double x) {
  if (n < 0) throw std::domain_error("hermite_psi: n must be >= 0");
  // psi_0 = pi^{-1/4} e^{-x^2/2}; psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}
  double p0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return p0;
  double p1 = std::sqrt(2.0) * x * p0;
  for (int i = 1; i < n; ++i) {
    double p2 = std::sqrt(2.0 / (i + 1.0)) * x * p1 - std::sqrt(i / (i + 1.0)) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

LogFactorialTable::LogFactorialTable(int n_max) {
  if (n_max < 0) throw std::domain_error("LogFactorialTable: n_max must be >= 0");
  values_.resize(static_cast<size_t>(n_max) + 1);
  values_[0] = 0.0;
  for (int n = 1; n <= n_max; ++n) values_[n] = values_[n - 1] + std::log(static_cast<double>(n));
}

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: n must be >= 0");
  static const LogFactorialTable table(4096);
  if (n <= table.n_max()) return table(n);
  return std::lgamma(n + 1.0);
}

}  // namespace pspace
