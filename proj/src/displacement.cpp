#include "pspace/displacement.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

#include "pspace/specfun.hpp"

namespace pspace {

int DisplacementMatrix::guard() const {
  // Rows above dim - guard lose mass to truncation: a displaced |m> has mean
  // photon number m + |a|^2 and variance |a|^2 (2m + 1), so the band scales
  // with sqrt(|a|^2 dim), not with |a|^2 alone.
  const double a2 = std::norm(alpha_);
  const double g = a2 + 3.0 * std::sqrt(a2 * (2.0 * dim() + 1.0)) + 10.0;
  return std::min(dim(), static_cast<int>(std::ceil(g)));
}

cdouble displacement_entry(int m, int n, cdouble alpha) {
  if (m < 0 || n < 0) throw std::domain_error("displacement_entry: negative index");
  const double a2 = std::norm(alpha);
  if (m >= n) {
    const double pref = sqrt_factorial_ratio(n, m) * std::exp(-0.5 * a2);
    return pref * std::pow(alpha, m - n) * laguerre_assoc(n, m - n, a2);
  }
  // D(alpha)_{mn} = conj(D(-alpha)_{nm}) for m < n
  const double pref = sqrt_factorial_ratio(m, n) * std::exp(-0.5 * a2);
  return pref * std::pow(-std::conj(alpha), n - m) * laguerre_assoc(m, n - m, a2);
}

DisplacementMatrix displacement_matrix(cdouble alpha, int dim) {
  if (dim < 1) throw std::invalid_argument("displacement_matrix: dim must be >= 1");
  Eigen::MatrixXcd out(dim, dim);
  const double a2 = std::norm(alpha);
  const double env = std::exp(-0.5 * a2);
  // One Laguerre recurrence per diagonal d = |m - n| serves both triangles:
  // lower (m = n+d):  sqrt(n!/m!) alpha^d env L_n^{(d)}(a2)
  // upper (n = m+d):  sqrt(m!/n!) (-conj(alpha))^d env L_m^{(d)}(a2)
  for (int d = 0; d < dim; ++d) {
    const cdouble lo_pow = std::pow(alpha, d);
    const cdouble hi_pow = std::pow(-std::conj(alpha), d);
    double lm1 = 0.0;
    double l = 1.0;  // L_0^{(d)}
    for (int n = 0; n + d < dim; ++n) {
      if (n > 0) {
        const double lp1 = ((2.0 * (n - 1) + 1.0 + d - a2) * l - (n - 1 + d) * lm1) / n;
        lm1 = l;
        l = lp1;
      }
      const double pref = sqrt_factorial_ratio(n, n + d) * env * l;
      out(n + d, n) = pref * lo_pow;
      out(n, n + d) = pref * hi_pow;
    }
  }
  return DisplacementMatrix(alpha, std::move(out));
}

Eigen::VectorXcd apply_displacement(cdouble alpha, const Eigen::VectorXcd& v) {
  const int dim = static_cast<int>(v.size());
  return displacement_matrix(alpha, dim).entries() * v;
}

namespace {
int squeeze_guard(double xi, int dim) {
  const double spread = static_cast<double>(dim) * (std::exp(2.0 * std::abs(xi)) - 1.0);
  long g = std::lround(std::ceil(spread));
  g = std::max<long>(g, 20);
  g = std::min<long>(g, 4L * dim);
  return static_cast<int>(g);
}
}  // namespace

SqueezeMatrix squeeze_matrix(double xi, int dim) {
  if (dim < 1) throw std::invalid_argument("squeeze_matrix: dim must be >= 1");
  if (std::abs(xi) > 3.0)
    throw std::domain_error("squeeze_matrix: |xi| <= 3 required (truncation dominates beyond)");
  const int guard = squeeze_guard(xi, dim);
  const int full = dim + guard;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(full, full);
  for (int n = 1; n < full; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd gen = 0.5 * xi * (a * a - (a * a).transpose());
  Eigen::MatrixXd S = gen.exp();
  // S is orthogonal on the full dimension, so 1 - (S_trim S_trim^T)_{mm} is
  // exactly the mass row m loses to the cut columns. The trusted block keeps
  // rows whose squeezed support stays well inside the kept dim.
  const int trusted = std::max(
      1, std::min(dim, static_cast<int>(std::floor(0.25 * dim * std::exp(-2.0 * std::abs(xi))))));
  double defect = 0.0;
  for (int m = 0; m < trusted; ++m)
    defect = std::max(defect, S.row(m).tail(full - dim).squaredNorm());
  if (defect > 1e-6)
    throw std::runtime_error("squeeze_matrix: truncation-error estimate " + std::to_string(defect) +
                             " above 1e-6");
  return SqueezeMatrix(xi, S.topLeftCorner(dim, dim), defect, guard);
}

double squeeze_element(double xi, int m, int n) {
  if (m < 0 || n < 0) throw std::domain_error("squeeze_element: negative index");
  if ((m - n) % 2 != 0) return 0.0;  // parity superselection
  const double t_half = std::tanh(xi) / 2.0;
  const double log_cosh = std::log(std::cosh(xi));
  double sum = 0.0;
  for (int p = n % 2; p <= std::min(m, n); p += 2) {
    const int j = (m - p) / 2;
    const int k = (n - p) / 2;
    const double lg = 0.5 * (log_factorial(m) + log_factorial(n)) - log_factorial(p) -
                      log_factorial(j) - log_factorial(k) - (p + 0.5) * log_cosh;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::pow(t_half, j + k) * std::exp(lg);
  }
  return sum;
}

cdouble characteristic_function(const DensityMatrix& rho, cdouble alpha) {
  const DisplacementMatrix d = displacement_matrix(alpha, rho.dim());
  return (rho.entries() * d.entries()).trace();
}

}  // namespace pspace
