#include <cmath>
#include <vector>

#include "pspace/bj.hpp"
#include "pspace/displacement.hpp"
#include "pspace/specfun.hpp"

namespace pspace {

namespace {

// Gauss-Hermite nodes/weights for weight e^{-t^2} (Golub-Welsch on the
// symmetric Jacobi matrix).
void gauss_hermite(int n, std::vector<double>* nodes, std::vector<double>* weights) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = std::sqrt(i / 2.0);
    jac(i - 1, i) = b;
    jac(i, i - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  nodes->resize(n);
  weights->resize(n);
  const double mu0 = std::sqrt(M_PI);
  for (int i = 0; i < n; ++i) {
    (*nodes)[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    (*weights)[i] = mu0 * v0 * v0;
  }
}

// Gauss-Legendre on [-1, 1] (Golub-Welsch).
void gauss_legendre(int n, std::vector<double>* nodes, std::vector<double>* weights) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jac(i - 1, i) = b;
    jac(i, i - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  nodes->resize(n);
  weights->resize(n);
  for (int i = 0; i < n; ++i) {
    (*nodes)[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    (*weights)[i] = 2.0 * v0 * v0;
  }
}

// Envelope-stripped displacement block: P_{mn} = D(alpha)_{mn} e^{+|alpha|^2/2}
// (polynomial part only, so Gauss-Hermite can carry the Gaussian analytically).
void stripped_displacement(cdouble alpha, int dim, Eigen::MatrixXcd* out) {
  const double a2 = std::norm(alpha);
  for (int d = 0; d < dim; ++d) {
    const cdouble lo_pow = std::pow(alpha, d);
    const cdouble hi_pow = std::pow(-std::conj(alpha), d);
    double lm1 = 0.0, l = 1.0;
    for (int n = 0; n + d < dim; ++n) {
      if (n > 0) {
        const double lp1 = ((2.0 * (n - 1) + 1.0 + d - a2) * l - (n - 1 + d) * lm1) / n;
        lm1 = l;
        l = lp1;
      }
      const double pref = sqrt_factorial_ratio(n, n + d) * l;
      (*out)(n + d, n) = pref * lo_pow;
      (*out)(n, n + d) = pref * hi_pow;
    }
  }
}

// (1/4pi) int sinc(px/2) D((x+ip)/sqrt2) dx dp with a K x K tensor
// Gauss-Hermite rule against the e^{-(x^2+p^2)/4} envelope of D.
Eigen::MatrixXcd oracle_sinc_displacement(int dim, int order) {
  std::vector<double> t, w;
  gauss_hermite(order, &t, &w);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd block(dim, dim);
  for (int i = 0; i < order; ++i) {
    const double x = 2.0 * t[i];
    for (int j = 0; j < order; ++j) {
      const double p = 2.0 * t[j];
      const cdouble alpha = cdouble(x, p) / std::sqrt(2.0);
      stripped_displacement(alpha, dim, &block);
      acc += (w[i] * w[j] * sinc(0.5 * p * x)) * block;
    }
  }
  return acc * (4.0 / (4.0 * M_PI));
}

// One panel-refined pass of the sech-squeeze integral
// (1/4) int sech(xi/2) S(xi) dxi, entries from the closed-form S elements.
Eigen::MatrixXd oracle_sech_squeeze(int dim, int panels, int order, double cutoff) {
  std::vector<double> x, w;
  gauss_legendre(order, &x, &w);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dim, dim);
  const double panel_width = 2.0 * cutoff / panels;
  for (int pi = 0; pi < panels; ++pi) {
    const double lo = -cutoff + pi * panel_width;
    const double mid = lo + 0.5 * panel_width;
    for (int q = 0; q < order; ++q) {
      const double xi = mid + 0.5 * panel_width * x[q];
      const double weight = 0.25 * w[q] * 0.5 * panel_width * sech(0.5 * xi);
      for (int m = 0; m < dim; ++m)
        for (int n = m % 2; n < dim; n += 2) acc(m, n) += weight * squeeze_element(xi, m, n);
    }
  }
  return acc;
}

// One pass of the tau-average: int_0^1 cosh(xi/2) S(xi) dtau, e^xi = tau/(1-tau).
// After the substitution the integrand is analytic on the closed interval.
Eigen::MatrixXd oracle_tau_average(int dim, int panels, int order) {
  std::vector<double> x, w;
  gauss_legendre(order, &x, &w);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dim, dim);
  const double panel_width = 1.0 / panels;
  for (int pi = 0; pi < panels; ++pi) {
    const double mid = (pi + 0.5) * panel_width;
    for (int q = 0; q < order; ++q) {
      const double tau = mid + 0.5 * panel_width * x[q];
      const double xi = std::log(tau / (1.0 - tau));
      const double weight = w[q] * 0.5 * panel_width * std::cosh(0.5 * xi);
      for (int m = 0; m < dim; ++m)
        for (int n = m % 2; n < dim; n += 2) acc(m, n) += weight * squeeze_element(xi, m, n);
    }
  }
  return acc;
}

void apply_parity_right(Eigen::MatrixXd* m) {
  for (int col = 1; col < m->cols(); col += 2) m->col(col) *= -1.0;
}

}  // namespace

ParityMatrix bj_matrix_quadrature_oracle(int dim, OracleMethod method) {
  if (dim < 1 || dim > 40)
    throw std::invalid_argument("bj_matrix_quadrature_oracle: oracle scale is dim in [1, 40]");
  constexpr double kTol = 1e-8;
  Eigen::MatrixXcd result;
  switch (method) {
    case OracleMethod::sinc_displacement: {
      int order = 48;
      Eigen::MatrixXcd prev = oracle_sinc_displacement(dim, order);
      for (int round = 0; round < 4; ++round) {
        order = order * 3 / 2;
        Eigen::MatrixXcd next = oracle_sinc_displacement(dim, order);
        const double diff = (next - prev).cwiseAbs().maxCoeff();
        prev = std::move(next);
        if (diff < kTol) break;
        if (round == 3)
          throw std::runtime_error("sinc-displacement oracle: quadrature did not converge");
      }
      result = std::move(prev);
      break;
    }
    case OracleMethod::sech_squeeze: {
      // sech(xi/2) tail beyond the cutoff integrates to < 1e-10
      const double cutoff = 2.0 * std::log(4.0 / 1e-10);
      int panels = 64;
      Eigen::MatrixXd prev = oracle_sech_squeeze(dim, panels, 12, cutoff);
      for (int round = 0; round < 4; ++round) {
        panels *= 2;
        Eigen::MatrixXd next = oracle_sech_squeeze(dim, panels, 12, cutoff);
        const double diff = (next - prev).cwiseAbs().maxCoeff();
        prev = std::move(next);
        if (diff < kTol) break;
        if (round == 3) throw std::runtime_error("sech-squeeze oracle: quadrature did not converge");
      }
      apply_parity_right(&prev);
      result = prev.cast<cdouble>();
      break;
    }
    case OracleMethod::tau_average: {
      int panels = 32;
      Eigen::MatrixXd prev = oracle_tau_average(dim, panels, 12);
      for (int round = 0; round < 4; ++round) {
        panels *= 2;
        Eigen::MatrixXd next = oracle_tau_average(dim, panels, 12);
        const double diff = (next - prev).cwiseAbs().maxCoeff();
        prev = std::move(next);
        if (diff < kTol) break;
        if (round == 3) throw std::runtime_error("tau-average oracle: quadrature did not converge");
      }
      apply_parity_right(&prev);
      result = prev.cast<cdouble>();
      break;
    }
  }
  return ParityMatrix(FilterKind::born_jordan(), std::move(result), Provenance::quadrature);
}

Eigen::VectorXd psi_plus_zero_fock(int dim) {
  if (dim < 1) throw std::invalid_argument("psi_plus_zero_fock: dim must be >= 1");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  // Gamma(3/4 - j) = Gamma(3/4) (-4)^j / prod_{i=1..j}(4i-3), so the inner
  // sum is exact-rational; only the positive prefactor is exponentiated.
  const double log_gamma34 = std::lgamma(0.75);
  for (int n = 0; n < dim; n += 4) {
    mpq_class sum = 0;
    mpz_class odd_prod = 1;  // prod (4i-3) for i = 1..j
    std::vector<mpz_class> prods(static_cast<size_t>(n / 2) + 1);
    for (int j = 0; j <= n / 2; ++j) {
      if (j > 0) odd_prod *= (4 * j - 3);
      prods[j] = odd_prod;
    }
    for (int k = 0; k <= n / 2; ++k) {
      const int j = n / 2 - k;
      mpz_class denom;
      mpz_fac_ui(denom.get_mpz_t(), static_cast<unsigned long>(k));
      mpz_class f2;
      mpz_fac_ui(f2.get_mpz_t(), static_cast<unsigned long>(n - 2 * k));
      denom *= f2;
      mpz_class four_pow;
      mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned long>(j));
      denom *= four_pow;
      mpz_class eight_pow;
      mpz_ui_pow_ui(eight_pow.get_mpz_t(), 8, static_cast<unsigned long>(k));
      denom *= eight_pow;
      mpq_class term(prods[static_cast<size_t>(j)], denom);
      if (j % 2 != 0) term = -term;
      sum += term;
    }
    sum.canonicalize();
    if (sum == 0) continue;
    const BigRational s{sum};
    // (1/(2 sqrt pi)) pi 2^{1/4} sqrt(n!) 2^n / Gamma(3/4) * sum
    const double lg = 0.5 * std::log(M_PI) - M_LN2 + 0.25 * M_LN2 + 0.5 * log_factorial(n) +
                      n * M_LN2 - log_gamma34 + s.log_abs();
    v(n) = s.sign() * std::exp(lg);
  }
  return v;
}

}  // namespace pspace
