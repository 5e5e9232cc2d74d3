#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace pspace {

using cdouble = std::complex<double>;

// Conventions fixed once for the whole library: hbar = 1, lambda = 1, so
// alpha = (x + i p)/sqrt(2) and the phase-space measure is dx dp.

/// Truncated pure state: amplitudes <n|psi> for n = 0..N-1, unit norm.
class FockState {
 public:
  explicit FockState(Eigen::VectorXcd coeffs, bool renormalize = false);

  int dim() const { return static_cast<int>(coeffs_.size()); }
  cdouble coeff(int n) const { return coeffs_(n); }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  double norm() const { return coeffs_.norm(); }

 private:
  Eigen::VectorXcd coeffs_;
};

/// Truncated density operator: Hermitian, trace one, positive semi-definite
/// (within the stated tolerances, checked at construction).
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  cdouble operator()(int m, int n) const { return entries_(m, n); }

  /// Spectral decomposition with eigenvalues below `cutoff` dropped;
  /// returns pairs (p_i, |psi_i>) as columns.
  struct Spectral {
    Eigen::VectorXd probabilities;
    Eigen::MatrixXcd states;  // column i is |psi_i>
  };
  Spectral spectral(double cutoff = 1e-14) const;

 private:
  Eigen::MatrixXcd entries_;
};

/// Ladder and quadrature operator matrices: a[n-1,n] = sqrt(n),
/// x = (a + a^dag)/sqrt(2), p = i (a^dag - a)/sqrt(2).
struct LadderOps {
  explicit LadderOps(int dim);
  Eigen::MatrixXd a;
  Eigen::MatrixXcd x_op;
  Eigen::MatrixXcd p_op;
};

FockState number_state(int n, int dim);

struct CoherentResult {
  FockState state;
  double truncated_norm;  // norm captured by the truncation before renormalizing
};
/// Coherent state |alpha> in dimension `dim`. Requires the truncation to
/// capture at least 1 - 1e-10 of the norm (guard dim >= |a|^2 + 10 sqrt(|a|^2+1)).
CoherentResult coherent_state(cdouble alpha, int dim);

/// (|0> + |1>)/sqrt(2).
FockState cat_state(int dim);

DensityMatrix density_from_pure(const FockState& psi);

/// Convex mixture of pure states; weights must sum to 1 within 1e-12.
DensityMatrix density_mixture(const std::vector<std::pair<double, FockState>>& terms);

// JSON state files: {"dim": N, "coeffs": [[re,im],...]} for pure states or
// {"dim": N, "rho": [[[re,im],...],...]} for density matrices.
DensityMatrix load_density_json(const std::string& path);
void save_state_json(const std::string& path, const FockState& psi);
void save_density_json(const std::string& path, const DensityMatrix& rho);

}  // namespace pspace
