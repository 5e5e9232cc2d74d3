#pragma once

#include <Eigen/Dense>

#include "pspace/fock.hpp"

namespace pspace {

/// Fock-basis displacement operator D(alpha), all N x N entries filled from
/// the Laguerre-recurrence formula along diagonals (lower triangle) and
/// D(alpha)^dag = D(-alpha) (upper triangle).
class DisplacementMatrix {
 public:
  DisplacementMatrix(cdouble alpha, Eigen::MatrixXcd entries)
      : alpha_(alpha), entries_(std::move(entries)) {}

  cdouble alpha() const { return alpha_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  /// Rows/cols below dim() - guard() are unaffected by truncation at 1e-8.
  int guard() const;

 private:
  cdouble alpha_;
  Eigen::MatrixXcd entries_;
};

DisplacementMatrix displacement_matrix(cdouble alpha, int dim);

/// Single entry <m|D(alpha)|n> without building the matrix.
cdouble displacement_entry(int m, int n, cdouble alpha);

/// Apply D(alpha) to a coefficient vector: returns the truncated image
/// D(alpha) v. Cost O(N^2); used by the per-grid-point evaluators.
Eigen::VectorXcd apply_displacement(cdouble alpha, const Eigen::VectorXcd& v);

/// Squeezing operator S(xi) = exp[(xi/2)(a^2 - a^dag^2)] in the Fock basis,
/// built by matrix exponential on dim + guard and trimmed to dim. Real and
/// parity-preserving (couples only equal-parity indices).
class SqueezeMatrix {
 public:
  SqueezeMatrix(double xi, Eigen::MatrixXd entries, double defect, int guard)
      : xi_(xi), entries_(std::move(entries)), truncation_defect_(defect), guard_(guard) {}

  double xi() const { return xi_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  /// Max |(S S^T - I)| over the trusted upper-left block (rows whose squeezed
  /// support stays inside the kept dimension).
  double truncation_defect() const { return truncation_defect_; }
  int guard() const { return guard_; }

 private:
  double xi_;
  Eigen::MatrixXd entries_;
  double truncation_defect_;
  int guard_;
};

/// Requires |xi| <= 3; throws if the trusted-block truncation estimate
/// exceeds 1e-6.
SqueezeMatrix squeeze_matrix(double xi, int dim);

/// Closed-form <m|S(xi)|n> via the normal-ordered (disentangled) finite sum;
/// valid for any xi, unlike the truncated matrix exponential. Used by the
/// quadrature oracles and to cross-check squeeze_matrix.
double squeeze_element(double xi, int m, int n);

/// chi(alpha) = Tr[rho D(alpha)].
cdouble characteristic_function(const DensityMatrix& rho, cdouble alpha);

}  // namespace pspace
