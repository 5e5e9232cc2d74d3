#pragma once

#include <Eigen/Dense>

#include <string>

#include "pspace/fock.hpp"
#include "pspace/parity.hpp"

namespace pspace {

/// Rectangular (x, p) lattice, uniform spacing; alpha = (x + i p)/sqrt(2).
struct PhaseGrid {
  double x_min = -5, x_max = 5, p_min = -5, p_max = 5;
  int nx = 101, np = 101;

  PhaseGrid() = default;
  PhaseGrid(double x0, double x1, double p0, double p1, int nx_, int np_);
  /// Parses "xmin:xmax:nx,pmin:pmax:np".
  static PhaseGrid parse(const std::string& spec);

  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dp() const { return (p_max - p_min) / (np - 1); }
  double x(int i) const { return x_min + i * dx(); }
  double p(int j) const { return p_min + j * dp(); }
  cdouble alpha(int i, int j) const { return cdouble(x(i), p(j)) / std::sqrt(2.0); }
};

/// Sampled distribution F(x_i, p_j); real to 1e-10 whenever the kind's filter
/// has the reality symmetry (checked at construction).
class DistributionField {
 public:
  DistributionField(PhaseGrid grid, Eigen::MatrixXcd values, FilterKind kind);

  const PhaseGrid& grid() const { return grid_; }
  const Eigen::MatrixXcd& values() const { return values_; }
  const FilterKind& kind() const { return kind_; }
  cdouble operator()(int i, int j) const { return values_(i, j); }
  double max_abs_imag() const;

  /// CSV: "# kind=<k> nx=<..> np=<..>" header then "x,p,re,im" rows.
  void write_csv(const std::string& path) const;

 private:
  PhaseGrid grid_;
  Eigen::MatrixXcd values_;
  FilterKind kind_;
};

/// F(x_i, p_j) = (1/pi) Tr[rho D(alpha) Pi D(alpha)^dag] over the grid.
/// Diagonal Pi uses the reduced sum over |<mu|D^dag psi>|^2; rho enters
/// through its spectral decomposition. Rows are evaluated in parallel.
DistributionField evaluate(const DensityMatrix& rho, const ParityMatrix& parity,
                           const PhaseGrid& grid, int threads = 1);

/// Same expectation value at arbitrary phase-space points alpha_k.
Eigen::VectorXcd evaluate_points(const DensityMatrix& rho, const ParityMatrix& parity,
                                 const std::vector<cdouble>& alphas, int threads = 1);

DistributionField wigner(const DensityMatrix& rho, const PhaseGrid& grid, int threads = 1);
DistributionField husimi(const DensityMatrix& rho, const PhaseGrid& grid, int threads = 1);
DistributionField s_dist(const DensityMatrix& rho, double s, const PhaseGrid& grid,
                         int threads = 1);
DistributionField tau_dist(const DensityMatrix& rho, double tau, const PhaseGrid& grid,
                           int threads = 1);
/// Uses the conjecture-validated recursive Born-Jordan matrix at rho's dim.
DistributionField born_jordan(const DensityMatrix& rho, const PhaseGrid& grid, int threads = 1);

/// Eq.-level split of the Born-Jordan field of |n><n| into the radially
/// symmetric part (diagonal parity entries) and the rest (off-diagonals);
/// radial + nonradial reproduces the full field exactly.
struct BJDecomposition {
  DistributionField radial;
  DistributionField nonradial;
};
BJDecomposition bj_fock_decomposition(int n, const PhaseGrid& grid, int dim, int threads = 1);

/// Trapezoidal marginals; px(x_i) = int F dp, pp(p_j) = int F dx.
struct Marginals {
  Eigen::VectorXd px;
  Eigen::VectorXd pp;
  bool boundary_warning = false;  // some |boundary value| >= 1e-8
};
Marginals marginals(const DistributionField& field);

/// 2D trapezoidal integral of the real part.
double total_integral(const DistributionField& field);

/// Writes "x,value" rows.
void write_marginal_csv(const std::string& path, const Eigen::VectorXd& axis,
                        const Eigen::VectorXd& value);

/// Dual-route Cohen-class check for s in [-1, -0.2): the s-parametrized field
/// via parity expectation vs the FFT convolution of the Wigner field with the
/// Gaussian Cohen kernel on a padded grid. Returns the max abs deviation.
double cohen_convolution_check(const DensityMatrix& rho, double s, const PhaseGrid& grid,
                               int threads = 1);

/// Covariance check with a lattice shift of (steps_x, steps_p) grid steps:
/// evaluates the displaced state D(omega') rho D(omega')^dag and compares
/// against the lattice-shifted field. Returns the max abs deviation.
double covariance_check(const DensityMatrix& rho, const ParityMatrix& parity,
                        const PhaseGrid& grid, int steps_x, int steps_p, int threads = 1);

}  // namespace pspace
