#include "pspace/distribution.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "pspace/bj.hpp"
#include "pspace/displacement.hpp"
#include "pspace/threading.hpp"

namespace pspace {

PhaseGrid::PhaseGrid(double x0, double x1, double p0, double p1, int nx_, int np_)
    : x_min(x0), x_max(x1), p_min(p0), p_max(p1), nx(nx_), np(np_) {
  if (!(x_max > x_min) || !(p_max > p_min)) throw std::invalid_argument("PhaseGrid: empty ranges");
  if (nx < 2 || np < 2) throw std::invalid_argument("PhaseGrid: need at least 2 points per axis");
}

PhaseGrid PhaseGrid::parse(const std::string& spec) {
  // "xmin:xmax:nx,pmin:pmax:np"
  const auto comma = spec.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("grid spec: missing ','");
  auto parse_axis = [](const std::string& part, double* lo, double* hi, int* n) {
    std::istringstream ss(part);
    char c1, c2;
    if (!(ss >> *lo >> c1 >> *hi >> c2 >> *n) || c1 != ':' || c2 != ':')
      throw std::invalid_argument("grid spec: expected lo:hi:n, got '" + part + "'");
  };
  double x0, x1, p0, p1;
  int nx, np;
  parse_axis(spec.substr(0, comma), &x0, &x1, &nx);
  parse_axis(spec.substr(comma + 1), &p0, &p1, &np);
  return PhaseGrid(x0, x1, p0, p1, nx, np);
}

DistributionField::DistributionField(PhaseGrid grid, Eigen::MatrixXcd values, FilterKind kind)
    : grid_(grid), values_(std::move(values)), kind_(kind) {
  if (values_.rows() != grid_.nx || values_.cols() != grid_.np)
    throw std::invalid_argument("DistributionField: value shape does not match grid");
  if (kind_.reality_symmetry() && max_abs_imag() > 1e-10)
    throw std::runtime_error("DistributionField: real-kind field has imaginary residue " +
                             std::to_string(max_abs_imag()));
}

double DistributionField::max_abs_imag() const { return values_.imag().cwiseAbs().maxCoeff(); }

void DistributionField::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write field csv: " + path);
  char buf[160];
  std::snprintf(buf, sizeof buf, "# kind=%s nx=%d np=%d\n", kind_.label().c_str(), grid_.nx,
                grid_.np);
  out << buf;
  for (int i = 0; i < grid_.nx; ++i)
    for (int j = 0; j < grid_.np; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", grid_.x(i), grid_.p(j),
                    values_(i, j).real(), values_(i, j).imag());
      out << buf;
    }
}

DistributionField evaluate(const DensityMatrix& rho, const ParityMatrix& parity,
                           const PhaseGrid& grid, int threads) {
  const int dim = rho.dim();
  if (parity.dim() != dim) throw std::invalid_argument("evaluate: dimension mismatch");
  const DensityMatrix::Spectral spec = rho.spectral();
  const int rank = static_cast<int>(spec.probabilities.size());
  const bool diagonal = parity.is_diagonal();
  Eigen::VectorXcd diag;
  if (diagonal) diag = parity.entries().diagonal();

  Eigen::MatrixXcd values(grid.nx, grid.np);
  parallel_for(0, grid.nx, threads, [&](int i) {
    Eigen::MatrixXcd dmat;
    for (int j = 0; j < grid.np; ++j) {
      // u_r = D(alpha)^dag psi_r = D(-alpha) psi_r
      dmat = displacement_matrix(-grid.alpha(i, j), dim).entries();
      cdouble f = 0.0;
      for (int r = 0; r < rank; ++r) {
        const Eigen::VectorXcd u = dmat * spec.states.col(r);
        if (diagonal) {
          cdouble s = 0.0;
          for (int mu = 0; mu < dim; ++mu) s += diag(mu) * std::norm(u(mu));
          f += spec.probabilities(r) * s;
        } else {
          f += spec.probabilities(r) * (u.adjoint() * parity.entries() * u)(0);
        }
      }
      values(i, j) = f / M_PI;
    }
  });
  return DistributionField(grid, std::move(values), parity.kind());
}

Eigen::VectorXcd evaluate_points(const DensityMatrix& rho, const ParityMatrix& parity,
                                 const std::vector<cdouble>& alphas, int threads) {
  const int dim = rho.dim();
  if (parity.dim() != dim) throw std::invalid_argument("evaluate_points: dimension mismatch");
  const DensityMatrix::Spectral spec = rho.spectral();
  const int rank = static_cast<int>(spec.probabilities.size());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(alphas.size()));
  parallel_for(0, static_cast<int>(alphas.size()), threads, [&](int k) {
    const Eigen::MatrixXcd dmat = displacement_matrix(-alphas[static_cast<size_t>(k)], dim).entries();
    cdouble f = 0.0;
    for (int r = 0; r < rank; ++r) {
      const Eigen::VectorXcd u = dmat * spec.states.col(r);
      f += spec.probabilities(r) * (u.adjoint() * parity.entries() * u)(0);
    }
    out(k) = f / M_PI;
  });
  return out;
}

DistributionField wigner(const DensityMatrix& rho, const PhaseGrid& grid, int threads) {
  ParityMatrix p = parity_s(0.0, rho.dim());
  Eigen::MatrixXcd v = evaluate(rho, p, grid, threads).values();
  return DistributionField(grid, std::move(v), FilterKind::wigner());
}

DistributionField husimi(const DensityMatrix& rho, const PhaseGrid& grid, int threads) {
  return evaluate(rho, parity_s(-1.0, rho.dim()), grid, threads);
}

DistributionField s_dist(const DensityMatrix& rho, double s, const PhaseGrid& grid, int threads) {
  return evaluate(rho, parity_s(s, rho.dim()), grid, threads);
}

DistributionField tau_dist(const DensityMatrix& rho, double tau, const PhaseGrid& grid,
                           int threads) {
  return evaluate(rho, parity_tau(tau, rho.dim()), grid, threads);
}

DistributionField born_jordan(const DensityMatrix& rho, const PhaseGrid& grid, int threads) {
  const BJMatrixResult bj = bj_matrix_recursive(rho.dim(), 80, threads);
  return evaluate(rho, bj.matrix, grid, threads);
}

BJDecomposition bj_fock_decomposition(int n, const PhaseGrid& grid, int dim, int threads) {
  if (n < 0 || n >= dim) throw std::invalid_argument("bj_fock_decomposition: n outside truncation");
  const BJMatrixResult bj = bj_matrix_recursive(dim, 80, threads);
  Eigen::MatrixXcd diag = bj.matrix.entries().diagonal().asDiagonal();
  Eigen::MatrixXcd off = bj.matrix.entries() - diag;
  const DensityMatrix rho = density_from_pure(number_state(n, dim));
  const FilterKind kind = FilterKind::born_jordan();
  DistributionField radial =
      evaluate(rho, ParityMatrix(kind, std::move(diag), bj.matrix.provenance()), grid, threads);
  DistributionField nonradial =
      evaluate(rho, ParityMatrix(kind, std::move(off), bj.matrix.provenance()), grid, threads);
  return BJDecomposition{std::move(radial), std::move(nonradial)};
}

namespace {
double trapezoid_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }
}  // namespace

Marginals marginals(const DistributionField& field) {
  const PhaseGrid& g = field.grid();
  Marginals out;
  out.px = Eigen::VectorXd::Zero(g.nx);
  out.pp = Eigen::VectorXd::Zero(g.np);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.np; ++j) {
      const double v = field(i, j).real();
      out.px(i) += trapezoid_weight(j, g.np) * v * g.dp();
      out.pp(j) += trapezoid_weight(i, g.nx) * v * g.dx();
    }
  for (int i = 0; i < g.nx; ++i)
    if (std::abs(field(i, 0)) >= 1e-8 || std::abs(field(i, g.np - 1)) >= 1e-8)
      out.boundary_warning = true;
  for (int j = 0; j < g.np; ++j)
    if (std::abs(field(0, j)) >= 1e-8 || std::abs(field(g.nx - 1, j)) >= 1e-8)
      out.boundary_warning = true;
  return out;
}

double total_integral(const DistributionField& field) {
  const PhaseGrid& g = field.grid();
  double acc = 0.0;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.np; ++j)
      acc += trapezoid_weight(i, g.nx) * trapezoid_weight(j, g.np) * field(i, j).real();
  return acc * g.dx() * g.dp();
}

void write_marginal_csv(const std::string& path, const Eigen::VectorXd& axis,
                        const Eigen::VectorXd& value) {
  if (axis.size() != value.size()) throw std::invalid_argument("marginal csv: length mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write marginal csv: " + path);
  char buf[80];
  for (int i = 0; i < axis.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", axis(i), value(i));
    out << buf;
  }
}

namespace {

std::mutex fftw_mutex;  // FFTW planning is not thread-safe

// In-place 2D complex DFT (sign = FFTW_FORWARD or FFTW_BACKWARD), unscaled.
void fft2(Eigen::MatrixXcd& m, int sign) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    plan = fftw_plan_dft_2d(static_cast<int>(m.cols()), static_cast<int>(m.rows()),
                            reinterpret_cast<fftw_complex*>(m.data()),
                            reinterpret_cast<fftw_complex*>(m.data()), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    fftw_destroy_plan(plan);
  }
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

double cohen_convolution_check(const DensityMatrix& rho, double s, const PhaseGrid& grid,
                               int threads) {
  if (!(s < 0.0) || s < -1.0)
    throw std::domain_error("cohen_convolution_check: s must lie in [-1, 0)");
  // Route 1: parity expectation.
  const DistributionField direct = s_dist(rho, s, grid, threads);

  // Route 2: Wigner on a padded grid convolved with the Gaussian Cohen kernel.
  // Kernel radius where theta_s drops below ~1e-18 of its peak.
  const double radius = std::sqrt(-s * std::log(1e18));
  const int pad_x = static_cast<int>(std::ceil(radius / grid.dx()));
  const int pad_p = static_cast<int>(std::ceil(radius / grid.dp()));
  PhaseGrid padded(grid.x_min - pad_x * grid.dx(), grid.x_max + pad_x * grid.dx(),
                   grid.p_min - pad_p * grid.dp(), grid.p_max + pad_p * grid.dp(),
                   grid.nx + 2 * pad_x, grid.np + 2 * pad_p);
  const DistributionField wig = wigner(rho, padded, threads);

  const int kx = 2 * pad_x + 1;
  const int kp = 2 * pad_p + 1;
  const int fx = next_pow2(padded.nx + kx - 1);
  const int fp = next_pow2(padded.np + kp - 1);
  Eigen::MatrixXcd fw = Eigen::MatrixXcd::Zero(fx, fp);
  fw.topLeftCorner(padded.nx, padded.np) = wig.values();
  Eigen::MatrixXcd fk = Eigen::MatrixXcd::Zero(fx, fp);
  for (int i = 0; i < kx; ++i)
    for (int j = 0; j < kp; ++j)
      fk(i, j) = cohen_kernel_theta(s, (i - pad_x) * grid.dx(), (j - pad_p) * grid.dp());

  fft2(fw, FFTW_FORWARD);
  fft2(fk, FFTW_FORWARD);
  fw = fw.cwiseProduct(fk);
  fft2(fw, FFTW_BACKWARD);
  const double scale = grid.dx() * grid.dp() / (static_cast<double>(fx) * fp);

  // Linear-convolution index: original point i sits at padded index i + pad,
  // kernel center at index pad, so conv index = i + 2 pad.
  double max_dev = 0.0;
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.np; ++j) {
      const double conv = fw(i + 2 * pad_x, j + 2 * pad_p).real() * scale;
      max_dev = std::max(max_dev, std::abs(conv - direct(i, j).real()));
    }
  return max_dev;
}

double covariance_check(const DensityMatrix& rho, const ParityMatrix& parity,
                        const PhaseGrid& grid, int steps_x, int steps_p, int threads) {
  const cdouble shift = cdouble(steps_x * grid.dx(), steps_p * grid.dp()) / std::sqrt(2.0);
  const DistributionField base = evaluate(rho, parity, grid, threads);
  const Eigen::MatrixXcd d = displacement_matrix(shift, rho.dim()).entries();
  const Eigen::MatrixXcd moved = d * rho.entries() * d.adjoint();
  // Truncation can nick the trace; renormalizing keeps the constructor's
  // invariants meaningful for interior shifts.
  const DensityMatrix rho_shifted(moved / moved.trace().real());
  const DistributionField shifted = evaluate(rho_shifted, parity, grid, threads);

  double max_dev = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    const int i0 = i - steps_x;
    if (i0 < 0 || i0 >= grid.nx) continue;
    for (int j = 0; j < grid.np; ++j) {
      const int j0 = j - steps_p;
      if (j0 < 0 || j0 >= grid.np) continue;
      max_dev = std::max(max_dev, std::abs(shifted(i, j) - base(i0, j0)));
    }
  }
  return max_dev;
}

}  // namespace pspace
