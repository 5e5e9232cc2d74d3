#include "pspace/fock.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "pspace/specfun.hpp"

namespace pspace {

namespace {
constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = 1e-10;
}  // namespace

FockState::FockState(Eigen::VectorXcd coeffs, bool renormalize) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) throw std::invalid_argument("FockState: empty coefficient vector");
  const double n = coeffs_.norm();
  if (renormalize) {
    if (n == 0.0) throw std::invalid_argument("FockState: cannot normalize zero vector");
    coeffs_ /= n;
  } else if (std::abs(n - 1.0) > kNormTol) {
    throw std::invalid_argument("FockState: not normalized (|norm-1| = " + std::to_string(std::abs(n - 1.0)) + ")");
  }
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
    throw std::invalid_argument("DensityMatrix: must be square and non-empty");
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol) throw std::invalid_argument("DensityMatrix: not Hermitian");
  const double tr_err = std::abs(entries_.trace() - cdouble(1.0, 0.0));
  if (tr_err > kNormTol) throw std::invalid_argument("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol)
    throw std::invalid_argument("DensityMatrix: not positive semi-definite");
}

DensityMatrix::Spectral DensityMatrix::spectral(double cutoff) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_);
  const auto& ev = es.eigenvalues();
  std::vector<int> keep;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > cutoff) keep.push_back(i);
  Spectral out;
  out.probabilities.resize(static_cast<int>(keep.size()));
  out.states.resize(entries_.rows(), static_cast<int>(keep.size()));
  for (size_t j = 0; j < keep.size(); ++j) {
    out.probabilities(static_cast<int>(j)) = ev(keep[j]);
    out.states.col(static_cast<int>(j)) = es.eigenvectors().col(keep[j]);
  }
  return out;
}

LadderOps::LadderOps(int dim) {
  if (dim < 1) throw std::invalid_argument("LadderOps: dim must be >= 1");
  a = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXd adag = a.transpose();
  x_op = ((a + adag) / std::sqrt(2.0)).cast<cdouble>();
  p_op = cdouble(0.0, 1.0) / std::sqrt(2.0) * (adag - a).cast<cdouble>();
}

FockState number_state(int n, int dim) {
  if (n < 0 || n >= dim) throw std::out_of_range("number_state: index outside truncation");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(n) = 1.0;
  return FockState(std::move(v));
}

CoherentResult coherent_state(cdouble alpha, int dim) {
  const double a2 = std::norm(alpha);
  const double needed = a2 + 10.0 * std::sqrt(a2 + 1.0);
  if (dim < needed)
    throw std::invalid_argument("coherent_state: truncation too small (need dim >= " +
                                std::to_string(needed) + ")");
  Eigen::VectorXcd v(dim);
  // coeff_n = e^{-|a|^2/2} a^n / sqrt(n!), amplitude carried in log space
  const double log_abs_alpha = a2 > 0 ? 0.5 * std::log(a2) : 0.0;
  const double phase = std::arg(alpha);
  for (int n = 0; n < dim; ++n) {
    if (a2 == 0.0) {
      v(n) = n == 0 ? 1.0 : 0.0;
      continue;
    }
    const double mag = std::exp(-0.5 * a2 + n * log_abs_alpha - 0.5 * log_factorial(n));
    v(n) = std::polar(mag, n * phase);
  }
  const double captured = v.norm();
  if (captured < 1.0 - 1e-10)
    throw std::runtime_error("coherent_state: truncation error above tolerance");
  return CoherentResult{FockState(std::move(v), /*renormalize=*/true), captured};
}

FockState cat_state(int dim) {
  if (dim < 2) throw std::invalid_argument("cat_state: dim must be >= 2");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(0) = v(1) = 1.0 / std::sqrt(2.0);
  return FockState(std::move(v));
}

DensityMatrix density_from_pure(const FockState& psi) {
  return DensityMatrix(psi.coeffs() * psi.coeffs().adjoint());
}

DensityMatrix density_mixture(const std::vector<std::pair<double, FockState>>& terms) {
  if (terms.empty()) throw std::invalid_argument("density_mixture: no terms");
  const int dim = terms.front().second.dim();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  double total = 0.0;
  for (const auto& [p, psi] : terms) {
    if (psi.dim() != dim) throw std::invalid_argument("density_mixture: dimension mismatch");
    rho += p * (psi.coeffs() * psi.coeffs().adjoint());
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTol) throw std::invalid_argument("density_mixture: weights must sum to 1");
  return DensityMatrix(std::move(rho));
}

namespace {
using nlohmann::json;

cdouble parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("state json: complex entries must be [re,im]");
  return cdouble(j[0].get<double>(), j[1].get<double>());
}
}  // namespace

DensityMatrix load_density_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file: " + path);
  json j;
  in >> j;
  const int dim = j.at("dim").get<int>();
  if (dim < 1) throw std::invalid_argument("state json: dim must be >= 1");
  if (j.contains("coeffs")) {
    const auto& c = j["coeffs"];
    if (static_cast<int>(c.size()) != dim) throw std::invalid_argument("state json: coeffs length != dim");
    Eigen::VectorXcd v(dim);
    for (int n = 0; n < dim; ++n) v(n) = parse_complex(c[n]);
    return density_from_pure(FockState(std::move(v), /*renormalize=*/true));
  }
  if (j.contains("rho")) {
    const auto& r = j["rho"];
    if (static_cast<int>(r.size()) != dim) throw std::invalid_argument("state json: rho rows != dim");
    Eigen::MatrixXcd rho(dim, dim);
    for (int m = 0; m < dim; ++m) {
      if (static_cast<int>(r[m].size()) != dim) throw std::invalid_argument("state json: rho not square");
      for (int n = 0; n < dim; ++n) rho(m, n) = parse_complex(r[m][n]);
    }
    return DensityMatrix(std::move(rho));
  }
  throw std::invalid_argument("state json: need either 'coeffs' or 'rho'");
}

void save_state_json(const std::string& path, const FockState& psi) {
  nlohmann::ordered_json j;
  j["dim"] = psi.dim();
  auto& c = j["coeffs"] = nlohmann::ordered_json::array();
  for (int n = 0; n < psi.dim(); ++n) c.push_back({psi.coeff(n).real(), psi.coeff(n).imag()});
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write state file: " + path);
  out << j.dump(2) << "\n";
}

void save_density_json(const std::string& path, const DensityMatrix& rho) {
  nlohmann::ordered_json j;
  j["dim"] = rho.dim();
  auto& r = j["rho"] = nlohmann::ordered_json::array();
  for (int m = 0; m < rho.dim(); ++m) {
    auto row = nlohmann::ordered_json::array();
    for (int n = 0; n < rho.dim(); ++n) row.push_back({rho(m, n).real(), rho(m, n).imag()});
    r.push_back(std::move(row));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write state file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace pspace
