#include "pspace/parity.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "pspace/displacement.hpp"
#include "pspace/specfun.hpp"

namespace pspace {

bool FilterKind::reality_symmetry() const {
  switch (family) {
    case FilterFamily::wigner:
    case FilterFamily::s_param:
    case FilterFamily::born_jordan:
      return true;
    case FilterFamily::tau_param:
      return tau == 0.5;
  }
  return false;
}

std::string FilterKind::label() const {
  switch (family) {
    case FilterFamily::wigner: return "wigner";
    case FilterFamily::s_param: return "s-param";
    case FilterFamily::tau_param: return "tau-param";
    case FilterFamily::born_jordan: return "born-jordan";
  }
  return "?";
}

FilterKind FilterKind::from_label(const std::string& label, double s, double tau) {
  if (label == "wigner") return wigner();
  if (label == "s-param") return s_param(s);
  if (label == "tau-param") return tau_param(tau);
  if (label == "born-jordan") return born_jordan();
  throw std::invalid_argument("unknown filter kind: " + label);
}

cdouble filter_eval(const FilterKind& kind, double x, double p) {
  switch (kind.family) {
    case FilterFamily::wigner:
      return 1.0;
    case FilterFamily::s_param:
      return std::exp(kind.s * (x * x + p * p) / 4.0);
    case FilterFamily::tau_param:
      return std::exp(cdouble(0.0, (2.0 * kind.tau - 1.0) * p * x / 2.0));
    case FilterFamily::born_jordan:
      return sinc(p * x / 2.0);
  }
  throw std::logic_error("filter_eval: bad kind");
}

std::string provenance_label(Provenance p) {
  switch (p) {
    case Provenance::exact: return "exact";
    case Provenance::recursive: return "recursive";
    case Provenance::quadrature: return "quadrature";
    case Provenance::expm_composition: return "expm-composition";
  }
  return "?";
}

bool ParityMatrix::is_diagonal() const {
  for (int m = 0; m < dim(); ++m)
    for (int n = 0; n < dim(); ++n)
      if (m != n && entries_(m, n) != cdouble(0.0, 0.0)) return false;
  return true;
}

ParityMatrix parity_s(double s, int dim) {
  if (dim < 1) throw std::invalid_argument("parity_s: dim must be >= 1");
  if (s > 0.0)
    throw std::domain_error("parity_s: s > 0 rejected (unbounded operator; use filter_eval)");
  if (s < -1.0) throw std::domain_error("parity_s: s must be in [-1, 0]");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    // (-1)^n (1+s)^n / (1-s)^{n+1}
    double v;
    if (1.0 + s == 0.0) {
      v = n == 0 ? 1.0 / (1.0 - s) : 0.0;
    } else {
      v = std::exp(n * std::log(1.0 + s) - (n + 1) * std::log(1.0 - s));
    }
    m(n, n) = (n % 2 == 0 ? v : -v);
  }
  return ParityMatrix(FilterKind::s_param(s), std::move(m), Provenance::exact);
}

ParityMatrix parity_tau(double tau, int dim) {
  if (dim < 1) throw std::invalid_argument("parity_tau: dim must be >= 1");
  if (!(tau > 0.0 && tau < 1.0))
    throw std::domain_error("parity_tau: tau must lie strictly in (0, 1)");
  const double xi = std::log(tau / (1.0 - tau));
  const SqueezeMatrix s = squeeze_matrix(xi, dim);
  Eigen::MatrixXcd m = (std::cosh(xi / 2.0) * s.entries()).cast<cdouble>();
  for (int col = 1; col < dim; col += 2) m.col(col) *= -1.0;  // right-multiply by diag((-1)^n)
  return ParityMatrix(FilterKind::tau_param(tau), std::move(m), Provenance::expm_composition);
}

double cohen_kernel_theta(double s, double x, double p) {
  if (s >= 0.0) throw std::domain_error("cohen_kernel_theta: s must be < 0");
  return -1.0 / (M_PI * s) * std::exp((x * x + p * p) / s);
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

namespace {
using nlohmann::ordered_json;
}

void save_parity_json(const std::string& path, const ParityMatrix& p) {
  ordered_json j;
  j["kind"] = p.kind().label();
  if (p.kind().family == FilterFamily::s_param) j["s"] = p.kind().s;
  if (p.kind().family == FilterFamily::tau_param) j["tau"] = p.kind().tau;
  j["dim"] = p.dim();
  j["provenance"] = provenance_label(p.provenance());
  auto& rows = j["entries"] = ordered_json::array();
  for (int m = 0; m < p.dim(); ++m) {
    auto row = ordered_json::array();
    for (int n = 0; n < p.dim(); ++n)
      row.push_back({p.entries()(m, n).real(), p.entries()(m, n).imag()});
    rows.push_back(std::move(row));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write parity file: " + path);
  out << j.dump() << "\n";
}

ParityMatrix load_parity_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parity file: " + path);
  nlohmann::json j;
  in >> j;
  const int dim = j.at("dim").get<int>();
  FilterKind kind = FilterKind::from_label(j.at("kind").get<std::string>(),
                                           j.value("s", 0.0), j.value("tau", 0.5));
  Eigen::MatrixXcd m(dim, dim);
  const auto& rows = j.at("entries");
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      m(r, c) = cdouble(rows[r][c][0].get<double>(), rows[r][c][1].get<double>());
  Provenance prov = Provenance::exact;
  const std::string pl = j.value("provenance", "exact");
  if (pl == "recursive") prov = Provenance::recursive;
  else if (pl == "quadrature") prov = Provenance::quadrature;
  else if (pl == "expm-composition") prov = Provenance::expm_composition;
  return ParityMatrix(kind, std::move(m), prov);
}

}  // namespace pspace
