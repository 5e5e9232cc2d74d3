// pspace: phase-space distribution toolkit CLI.
//
// Subcommands:
//   parity    build a parity matrix (wigner | s | tau | bj), print diagnostics
//   dist      evaluate a distribution for a state over a grid, write CSV
//   validate  run the acceptance criteria, emit a JSON report

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "pspace/bj.hpp"
#include "pspace/distribution.hpp"
#include "pspace/fock.hpp"
#include "pspace/parity.hpp"
#include "pspace/threading.hpp"
#include "pspace/validate.hpp"

namespace {

using namespace pspace;

DensityMatrix parse_state(const std::string& spec, int dim) {
  if (spec == "vacuum") return density_from_pure(number_state(0, dim));
  if (spec == "cat") return density_from_pure(cat_state(dim));
  if (spec.rfind("fock:", 0) == 0)
    return density_from_pure(number_state(std::stoi(spec.substr(5)), dim));
  if (spec.rfind("coherent:", 0) == 0) {
    const std::string arg = spec.substr(9);
    const auto comma = arg.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("coherent state needs re,im");
    const cdouble alpha(std::stod(arg.substr(0, comma)), std::stod(arg.substr(comma + 1)));
    return density_from_pure(coherent_state(alpha, dim).state);
  }
  if (spec.rfind("file:", 0) == 0) {
    DensityMatrix rho = load_density_json(spec.substr(5));
    if (rho.dim() >= dim) return rho;
    // embed into the requested truncation
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(dim, dim);
    big.topLeftCorner(rho.dim(), rho.dim()) = rho.entries();
    return DensityMatrix(std::move(big));
  }
  throw std::invalid_argument("unknown state spec: " + spec +
                              " (want vacuum|fock:n|cat|coherent:re,im|file:path)");
}

std::string cache_file(const std::string& cache_dir) {
  std::filesystem::create_directories(cache_dir);
  return (std::filesystem::path(cache_dir) / "bj_exact_cache.txt").string();
}

int cmd_parity(const std::string& kind, double s, double tau, int dim, int check_dim,
               const std::string& out, const std::string& cache_dir, int jobs) {
  ParityMatrix matrix = [&]() {
    if (kind == "wigner")
      return ParityMatrix(FilterKind::wigner(), parity_s(0.0, dim).entries(), Provenance::exact);
    if (kind == "s") return parity_s(s, dim);
    if (kind == "tau") return parity_tau(tau, dim);
    if (kind == "bj") {
      BJExactCache cache(cache_file(cache_dir));
      cache.load();
      BJMatrixResult r = bj_matrix_recursive(dim, check_dim, jobs, &cache);
      cache.save();
      return std::move(r.matrix);
    }
    throw std::invalid_argument("unknown parity kind: " + kind + " (want wigner|s|tau|bj)");
  }();

  const double trace = matrix.entries().trace().real();
  const double norm = spectral_norm(matrix.entries());
  std::cout << "kind: " << matrix.kind().label() << "\n";
  std::cout << "dim: " << dim << "\n";
  std::cout << "trace: " << trace << "\n";
  std::cout << "spectral_norm: " << norm << "\n";
  if (kind == "bj" && dim >= 9) {
    const SpectralReport rep = bj_spectral_report(matrix.entries().real());
    std::cout << "rank9_energy_fraction: " << rep.rank9_energy_fraction << "\n";
  }
  if (!out.empty()) {
    save_parity_json(out, matrix);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_dist(const std::string& state, const std::string& kind, double s, double tau, int dim,
             const std::string& grid_spec, const std::string& out, const std::string& cache_dir,
             int jobs) {
  const PhaseGrid grid = PhaseGrid::parse(grid_spec);
  const DensityMatrix rho = parse_state(state, dim);
  DistributionField field = [&]() {
    if (kind == "wigner") return wigner(rho, grid, jobs);
    if (kind == "husimi") return husimi(rho, grid, jobs);
    if (kind == "s") return s_dist(rho, s, grid, jobs);
    if (kind == "tau") return tau_dist(rho, tau, grid, jobs);
    if (kind == "bj") {
      BJExactCache cache(cache_file(cache_dir));
      cache.load();
      BJMatrixResult r = bj_matrix_recursive(rho.dim(), 80, jobs, &cache);
      cache.save();
      return evaluate(rho, r.matrix, grid, jobs);
    }
    throw std::invalid_argument("unknown distribution kind: " + kind);
  }();

  std::cout << "kind: " << field.kind().label() << "\n";
  std::cout << "total_integral: " << total_integral(field) << "\n";
  std::cout << "min_re: " << field.values().real().minCoeff() << "\n";
  std::cout << "max_re: " << field.values().real().maxCoeff() << "\n";
  if (kind == "bj" && grid.nx == grid.np && grid.x_min == grid.p_min && grid.x_max == grid.p_max &&
      grid.x_min == -grid.x_max) {
    // lattice test of invariance under quarter turns: F(x,p) vs F(-p,x)
    double dev = 0.0;
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 0; j < grid.np; ++j)
        dev = std::max(dev, std::abs(field(i, j) - field(grid.nx - 1 - j, i)));
    std::cout << "fourfold_symmetric: " << (dev <= 1e-8 ? "true" : "false") << "\n";
  }
  if (!out.empty()) {
    field.write_csv(out);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_validate(const std::string& level_name, const std::string& out, int jobs) {
  const ValidationLevel level =
      level_name == "full" ? ValidationLevel::full : ValidationLevel::fast;
  const auto results = run_acceptance(level, jobs, &std::cerr);
  const std::string report = acceptance_report_json(level, results);
  if (out.empty()) {
    std::cout << report << "\n";
  } else {
    std::ofstream f(out);
    f << report << "\n";
    std::cout << "wrote " << out << "\n";
  }
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-space distribution functions via displaced parity operators"};
  app.set_config("--config", "", "read options from an INI file (flags override)");
  app.require_subcommand(0, 1);

  int jobs = pspace::hardware_threads();
  app.add_option("--jobs", jobs, "worker threads (default: hardware parallelism)")
      ->capture_default_str();
  std::string cache_dir = "./pscache";
  app.add_option("--cache-dir", cache_dir, "exact-entry cache directory")
      ->envname("PSCACHE_DIR")
      ->capture_default_str();
  std::string flat_validate;
  app.add_option("--validate", flat_validate, "run the acceptance criteria (fast|full)")
      ->check(CLI::IsMember({"fast", "full"}));

  auto* parity = app.add_subcommand("parity", "build and report a parity matrix");
  std::string p_kind = "bj";
  double p_s = 0.0, p_tau = 0.5;
  int p_dim = 8, p_check = 80;
  std::string p_out;
  parity->add_option("--kind", p_kind, "wigner|s|tau|bj")->capture_default_str();
  parity->add_option("--s", p_s, "s parameter in [-1, 0]");
  parity->add_option("--tau", p_tau, "tau parameter in (0, 1)");
  parity->add_option("--dim", p_dim, "truncation dimension")->capture_default_str();
  parity->add_option("--check-dim", p_check, "conjecture validation bound (bj)")
      ->capture_default_str();
  parity->add_option("--out", p_out, "write matrix JSON here");

  auto* dist = app.add_subcommand("dist", "evaluate a distribution over a grid");
  std::string d_state = "vacuum", d_kind = "wigner", d_grid = "-5:5:101,-5:5:101", d_out;
  double d_s = -1.0, d_tau = 0.5;
  int d_dim = 40;
  dist->add_option("--state", d_state, "vacuum|fock:n|cat|coherent:re,im|file:path")
      ->capture_default_str();
  dist->add_option("--kind", d_kind, "wigner|husimi|s|tau|bj")->capture_default_str();
  dist->add_option("--s", d_s, "s parameter for --kind s");
  dist->add_option("--tau", d_tau, "tau parameter for --kind tau");
  dist->add_option("--dim", d_dim, "truncation dimension")->capture_default_str();
  dist->add_option("--grid", d_grid, "xmin:xmax:nx,pmin:pmax:np")->capture_default_str();
  dist->add_option("--out", d_out, "write field CSV here");

  auto* validate = app.add_subcommand("validate", "run the acceptance criteria");
  std::string v_level = "fast", v_out;
  validate->add_option("--level", v_level, "fast|full")->capture_default_str();
  validate->add_option("--out", v_out, "write JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (parity->parsed()) return cmd_parity(p_kind, p_s, p_tau, p_dim, p_check, p_out, cache_dir, jobs);
    if (dist->parsed()) return cmd_dist(d_state, d_kind, d_s, d_tau, d_dim, d_grid, d_out, cache_dir, jobs);
    if (validate->parsed()) return cmd_validate(v_level, v_out, jobs);
    if (!flat_validate.empty()) return cmd_validate(flat_validate, "", jobs);
  } catch (const pspace::ConjectureViolation& e) {
    std::cerr << "conjecture violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << app.help();
  return 0;
}
