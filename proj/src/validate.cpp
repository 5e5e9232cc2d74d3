#include "pspace/validate.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "pspace/bj.hpp"
#include "pspace/displacement.hpp"
#include "pspace/distribution.hpp"
#include "pspace/quantize.hpp"
#include "pspace/specfun.hpp"

namespace pspace {

namespace {

constexpr double kPiHalf = M_PI / 2.0;

struct Check {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

// Shared heavyweight artifacts, built lazily.
struct Context {
  int threads = 1;
  Eigen::MatrixXd bj500;
  bool have_bj500 = false;
  const Eigen::MatrixXd& get_bj500() {
    if (!have_bj500) {
      bj500 = bj_matrix_recursive(500, 80, threads).matrix.entries().real();
      have_bj500 = true;
    }
    return bj500;
  }
};

// ---- criterion bodies ----

// 1. Golden 8x8: exact elements vs the diagonal closed form, the recursion
// seed values for the first off-diagonal, and the selection rule.
void criterion_fig1a(Context& ctx, Check& c) {
  const BJExactTable table(8, ctx.threads);
  const double ash = arcsinh(1.0);
  const double sqrt2 = std::sqrt(2.0);
  // diagonal golden route
  for (int n = 0; n < 8; ++n) {
    const BJExactEntry& e = table.at(n, n);
    const BJExactEntry d = bj_diagonal(n);
    c.require(e.r_sqrt2 == d.r_sqrt2 && e.r_arcsinh == d.r_arcsinh,
              "diagonal rationals mismatch at n=" + std::to_string(n));
    c.require(std::abs(e.value() - d.value()) <= 1e-14,
              "diagonal float mismatch at n=" + std::to_string(n));
  }
  // first off-diagonal golden route: the eight Appendix-seed values
  const BigRational m_k1[4] = {BigRational(4), BigRational(-8), BigRational(6), BigRational(-4)};
  for (int k = 0; k < 4; ++k) {
    const BJExactEntry& e = table.at(k + 4, k);
    c.require(e.r_arcsinh.is_zero(), "off-diagonal arcsinh nonzero at k=" + std::to_string(k));
    c.require(e.r_sqrt2 == m_k1[k] / BigRational(4),
              "off-diagonal rational mismatch at k=" + std::to_string(k));
    const double gamma = std::exp((-2.0 + 0.5) * M_LN2 +
                                  0.5 * (log_factorial(k) - log_factorial(k + 4)));
    c.require(std::abs(e.value() - gamma * m_k1[k].to_double()) <= 1e-14,
              "off-diagonal float mismatch at k=" + std::to_string(k));
  }
  // selection rule + pinned values
  for (int m = 0; m < 8; ++m)
    for (int n = 0; n <= m; ++n)
      if ((m - n) % 4 != 0)
        c.require(table.at(m, n).is_zero(), "selection-rule entry nonzero");
  c.require(std::abs(table.at(0, 0).value() - ash) <= 1e-14, "[0,0] != arcsinh(1)");
  c.require(std::abs(table.at(5, 5).value() - (ash - 43.0 * sqrt2 / 60.0)) <= 1e-14,
            "[5,5] != arcsinh(1) - 43 sqrt2/60");
  c.require(std::abs(table.at(4, 0).value() - 1.0 / (2.0 * std::sqrt(3.0))) <= 1e-14,
            "[4,0] != 1/(2 sqrt3)");
}

// 2. Recursion vs exact elements over the paper's verified range.
void criterion_conjecture(Context& ctx, Check& c) {
  try {
    bj_matrix_recursive(81, 81, ctx.threads);
    c.note("all entries m,n <= 80 match exactly");
  } catch (const ConjectureViolation& e) {
    c.require(false, e.what());
  }
}

// 3. Diagonal closed form == Thm route (exact) and the limit-to-zero proxy.
void criterion_diagonal(Context& ctx, Check& c) {
  const BJExactTable table(81, ctx.threads);
  for (int n = 0; n <= 80; ++n) {
    const BJExactEntry d = bj_diagonal(n);
    const BJExactEntry& e = table.at(n, n);
    c.require(d.r_sqrt2 == e.r_sqrt2 && d.r_arcsinh == e.r_arcsinh,
              "exact diagonal mismatch at n=" + std::to_string(n));
  }
  double worst = 0.0;
  for (int n = 200; n <= 2000; n += (n < 600 ? 1 : 7)) {
    worst = std::max(worst, std::abs(bj_diagonal(n).value()));
  }
  c.note("max |diag| over probed n in [200,2000]: " + fmt(worst));
  c.require(worst < 0.05, "|[Pi]_nn| >= 0.05 in the probed range");
}

// 4. Three-way oracle equivalence on 8x8.
void criterion_oracles(Context& ctx, Check& c) {
  const Eigen::MatrixXd exact = BJExactTable(8, ctx.threads).to_matrix();
  const Eigen::MatrixXcd a = bj_matrix_quadrature_oracle(8, OracleMethod::sinc_displacement).entries();
  const Eigen::MatrixXcd b = bj_matrix_quadrature_oracle(8, OracleMethod::sech_squeeze).entries();
  const Eigen::MatrixXcd t = bj_matrix_quadrature_oracle(8, OracleMethod::tau_average).entries();
  const double da = (a - exact.cast<cdouble>()).cwiseAbs().maxCoeff();
  const double db = (b - exact.cast<cdouble>()).cwiseAbs().maxCoeff();
  const double dt = (t - exact.cast<cdouble>()).cwiseAbs().maxCoeff();
  const double dab = (a - b).cwiseAbs().maxCoeff();
  c.note("sinc-displacement dev " + fmt(da) + ", sech-squeeze dev " + fmt(db) +
         ", tau-average dev " + fmt(dt));
  c.require(da <= 1e-6, "sinc-displacement oracle off exact > 1e-6");
  c.require(db <= 1e-6, "sech-squeeze oracle off exact > 1e-6");
  c.require(dt <= 1e-6, "tau-average oracle off exact > 1e-6");
  c.require(dab <= 1e-6, "oracle pair disagrees > 1e-6");
}

// 5. Spectral bounds at N = 200.
void criterion_spectral_bounds(Context& ctx, Check& c) {
  const Eigen::MatrixXd bj200 = ctx.get_bj500().topLeftCorner(200, 200);
  const SpectralReport rep = bj_spectral_report(bj200);
  const double lo = rep.eigenvalues(0);
  const double hi = rep.eigenvalues(rep.eigenvalues.size() - 1);
  c.note("eigenvalues in [" + fmt(lo) + ", " + fmt(hi) + "], pi/2 = " + fmt(kPiHalf));
  c.require(lo >= -kPiHalf - 1e-8 && hi <= kPiHalf + 1e-8, "eigenvalue outside [-pi/2, pi/2]");
  c.require(hi >= 1.50, "largest eigenvalue " + fmt(hi) + " < 1.50");
}

// 6. Rank-9 energy fraction at N = 500.
void criterion_rank9(Context& ctx, Check& c) {
  const SpectralReport rep = bj_spectral_report(ctx.get_bj500());
  c.note("rank-9 energy fraction " + fmt(rep.rank9_energy_fraction));
  c.require(rep.rank9_energy_fraction >= 0.999, "fraction < 0.999");
}

// 7. Trace convergence.
void criterion_trace(Context& ctx, Check& c) {
  const Eigen::MatrixXd& bj = ctx.get_bj500();
  const double tr500 = bj.trace();
  const double tr100 = bj.topLeftCorner(100, 100).trace();
  c.note("trace(500) = " + fmt(tr500) + ", trace(100) = " + fmt(tr100));
  c.require(std::abs(tr500 - 0.5) <= 0.02, "|trace(500) - 1/2| > 0.02");
  c.require(std::abs(tr500 - 0.5) < std::abs(tr100 - 0.5), "trace not closer at N=500");
}

// 8. Pi_tau spectral norms at N = 200.
void criterion_tau_norm(Context& ctx, Check& c) {
  (void)ctx;
  for (const double tau : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    const ParityMatrix p = parity_tau(tau, 200);
    const double norm = spectral_norm(p.entries());
    const double bound = 1.0 / std::sqrt(4.0 * (tau - tau * tau));
    c.note("tau=" + fmt(tau) + ": norm " + fmt(norm) + " vs bound " + fmt(bound));
    c.require(norm >= 0.98 * bound && norm <= 1.0001 * bound, "norm outside [0.98, 1.0001] x bound");
  }
}

// 9. Pi_s closed form and the geometric trace identity.
void criterion_parity_s(Context& ctx, Check& c) {
  (void)ctx;
  const int dim = 200;
  for (const double s : {0.0, -0.5, -1.0}) {
    const ParityMatrix p = parity_s(s, dim);
    c.require(p.is_diagonal(), "Pi_s not diagonal");
    double term = 1.0 / (1.0 - s);  // n = 0 value
    const double ratio = -(1.0 + s) / (1.0 - s);
    for (int n = 0; n < dim; ++n) {
      // running product and exp-of-logs both accumulate ~n ulps
      c.require(std::abs(p.entries()(n, n).real() - term) <= 1e-12 * std::abs(term) + 1e-300,
                "Pi_s termwise mismatch at n=" + std::to_string(n));
      term *= ratio;
    }
  }
  const ParityMatrix p = parity_s(-0.5, dim);
  const double tr = p.entries().trace().real();
  c.note("trace at s=-0.5: " + fmt(tr));
  c.require(std::abs(tr - 0.5) <= 1e-10, "|trace - 1/2| > 1e-10");
}

// 10. Born-Jordan marginals vs Hermite densities.
void criterion_marginals(Context& ctx, Check& c) {
  const int dim = 40;
  const PhaseGrid grid(-5, 5, -5, 5, 161, 161);
  const BJMatrixResult bj = bj_matrix_recursive(dim, 80, ctx.threads);
  struct Case {
    const char* name;
    DensityMatrix rho;
    std::function<double(double)> dens_x, dens_p;
  };
  const auto h2 = [](int n, double x) { const double v = hermite_psi(n, x); return v * v; };
  std::vector<Case> cases;
  cases.push_back({"|0>", density_from_pure(number_state(0, dim)),
                   [&](double x) { return h2(0, x); }, [&](double p) { return h2(0, p); }});
  cases.push_back({"|1>", density_from_pure(number_state(1, dim)),
                   [&](double x) { return h2(1, x); }, [&](double p) { return h2(1, p); }});
  cases.push_back({"cat", density_from_pure(cat_state(dim)),
                   [&](double x) {
                     const double v = hermite_psi(0, x) + hermite_psi(1, x);
                     return 0.5 * v * v;
                   },
                   // psi(p) picks up (-i)^n per component, so the cross term drops
                   [&](double p) { return 0.5 * (h2(0, p) + h2(1, p)); }});
  for (const auto& cs : cases) {
    const DistributionField f = evaluate(cs.rho, bj.matrix, grid, ctx.threads);
    const Marginals m = marginals(f);
    double dev_x = 0.0, dev_p = 0.0;
    for (int i = 0; i < grid.nx; ++i) dev_x = std::max(dev_x, std::abs(m.px(i) - cs.dens_x(grid.x(i))));
    for (int j = 0; j < grid.np; ++j) dev_p = std::max(dev_p, std::abs(m.pp(j) - cs.dens_p(grid.p(j))));
    c.note(std::string(cs.name) + ": x-marginal dev " + fmt(dev_x) + ", p-marginal dev " + fmt(dev_p));
    c.require(dev_x <= 1e-3 && dev_p <= 1e-3, std::string(cs.name) + " marginal off > 1e-3");
  }
}

// 11. Cohen-class dual route (parity expectation vs FFT convolution).
void criterion_cohen(Context& ctx, Check& c) {
  const int dim = 80;
  const PhaseGrid grid(-5, 5, -5, 5, 161, 161);
  for (int n = 0; n <= 1; ++n) {
    const double dev =
        cohen_convolution_check(density_from_pure(number_state(n, dim)), -1.0, grid, ctx.threads);
    c.note("|" + std::to_string(n) + ">: dev " + fmt(dev));
    c.require(dev <= 1e-4, "husimi dual-route deviation > 1e-4");
  }
}

// 12. Fourfold symmetry of the |4> Born-Jordan field + radial split.
void criterion_symmetry(Context& ctx, Check& c) {
  const int dim = 40;
  const PhaseGrid grid(-5, 5, -5, 5, 121, 121);
  const BJMatrixResult bj = bj_matrix_recursive(dim, 80, ctx.threads);
  const DensityMatrix rho = density_from_pure(number_state(4, dim));
  const DistributionField f = evaluate(rho, bj.matrix, grid, ctx.threads);
  // 90 degrees maps lattice to lattice on the symmetric square grid:
  // (x_i, p_j) -> (-p_j, x_i) = (x_{nx-1-j}, p_i)
  double dev90 = 0.0;
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.np; ++j)
      dev90 = std::max(dev90, std::abs(f(i, j) - f(grid.nx - 1 - j, i)));
  c.note("90-degree dev " + fmt(dev90));
  c.require(dev90 <= 1e-8, "not invariant under 90 degrees");
  // 45 degrees probed off-lattice on rings
  std::vector<cdouble> pts, pts45;
  for (const double r : {1.0, 2.0, 3.0})
    for (int k = 0; k < 16; ++k) {
      const double th = 2.0 * M_PI * k / 16.0;
      const double x = r * std::cos(th), p = r * std::sin(th);
      const double c45 = std::cos(M_PI / 4.0), s45 = std::sin(M_PI / 4.0);
      pts.push_back(cdouble(x, p) / std::sqrt(2.0));
      pts45.push_back(cdouble(x * c45 - p * s45, x * s45 + p * c45) / std::sqrt(2.0));
    }
  const Eigen::VectorXcd v0 = evaluate_points(rho, bj.matrix, pts, ctx.threads);
  const Eigen::VectorXcd v45 = evaluate_points(rho, bj.matrix, pts45, ctx.threads);
  const double dev45 = (v0 - v45).cwiseAbs().maxCoeff();
  c.note("45-degree dev " + fmt(dev45));
  c.require(dev45 >= 1e-3, "unexpectedly invariant under 45 degrees");
  // radial/non-radial split
  const BJDecomposition dec = bj_fock_decomposition(4, grid, dim, ctx.threads);
  const double split_dev =
      (dec.radial.values() + dec.nonradial.values() - f.values()).cwiseAbs().maxCoeff();
  c.note("split residual " + fmt(split_dev));
  c.require(split_dev <= 1e-10, "radial + nonradial != full field");
}

// 13. Monomial quantization rules.
void criterion_quantization(Context& ctx, Check& c) {
  (void)ctx;
  const int dim = 40;
  double worst_agree = 0.0;
  for (int m = 0; m <= 6; ++m)
    for (int l = 0; m + l <= 6; ++l) {
      if (m + l == 0 || (m >= 2 && l >= 2)) continue;
      worst_agree = std::max(worst_agree, rule_discrepancy(m, l, dim).cwiseAbs().maxCoeff());
    }
  c.note("max |BJ - Weyl| where rules coincide: " + fmt(worst_agree));
  c.require(worst_agree <= 1e-10, "rules disagree where m < 2 or l < 2");
  const Eigen::MatrixXcd d22 = rule_discrepancy(2, 2, dim);
  const double dev = (d22 + Eigen::MatrixXcd::Identity(d22.rows(), d22.cols()) / 6.0)
                         .cwiseAbs()
                         .maxCoeff();
  c.note("(2,2) discrepancy vs -1/6 I: " + fmt(dev));
  c.require(dev <= 1e-10, "rule_discrepancy(2,2) != -1/6 I");
}

// 14. Boundedness of Born-Jordan fields.
void criterion_boundedness(Context& ctx, Check& c) {
  const int dim = 40;
  const BJMatrixResult bj = bj_matrix_recursive(dim, 80, ctx.threads);
  double worst = 0.0;
  const PhaseGrid g1(-5, 5, -5, 5, 121, 121);
  const PhaseGrid g2(-6, 6, -6, 6, 121, 121);
  std::vector<DensityMatrix> states;
  states.push_back(density_from_pure(number_state(0, dim)));
  states.push_back(density_from_pure(number_state(1, dim)));
  states.push_back(density_from_pure(number_state(4, dim)));
  states.push_back(density_from_pure(cat_state(dim)));
  states.push_back(density_mixture({{0.5, number_state(0, dim)}, {0.5, number_state(1, dim)}}));
  for (const auto& rho : states)
    for (const auto& g : {g1, g2}) {
      const DistributionField f = evaluate(rho, bj.matrix, g, ctx.threads);
      worst = std::max(worst, f.values().cwiseAbs().maxCoeff());
    }
  c.note("max |F_BJ| " + fmt(worst));
  c.require(worst <= 0.5 + 1e-9, "field exceeds 1/2");
}

// 15. tau-conjugation symmetry.
void criterion_tau_conjugation(Context& ctx, Check& c) {
  const int dim = 40;
  const PhaseGrid grid(-4, 4, -4, 4, 81, 81);
  const DensityMatrix rho = density_from_pure(cat_state(dim));
  const DistributionField f3 = tau_dist(rho, 0.3, grid, ctx.threads);
  const DistributionField f7 = tau_dist(rho, 0.7, grid, ctx.threads);
  const double dev = (f3.values() - f7.values().conjugate()).cwiseAbs().maxCoeff();
  c.note("pointwise dev " + fmt(dev));
  c.require(dev <= 1e-8, "tau conjugation violated");
}

struct Spec {
  int id;
  const char* name;
  bool fast;  // included at fast level
  double budget_seconds;  // stated runtime bound, 0 = none
  void (*body)(Context&, Check&);
};

const Spec kCriteria[] = {
    {1, "fig1a-golden-8x8", true, 1.0, criterion_fig1a},
    {2, "conjecture-crosscheck-80", false, 120.0, criterion_conjecture},
    {3, "diagonal-formula", false, 0.0, criterion_diagonal},
    {4, "oracle-equivalence-8x8", true, 300.0, criterion_oracles},
    {5, "spectral-bounds-200", false, 0.0, criterion_spectral_bounds},
    {6, "rank9-compressibility-500", false, 0.0, criterion_rank9},
    {7, "trace-convergence", false, 0.0, criterion_trace},
    {8, "tau-parity-norms", false, 0.0, criterion_tau_norm},
    {9, "s-parity-closed-form", false, 0.0, criterion_parity_s},
    {10, "bj-marginals", true, 120.0, criterion_marginals},
    {11, "cohen-dual-route", false, 0.0, criterion_cohen},
    {12, "fourfold-symmetry", true, 0.0, criterion_symmetry},
    {13, "quantization-rules", true, 0.0, criterion_quantization},
    {14, "field-boundedness", true, 0.0, criterion_boundedness},
    {15, "tau-conjugation", true, 0.0, criterion_tau_conjugation},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(ValidationLevel level, int threads,
                                            std::ostream* progress) {
  Context ctx;
  ctx.threads = threads;
  std::vector<CriterionResult> out;
  for (const Spec& spec : kCriteria) {
    CriterionResult r;
    r.id = spec.id;
    r.name = spec.name;
    if (level == ValidationLevel::fast && !spec.fast) {
      r.run = false;
      r.detail = "skipped at fast level";
      out.push_back(std::move(r));
      if (progress) *progress << "SKIP " << spec.id << " " << spec.name << "\n" << std::flush;
      continue;
    }
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      spec.body(ctx, c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (spec.budget_seconds > 0.0)
      c.require(r.seconds <= spec.budget_seconds,
                "runtime " + fmt(r.seconds) + "s over budget " + fmt(spec.budget_seconds) + "s");
    r.run = true;
    r.pass = c.pass;
    r.detail = c.detail.str();
    if (progress)
      *progress << (r.pass ? "PASS " : "FAIL ") << spec.id << " " << spec.name << " ["
                << fmt(r.seconds) << " s] " << r.detail << "\n"
                << std::flush;
    out.push_back(std::move(r));
  }
  return out;
}

std::string acceptance_report_json(ValidationLevel level,
                                   const std::vector<CriterionResult>& results) {
  nlohmann::ordered_json j;
  j["level"] = level == ValidationLevel::fast ? "fast" : "full";
  auto& arr = j["criteria"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json e;
    e["id"] = r.id;
    e["name"] = r.name;
    e["run"] = r.run;
    if (r.run) {
      e["pass"] = r.pass;
      e["seconds"] = r.seconds;
    }
    e["detail"] = r.detail;
    arr.push_back(std::move(e));
  }
  j["all_pass"] = all_passed(results);
  return j.dump(2);
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (r.run && !r.pass) return false;
  return true;
}

}  // namespace pspace
