#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pspace/bj.hpp"
#include "pspace/specfun.hpp"

using namespace pspace;

namespace {
const double kAsh = std::asinh(1.0);
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

TEST_CASE("coeff_c seeds, symmetry, and one recursion step") {
  CHECK(coeff_c(1, 0).values == std::vector<BigRational>{BigRational(1)});
  CHECK(coeff_c(0, 1).values == std::vector<BigRational>{BigRational(1)});
  CHECK(coeff_c(2, 0).values == std::vector<BigRational>{BigRational(2), BigRational(3)});
  for (const auto [a, b] : {std::pair{3, 2}, {5, 1}, {4, 4}})
    CHECK(coeff_c(a, b).values == coeff_c(b, a).values);
  CHECK_THROWS_AS(coeff_c(0, 0), std::domain_error);
}

TEST_CASE("coeff_xi seeds and k = 0 reduction") {
  CHECK(coeff_xi(0, 0, 1).values == std::vector<BigRational>{BigRational(-1)});
  CHECK(coeff_xi(1, 0, 0).values == std::vector<BigRational>{BigRational(1)});
  for (const auto [a, b] : {std::pair{2, 1}, {3, 0}})
    CHECK(coeff_xi(a, b, 0).values == coeff_c(a, b).values);
  CHECK(coeff_xi(1, 2, 3).values == coeff_xi(2, 1, 3).values);
  CHECK_THROWS_AS(coeff_xi(0, 0, 0), std::domain_error);
}

TEST_CASE("phi pinned values") {
  CHECK(phi(0, 0, 0).arcsinh_case);
  CHECK(phi(0, 0, 0).value() == doctest::Approx(kAsh).epsilon(1e-15));
  CHECK(phi(0, 0, 1).value() == doctest::Approx(-kSqrt2 / 2.0).epsilon(1e-15));
  CHECK(phi(1, 0, 0).value() == doctest::Approx(-kSqrt2 / 4.0).epsilon(1e-15));
}

TEST_CASE("phi(0,0,2) matches the numerical second derivative of arcsinh(1/mu)") {
  // central finite difference at mu = 1
  const double h = 1e-4;
  auto f = [](double mu) { return std::asinh(1.0 / mu); };
  const double fd = (f(1.0 + h) - 2.0 * f(1.0) + f(1.0 - h)) / (h * h);
  CHECK(std::abs(phi(0, 0, 2).value() - fd) <= 1e-7);
  // and the exact value 3 sqrt2 / 4
  CHECK(phi(0, 0, 2).value() == doctest::Approx(3.0 * kSqrt2 / 4.0).epsilon(1e-14));
}

TEST_CASE("bj_element_exact pinned entries") {
  const BJExactEntry e00 = bj_element_exact(0, 0);
  CHECK(e00.r_arcsinh == BigRational(1));
  CHECK(e00.r_sqrt2 == BigRational(0));
  CHECK(e00.value() == doctest::Approx(kAsh).epsilon(1e-15));

  const BJExactEntry e55 = bj_element_exact(5, 5);
  CHECK(e55.r_arcsinh == BigRational(1));
  CHECK(e55.r_sqrt2 == BigRational(-43, 60));
  CHECK(e55.value() == doctest::Approx(kAsh - 43.0 * kSqrt2 / 60.0).epsilon(1e-14));

  const BJExactEntry e40 = bj_element_exact(4, 0);
  CHECK(e40.value() == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-14));

  CHECK(bj_element_exact(3, 1).is_zero());
  CHECK(bj_element_exact(1, 3).is_zero());  // symmetric access
}

TEST_CASE("bj_diagonal pinned entries and equality with the double-sum route") {
  CHECK(bj_diagonal(0).value() == doctest::Approx(kAsh).epsilon(1e-15));
  CHECK(bj_diagonal(1).value() == doctest::Approx(kAsh - kSqrt2).epsilon(1e-14));
  CHECK(bj_diagonal(2).value() == doctest::Approx(kAsh - kSqrt2 / 2.0).epsilon(1e-14));
  for (int n = 0; n <= 30; ++n) {
    const BJExactEntry a = bj_diagonal(n);
    const BJExactEntry b = bj_element_exact(n, n);
    CHECK(a.r_sqrt2 == b.r_sqrt2);
    CHECK(a.r_arcsinh == b.r_arcsinh);
  }
}

TEST_CASE("recursive matrix agrees with Fig-scale pinned values") {
  const BJMatrixResult r = bj_matrix_recursive(30, 30);
  const Eigen::MatrixXd m = r.matrix.entries().real();
  CHECK(m(0, 0) == doctest::Approx(kAsh).epsilon(1e-15));
  CHECK(m(5, 5) == doctest::Approx(kAsh - 43.0 * kSqrt2 / 60.0).epsilon(1e-14));
  CHECK(m(4, 0) == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-14));
  CHECK(m(4, 0) == m(0, 4));
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.matrix.entries().imag().cwiseAbs().maxCoeff() == 0.0);
  for (int mm = 0; mm < 30; ++mm)
    for (int nn = 0; nn < 30; ++nn)
      if ((mm - nn) % 4 != 0) CHECK(m(mm, nn) == 0.0);

  // M table: seeds, M_{5,0}, and the 6x6 block against the Thm route
  CHECK(r.state.at(5, 0) == BigRational(-43, 60));
  CHECK(r.state.at(0, 1) == BigRational(4));
  CHECK(r.state.at(2, 0) == BigRational(-1, 2));
  for (int k = 0; k < 6; ++k)
    for (int l = 0; l < 6; ++l) {
      if (k + 4 * l >= 30) continue;
      const BJExactEntry e = bj_element_exact(k + 4 * l, k);
      CHECK(r.state.at(k, l) == BigRational::pow2(2 * l) * e.r_sqrt2);
    }
}

TEST_CASE("recursive matrix entries stay below the operator norm bound") {
  const BJMatrixResult r = bj_matrix_recursive(120, 16);
  CHECK(r.matrix.entries().real().cwiseAbs().maxCoeff() <= M_PI / 2.0);
}

TEST_CASE("exact cache round trip and warm rebuild") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "pspace-test-cache";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string path = (dir / "bj_cache.txt").string();

  BJExactCache cache(path);
  cache.load();
  CHECK(cache.size() == 0);
  const BJMatrixResult cold = bj_matrix_recursive(12, 12, 2, &cache);
  CHECK(cache.size() > 0);
  cache.save();

  BJExactCache warm(path);
  warm.load();
  CHECK(warm.size() == cache.size());
  const BJMatrixResult hot = bj_matrix_recursive(12, 12, 2, &warm);
  CHECK((hot.matrix.entries() - cold.matrix.entries()).cwiseAbs().maxCoeff() == 0.0);

  // cache file format: "m n num/den num/den"
  std::ifstream in(path);
  std::string line;
  REQUIRE(std::getline(in, line));
  std::istringstream ss(line);
  int m, n;
  std::string a, b;
  CHECK((ss >> m >> n >> a >> b));
  CHECK(a.find('/') != std::string::npos);
  CHECK(b.find('/') != std::string::npos);
}

TEST_CASE("quadrature oracle rejects non-oracle scales") {
  CHECK_THROWS_AS(bj_matrix_quadrature_oracle(60, OracleMethod::sech_squeeze),
                  std::invalid_argument);
}

TEST_CASE("psi_plus_zero_fock structure") {
  const Eigen::VectorXd v = psi_plus_zero_fock(16);
  const double want0 = 0.5 / std::sqrt(M_PI) * M_PI * std::pow(2.0, 0.25) / std::tgamma(0.75);
  CHECK(v(0) == doctest::Approx(want0).epsilon(1e-12));
  for (int n = 0; n < 16; ++n)
    if (n % 4 != 0) CHECK(v(n) == 0.0);
  CHECK(v(4) > 0.0);
  CHECK(v(4) < v(0));
}

TEST_CASE("diagonal magnitudes decay in windowed max") {
  // |[Pi]_nn| oscillates with period ~4, so compare window maxima
  const int lo = 200, hi = 520, w = 8;
  std::vector<double> wm;
  for (int start = lo; start + w <= hi; start += w) {
    double m = 0.0;
    for (int n = start; n < start + w; ++n) m = std::max(m, std::abs(bj_diagonal(n).value()));
    wm.push_back(m);
  }
  for (size_t i = 1; i < wm.size(); ++i) CHECK(wm[i] <= wm[i - 1] + 1e-15);
  CHECK(wm.front() < 0.05);
}

TEST_CASE("spectral report sanity at desk scale") {
  const SpectralReport rep = bj_spectral_report(40, 16);
  CHECK(rep.eigenvalues.size() == 40);
  for (int i = 1; i < 40; ++i) CHECK(rep.eigenvalues(i) >= rep.eigenvalues(i - 1));
  CHECK(rep.top_norm <= M_PI / 2.0 + 1e-10);
  CHECK(rep.rank9_energy_fraction <= 1.0);
  CHECK(rep.rank9_energy_fraction > 0.99);
  CHECK(rep.trace == doctest::Approx(rep.eigenvalues.sum()).epsilon(1e-10));
  CHECK_THROWS_AS(bj_spectral_report(8, 8), std::invalid_argument);
}

TEST_CASE("truncated generalized-eigenvector residual shrinks with dimension") {
  double prev = 1e300;
  for (const int dim : {100, 200, 400}) {
    const Eigen::MatrixXd bj = bj_matrix_recursive(dim, 16).matrix.entries().real();
    const Eigen::VectorXd v = psi_plus_zero_fock(dim);
    const Eigen::VectorXd resid = bj * v - (M_PI / 2.0) * v;
    const double norm = resid.head(dim / 2).cwiseAbs().maxCoeff();
    CHECK(norm < prev);
    prev = norm;
  }
}
