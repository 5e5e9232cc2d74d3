#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "pspace/parity.hpp"

using namespace pspace;

TEST_CASE("filter_eval pinned values and symmetries") {
  CHECK(filter_eval(FilterKind::wigner(), 1.3, -0.4) == cdouble(1.0, 0.0));
  CHECK(filter_eval(FilterKind::born_jordan(), 2.2, 0.0) == cdouble(1.0, 0.0));
  CHECK(filter_eval(FilterKind::born_jordan(), 0.0, -3.0) == cdouble(1.0, 0.0));
  CHECK(filter_eval(FilterKind::s_param(-1.0), std::sqrt(2.0), 0.0).real() ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  // K(0,0) = 1 for every kind
  for (const auto kind : {FilterKind::wigner(), FilterKind::s_param(-0.7),
                          FilterKind::tau_param(0.3), FilterKind::born_jordan()})
    CHECK(std::abs(filter_eval(kind, 0.0, 0.0) - cdouble(1, 0)) == 0.0);
  // reality symmetry K*(-w) = K(w) for wigner / s / born-jordan
  for (const auto kind :
       {FilterKind::wigner(), FilterKind::s_param(-0.4), FilterKind::born_jordan()})
    for (const auto [x, p] : {std::pair{0.3, 1.1}, {2.0, -0.7}, {-1.2, -1.2}})
      CHECK(std::abs(std::conj(filter_eval(kind, -x, -p)) - filter_eval(kind, x, p)) <= 1e-15);
  // filter_eval allows s > 0 even though matrix construction rejects it
  CHECK(filter_eval(FilterKind::s_param(1.0), 1.0, 0.0).real() ==
        doctest::Approx(std::exp(0.25)));
  // tau conjugation symmetry K*_tau = K_{1-tau}
  CHECK(std::abs(std::conj(filter_eval(FilterKind::tau_param(0.3), 0.9, 1.7)) -
                 filter_eval(FilterKind::tau_param(0.7), 0.9, 1.7)) <= 1e-15);
}

TEST_CASE("parity_s closed form") {
  const ParityMatrix p0 = parity_s(0.0, 4);
  for (int n = 0; n < 4; ++n)
    CHECK(p0.entries()(n, n).real() == doctest::Approx(n % 2 == 0 ? 1.0 : -1.0));

  const ParityMatrix pm1 = parity_s(-1.0, 5);
  CHECK(pm1.entries()(0, 0).real() == doctest::Approx(0.5));
  for (int n = 1; n < 5; ++n) CHECK(pm1.entries()(n, n) == cdouble(0, 0));

  const ParityMatrix ph = parity_s(-0.5, 6);
  for (int n = 0; n < 6; ++n) {
    const double want = (n % 2 == 0 ? 1.0 : -1.0) * (2.0 / 3.0) * std::pow(1.0 / 3.0, n);
    CHECK(ph.entries()(n, n).real() == doctest::Approx(want).epsilon(1e-13));
  }
  CHECK(ph.is_diagonal());
  CHECK((ph.entries() - ph.entries().adjoint()).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(parity_s(0.5, 4), std::domain_error);
  CHECK_THROWS_AS(parity_s(-1.2, 4), std::domain_error);
}

TEST_CASE("parity_s trace approaches 1/2 geometrically") {
  // tail is ((1+s)/(1-s))^N, so N = 200 puts every s <= -0.1 below 1e-10
  for (const double s : {-0.1, -0.3, -0.5, -1.0}) {
    const double tr = parity_s(s, 200).entries().trace().real();
    CHECK(std::abs(tr - 0.5) <= 1e-10);
  }
}

TEST_CASE("parity_tau basics") {
  const ParityMatrix ph = parity_tau(0.5, 12);
  for (int n = 0; n < 12; ++n)
    CHECK(ph.entries()(n, n).real() == doctest::Approx(n % 2 == 0 ? 1.0 : -1.0).epsilon(1e-12));

  const ParityMatrix pq = parity_tau(0.25, 60);
  CHECK(pq.entries()(1, 0) == cdouble(0, 0));  // parity superselection
  CHECK_THROWS_AS(parity_tau(0.0, 8), std::domain_error);
  CHECK_THROWS_AS(parity_tau(1.0, 8), std::domain_error);
}

TEST_CASE("parity_tau norm approaches the closed-form bound from below") {
  const double bound = 1.0 / std::sqrt(4.0 * (0.25 - 0.0625));
  CHECK(bound == doctest::Approx(1.1547005383793));
  const double n100 = spectral_norm(parity_tau(0.25, 100).entries());
  const double n200 = spectral_norm(parity_tau(0.25, 200).entries());
  CHECK(n100 <= bound + 1e-6);
  CHECK(n200 <= bound + 1e-6);
  CHECK(n200 >= n100 - 1e-9);
  CHECK(n200 >= 0.98 * bound);
}

TEST_CASE("parity_tau adjoint pairs with 1 - tau") {
  const ParityMatrix a = parity_tau(0.3, 60);
  const ParityMatrix b = parity_tau(0.7, 60);
  const double dev = (a.entries().adjoint() - b.entries()).topLeftCorner(40, 40).cwiseAbs().maxCoeff();
  CHECK(dev <= 1e-8);
}

TEST_CASE("cohen_kernel_theta") {
  CHECK(cohen_kernel_theta(-1.0, 0.0, 0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-15));
  CHECK(cohen_kernel_theta(-1.0, 1.0, 0.0) ==
        doctest::Approx(std::exp(-1.0) / M_PI).epsilon(1e-14));
  // normalization oracle by trapezoid quadrature
  for (const double s : {-1.0, -0.5}) {
    const int n = 321;
    const double lo = -8.0, hi = 8.0, h = (hi - lo) / (n - 1);
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double w = ((i == 0 || i == n - 1) ? 0.5 : 1.0) * ((j == 0 || j == n - 1) ? 0.5 : 1.0);
        acc += w * cohen_kernel_theta(s, lo + i * h, lo + j * h);
      }
    acc *= h * h;
    CHECK(std::abs(acc - 1.0) <= 1e-6);
  }
  CHECK_THROWS_AS(cohen_kernel_theta(0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("parity json round trip") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "pspace-test-parity";
  fs::create_directories(dir);
  const std::string path = (dir / "p.json").string();
  const ParityMatrix p = parity_tau(0.4, 24);
  save_parity_json(path, p);
  const ParityMatrix q = load_parity_json(path);
  CHECK(q.kind().family == FilterFamily::tau_param);
  CHECK(q.kind().tau == doctest::Approx(0.4));
  CHECK(q.dim() == 24);
  CHECK((q.entries() - p.entries()).cwiseAbs().maxCoeff() == 0.0);
}
