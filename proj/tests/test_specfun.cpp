#include <doctest.h>

#include <cmath>
#include <random>

#include "pspace/rational.hpp"
#include "pspace/specfun.hpp"

using namespace pspace;

namespace {
// Explicit polynomial expansion L_n^{(k)}(x) = sum_i (-1)^i binom(n+k, n-i) x^i / i!.
// magnitude collects sum |term_i|, the natural scale of the cancellation.
double laguerre_poly(int n, int k, double x, double* magnitude) {
  double sum = 0.0;
  double mag = 0.0;
  double xpow = 1.0;
  for (int i = 0; i <= n; ++i) {
    const double term = (i % 2 == 0 ? 1.0 : -1.0) *
                        BigRational::binomial(n + k, n - i).to_double() /
                        std::tgamma(i + 1.0) * xpow;
    sum += term;
    mag += std::abs(term);
    xpow *= x;
  }
  if (magnitude != nullptr) *magnitude = mag;
  return sum;
}
}  // namespace

TEST_CASE("laguerre_assoc pinned values") {
  CHECK(laguerre_assoc(0, 0, 3.7) == 1.0);
  CHECK(laguerre_assoc(1, 0, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
  // L_2^{(1)}(x) = x^2/2 - 3x + 3, so 1/2 at x = 1
  CHECK(laguerre_assoc(2, 1, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(laguerre_assoc(2, 1, 1.0) ==
        doctest::Approx(laguerre_poly(2, 1, 1.0, nullptr)).epsilon(1e-14));
  CHECK_THROWS_AS(laguerre_assoc(-1, 0, 1.0), std::domain_error);
  CHECK_THROWS_AS(laguerre_assoc(2, -3, 1.0), std::domain_error);
}

TEST_CASE("laguerre recurrence matches the explicit polynomial") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> xs(-10.0, 10.0);
  for (int n = 0; n <= 10; ++n)
    for (int k = -5; k <= 5; ++k) {
      if (n + k < 0) continue;
      for (int rep = 0; rep < 20; ++rep) {
        const double x = xs(rng);
        const double got = laguerre_assoc(n, k, x);
        double mag = 0.0;
        const double want = laguerre_poly(n, k, x, &mag);
        // relative to the expansion's term magnitude (the polynomial route
        // cancels heavily at large |x|)
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, mag));
      }
    }
}

TEST_CASE("hermite_psi pinned values") {
  CHECK(hermite_psi(0, 0.0) == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-15));
  CHECK(hermite_psi(1, 0.0) == 0.0);
  CHECK(hermite_psi(2, 0.0) ==
        doctest::Approx(-std::pow(M_PI, -0.25) / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("hermite functions are orthonormal under composite quadrature") {
  const int nmax = 30;
  const int pts = 4001;
  const double lo = -20.0, hi = 20.0;
  const double h = (hi - lo) / (pts - 1);
  // tabulate once, then all pair integrals
  std::vector<std::vector<double>> tab(nmax + 1, std::vector<double>(pts));
  for (int i = 0; i < pts; ++i) {
    const double x = lo + i * h;
    for (int n = 0; n <= nmax; ++n) tab[n][i] = hermite_psi(n, x);
  }
  for (int n = 0; n <= nmax; ++n)
    for (int m = n; m <= nmax; ++m) {
      double acc = 0.0;
      for (int i = 0; i < pts; ++i) {
        const double w = (i == 0 || i == pts - 1) ? 0.5 : 1.0;
        acc += w * tab[n][i] * tab[m][i];
      }
      acc *= h;
      const double want = n == m ? 1.0 : 0.0;
      CHECK(std::abs(acc - want) <= 1e-8);
    }
}

TEST_CASE("sinc / sech / arcsinh") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-8) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sech(0.0) == 1.0);
  CHECK(arcsinh(1.0) == doctest::Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-15));
}

TEST_CASE("log factorial table") {
  LogFactorialTable t(40);
  CHECK(t(0) == 0.0);
  CHECK(t(1) == 0.0);
  for (int n = 1; n < 40; ++n) CHECK(t(n + 1) > t(n));
  CHECK(log_factorial(2000) == doctest::Approx(std::lgamma(2001.0)).epsilon(1e-12));
  CHECK(sqrt_factorial_ratio(3, 5) == doctest::Approx(1.0 / std::sqrt(20.0)).epsilon(1e-14));
}

TEST_CASE("BigRational arithmetic is exact on randomized big operands") {
  std::mt19937_64 rng(777);
  auto big = [&rng]() {
    // ~38-digit operands
    mpz_class z = 1;
    for (int i = 0; i < 4; ++i) z = z * static_cast<unsigned long>(rng()) + static_cast<unsigned long>(rng());
    return z;
  };
  for (int rep = 0; rep < 50; ++rep) {
    const BigRational a(big(), big() + 1);
    const BigRational c(big(), big() + 1);
    CHECK((a + c) - c == a);
    CHECK((a * c) / c == a);
  }
  CHECK(BigRational(6, -4) == BigRational(-3, 2));
  CHECK(BigRational(6, -4).denominator() == 2);
  CHECK(BigRational::from_string("-43/60").str() == "-43/60");
  CHECK(BigRational::pow2(-3) == BigRational(1, 8));
  CHECK_THROWS_AS(BigRational(1, 0), std::domain_error);
}
