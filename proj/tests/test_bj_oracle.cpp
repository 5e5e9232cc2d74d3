#include <doctest.h>

#include <cmath>

#include "pspace/bj.hpp"

using namespace pspace;

TEST_CASE("sech-squeeze oracle reproduces the exact 8x8 block") {
  const Eigen::MatrixXd exact = BJExactTable(8, 2).to_matrix();
  const ParityMatrix oracle = bj_matrix_quadrature_oracle(8, OracleMethod::sech_squeeze);
  const double dev = (oracle.entries() - exact.cast<cdouble>()).cwiseAbs().maxCoeff();
  CHECK(dev <= 1e-6);
  CHECK(oracle.entries()(0, 0).real() == doctest::Approx(0.881373587).epsilon(1e-6));
  CHECK(std::abs(oracle.entries()(2, 1)) <= 1e-8);  // selection rule
  CHECK(oracle.provenance() == Provenance::quadrature);
}

TEST_CASE("three oracle routes agree pairwise") {
  const int dim = 6;
  const Eigen::MatrixXcd a = bj_matrix_quadrature_oracle(dim, OracleMethod::sinc_displacement).entries();
  const Eigen::MatrixXcd b = bj_matrix_quadrature_oracle(dim, OracleMethod::sech_squeeze).entries();
  const Eigen::MatrixXcd c = bj_matrix_quadrature_oracle(dim, OracleMethod::tau_average).entries();
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK((a - c).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK((b - c).cwiseAbs().maxCoeff() <= 1e-6);
  // sinc-displacement route lands on a real symmetric matrix by itself
  CHECK(a.imag().cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((a - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-8);
}
