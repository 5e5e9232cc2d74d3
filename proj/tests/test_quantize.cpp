#include <doctest.h>

#include <cmath>

#include "pspace/quantize.hpp"

using namespace pspace;

TEST_CASE("xp quantizes identically under both rules") {
  const int dim = 40;
  const MonomialOperator bj = quantize_monomial(1, 1, QuantRule::born_jordan, dim);
  const MonomialOperator wy = quantize_monomial(1, 1, QuantRule::weyl, dim);
  CHECK((bj.matrix - wy.matrix).cwiseAbs().maxCoeff() <= 1e-13);
  // both equal (xp + px)/2
  const LadderOps ops(dim);
  const Eigen::MatrixXcd sym = 0.5 * (ops.x_op * ops.p_op + ops.p_op * ops.x_op);
  CHECK((bj.matrix - sym).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("rules coincide whenever m < 2 or l < 2") {
  const int dim = 40;
  for (const auto [m, l] : {std::pair{1, 3}, {2, 1}, {0, 4}, {5, 1}, {1, 5}, {4, 0}}) {
    const Eigen::MatrixXcd d = rule_discrepancy(m, l, dim);
    CHECK(d.cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("p^l monomials are passed through") {
  const int dim = 40;
  const MonomialOperator op = quantize_monomial(0, 3, QuantRule::born_jordan, dim);
  const LadderOps ops(dim);
  const Eigen::MatrixXcd want = ops.p_op * ops.p_op * ops.p_op;
  CHECK((op.matrix - want).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("x^2 p^2 ordering gap is -1/6 on the guarded block") {
  const int dim = 48;
  const Eigen::MatrixXcd d = rule_discrepancy(2, 2, dim);
  const int block = dim - 16;
  REQUIRE(d.rows() == block);
  const Eigen::MatrixXcd want = -Eigen::MatrixXcd::Identity(block, block) / 6.0;
  CHECK((d - want).cwiseAbs().maxCoeff() <= 1e-10);
  // the rules genuinely disagree here
  CHECK(d.cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("quantized monomials are Hermitian on the guarded block") {
  const int dim = 44;
  for (const auto rule : {QuantRule::weyl, QuantRule::born_jordan})
    for (const auto [m, l] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
      const MonomialOperator op = quantize_monomial(m, l, rule, dim);
      const int block = dim - op.guard_band();
      const Eigen::MatrixXcd blk = op.matrix.topLeftCorner(block, block);
      CHECK((blk - blk.adjoint()).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("guards are enforced") {
  CHECK_THROWS_AS(quantize_monomial(5, 4, QuantRule::weyl, 80), std::domain_error);
  CHECK_THROWS_AS(quantize_monomial(2, 2, QuantRule::weyl, 20), std::invalid_argument);
}
