#include "pspace/quantize.hpp"

#include <stdexcept>
#include <vector>

#include "pspace/rational.hpp"

namespace pspace {

namespace {
double binom(int n, int k) { return BigRational::binomial(n, k).to_double(); }
}  // namespace

MonomialOperator quantize_monomial(int m, int l, QuantRule rule, int dim) {
  if (m < 0 || l < 0) throw std::domain_error("quantize_monomial: negative exponent");
  if (m + l > 8) throw std::domain_error("quantize_monomial: m + l <= 8 (truncation-noise guard)");
  if (dim < 4 * (m + l) + 16)
    throw std::invalid_argument("quantize_monomial: dim >= 4(m+l) + 16 required");
  const LadderOps ops(dim);
  // powers of x up to m, p^l
  std::vector<Eigen::MatrixXcd> xpow(static_cast<size_t>(m) + 1);
  xpow[0] = Eigen::MatrixXcd::Identity(dim, dim);
  for (int k = 1; k <= m; ++k) xpow[k] = xpow[k - 1] * ops.x_op;
  Eigen::MatrixXcd pl = Eigen::MatrixXcd::Identity(dim, dim);
  for (int k = 0; k < l; ++k) pl = pl * ops.p_op;

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k <= m; ++k) {
    const double w = rule == QuantRule::born_jordan ? 1.0 / (m + 1)
                                                    : binom(m, k) / std::pow(2.0, m);
    acc += w * (xpow[k] * pl * xpow[m - k]);
  }
  return MonomialOperator{m, l, rule, std::move(acc)};
}

Eigen::MatrixXcd rule_discrepancy(int m, int l, int dim) {
  const MonomialOperator bj = quantize_monomial(m, l, QuantRule::born_jordan, dim);
  const MonomialOperator weyl = quantize_monomial(m, l, QuantRule::weyl, dim);
  const int block = dim - bj.guard_band();
  return (bj.matrix - weyl.matrix).topLeftCorner(block, block);
}

}  // namespace pspace
