#pragma once

#include <Eigen/Dense>

#include "pspace/fock.hpp"

namespace pspace {

enum class QuantRule { weyl, born_jordan };

/// Fock-basis matrix of an ordered x^m p^l monomial quantization.
/// Hermitian on the guarded block (indices below dim - 4(m+l)).
struct MonomialOperator {
  int m = 0, l = 0;
  QuantRule rule = QuantRule::weyl;
  Eigen::MatrixXcd matrix;
  int guard_band() const { return 4 * (m + l); }
};

/// Born-Jordan: (1/(m+1)) sum_k x^k p^l x^{m-k};
/// Weyl: 2^{-m} sum_k binom(m,k) x^k p^l x^{m-k}.
/// Requires m + l <= 8 and dim >= 4(m+l) + 16.
MonomialOperator quantize_monomial(int m, int l, QuantRule rule, int dim);

/// BJ minus Weyl on the guarded upper-left block (dim - 4(m+l)) square.
Eigen::MatrixXcd rule_discrepancy(int m, int l, int dim);

}  // namespace pspace
