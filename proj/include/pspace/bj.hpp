#pragma once

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "pspace/parity.hpp"
#include "pspace/rational.hpp"

namespace pspace {

// Exact machinery for the Born-Jordan parity matrix. Every entry is a
// rational multiple of sqrt(2) plus (on the diagonal) a rational multiple of
// arcsinh(1), times sqrt(n!/m!); rationals are carried exactly to the last
// step and only the final matrix is floated.

/// Coefficients c_j^{ab}, j = 0..a+b-1, of the closed form of the mixed
/// partial derivatives of arcsinh[1/sqrt(lambda mu)]. Integer-valued.
struct CoeffC {
  int a = 0, b = 0;
  std::vector<BigRational> values;
};
CoeffC coeff_c(int a, int b);  // requires a + b >= 1

/// Coefficients xi_j^{abk}, j = 0..a+b+k-1, extending c_j^{ab} through the
/// equal-argument derivatives. Integer-valued.
struct CoeffXi {
  int a = 0, b = 0, k = 0;
  std::vector<BigRational> values;
};
CoeffXi coeff_xi(int a, int b, int k);  // requires a + b + k >= 1

/// Phi_{ab}^k: the (a,b,k) derivative stack of arcsinh[1/sqrt(lambda mu)]
/// at lambda = mu = 1. Exactly sqrt(2) * coeff * 2^pow2, except the (0,0,0)
/// case which is arcsinh(1).
struct Phi {
  bool arcsinh_case = false;
  BigRational coeff;  // (-1)^{a+b} * sum_j xi_j^{abk}
  int pow2 = 0;       // -2a - 2b - k
  double value() const;
};
Phi phi(int a, int b, int k);

/// One exact Born-Jordan matrix element:
/// value = sqrt(n!/m!) * (r_sqrt2 * sqrt(2) + r_arcsinh * arcsinh(1)).
struct BJExactEntry {
  int m = 0, n = 0;
  BigRational r_sqrt2;
  BigRational r_arcsinh;
  bool is_zero() const { return r_sqrt2.is_zero() && r_arcsinh.is_zero(); }
  double value() const;
};

/// Thm-based exact element, any m, n (symmetric; zero unless (m-n) % 4 == 0).
BJExactEntry bj_element_exact(int m, int n);

/// Diagonal element by the closed single-sum formula (independent of the
/// double-sum route; used as a cross-check).
BJExactEntry bj_diagonal(int n);

/// Disk cache of exact entries, one line per element:
/// "m n r_sqrt2_num/r_sqrt2_den r_arcsinh_num/r_arcsinh_den".
class BJExactCache {
 public:
  explicit BJExactCache(std::string path);
  void load();        // ignores a missing file
  void save() const;  // deterministic (sorted) output
  bool try_get(int m, int n, BJExactEntry* out) const;
  void put(const BJExactEntry& e);
  size_t size() const;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  mutable std::mutex mutex_;
  std::map<std::pair<int, int>, std::pair<BigRational, BigRational>> entries_;
};

/// All exact elements with m, n < dim, computed in parallel over entries
/// after a single-writer coefficient-table build. Optional disk cache.
class BJExactTable {
 public:
  BJExactTable(int dim, int threads, BJExactCache* cache = nullptr);
  int dim() const { return dim_; }
  const BJExactEntry& at(int m, int n) const;  // symmetric access
  Eigen::MatrixXd to_matrix() const;

 private:
  int dim_;
  std::vector<BJExactEntry> lower_;  // (m,n) with m >= n, row-major packed
};

/// Raised when the recursive construction disagrees with the exact elements.
struct ConjectureViolation : std::runtime_error {
  ConjectureViolation(int k_, int l_, const std::string& what) : std::runtime_error(what), k(k_), l(l_) {}
  int k, l;
};

/// Rational recursion table M_{k,l} ([Pi_BJ]_{k+4l,k} = Gamma_{kl} (M_{kl} +
/// delta_{l0} arcsinh(1)/sqrt(2))). Exact values are retained for
/// k + 4l < min(dim, 96); larger tables are streamed during construction.
struct BJRecursionState {
  int stored_dim = 0;
  std::map<std::pair<int, int>, BigRational> M;
  int frontier_k = 0, frontier_l = 0;
  const BigRational& at(int k, int l) const;
};

struct BJMatrixResult {
  ParityMatrix matrix;
  BJRecursionState state;
};

/// Full N x N Born-Jordan parity matrix from the eight-seed recursion,
/// cross-checked entrywise (as exact rationals) against bj_element_exact up
/// to index min(N, check_dim). Throws ConjectureViolation on any mismatch.
BJMatrixResult bj_matrix_recursive(int dim, int check_dim = 80, int threads = 1,
                                   BJExactCache* cache = nullptr);

enum class OracleMethod { sinc_displacement, sech_squeeze, tau_average };

/// Independent quadrature constructions (oracle scale, dim <= 40):
///  - sinc_displacement: tensor Gauss-Hermite of (1/4pi) sinc(px/2) D(alpha)
///  - sech_squeeze: Gauss-Legendre panels of (1/4) sech(xi/2) S(xi) Pi over xi
///  - tau_average: Gauss-Legendre panels of cosh(xi(tau)/2) S(xi(tau)) Pi over tau
/// Successive refinement until the whole matrix moves by < 1e-8.
ParityMatrix bj_matrix_quadrature_oracle(int dim, OracleMethod method);

struct SpectralReport {
  Eigen::VectorXd eigenvalues;  // ascending
  double top_norm = 0.0;
  double rank9_energy_fraction = 0.0;
  double trace = 0.0;
};
SpectralReport bj_spectral_report(const Eigen::MatrixXd& bj);
SpectralReport bj_spectral_report(int dim, int check_dim = 80, int threads = 1,
                                  BJExactCache* cache = nullptr);

/// Fock coefficients of the E = 0 generalized eigenvector (finite sum,
/// nonzero only at n = 0 mod 4). Rational inner sums are exact; only the
/// positive prefactor is exponentiated.
Eigen::VectorXd psi_plus_zero_fock(int dim);

}  // namespace pspace
