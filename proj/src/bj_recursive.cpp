#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "pspace/bj.hpp"
#include "pspace/specfun.hpp"

namespace pspace {

namespace {

const std::array<std::array<long, 2>, 4> kSeeds = {{
    {0, 4},    // M_{0,0}, M_{0,1} (times 1)
    {-1, -8},  // M_{1,0}, M_{1,1}
    {-1, 6},   // M_{2,0} = -1/2, M_{2,1}
    {-2, -4},  // M_{3,0} = -2/3, M_{3,1}
}};

BigRational seed(int k, int l) {
  const long v = kSeeds[static_cast<size_t>(k)][static_cast<size_t>(l)];
  if (k == 2 && l == 0) return BigRational(v, 2);
  if (k == 3 && l == 0) return BigRational(v, 3);
  return BigRational(v);
}

// Head-row recursion M_{k,l+2} from M_{k,l+1}, M_{k,l} for k = 0..3.
BigRational head_step(int k, int l, const BigRational& m1, const BigRational& m0) {
  static const std::array<std::array<long, 3>, 4> quad = {{{27, 56, 32},
                                                           {39, 72, 32},
                                                           {55, 88, 32},
                                                           {75, 104, 32}}};
  static const std::array<std::array<long, 3>, 4> fac = {{{1, 2, 3},
                                                          {2, 3, 5},
                                                          {3, 5, 6},
                                                          {5, 6, 7}}};
  const auto& q = quad[static_cast<size_t>(k)];
  const auto& f = fac[static_cast<size_t>(k)];
  const long a = q[0] + q[1] * l + q[2] * l * l;
  const long b = 16L * l * (f[0] + 4L * l) * (f[1] + 4L * l) * (f[2] + 4L * l);
  return BigRational(4) * (BigRational(a) * m1 - BigRational(b) * m0);
}

// Column recursion: M_{k+4,l} from the four predecessors in the column.
BigRational column_step(int k, int l, const BigRational& m3, const BigRational& m2,
                        const BigRational& m1, const BigRational& m0) {
  const long kk = k;
  return BigRational(1, kk + 4) * m3 +
         BigRational(4L * l + 2 * kk + 5, (kk + 3) * (kk + 4)) * m2 +
         BigRational(4L * l + kk + 2, (kk + 3) * (kk + 4)) * m1 +
         BigRational((4L * l + kk + 1) * (4L * l + kk + 2), (kk + 3) * (kk + 4)) * m0;
}

// log Gamma_{kl} = (-2l + 1/2) ln 2 + (ln k! - ln (k+4l)!)/2
double log_gamma_kl(int k, int l) {
  return (-2.0 * l + 0.5) * M_LN2 + 0.5 * (log_factorial(k) - log_factorial(k + 4 * l));
}

double float_entry(int k, int l, const BigRational& m) {
  const double lg = log_gamma_kl(k, l);
  double v = 0.0;
  if (!m.is_zero()) v += m.sign() * std::exp(lg + m.log_abs());
  if (l == 0) v += std::exp(lg) * arcsinh(1.0) / std::sqrt(2.0);
  return v;
}

}  // namespace

const BigRational& BJRecursionState::at(int k, int l) const {
  auto it = M.find({k, l});
  if (it == M.end()) throw std::out_of_range("BJRecursionState: M_{k,l} not stored");
  return it->second;
}

BJMatrixResult bj_matrix_recursive(int dim, int check_dim, int threads, BJExactCache* cache) {
  if (dim < 1) throw std::invalid_argument("bj_matrix_recursive: dim must be >= 1");
  const int n_check = std::min(dim, check_dim);
  BJExactTable exact(std::max(1, n_check), threads, cache);

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  BJRecursionState state;
  state.stored_dim = std::min(dim, 96);

  const int lmax = (dim - 1) / 4;
  // Columns stream left to right; the head rows (k = 0..3) carry their own
  // two-column recursion, everything below runs on a four-entry window.
  std::array<BigRational, 4> head_prev2, head_prev1, head;
  for (int l = 0; l <= lmax; ++l) {
    if (l == 0) {
      for (int k = 0; k < 4; ++k) head[k] = seed(k, 0);
    } else if (l == 1) {
      head_prev2 = head;
      for (int k = 0; k < 4; ++k) head[k] = seed(k, 1);
    } else {
      head_prev1 = head;
      for (int k = 0; k < 4; ++k) head[k] = head_step(k, l - 2, head_prev1[k], head_prev2[k]);
      head_prev2 = head_prev1;
    }
    std::array<BigRational, 4> window = head;
    for (int k = 0; k + 4 * l < dim; ++k) {
      BigRational mkl;
      if (k < 4) {
        mkl = window[static_cast<size_t>(k)];
      } else {
        mkl = column_step(k - 4, l, window[3], window[2], window[1], window[0]);
        window = {window[1], window[2], window[3], mkl};
      }
      const int m = k + 4 * l;
      if (m < n_check) {
        // Conjecture check, exact rationals: M_{kl} = 4^l r_sqrt2 and
        // r_arcsinh = delta_{l0} (as stored by the Thm route).
        const BJExactEntry& ref = exact.at(m, k);
        const BigRational want_ash = l == 0 ? BigRational(1) : BigRational(0);
        if (ref.r_arcsinh != want_ash || mkl != BigRational::pow2(2 * l) * ref.r_sqrt2) {
          throw ConjectureViolation(
              k, l,
              "bj_matrix_recursive: recursion disagrees with exact element at (k=" +
                  std::to_string(k) + ", l=" + std::to_string(l) + ")");
        }
      }
      if (m < state.stored_dim) state.M[{k, l}] = mkl;
      const double v = float_entry(k, l, mkl);
      out(m, k) = v;
      out(k, m) = v;
      state.frontier_k = k;
      state.frontier_l = l;
    }
  }

  ParityMatrix pm(FilterKind::born_jordan(), out.cast<cdouble>(), Provenance::recursive);
  return BJMatrixResult{std::move(pm), std::move(state)};
}

SpectralReport bj_spectral_report(const Eigen::MatrixXd& bj) {
  if (bj.rows() < 9) throw std::invalid_argument("bj_spectral_report: dim must be >= 9");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(bj, Eigen::EigenvaluesOnly);
  SpectralReport rep;
  rep.eigenvalues = es.eigenvalues();  // ascending
  rep.top_norm = std::max(std::abs(rep.eigenvalues(0)),
                          std::abs(rep.eigenvalues(rep.eigenvalues.size() - 1)));
  Eigen::VectorXd sq = rep.eigenvalues.array().square();
  std::sort(sq.data(), sq.data() + sq.size(), std::greater<double>());
  const double total = sq.sum();
  rep.rank9_energy_fraction = sq.head(std::min<Eigen::Index>(9, sq.size())).sum() / total;
  rep.trace = bj.trace();
  return rep;
}

SpectralReport bj_spectral_report(int dim, int check_dim, int threads, BJExactCache* cache) {
  const BJMatrixResult r = bj_matrix_recursive(dim, check_dim, threads, cache);
  return bj_spectral_report(r.matrix.entries().real());
}

}  // namespace pspace
