#pragma once

#include <Eigen/Dense>

#include <string>

#include "pspace/fock.hpp"

namespace pspace {

enum class FilterFamily { wigner, s_param, tau_param, born_jordan };

/// Distribution / quantization scheme selector with its filter function
/// K(x,p) on the symplectic Fourier side.
struct FilterKind {
  FilterFamily family = FilterFamily::wigner;
  double s = 0.0;    // s_param only, [-1, 1]
  double tau = 0.5;  // tau_param only, (0, 1)

  static FilterKind wigner() { return {FilterFamily::wigner, 0.0, 0.5}; }
  static FilterKind s_param(double s) { return {FilterFamily::s_param, s, 0.5}; }
  static FilterKind tau_param(double tau) { return {FilterFamily::tau_param, 0.0, tau}; }
  static FilterKind born_jordan() { return {FilterFamily::born_jordan, 0.0, 0.5}; }

  /// True when the filter satisfies K*(-(x,p)) = K(x,p), so fields are real.
  bool reality_symmetry() const;
  std::string label() const;
  static FilterKind from_label(const std::string& label, double s, double tau);
};

/// K_kind(x,p); hbar = lambda = 1, so the (tau,s) family reads
/// exp[i(2 tau - 1) p x / 2 + s (x^2 + p^2)/4] and Born-Jordan is sinc(px/2).
cdouble filter_eval(const FilterKind& kind, double x, double p);

enum class Provenance { exact, recursive, quadrature, expm_composition };
std::string provenance_label(Provenance p);

/// Fock-basis parity operator Pi_theta for one filter kind.
class ParityMatrix {
 public:
  ParityMatrix(FilterKind kind, Eigen::MatrixXcd entries, Provenance provenance)
      : kind_(kind), entries_(std::move(entries)), provenance_(provenance) {}

  const FilterKind& kind() const { return kind_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Provenance provenance() const { return provenance_; }
  bool is_diagonal() const;

 private:
  FilterKind kind_;
  Eigen::MatrixXcd entries_;
  Provenance provenance_;
};

/// Pi_s = diag((-1)^n (1+s)^n / (1-s)^{n+1}); bounded regime s in [-1, 0].
ParityMatrix parity_s(double s, int dim);

/// Pi_tau = cosh(xi/2) S(xi) Pi with e^xi = tau/(1-tau); 0 < tau < 1.
ParityMatrix parity_tau(double tau, int dim);

/// Cohen kernel of the s-parametrized family (s < 0):
/// theta_s(x,p) = -(1/(pi s)) exp[(x^2+p^2)/s].
double cohen_kernel_theta(double s, double x, double p);

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXcd& m);

// Parity matrix JSON: {"kind": ..., "dim": N, "entries": [[[re,im],...],...]}.
void save_parity_json(const std::string& path, const ParityMatrix& p);
ParityMatrix load_parity_json(const std::string& path);

}  // namespace pspace
