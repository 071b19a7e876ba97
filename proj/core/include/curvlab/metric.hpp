#pragma once

#include <cstddef>

#include "curvlab/field.hpp"

namespace curvlab {

/// Riemannian metric g = δ + h with its pointwise inverse.
///
/// Construction certifies positivity: the smallest eigenvalue of δ+h over all
/// lattice points must be positive, otherwise NonRiemannian is thrown with the
/// offending point.
class Metric {
 public:
  explicit Metric(SymTensorField perturbation);
  static Metric flat(const Grid& grid) { return Metric(SymTensorField(grid)); }

  const Grid& grid() const { return h_.grid(); }
  int dim() const { return h_.dim(); }
  const SymTensorField& perturbation() const { return h_; }
  /// Components g_ij = δ_ij + h_ij.
  SymTensorField covariant() const;
  /// Components g^ij.
  const SymTensorField& inverse() const { return inverse_; }
  /// h̃ = g⁻¹ − δ, computed as −g⁻¹h.
  const SymTensorField& inverse_perturbation() const { return tilde_; }

  double lambda_min() const { return lambda_min_; }
  std::size_t worst_point() const { return worst_point_; }
  /// max over the grid of the entrywise max of |g·g⁻¹ − I|.
  double identity_residual() const;

 private:
  SymTensorField h_;
  SymTensorField inverse_;
  SymTensorField tilde_;
  double lambda_min_ = 0.0;
  std::size_t worst_point_ = 0;
};

/// h̃ = g⁻¹ − δ.
SymTensorField metric_inverse(const Metric& g);

/// Partial sum Σ_{k≤terms} (−h)^k of the Neumann series for (δ+h)⁻¹.
SymTensorField neumann_partial_sum(const SymTensorField& h, int terms);

struct NeumannCheck {
  double h_norm = 0.0;        ///< ‖h‖_{s+2,t}
  double inverse_norm = 0.0;  ///< ‖h̃‖_{s+2,t}
  double ratio = 0.0;         ///< inverse_norm / h_norm, 0 for h = 0
  bool violated = false;      ///< ratio > 2
};

/// Compares ‖h̃‖_{s+2,t} with ‖h‖_{s+2,t}. Requires ‖h‖_{s+2,t} ≤ 1/(2Ĉ) where
/// Ĉ = algebra_constant is an empirical product constant for H^{s+2,t}.
NeumannCheck neumann_bound_check(const SymTensorField& h, double s, double t,
                                 double algebra_constant);

/// Tr_g S = g^{ij} S_ij.
ScalarField trace(const Metric& g, const SymTensorField& s);
/// Tr_g(shift·δ + s) − n·shift, evaluated without forming the constant.
ScalarField shifted_trace_excess(const Metric& g, const SymTensorField& s, double shift);

}  // namespace curvlab
