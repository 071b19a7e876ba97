#pragma once

#include <memory>
#include <vector>

#include "curvlab/curvature.hpp"
#include "curvlab/fft.hpp"

namespace curvlab {

/// Fourier symbol of the linearized gauged operator at the flat metric,
///
///   L₀h = ½Δh + Λh − κΛ/(1+κn) (Tr h) δ − (n−2)κ/(2(1+κn)) ∂∂(Tr h).
///
/// Per mode the operator is block-triangular in the conformal/traceless
/// splitting: β = ½|ξ|² + Λ on every component, and the trace obeys
/// tr(L₀h)^ = α tr ĥ with α = [(1+2(n−1)κ)|ξ|² + 2Λ]/(2(1+κn)).
class L0Symbol {
 public:
  /// Throws SymbolDegenerate if α ≤ 0 or β ≤ 0 on any mode and KappaSingular
  /// at κ = −1/n.
  L0Symbol(const Grid& grid, const EinParams& params);

  const Grid& grid() const { return modes_->grid(); }
  const EinParams& params() const { return params_; }
  const ModeSet& modes() const { return *modes_; }

  /// ½|ξ|² + Λ
  double traceless_eigenvalue(std::size_t slot) const;
  /// α(ξ) as written above, with the continuum |ξ|².
  double conformal_eigenvalue(std::size_t slot) const;
  /// Eigenvalues of the discrete operator. Second derivatives are products of
  /// first-derivative symbols, so the Nyquist component of ξ drops out; these
  /// agree with the continuum values off the Nyquist planes.
  double discrete_traceless_eigenvalue(std::size_t slot) const { return beta_[slot]; }
  double discrete_trace_eigenvalue(std::size_t slot) const { return trace_eigen_[slot]; }
  /// (n−2)κ/(2(1+κn)), the coefficient of ξ⊗ξ tr ĥ.
  double coupling() const { return params_.trace_coupling(); }

  /// max over modes of |ξ|²/α(ξ) (order-loss diagnostic).
  double max_order_ratio() const;
  double min_conformal_eigenvalue() const;

 private:
  EinParams params_;
  std::shared_ptr<const ModeSet> modes_;
  std::vector<double> beta_;
  std::vector<double> trace_eigen_;
};

/// Applies L₀ in Fourier space.
SymTensorField l0_apply(const L0Symbol& symbol, const SymTensorField& h);
/// Solves L₀h = f mode by mode: trace first, then the remainder over β.
SymTensorField l0_solve(const L0Symbol& symbol, const SymTensorField& f);

}  // namespace curvlab
