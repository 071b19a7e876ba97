#pragma once

#include <string>
#include <vector>

#include "curvlab/curvature.hpp"
#include "curvlab/symbol.hpp"

namespace curvlab {

enum class SolveMode { picard, newton_krylov };

enum class SolveStatus { converged, diverged, max_iter, symbol_degenerate, non_riemannian };

const char* to_string(SolveStatus status);
const char* to_string(SolveMode mode);

struct SolveConfig {
  EinParams params;
  double s = 2.0;
  double t = 1.0;
  double tol_residual = 1e-10;  ///< stop when ‖F‖_{s,t} ≤ tol_residual
  int max_iter = 50;
  double damping = 1.0;  ///< step scale in (0, 1]
  SolveMode mode = SolveMode::picard;
  /// warn when ‖e‖_{s+2,t} exceeds smallness·Λ
  double smallness = 0.1;
  int krylov_dim = 40;
  double krylov_tol = 1e-6;  ///< relative GMRES tolerance per Newton step
  double fd_step = 1e-7;

  /// Throws InvalidArgument / LambdaNonPositive / KappaSingular.
  void validate(int dim) const;
};

struct GaugeResidual {
  OneFormField omega;       ///< (1/Λ)𝓑_{δ+h}(Λδ+e)
  double omega_norm = 0.0;  ///< ‖ω‖_{s+1,t}
  double p_omega_norm = 0.0;  ///< ‖B_{δ+h}(𝓛_δω) + Λω‖_{s−1,t}
};

struct SolveReport {
  SymTensorField h;
  int iterations = 0;  ///< number of residual evaluations
  std::vector<double> residual_history;     ///< ‖F(h_k,e)‖_{s,t}
  std::vector<double> residual_l2_history;  ///< ‖F(h_k,e)‖_{L²}
  std::vector<int> krylov_iterations;       ///< per Newton step (newton_krylov only)
  double data_norm = 0.0;                   ///< ‖e‖_{s+2,t}
  bool smallness_warning = false;
  double gauge_norm = 0.0;           ///< ‖ω‖_{s+1,t}
  double gauge_operator_norm = 0.0;  ///< ‖P_{δ+h}ω‖_{s−1,t}
  double einstein_residual = 0.0;    ///< ‖Ein(δ+h) − (Λδ+e)‖_{s,t}
  double einstein_residual_l2 = 0.0;
  SolveStatus status = SolveStatus::max_iter;
  std::string message;

  explicit SolveReport(const Grid& grid) : h(grid) {}
};

/// Z = (κ Tr_{δ+h}E + Λ)/(1+κn) · (δ+h) − E with E = Λδ + e.
SymTensorField zero_order_Z(const SymTensorField& h, const SymTensorField& e,
                            const EinParams& params);

/// F(h,e) = Ric(δ+h) + Z(h,e) − (1/Λ) 𝓛_δ 𝓑_{δ+h}(E).
SymTensorField assemble_F(const SymTensorField& h, const SymTensorField& e,
                          const EinParams& params);

/// D_hF(0,0)h assembled in physical space.
SymTensorField dF0(const SymTensorField& h, const EinParams& params);

/// DRic(δ)h = ½Δh − 𝓛_δ B_δ(h).
SymTensorField d_ric_flat(const SymTensorField& h);

/// D[𝓑_(·)(E)](δ)h = −E B_δ(h) + (n−2)κ/(2(1+κn)) d⟨E,h⟩ + T(E,h).
OneFormField d_bianchi_flat(const SymTensorField& e_full, const SymTensorField& h,
                            const EinParams& params);

/// Gauge witness of a candidate solution; e is the perturbation (E = Λδ + e).
GaugeResidual gauge_residual(const SymTensorField& h, const SymTensorField& e,
                             const EinParams& params, double s, double t);

/// ‖Ein(δ+h) − (Λδ+e)‖_{s,t}, using the curvature operators only.
double einstein_residual(const SymTensorField& h, const SymTensorField& e,
                         const EinParams& params, double s, double t);

/// Solves F(h,e) = 0 starting from h = 0. Picard mode iterates
/// h ← h − damping·L₀⁻¹F(h,e); newton_krylov solves each Newton step with
/// right-preconditioned GMRES on finite-difference Jacobian products.
/// Throws for invalid configurations (Λ ≤ 0, κ = −1/n, s ≤ n/2, ...).
SolveReport solve(const SymTensorField& e, const SolveConfig& config);

}  // namespace curvlab
