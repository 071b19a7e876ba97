#pragma once

#include "curvlab/field.hpp"
#include "curvlab/metric.hpp"

namespace curvlab {

/// Constants of Ein(g) = Ric + κRg + Λg and of the four-index tensor
/// Riem + g⊼(aRic + bRg + cg). b and c are always derived from (κ, Λ, a, n).
class EinParams {
 public:
  /// a defaults to 2κ.
  EinParams(int dim, double kappa, double lambda);
  EinParams(int dim, double kappa, double lambda, double a);

  int dim() const { return dim_; }
  double kappa() const { return kappa_; }
  double lambda() const { return lambda_; }
  double a() const { return a_; }
  double b() const;
  double c() const;

  /// −1/(2(n−1)), the order-loss threshold of the conformal block.
  double critical_kappa() const { return -1.0 / (2.0 * (dim_ - 1)); }
  bool lambda_positive() const { return lambda_ > 0.0; }
  bool kappa_above_critical() const { return kappa_ > critical_kappa(); }
  /// κ ≠ −1/n
  bool kappa_regular() const;
  /// a ≠ −1/(n−2); always true for n = 2.
  bool a_regular() const;

  /// 1 + κn
  double trace_factor() const { return 1.0 + kappa_ * dim_; }
  /// (2κ+1)/(2(1+κn)), the d Tr coefficient of the κ-Bianchi operator.
  double bianchi_coefficient() const;
  /// (n−2)κ/(2(1+κn))
  double trace_coupling() const;

  EinParams with_lambda(double lambda) const { return EinParams(dim_, kappa_, lambda, a_); }

 private:
  int dim_;
  double kappa_;
  double lambda_;
  double a_;
};

struct RicciDiagnostics {
  /// max |M_jk − M_kj| of the raw (unsymmetrized) Ricci assembly
  double asymmetry = 0.0;
  /// max |Ric| after symmetrization
  double scale = 0.0;
};

/// Γ^k_ij = ½ g^{ks}(∂_i g_sj + ∂_j g_is − ∂_s g_ij), spectral ∂.
ChristoffelField christoffel(const Metric& g);

/// Ric_jk = ∂_lΓ^l_jk − ∂_kΓ^l_jl + Γ^p_jk Γ^l_pl − Γ^p_jl Γ^l_pk, symmetrized.
SymTensorField ricci(const Metric& g, RicciDiagnostics* diagnostics = nullptr);
SymTensorField ricci(const Metric& g, const ChristoffelField& gamma,
                     RicciDiagnostics* diagnostics = nullptr);

ScalarField scalar_curvature(const Metric& g);

/// Ein(g) = Ric(g) + κR(g)g + Λg.
SymTensorField ein(const Metric& g, const EinParams& params);
/// Ein(g) − Λδ = Ric + κRg + Λh, without the rounding of forming Λg.
SymTensorField ein_excess(const Metric& g, const EinParams& params);

/// Lowered Riemann tensor R_ijkl = g_im R^m_jkl with
/// R^i_jkl = ∂_kΓ^i_lj − ∂_lΓ^i_kj + Γ^i_kp Γ^p_lj − Γ^i_lp Γ^p_kj,
/// so that Ric_jl = g^{ik} R_ijkl.
FourTensorField riemann(const Metric& g);
FourTensorField riemann(const Metric& g, const ChristoffelField& gamma);

/// g^{ik} T_ijkl, symmetrized in (j, l).
SymTensorField metric_contraction(const Metric& g, const FourTensorField& t);

/// Residuals of the algebraic curvature-tensor symmetries, each as
/// max|residual| / max|T|.
struct CurvatureSymmetry {
  double antisymmetry_first = 0.0;  ///< T_ijkl + T_jikl
  double antisymmetry_last = 0.0;   ///< T_ijkl + T_ijlk
  double pair = 0.0;                ///< T_ijkl − T_klij
  double first_bianchi = 0.0;       ///< T_ijkl + T_iklj + T_iljk
  double max() const;
};
CurvatureSymmetry curvature_symmetry(const FourTensorField& t);

/// (div S)_i = −g^{jk}(∂_k S_ji − Γ^p_kj S_pi − Γ^p_ki S_jp).
OneFormField divergence(const Metric& g, const SymTensorField& s);
OneFormField divergence(const Metric& g, const ChristoffelField& gamma, const SymTensorField& s);

/// df as a one-form.
OneFormField exterior_derivative(const ScalarField& f);

/// (𝓛_δ ω)_ij = ½(∂_i ω_j + ∂_j ω_i).
SymTensorField sym_grad_flat(const OneFormField& omega);

/// B_g(S) = div_g S + ½ d(Tr_g S).
OneFormField bianchi_B(const Metric& g, const SymTensorField& s);

/// 𝓑_g(E) = div_g E + (2κ+1)/(2(1+κn)) d(Tr_g E). Throws KappaSingular at κ = −1/n.
OneFormField bianchi_cal(const Metric& g, const SymTensorField& e, const EinParams& params);
/// 𝓑_g(shift·δ + e) without forming the sum, which would round e against the
/// constant before it is differentiated.
OneFormField bianchi_cal(const Metric& g, const ChristoffelField& gamma, const SymTensorField& e,
                         double shift, const EinParams& params);

/// T(E,h)_j = ½(∂_k E_jl + ∂_l E_kj − ∂_j E_kl) h^{kl}, indices raised by δ.
OneFormField t_correction(const SymTensorField& e, const SymTensorField& h);

/// (A⊼B)_ijkl = A_ik B_jl + A_jl B_ik − A_il B_jk − A_jk B_il.
FourTensorField kulkarni_nomizu(const SymTensorField& a, const SymTensorField& b);

/// 𝓔in(g) = Riem(g) + g⊼(aRic + bRg + cg).
FourTensorField cal_ein(const Metric& g, const EinParams& params);

}  // namespace curvlab
