#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "curvlab/curvature.hpp"

namespace curvlab {

/// τ = (δ+h)⁻¹𝓔in(δ+h) − δ⁻¹𝓔in(δ), with [g⁻¹𝓔in]^i_klm = g^{ij}𝓔in_jklm.
R13Field riemann_christoffel_map(const SymTensorField& h, const EinParams& params);

/// Residuals of the three (1,3) curvature conditions, relative to max|τ|.
struct R13Residuals {
  double trace = 0.0;          ///< τ^i_ilm
  double antisymmetry = 0.0;   ///< τ^i_klm + τ^i_kml
  double cyclic = 0.0;         ///< τ^i_klm + τ^i_mkl + τ^i_lmk
  double max() const;
};
R13Residuals r13_residuals(const R13Field& tau);

struct SeminormProfile {
  double t = 0.0;
  /// (k, ‖u‖_{k,t}) for k = 0..K_max
  std::vector<std::pair<int, double>> values;
  /// true when k_max exceeds the differentiation order the grid resolves
  bool resolution_warning = false;
};

/// Finite stand-in for the C^{∞,t} seminorm family.
template <RankTag Tag>
SeminormProfile seminorm_profile(const Field<Tag>& u, double t, int k_max = 4);

/// Smoke test of the differential of the map at h = 0: central finite
/// differences of riemann_christoffel_map along `directions` random
/// conformal + traceless bump directions, reporting singular values of the
/// resulting Gram system (no threshold asserted).
struct DifferentialProbe {
  std::vector<double> singular_values;  ///< descending
  double smallest = 0.0;
};
DifferentialProbe differential_injectivity_probe(const Grid& grid, const EinParams& params,
                                                 int directions, std::uint64_t seed,
                                                 double epsilon = 1e-4);

}  // namespace curvlab
