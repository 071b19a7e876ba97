#pragma once

#include <cstdint>
#include <vector>

#include "curvlab/fft.hpp"
#include "curvlab/field.hpp"

namespace curvlab {

/// Fraction of spectral energy carried by modes on a Nyquist plane.
double nyquist_fraction(const Grid& grid, const Spectrum& spectrum);

/// Multiplies a spectrum by iξ_axis (Nyquist along the axis zeroed).
void apply_derivative(const ModeSet& modes, Spectrum& spectrum, int axis);

/// ∂_axis f, spectrally. Logs a warning when the Nyquist energy of f exceeds
/// 1e−10 of the total.
ScalarField derivative(const ScalarField& f, int axis);
/// All n partial derivatives from a single forward transform.
std::vector<ScalarField> gradient(const ScalarField& f);
/// ∂_a ∂_b f with the same symbols as two calls to derivative().
ScalarField second_derivative(const ScalarField& f, int a, int b);

/// Geometer's Laplacian Δ = −Σ_j ∂_j², symbol +|ξ|².
ScalarField laplacian(const ScalarField& f);
SymTensorField laplacian(const SymTensorField& f);

/// Solves (Δ + C)u = f for C > 0 by per-mode division.
ScalarField invert_helmholtz(const ScalarField& f, double c);
/// Applies Δ + C.
ScalarField apply_helmholtz(const ScalarField& u, double c);

/// Weighted Sobolev norm ‖u‖_{s,t} = ‖⟨ξ⟩^s DFT(⟨x⟩^t u)‖ with the lattice
/// quadrature normalization, so that ‖u‖_{0,0}² = Δxⁿ Σ_p u(p)².
/// Symmetric tensors use the full matrix (Frobenius) sum; other ranks sum over
/// stored components.
template <RankTag Tag>
double sobolev_norm(const Field<Tag>& u, double s, double t);

/// Discrete L² norm (Δxⁿ Σ u²)^{1/2}, computed in physical space.
template <RankTag Tag>
double l2_norm(const Field<Tag>& u);

/// ‖u‖_{s',t'} / ‖u‖_{s,t}; requires s' ≤ s, t' ≤ t and u ≠ 0.
template <RankTag Tag>
double embedding_probe(const Field<Tag>& u, double s, double s_prime, double t, double t_prime);

/// ‖uv‖_{s,t} / (‖u‖_{s,t} ‖v‖_{s,t}) for one pair.
double algebra_ratio(const ScalarField& u, const ScalarField& v, double s, double t);

struct AlgebraProbe {
  double constant = 0.0;  ///< max sampled ratio, the empirical C_{s,t}
  std::vector<double> ratios;
};

/// Samples random pairs of band-limited Gaussian bump mixtures (drawn from a
/// generator seeded with `seed`, independent of the grid resolution) and
/// reports the largest product ratio. Requires s > n/2 and t ≥ 0.
AlgebraProbe algebra_probe(const Grid& grid, double s, double t, std::size_t sample_count,
                           std::uint64_t seed);

}  // namespace curvlab
