#pragma once

#include <curvlab/curvlab.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace testing {

using namespace curvlab;

inline constexpr double pi = std::numbers::pi;

template <RankTag Tag>
double max_diff(const Field<Tag>& a, const Field<Tag>& b) {
  Field<Tag> d = a;
  d -= b;
  return d.max_abs();
}

template <RankTag Tag>
double rel_diff(const Field<Tag>& a, const Field<Tag>& b) {
  const double scale = std::max(a.max_abs(), b.max_abs());
  return scale == 0.0 ? 0.0 : max_diff(a, b) / scale;
}

template <RankTag Tag>
double rel_l2(const Field<Tag>& a, const Field<Tag>& b) {
  Field<Tag> d = a;
  d -= b;
  const double ref = l2_norm(b);
  return ref == 0.0 ? l2_norm(d) : l2_norm(d) / ref;
}

/// Smooth random symmetric tensor mixture, well resolved on grids with
/// L/N ≤ 0.5 when L = 16.
inline SymTensorField random_tensor(const Grid& grid, std::uint64_t seed, double amplitude,
                                    double min_width = -1.0) {
  const double w = min_width > 0 ? min_width : grid.length() / 12.0;
  BumpSampler sampler(grid.dim(), BumpSampler::Options{w, 1.5 * w, grid.length() / 32.0, 1, 3});
  std::mt19937_64 rng(seed);
  return sampler.tensor_mixture(rng, amplitude).sample(grid);
}

inline ScalarField random_scalar(const Grid& grid, std::uint64_t seed, double amplitude = 1.0) {
  const double w = grid.length() / 12.0;
  BumpSampler sampler(grid.dim(), BumpSampler::Options{w, 1.5 * w, grid.length() / 32.0, 1, 3});
  std::mt19937_64 rng(seed);
  ScalarField u = sampler.scalar_mixture(rng).sample(grid);
  u *= amplitude;
  return u;
}

inline OneFormField random_one_form(const Grid& grid, std::uint64_t seed) {
  OneFormField out(grid);
  for (int i = 0; i < grid.dim(); ++i) {
    const ScalarField c = random_scalar(grid, seed * 31 + i);
    std::ranges::copy(c.values(), out(i).begin());
  }
  return out;
}

inline ScalarField plane_wave(const Grid& grid, const std::array<int, Grid::max_dim>& k,
                              bool cosine) {
  ScalarField out(grid);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto x = grid.position(p);
    double phase = 0.0;
    for (int a = 0; a < grid.dim(); ++a) phase += two_pi * k[a] * x[a] / grid.length();
    out[p] = cosine ? std::cos(phase) : std::sin(phase);
  }
  return out;
}

}  // namespace testing
