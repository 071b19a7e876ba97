#pragma once

#include <array>
#include <random>
#include <vector>

#include "curvlab/field.hpp"

namespace curvlab {

/// amplitude · exp(−|x − center|² / (2 width²)).
struct GaussianBump {
  std::array<double, Grid::max_dim> center{};
  double width = 1.0;
  double amplitude = 1.0;

  double operator()(const std::array<double, Grid::max_dim>& x, int dim) const;
  /// Sum over the lattice images x + mL, |m_a| ≤ 2, so the sample is smooth on
  /// the torus. Samplers below use this form.
  double periodic(const std::array<double, Grid::max_dim>& x, int dim, double length) const;
};

struct ScalarBumps {
  std::vector<GaussianBump> bumps;
  ScalarField sample(const Grid& grid) const;
};

/// Bump times a constant symmetric matrix; coefficients are the n(n+1)/2
/// upper-triangular entries in row-major order (c_00, c_01, …, c_11, …).
struct TensorBump {
  GaussianBump shape;
  std::vector<double> coefficients;
};

struct TensorBumps {
  int dim = 0;
  std::vector<TensorBump> bumps;
  SymTensorField sample(const Grid& grid) const;
};

/// Draws random bump mixtures whose parameters depend only on the generator
/// state, so the same draw can be sampled on several resolutions.
class BumpSampler {
 public:
  struct Options {
    double min_width;
    double max_width;
    double center_spread;  ///< centers uniform in [−spread, spread]ⁿ
    int min_bumps = 1;
    int max_bumps = 3;
  };

  /// Defaults scaled to the box: widths in [L/16, L/10], centers within L/48
  /// of the origin.
  BumpSampler(int dim, double length);
  BumpSampler(int dim, Options options);

  ScalarBumps scalar_mixture(std::mt19937_64& rng) const;
  /// Tensor mixture with random coefficients in [−1, 1] scaled by amplitude.
  TensorBumps tensor_mixture(std::mt19937_64& rng, double amplitude) const;

 private:
  GaussianBump draw_shape(std::mt19937_64& rng) const;

  int dim_;
  Options options_;
};

}  // namespace curvlab
