#include "curvlab/bumps.hpp"

#include <cmath>

#include "curvlab/error.hpp"

namespace curvlab {

double GaussianBump::operator()(const std::array<double, Grid::max_dim>& x, int dim) const {
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) {
    const double d = x[a] - center[a];
    r2 += d * d;
  }
  return amplitude * std::exp(-r2 / (2.0 * width * width));
}

double GaussianBump::periodic(const std::array<double, Grid::max_dim>& x, int dim,
                              double length) const {
  // the Gaussian factorizes over axes, so the image sum does too
  double v = amplitude;
  for (int a = 0; a < dim; ++a) {
    double axis = 0.0;
    for (int m = -2; m <= 2; ++m) {
      const double d = x[a] - center[a] + m * length;
      axis += std::exp(-d * d / (2.0 * width * width));
    }
    v *= axis;
  }
  return v;
}

ScalarField ScalarBumps::sample(const Grid& grid) const {
  ScalarField out(grid);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto x = grid.position(p);
    double v = 0.0;
    for (const auto& b : bumps) v += b.periodic(x, grid.dim(), grid.length());
    out[p] = v;
  }
  return out;
}

SymTensorField TensorBumps::sample(const Grid& grid) const {
  if (grid.dim() != dim) throw InvalidArgument("tensor bump dimension does not match grid");
  SymTensorField out(grid);
  const std::size_t ncomp = out.components();
  for (const auto& b : bumps) {
    if (b.coefficients.size() != ncomp) {
      throw InvalidArgument("tensor bump needs n(n+1)/2 coefficients");
    }
  }
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto x = grid.position(p);
    for (const auto& b : bumps) {
      const double v = b.shape.periodic(x, grid.dim(), grid.length());
      for (std::size_t c = 0; c < ncomp; ++c) out.component(c)[p] += v * b.coefficients[c];
    }
  }
  return out;
}

BumpSampler::BumpSampler(int dim, double length)
    : BumpSampler(dim, Options{length / 16.0, length / 10.0, length / 48.0, 1, 3}) {}

BumpSampler::BumpSampler(int dim, Options options) : dim_(dim), options_(options) {}

GaussianBump BumpSampler::draw_shape(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> width(options_.min_width, options_.max_width);
  GaussianBump b;
  for (int a = 0; a < dim_; ++a) b.center[a] = options_.center_spread * unit(rng);
  b.width = width(rng);
  return b;
}

ScalarBumps BumpSampler::scalar_mixture(std::mt19937_64& rng) const {
  std::uniform_int_distribution<int> count(options_.min_bumps, options_.max_bumps);
  std::uniform_real_distribution<double> amp(0.5, 1.0);
  std::bernoulli_distribution sign(0.5);
  ScalarBumps out;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    GaussianBump b = draw_shape(rng);
    b.amplitude = amp(rng) * (sign(rng) ? 1.0 : -1.0);
    out.bumps.push_back(b);
  }
  return out;
}

TensorBumps BumpSampler::tensor_mixture(std::mt19937_64& rng, double amplitude) const {
  std::uniform_int_distribution<int> count(options_.min_bumps, options_.max_bumps);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  TensorBumps out;
  out.dim = dim_;
  const int k = count(rng);
  const int ncomp = dim_ * (dim_ + 1) / 2;
  for (int i = 0; i < k; ++i) {
    TensorBump b;
    b.shape = draw_shape(rng);
    b.shape.amplitude = amplitude;
    for (int c = 0; c < ncomp; ++c) b.coefficients.push_back(coef(rng));
    out.bumps.push_back(std::move(b));
  }
  return out;
}

}  // namespace curvlab
