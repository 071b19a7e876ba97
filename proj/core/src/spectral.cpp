#include "curvlab/spectral.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <cmath>
#include <random>
#include <sstream>

#include "curvlab/bumps.hpp"
#include "curvlab/error.hpp"

namespace curvlab {

namespace {

constexpr double nyquist_warning_level = 1e-10;

// Forward transform for derivative-type operators, which drop the zero mode.
// Removing the mean first keeps roundoff relative to the fluctuation, not to
// a large constant background such as Λδ.
Spectrum checked_forward(const Grid& grid, std::span<const double> values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  std::vector<double> centered(values.begin(), values.end());
  for (double& v : centered) v -= mean;
  Spectrum spec = forward(grid, centered);
  const double frac = nyquist_fraction(grid, spec);
  if (frac > nyquist_warning_level) {
    // warn once per process; later hits go to debug
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true)) {
      spdlog::warn("spectral derivative of a field with Nyquist energy fraction {:.3e}", frac);
    } else {
      spdlog::debug("spectral derivative of a field with Nyquist energy fraction {:.3e}", frac);
    }
  }
  return spec;
}

template <RankTag Tag>
double component_weight(int dim, std::size_t c) {
  if constexpr (Tag == RankTag::sym2) {
    // off-diagonal slots stand for two matrix entries
    int slot = 0;
    for (int i = 0; i < dim; ++i) {
      for (int j = i; j < dim; ++j, ++slot) {
        if (static_cast<std::size_t>(slot) == c) return i == j ? 1.0 : 2.0;
      }
    }
    return 1.0;
  } else {
    (void)dim;
    (void)c;
    return 1.0;
  }
}

}  // namespace

double nyquist_fraction(const Grid& grid, const Spectrum& spectrum) {
  const auto modes = modes_for(grid);
  double total = 0.0;
  double nyq = 0.0;
  for (std::size_t s = 0; s < spectrum.size(); ++s) {
    const double e = modes->multiplicity(s) * std::norm(spectrum[s]);
    total += e;
    if (modes->touches_nyquist(s)) nyq += e;
  }
  return total > 0.0 ? nyq / total : 0.0;
}

void apply_derivative(const ModeSet& modes, Spectrum& spectrum, int axis) {
  for (std::size_t s = 0; s < spectrum.size(); ++s) {
    spectrum[s] *= std::complex<double>(0.0, modes.derivative_symbol(s, axis));
  }
}

ScalarField derivative(const ScalarField& f, int axis) {
  const Grid& grid = f.grid();
  Spectrum spec = checked_forward(grid, f.values());
  apply_derivative(*modes_for(grid), spec, axis);
  return ScalarField(grid, inverse(grid, spec));
}

std::vector<ScalarField> gradient(const ScalarField& f) {
  const Grid& grid = f.grid();
  const auto modes = modes_for(grid);
  const Spectrum spec = checked_forward(grid, f.values());
  std::vector<ScalarField> out;
  out.reserve(grid.dim());
  for (int a = 0; a < grid.dim(); ++a) {
    Spectrum d = spec;
    apply_derivative(*modes, d, a);
    out.emplace_back(grid, inverse(grid, d));
  }
  return out;
}

ScalarField second_derivative(const ScalarField& f, int a, int b) {
  const Grid& grid = f.grid();
  const auto modes = modes_for(grid);
  Spectrum spec = checked_forward(grid, f.values());
  apply_derivative(*modes, spec, a);
  apply_derivative(*modes, spec, b);
  return ScalarField(grid, inverse(grid, spec));
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& grid = f.grid();
  const auto modes = modes_for(grid);
  Spectrum spec = checked_forward(grid, f.values());
  for (std::size_t s = 0; s < spec.size(); ++s) spec[s] *= modes->xi_squared(s);
  return ScalarField(grid, inverse(grid, spec));
}

SymTensorField laplacian(const SymTensorField& f) {
  const Grid& grid = f.grid();
  const auto modes = modes_for(grid);
  SymTensorField out(grid);
  for (std::size_t c = 0; c < f.components(); ++c) {
    Spectrum spec = checked_forward(grid, f.component(c));
    for (std::size_t s = 0; s < spec.size(); ++s) spec[s] *= modes->xi_squared(s);
    auto values = inverse(grid, spec);
    std::ranges::copy(values, out.component(c).begin());
  }
  return out;
}

ScalarField invert_helmholtz(const ScalarField& f, double c) {
  if (!(c > 0.0)) {
    std::ostringstream msg;
    msg << "Helmholtz inversion requires C > 0, got " << c;
    throw NonPositiveC(msg.str());
  }
  const Grid& grid = f.grid();
  const auto modes = modes_for(grid);
  Spectrum spec = forward(grid, f.values());
  for (std::size_t s = 0; s < spec.size(); ++s) spec[s] /= (modes->xi_squared(s) + c);
  return ScalarField(grid, inverse(grid, spec));
}

ScalarField apply_helmholtz(const ScalarField& u, double c) {
  const Grid& grid = u.grid();
  const auto modes = modes_for(grid);
  Spectrum spec = forward(grid, u.values());
  for (std::size_t s = 0; s < spec.size(); ++s) spec[s] *= (modes->xi_squared(s) + c);
  return ScalarField(grid, inverse(grid, spec));
}

template <RankTag Tag>
double sobolev_norm(const Field<Tag>& u, double s, double t) {
  const Grid& grid = u.grid();
  const auto modes = modes_for(grid);
  std::vector<double> bracket_power(modes->size());
  for (std::size_t k = 0; k < modes->size(); ++k) {
    bracket_power[k] = modes->multiplicity(k) * std::pow(1.0 + modes->xi_squared(k), s);
  }
  const bool weighted = (t != 0.0);
  const ScalarField weight = weighted ? weight_field(grid, t) : ScalarField(grid);
  std::vector<double> buffer(grid.size());
  double total = 0.0;
  for (std::size_t c = 0; c < u.components(); ++c) {
    auto comp = u.component(c);
    for (std::size_t p = 0; p < grid.size(); ++p) buffer[p] = weighted ? weight[p] * comp[p] : comp[p];
    const Spectrum spec = forward(grid, buffer);
    double sum = 0.0;
    for (std::size_t k = 0; k < spec.size(); ++k) sum += bracket_power[k] * std::norm(spec[k]);
    total += component_weight<Tag>(grid.dim(), c) * sum;
  }
  const double n_pts = static_cast<double>(grid.size());
  const double quadrature = std::pow(grid.spacing(), grid.dim()) / n_pts;
  return std::sqrt(total * quadrature);
}

template <RankTag Tag>
double l2_norm(const Field<Tag>& u) {
  const Grid& grid = u.grid();
  double total = 0.0;
  for (std::size_t c = 0; c < u.components(); ++c) {
    double sum = 0.0;
    for (double v : u.component(c)) sum += v * v;
    total += component_weight<Tag>(grid.dim(), c) * sum;
  }
  return std::sqrt(total * std::pow(grid.spacing(), grid.dim()));
}

template <RankTag Tag>
double embedding_probe(const Field<Tag>& u, double s, double s_prime, double t, double t_prime) {
  if (s_prime > s || t_prime > t) {
    throw PreconditionNotMet("embedding probe requires s' <= s and t' <= t");
  }
  const double denom = sobolev_norm(u, s, t);
  if (denom == 0.0) throw PreconditionNotMet("embedding probe requires u != 0");
  return sobolev_norm(u, s_prime, t_prime) / denom;
}

double algebra_ratio(const ScalarField& u, const ScalarField& v, double s, double t) {
  ScalarField uv = u;
  for (std::size_t p = 0; p < uv.grid().size(); ++p) uv[p] *= v[p];
  const double nu = sobolev_norm(u, s, t);
  const double nv = sobolev_norm(v, s, t);
  if (nu == 0.0 || nv == 0.0) throw PreconditionNotMet("algebra ratio requires u, v != 0");
  return sobolev_norm(uv, s, t) / (nu * nv);
}

AlgebraProbe algebra_probe(const Grid& grid, double s, double t, std::size_t sample_count,
                           std::uint64_t seed) {
  if (!(s > 0.5 * grid.dim())) {
    throw PreconditionNotMet("algebra probe requires s > n/2");
  }
  if (!(t >= 0.0)) throw PreconditionNotMet("algebra probe requires t >= 0");
  std::mt19937_64 rng(seed);
  BumpSampler sampler(grid.dim(), grid.length());
  AlgebraProbe out;
  out.ratios.reserve(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const ScalarBumps a = sampler.scalar_mixture(rng);
    const ScalarBumps b = sampler.scalar_mixture(rng);
    const double r = algebra_ratio(a.sample(grid), b.sample(grid), s, t);
    out.ratios.push_back(r);
    out.constant = std::max(out.constant, r);
  }
  return out;
}

#define CURVLAB_INSTANTIATE_NORMS(TAG)                                                     \
  template double sobolev_norm(const Field<TAG>&, double, double);                         \
  template double l2_norm(const Field<TAG>&);                                              \
  template double embedding_probe(const Field<TAG>&, double, double, double, double);

CURVLAB_INSTANTIATE_NORMS(RankTag::scalar)
CURVLAB_INSTANTIATE_NORMS(RankTag::one_form)
CURVLAB_INSTANTIATE_NORMS(RankTag::sym2)
CURVLAB_INSTANTIATE_NORMS(RankTag::christoffel)
CURVLAB_INSTANTIATE_NORMS(RankTag::four)
CURVLAB_INSTANTIATE_NORMS(RankTag::r13)

#undef CURVLAB_INSTANTIATE_NORMS

}  // namespace curvlab
