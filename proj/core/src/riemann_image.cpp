#include "curvlab/riemann_image.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "curvlab/bumps.hpp"
#include "curvlab/error.hpp"
#include "curvlab/spectral.hpp"

namespace curvlab {

namespace {

/// g^{ij} T_jklm
R13Field raise_first(const Metric& g, const FourTensorField& t) {
  const Grid& grid = g.grid();
  const int n = grid.dim();
  const auto& ginv = g.inverse();
  R13Field out(grid);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
          auto dst = out(i, k, l, m);
          for (int j = 0; j < n; ++j) {
            auto gij = ginv(i, j);
            auto src = t(j, k, l, m);
            for (std::size_t p = 0; p < grid.size(); ++p) dst[p] += gij[p] * src[p];
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

R13Field riemann_christoffel_map(const SymTensorField& h, const EinParams& params) {
  const Grid& grid = h.grid();
  const Metric g(h);
  R13Field out = raise_first(g, cal_ein(g, params));
  // δ⁻¹𝓔in(δ) = c(δ⊼δ), with (δ⊼δ)_iklm = 2(δ_il δ_km − δ_im δ_kl).
  const int n = grid.dim();
  const double flat = 2.0 * params.c();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      for (double& v : out(i, k, i, k)) v -= flat;
      for (double& v : out(i, k, k, i)) v += flat;
    }
  }
  return out;
}

double R13Residuals::max() const { return std::max({trace, antisymmetry, cyclic}); }

R13Residuals r13_residuals(const R13Field& tau) {
  const int n = tau.dim();
  const std::size_t size = tau.grid().size();
  const double scale = tau.max_abs();
  R13Residuals r;
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < n; ++m) {
      for (std::size_t p = 0; p < size; ++p) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += tau(i, i, l, m)[p];
        r.trace = std::max(r.trace, std::abs(acc));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
          auto a = tau(i, k, l, m);
          auto b = tau(i, k, m, l);
          auto c = tau(i, m, k, l);
          auto d = tau(i, l, m, k);
          for (std::size_t p = 0; p < size; ++p) {
            r.antisymmetry = std::max(r.antisymmetry, std::abs(a[p] + b[p]));
            r.cyclic = std::max(r.cyclic, std::abs(a[p] + c[p] + d[p]));
          }
        }
      }
    }
  }
  if (scale > 0.0) {
    r.trace /= scale;
    r.antisymmetry /= scale;
    r.cyclic /= scale;
  }
  return r;
}

template <RankTag Tag>
SeminormProfile seminorm_profile(const Field<Tag>& u, double t, int k_max) {
  if (k_max < 0) throw InvalidArgument("k_max must be nonnegative");
  SeminormProfile out;
  out.t = t;
  for (int k = 0; k <= k_max; ++k) out.values.emplace_back(k, sobolev_norm(u, k, t));
  // A k-th derivative is trusted while the Nyquist-band energy stays negligible
  // after multiplication by ⟨ξ⟩^k; flag when the top band carries > 1e−8 of it.
  const Grid& grid = u.grid();
  const auto modes = modes_for(grid);
  double total = 0.0;
  double edge = 0.0;
  for (std::size_t c = 0; c < u.components(); ++c) {
    const Spectrum spec = forward(grid, u.component(c));
    for (std::size_t s = 0; s < spec.size(); ++s) {
      const double e =
          modes->multiplicity(s) * std::pow(1.0 + modes->xi_squared(s), k_max) * std::norm(spec[s]);
      total += e;
      if (modes->touches_nyquist(s)) edge += e;
    }
  }
  out.resolution_warning = total > 0.0 && edge > 1e-8 * total;
  return out;
}

template SeminormProfile seminorm_profile(const Field<RankTag::scalar>&, double, int);
template SeminormProfile seminorm_profile(const Field<RankTag::sym2>&, double, int);
template SeminormProfile seminorm_profile(const Field<RankTag::r13>&, double, int);

DifferentialProbe differential_injectivity_probe(const Grid& grid, const EinParams& params,
                                                 int directions, std::uint64_t seed,
                                                 double epsilon) {
  std::mt19937_64 rng(seed);
  BumpSampler sampler(grid.dim(), grid.length());
  std::vector<std::vector<double>> columns;
  for (int d = 0; d < directions; ++d) {
    SymTensorField dir(grid);
    if (d % 2 == 0) {
      // conformal direction u·δ
      dir = conformal(sampler.scalar_mixture(rng).sample(grid));
    } else {
      // traceless direction
      dir = sampler.tensor_mixture(rng, 1.0).sample(grid);
      ScalarField tr = flat_trace(dir);
      dir.axpy(-1.0 / grid.dim(), conformal(tr));
    }
    R13Field plus = riemann_christoffel_map(epsilon * dir, params);
    R13Field minus = riemann_christoffel_map(-epsilon * dir, params);
    plus -= minus;
    plus *= 1.0 / (2.0 * epsilon * l2_norm(dir));
    columns.emplace_back(plus.values().begin(), plus.values().end());
  }
  Eigen::MatrixXd gram(directions, directions);
  for (int a = 0; a < directions; ++a) {
    for (int b = a; b < directions; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < columns[a].size(); ++i) acc += columns[a][i] * columns[b][i];
      gram(a, b) = acc;
      gram(b, a) = acc;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  DifferentialProbe out;
  for (int i = directions - 1; i >= 0; --i) {
    out.singular_values.push_back(std::sqrt(std::max(0.0, eig.eigenvalues()(i))));
  }
  out.smallest = out.singular_values.empty() ? 0.0 : out.singular_values.back();
  return out;
}

}  // namespace curvlab
