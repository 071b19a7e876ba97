#include "curvlab/curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "curvlab/error.hpp"
#include "curvlab/fft.hpp"
#include "curvlab/spectral.hpp"

namespace curvlab {

namespace {

using Array = std::vector<double>;

/// out[a] = ∂_a of the given values, from one forward transform.
std::vector<Array> grad_of(const Grid& grid, std::span<const double> values) {
  auto fields = gradient(ScalarField(grid, Array(values.begin(), values.end())));
  std::vector<Array> out;
  out.reserve(fields.size());
  for (auto& f : fields) out.emplace_back(f.values().begin(), f.values().end());
  return out;
}

/// d[c][a] = ∂_a (component c).
template <RankTag Tag>
std::vector<std::vector<Array>> component_gradients(const Field<Tag>& f) {
  std::vector<std::vector<Array>> d;
  d.reserve(f.components());
  for (std::size_t c = 0; c < f.components(); ++c) d.push_back(grad_of(f.grid(), f.component(c)));
  return d;
}

double relative(double residual, double scale) { return scale > 0.0 ? residual / scale : residual; }

}  // namespace

EinParams::EinParams(int dim, double kappa, double lambda)
    : EinParams(dim, kappa, lambda, 2.0 * kappa) {}

EinParams::EinParams(int dim, double kappa, double lambda, double a)
    : dim_(dim), kappa_(kappa), lambda_(lambda), a_(a) {
  if (dim < 2 || dim > Grid::max_dim) throw InvalidArgument("EinParams dimension must be 2..4");
}

double EinParams::b() const {
  return (kappa_ * (1.0 + a_ * (dim_ - 2)) - a_) / (2.0 * (dim_ - 1));
}

double EinParams::c() const { return (1.0 + (dim_ - 2) * a_) * lambda_ / (2.0 * (dim_ - 1)); }

bool EinParams::kappa_regular() const { return trace_factor() != 0.0; }

bool EinParams::a_regular() const { return dim_ == 2 || 1.0 + a_ * (dim_ - 2) != 0.0; }

double EinParams::bianchi_coefficient() const {
  return (2.0 * kappa_ + 1.0) / (2.0 * trace_factor());
}

double EinParams::trace_coupling() const {
  return (dim_ - 2) * kappa_ / (2.0 * trace_factor());
}

ChristoffelField christoffel(const Metric& g) {
  const Grid& grid = g.grid();
  const int n = grid.dim();
  const auto& h = g.perturbation();
  const auto& ginv = g.inverse();
  const auto dh = component_gradients(h);
  ChristoffelField out(grid);
  std::array<double, Grid::max_dim> lower{};
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const int ij = sym_index(n, i, j);
      for (std::size_t p = 0; p < grid.size(); ++p) {
        for (int s = 0; s < n; ++s) {
          lower[s] = 0.5 * (dh[sym_index(n, s, j)][i][p] + dh[sym_index(n, i, s)][j][p] -
                            dh[ij][s][p]);
        }
        for (int k = 0; k < n; ++k) {
          double acc = 0.0;
          for (int s = 0; s < n; ++s) acc += ginv(k, s)[p] * lower[s];
          out(k, i, j)[p] = acc;
        }
      }
    }
  }
  return out;
}

SymTensorField ricci(const Metric& g, RicciDiagnostics* diagnostics) {
  return ricci(g, christoffel(g), diagnostics);
}

SymTensorField ricci(const Metric& g, const ChristoffelField& gamma,
                     RicciDiagnostics* diagnostics) {
  const Grid& grid = g.grid();
  const int n = grid.dim();
  const int nsym = grid.sym_components();
  const auto modes = modes_for(grid);

  // Σ_l ∂_l Γ^l_jk, accumulated in Fourier space
  std::vector<Array> divergence_term(nsym);
  for (int c = 0; c < nsym; ++c) {
    Spectrum acc;
    for (int l = 0; l < n; ++l) {
      Spectrum spec = forward(grid, gamma.component(l * nsym + c));
      apply_derivative(*modes, spec, l);
      if (acc.empty()) {
        acc = std::move(spec);
      } else {
        for (std::size_t s = 0; s < acc.size(); ++s) acc[s] += spec[s];
      }
    }
    divergence_term[c] = inverse(grid, acc);
  }

  // v_j = Γ^l_jl and its gradient dv[j][k] = ∂_k v_j
  std::vector<Array> v(n, Array(grid.size(), 0.0));
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      auto src = gamma(l, j, l);
      for (std::size_t p = 0; p < grid.size(); ++p) v[j][p] += src[p];
    }
  }
  std::vector<std::vector<Array>> dv;
  for (int j = 0; j < n; ++j) dv.push_back(grad_of(grid, v[j]));

  SymTensorField out(grid);
  double asymmetry = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      const int jk = sym_index(n, j, k);
      auto dst = out(j, k);
      for (std::size_t p = 0; p < grid.size(); ++p) {
        double quad = 0.0;
        for (int q = 0; q < n; ++q) {
          quad += gamma(q, j, k)[p] * v[q][p];
          for (int l = 0; l < n; ++l) quad -= gamma(q, j, l)[p] * gamma(l, q, k)[p];
        }
        const double skew = dv[j][k][p] - dv[k][j][p];
        asymmetry = std::max(asymmetry, std::abs(skew));
        dst[p] = divergence_term[jk][p] - 0.5 * (dv[j][k][p] + dv[k][j][p]) + quad;
      }
    }
  }
  if (diagnostics != nullptr) {
    diagnostics->asymmetry = asymmetry;
    diagnostics->scale = out.max_abs();
  }
  return out;
}

ScalarField scalar_curvature(const Metric& g) { return trace(g, ricci(g)); }

SymTensorField ein(const Metric& g, const EinParams& params) {
  SymTensorField ric = ricci(g);
  const ScalarField r = trace(g, ric);
  const SymTensorField metric = g.covariant();
  SymTensorField out = ric;
  const int n = g.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      auto dst = out(i, j);
      auto gij = metric(i, j);
      for (std::size_t p = 0; p < dst.size(); ++p) {
        dst[p] += (params.kappa() * r[p] + params.lambda()) * gij[p];
      }
    }
  }
  return out;
}

SymTensorField ein_excess(const Metric& g, const EinParams& params) {
  const SymTensorField ric = ricci(g);
  const ScalarField r = trace(g, ric);
  ScalarField kr(g.grid());
  for (std::size_t p = 0; p < kr.grid().size(); ++p) kr[p] = params.kappa() * r[p];
  SymTensorField out = scale(kr, g.covariant());
  out += ric;
  out.axpy(params.lambda(), g.perturbation());
  return out;
}

FourTensorField riemann(const Metric& g) { return riemann(g, christoffel(g)); }

FourTensorField riemann(const Metric& g, const ChristoffelField& gamma) {
  const Grid& grid = g.grid();
  const int n = grid.dim();
  const int nsym = grid.sym_components();
  const auto dgamma = component_gradients(gamma);  // dgamma[i*nsym + sym(l,j)][k]
  const SymTensorField metric = g.covariant();
  FourTensorField out(grid);
  constexpr int m4 = Grid::max_dim * Grid::max_dim * Grid::max_dim * Grid::max_dim;
  std::array<double, m4> mixed{};
  auto gam = [&](int i, int a, int b, std::size_t p) { return gamma(i, a, b)[p]; };
  for (std::size_t p = 0; p < grid.size(); ++p) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          for (int l = 0; l < n; ++l) {
            double r = dgamma[i * nsym + sym_index(n, l, j)][k][p] -
                       dgamma[i * nsym + sym_index(n, k, j)][l][p];
            for (int q = 0; q < n; ++q) {
              r += gam(i, k, q, p) * gam(q, l, j, p) - gam(i, l, q, p) * gam(q, k, j, p);
            }
            mixed[four_index(n, i, j, k, l)] = r;
          }
        }
      }
    }
    for (int m = 0; m < n; ++m) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          for (int l = 0; l < n; ++l) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += metric(m, i)[p] * mixed[four_index(n, i, j, k, l)];
            out(m, j, k, l)[p] = acc;
          }
        }
      }
    }
  }
  return out;
}

SymTensorField metric_contraction(const Metric& g, const FourTensorField& t) {
  const Grid& grid = g.grid();
  const int n = grid.dim();
  const auto& ginv = g.inverse();
  SymTensorField out(grid);
  for (int j = 0; j < n; ++j) {
    for (int l = j; l < n; ++l) {
      auto dst = out(j, l);
      for (std::size_t p = 0; p < grid.size(); ++p) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
          for (int k = 0; k < n; ++k) {
            acc += ginv(i, k)[p] * 0.5 * (t(i, j, k, l)[p] + t(i, l, k, j)[p]);
          }
        }
        dst[p] = acc;
      }
    }
  }
  return out;
}

double CurvatureSymmetry::max() const {
  return std::max({antisymmetry_first, antisymmetry_last, pair, first_bianchi});
}

CurvatureSymmetry curvature_symmetry(const FourTensorField& t) {
  const int n = t.dim();
  const double scale = t.max_abs();
  CurvatureSymmetry r;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          auto a = t(i, j, k, l);
          auto b = t(j, i, k, l);
          auto c = t(i, j, l, k);
          auto d = t(k, l, i, j);
          auto e = t(i, k, l, j);
          auto f = t(i, l, j, k);
          for (std::size_t p = 0; p < a.size(); ++p) {
            r.antisymmetry_first = std::max(r.antisymmetry_first, std::abs(a[p] + b[p]));
            r.antisymmetry_last = std::max(r.antisymmetry_last, std::abs(a[p] + c[p]));
            r.pair = std::max(r.pair, std::abs(a[p] - d[p]));
            r.first_bianchi = std::max(r.first_bianchi, std::abs(a[p] + e[p] + f[p]));
          }
        }
      }
    }
  }
  r.antisymmetry_first = relative(r.antisymmetry_first, scale);
  r.antisymmetry_last = relative(r.antisymmetry_last, scale);
  r.pair = relative(r.pair, scale);
  r.first_bianchi = relative(r.first_bianchi, scale);
  return r;
}

OneFormField divergence(const Metric& g, const SymTensorField& s) {
  return divergence(g, christoffel(g), s);
}

OneFormField divergence(const Metric& g, const ChristoffelField& gamma, const SymTensorField& s) {
  const Grid& grid = g.grid();
  const int n = grid.dim();
  const auto& ginv = g.inverse();
  const auto ds = component_gradients(s);
  OneFormField out(grid);
  for (int i = 0; i < n; ++i) {
    auto dst = out(i);
    for (std::size_t p = 0; p < grid.size(); ++p) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          double cov = ds[sym_index(n, j, i)][k][p];
          for (int q = 0; q < n; ++q) {
            cov -= gamma(q, k, j)[p] * s(q, i)[p] + gamma(q, k, i)[p] * s(j, q)[p];
          }
          acc += ginv(j, k)[p] * cov;
        }
      }
      dst[p] = -acc;
    }
  }
  return out;
}

OneFormField exterior_derivative(const ScalarField& f) {
  OneFormField out(f.grid());
  auto d = gradient(f);
  for (int a = 0; a < f.dim(); ++a) std::ranges::copy(d[a].values(), out(a).begin());
  return out;
}

SymTensorField sym_grad_flat(const OneFormField& omega) {
  const Grid& grid = omega.grid();
  const int n = grid.dim();
  const auto d = component_gradients(omega);  // d[j][i] = ∂_i ω_j
  SymTensorField out(grid);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      auto dst = out(i, j);
      for (std::size_t p = 0; p < grid.size(); ++p) dst[p] = 0.5 * (d[j][i][p] + d[i][j][p]);
    }
  }
  return out;
}

OneFormField bianchi_B(const Metric& g, const SymTensorField& s) {
  OneFormField out = divergence(g, s);
  out.axpy(0.5, exterior_derivative(trace(g, s)));
  return out;
}

OneFormField bianchi_cal(const Metric& g, const SymTensorField& e, const EinParams& params) {
  if (!params.kappa_regular()) {
    std::ostringstream msg;
    msg << "kappa = " << params.kappa() << " equals -1/n; the Bianchi coefficient is singular";
    throw KappaSingular(msg.str());
  }
  OneFormField out = divergence(g, e);
  out.axpy(params.bianchi_coefficient(), exterior_derivative(trace(g, e)));
  return out;
}

OneFormField bianchi_cal(const Metric& g, const ChristoffelField& gamma, const SymTensorField& e,
                         double shift, const EinParams& params) {
  if (!params.kappa_regular()) {
    std::ostringstream msg;
    msg << "kappa = " << params.kappa() << " equals -1/n; the Bianchi coefficient is singular";
    throw KappaSingular(msg.str());
  }
  const Grid& grid = g.grid();
  OneFormField out = divergence(g, gamma, e);
  out.axpy(shift, divergence(g, gamma, kronecker(grid)));
  // the dropped constant n·shift has no gradient
  out.axpy(params.bianchi_coefficient(), exterior_derivative(shifted_trace_excess(g, e, shift)));
  return out;
}

OneFormField t_correction(const SymTensorField& e, const SymTensorField& h) {
  const Grid& grid = e.grid();
  const int n = grid.dim();
  const auto de = component_gradients(e);
  OneFormField out(grid);
  for (int j = 0; j < n; ++j) {
    auto dst = out(j);
    for (std::size_t p = 0; p < grid.size(); ++p) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          acc += (de[sym_index(n, j, l)][k][p] + de[sym_index(n, k, j)][l][p] -
                  de[sym_index(n, k, l)][j][p]) *
                 h(k, l)[p];
        }
      }
      dst[p] = 0.5 * acc;
    }
  }
  return out;
}

FourTensorField kulkarni_nomizu(const SymTensorField& a, const SymTensorField& b) {
  const Grid& grid = a.grid();
  const int n = grid.dim();
  FourTensorField out(grid);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          auto dst = out(i, j, k, l);
          auto aik = a(i, k), bjl = b(j, l), ajl = a(j, l), bik = b(i, k);
          auto ail = a(i, l), bjk = b(j, k), ajk = a(j, k), bil = b(i, l);
          for (std::size_t p = 0; p < grid.size(); ++p) {
            dst[p] = aik[p] * bjl[p] + ajl[p] * bik[p] - ail[p] * bjk[p] - ajk[p] * bil[p];
          }
        }
      }
    }
  }
  return out;
}

FourTensorField cal_ein(const Metric& g, const EinParams& params) {
  const ChristoffelField gamma = christoffel(g);
  FourTensorField out = riemann(g, gamma);
  const SymTensorField ric = ricci(g, gamma);
  const ScalarField r = trace(g, ric);
  const SymTensorField metric = g.covariant();
  SymTensorField s = params.a() * ric;
  const int n = g.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      auto dst = s(i, j);
      auto gij = metric(i, j);
      for (std::size_t p = 0; p < dst.size(); ++p) {
        dst[p] += (params.b() * r[p] + params.c()) * gij[p];
      }
    }
  }
  out += kulkarni_nomizu(metric, s);
  return out;
}

}  // namespace curvlab
