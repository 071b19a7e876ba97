#include "curvlab/gauged.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <sstream>

#include "curvlab/error.hpp"
#include "curvlab/spectral.hpp"

namespace curvlab {

namespace {

void require_lambda_positive(const EinParams& params) {
  if (!params.lambda_positive()) {
    std::ostringstream msg;
    msg << "Lambda must be positive, got " << params.lambda();
    throw LambdaNonPositive(msg.str());
  }
}

void require_kappa_regular(const EinParams& params) {
  if (!params.kappa_regular()) {
    std::ostringstream msg;
    msg << "kappa = " << params.kappa() << " equals -1/n";
    throw KappaSingular(msg.str());
  }
}

double dot(const SymTensorField& a, const SymTensorField& b) {
  double acc = 0.0;
  auto x = a.values();
  auto y = b.values();
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double norm(const SymTensorField& a) { return std::sqrt(dot(a, a)); }

struct GmresResult {
  SymTensorField solution;
  int iterations = 0;
};

/// Right-preconditioned GMRES for J M y = rhs, returning x = M y.
template <class Jacobian, class Preconditioner>
GmresResult gmres(const Jacobian& jac, const Preconditioner& precond, const SymTensorField& rhs,
                  int max_dim, double rel_tol) {
  const Grid& grid = rhs.grid();
  const double beta = norm(rhs);
  GmresResult out{SymTensorField(grid), 0};
  if (beta == 0.0) return out;
  std::vector<SymTensorField> basis;
  basis.push_back((1.0 / beta) * rhs);
  std::vector<std::vector<double>> hess;  // column j has j+2 entries
  std::vector<double> cs, sn, g{beta};
  int k = 0;
  for (; k < max_dim; ++k) {
    SymTensorField w = jac(precond(basis[k]));
    std::vector<double> col(k + 2, 0.0);
    for (int i = 0; i <= k; ++i) {
      col[i] = dot(w, basis[i]);
      w.axpy(-col[i], basis[i]);
    }
    col[k + 1] = norm(w);
    for (int i = 0; i < k; ++i) {
      const double tmp = cs[i] * col[i] + sn[i] * col[i + 1];
      col[i + 1] = -sn[i] * col[i] + cs[i] * col[i + 1];
      col[i] = tmp;
    }
    const double denom = std::hypot(col[k], col[k + 1]);
    cs.push_back(denom == 0.0 ? 1.0 : col[k] / denom);
    sn.push_back(denom == 0.0 ? 0.0 : col[k + 1] / denom);
    const double next_norm = col[k + 1];
    col[k] = denom;
    col[k + 1] = 0.0;
    g.push_back(-sn[k] * g[k]);
    g[k] = cs[k] * g[k];
    hess.push_back(col);
    if (std::abs(g[k + 1]) <= rel_tol * beta || next_norm == 0.0) {
      ++k;
      break;
    }
    basis.push_back((1.0 / next_norm) * w);
  }
  std::vector<double> y(k, 0.0);
  for (int i = k - 1; i >= 0; --i) {
    double acc = g[i];
    for (int j = i + 1; j < k; ++j) acc -= hess[j][i] * y[j];
    y[i] = acc / hess[i][i];
  }
  SymTensorField combo(grid);
  for (int i = 0; i < k; ++i) combo.axpy(y[i], basis[i]);
  out.solution = precond(combo);
  out.iterations = k;
  return out;
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::diverged:
      return "diverged";
    case SolveStatus::max_iter:
      return "max_iter";
    case SolveStatus::symbol_degenerate:
      return "symbol_degenerate";
    case SolveStatus::non_riemannian:
      return "non_riemannian";
  }
  return "unknown";
}

const char* to_string(SolveMode mode) {
  return mode == SolveMode::picard ? "picard" : "newton_krylov";
}

void SolveConfig::validate(int dim) const {
  if (params.dim() != dim) throw InvalidArgument("solver parameters and data differ in dimension");
  require_lambda_positive(params);
  require_kappa_regular(params);
  if (!(s > 0.5 * dim)) throw InvalidArgument("Sobolev index s must exceed n/2");
  if (!(t >= 0.0)) throw InvalidArgument("weight index t must be nonnegative");
  if (!(tol_residual > 0.0)) throw InvalidArgument("tol_residual must be positive");
  if (!(damping > 0.0 && damping <= 1.0)) throw InvalidArgument("damping must lie in (0, 1]");
  if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
}

namespace {

// Z in perturbation form. With τ = Tr_g E − nΛ the factor is Λ + κτ/(1+κn),
// so Z = Λh + κτ/(1+κn)·g − e and no O(1) terms cancel.
SymTensorField z_term(const Metric& g, const SymTensorField& e, const EinParams& params) {
  const ScalarField tau = shifted_trace_excess(g, e, params.lambda());
  ScalarField excess(g.grid());
  for (std::size_t p = 0; p < excess.grid().size(); ++p) {
    excess[p] = params.kappa() * tau[p] / params.trace_factor();
  }
  SymTensorField out = scale(excess, g.covariant());
  out.axpy(params.lambda(), g.perturbation());
  out -= e;
  return out;
}

}  // namespace

SymTensorField zero_order_Z(const SymTensorField& h, const SymTensorField& e,
                            const EinParams& params) {
  require_kappa_regular(params);
  return z_term(Metric(h), e, params);
}

SymTensorField assemble_F(const SymTensorField& h, const SymTensorField& e,
                          const EinParams& params) {
  require_lambda_positive(params);
  require_kappa_regular(params);
  const Metric g(h);
  const ChristoffelField gamma = christoffel(g);
  SymTensorField out = ricci(g, gamma);
  out += z_term(g, e, params);

  const OneFormField gauge = bianchi_cal(g, gamma, e, params.lambda(), params);
  out.axpy(-1.0 / params.lambda(), sym_grad_flat(gauge));
  return out;
}

namespace {

// ½Δ as −½Σ∂_k∂_k so the Nyquist handling matches the discrete Ricci
SymTensorField half_laplacian(const SymTensorField& h) {
  const Grid& grid = h.grid();
  SymTensorField out(grid);
  for (std::size_t c = 0; c < h.components(); ++c) {
    const ScalarField hc(grid, std::vector<double>(h.component(c).begin(), h.component(c).end()));
    auto dst = out.component(c);
    for (int k = 0; k < grid.dim(); ++k) {
      const ScalarField dd = second_derivative(hc, k, k);
      for (std::size_t p = 0; p < grid.size(); ++p) dst[p] -= 0.5 * dd[p];
    }
  }
  return out;
}

}  // namespace

SymTensorField dF0(const SymTensorField& h, const EinParams& params) {
  require_kappa_regular(params);
  const Grid& grid = h.grid();
  const int n = grid.dim();
  SymTensorField out = half_laplacian(h);
  out.axpy(params.lambda(), h);
  const ScalarField tr = flat_trace(h);
  out.axpy(-params.kappa() * params.lambda() / params.trace_factor(), conformal(tr));
  const double coupling = params.trace_coupling();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const ScalarField dd = second_derivative(tr, i, j);
      auto dst = out(i, j);
      for (std::size_t p = 0; p < grid.size(); ++p) dst[p] -= coupling * dd[p];
    }
  }
  return out;
}

SymTensorField d_ric_flat(const SymTensorField& h) {
  const Metric flat = Metric::flat(h.grid());
  SymTensorField out = half_laplacian(h);
  out -= sym_grad_flat(bianchi_B(flat, h));
  return out;
}

OneFormField d_bianchi_flat(const SymTensorField& e_full, const SymTensorField& h,
                            const EinParams& params) {
  require_kappa_regular(params);
  const Grid& grid = h.grid();
  const int n = grid.dim();
  const Metric flat = Metric::flat(grid);
  const OneFormField b = bianchi_B(flat, h);
  OneFormField out(grid);
  for (int i = 0; i < n; ++i) {
    auto dst = out(i);
    for (int j = 0; j < n; ++j) {
      auto eij = e_full(i, j);
      auto bj = b(j);
      for (std::size_t p = 0; p < grid.size(); ++p) dst[p] -= eij[p] * bj[p];
    }
  }
  out.axpy(params.trace_coupling(), exterior_derivative(flat_inner(e_full, h)));
  out += t_correction(e_full, h);
  return out;
}

GaugeResidual gauge_residual(const SymTensorField& h, const SymTensorField& e,
                             const EinParams& params, double s, double t) {
  require_lambda_positive(params);
  const Metric g(h);
  OneFormField omega = bianchi_cal(g, christoffel(g), e, params.lambda(), params);
  omega *= 1.0 / params.lambda();
  OneFormField p_omega = bianchi_B(g, sym_grad_flat(omega));
  p_omega.axpy(params.lambda(), omega);
  GaugeResidual out{omega, 0.0, 0.0};
  out.omega_norm = sobolev_norm(omega, s + 1.0, t);
  out.p_omega_norm = sobolev_norm(p_omega, s - 1.0, t);
  return out;
}

double einstein_residual(const SymTensorField& h, const SymTensorField& e,
                         const EinParams& params, double s, double t) {
  const Metric g(h);
  SymTensorField diff = ein_excess(g, params);
  diff -= e;
  return sobolev_norm(diff, s, t);
}

SolveReport solve(const SymTensorField& e, const SolveConfig& config) {
  const Grid& grid = e.grid();
  config.validate(grid.dim());
  const EinParams& params = config.params;
  SolveReport report(grid);

  report.data_norm = sobolev_norm(e, config.s + 2.0, config.t);
  if (report.data_norm > config.smallness * params.lambda()) {
    report.smallness_warning = true;
    spdlog::warn("data norm |e|_(s+2,t) = {:.3e} exceeds the smallness threshold {:.3e}",
                 report.data_norm, config.smallness * params.lambda());
  }

  std::unique_ptr<L0Symbol> symbol;
  try {
    symbol = std::make_unique<L0Symbol>(grid, params);
  } catch (const SymbolDegenerate& err) {
    report.status = SolveStatus::symbol_degenerate;
    report.message = err.what();
    return report;
  }

  SymTensorField& h = report.h;
  int increases = 0;
  for (int k = 0; k < config.max_iter; ++k) {
    SymTensorField residual(grid);
    try {
      residual = assemble_F(h, e, params);
    } catch (const NonRiemannian& err) {
      std::ostringstream msg;
      msg << err.what() << "; iterate max |h| = " << h.max_abs();
      report.status = SolveStatus::non_riemannian;
      report.message = msg.str();
      return report;
    }
    const double r = sobolev_norm(residual, config.s, config.t);
    report.residual_history.push_back(r);
    report.residual_l2_history.push_back(l2_norm(residual));
    report.iterations = k + 1;
    if (!std::isfinite(r)) {
      report.status = SolveStatus::diverged;
      report.message = "residual is not finite";
      return report;
    }
    if (r <= config.tol_residual) {
      report.status = SolveStatus::converged;
      break;
    }
    if (k > 0 && r > report.residual_history[k - 1]) {
      if (++increases >= 3) {
        report.status = SolveStatus::diverged;
        report.message = "residual increased on three consecutive iterations";
        return report;
      }
    } else {
      increases = 0;
    }

    SymTensorField step(grid);
    if (config.mode == SolveMode::picard) {
      step = l0_solve(*symbol, residual);
    } else {
      const double h_scale = 1.0 + norm(h);
      auto jacobian = [&](const SymTensorField& v) {
        const double vn = norm(v);
        if (vn == 0.0) return SymTensorField(grid);
        const double eps = config.fd_step * h_scale / vn;
        SymTensorField shifted = h;
        shifted.axpy(eps, v);
        SymTensorField jv = assemble_F(shifted, e, params);
        jv -= residual;
        jv *= 1.0 / eps;
        return jv;
      };
      auto precond = [&](const SymTensorField& v) { return l0_solve(*symbol, v); };
      GmresResult lin = gmres(jacobian, precond, residual, config.krylov_dim, config.krylov_tol);
      report.krylov_iterations.push_back(lin.iterations);
      step = std::move(lin.solution);
    }
    h.axpy(-config.damping, step);
  }
  if (report.status != SolveStatus::converged) {
    report.status = SolveStatus::max_iter;
    report.message = "iteration limit reached";
    return report;
  }

  try {
    const GaugeResidual gauge = gauge_residual(h, e, params, config.s, config.t);
    report.gauge_norm = gauge.omega_norm;
    report.gauge_operator_norm = gauge.p_omega_norm;
    const Metric g(h);
    SymTensorField diff = ein_excess(g, params);
    diff -= e;
    report.einstein_residual = sobolev_norm(diff, config.s, config.t);
    report.einstein_residual_l2 = l2_norm(diff);
  } catch (const NonRiemannian& err) {
    report.status = SolveStatus::non_riemannian;
    report.message = err.what();
  }
  return report;
}

}  // namespace curvlab
