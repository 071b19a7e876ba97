#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "harness/commands.hpp"

namespace curvlab::harness {

namespace {

template <RankTag Tag>
double rel_l2(const Field<Tag>& a, const Field<Tag>& b) {
  Field<Tag> d = a;
  d -= b;
  return l2_norm(d) / l2_norm(b);
}

template <RankTag Tag>
double rel_max(const Field<Tag>& a, const Field<Tag>& b) {
  Field<Tag> d = a;
  d -= b;
  return d.max_abs() / std::max(a.max_abs(), b.max_abs());
}

CheckResult at_most(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured, threshold, "<=", measured <= threshold, std::move(detail)};
}

CheckResult at_least(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured, threshold, ">=", measured >= threshold, std::move(detail)};
}

CheckResult holds(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok ? 1.0 : 0.0, 1.0, "==", ok, std::move(detail)};
}

/// Random resolved tensor mixtures: widths in [w, 1.5w], centers within L/32.
class Probe {
 public:
  Probe(const ExperimentConfig& cfg, double width)
      : rng_(cfg.seed),
        sampler_(cfg.dim, BumpSampler::Options{width, 1.5 * width, cfg.length / 32.0, 1, 3}) {}

  SymTensorField tensor(const Grid& g, double amplitude) {
    return sampler_.tensor_mixture(rng_, amplitude).sample(g);
  }
  ScalarField scalar(const Grid& g) { return sampler_.scalar_mixture(rng_).sample(g); }

 private:
  std::mt19937_64 rng_;
  BumpSampler sampler_;
};

SymTensorField probe_bump(const ExperimentConfig& cfg, const Grid& g, double amplitude) {
  std::vector<double> coef;
  const double pattern[] = {1.0, 0.3, -0.2, 0.7, 0.1, -0.5, 0.4, -0.3, 0.2, 0.6};
  for (int k = 0; k < cfg.dim * (cfg.dim + 1) / 2; ++k) coef.push_back(pattern[k]);
  return TensorBumps{cfg.dim, {TensorBump{GaussianBump{{}, cfg.checks.probe_width, amplitude}, coef}}}
      .sample(g);
}

/// 𝓑 with the trace coefficient's sign flipped (fault injection only).
OneFormField corrupted_bianchi(const Metric& g, const SymTensorField& e, const EinParams& p) {
  OneFormField out = divergence(g, e);
  out.axpy(-p.bianchi_coefficient(), exterior_derivative(trace(g, e)));
  return out;
}

}  // namespace

std::vector<CheckResult> run_battery(const ExperimentConfig& cfg, Fault fault) {
  std::vector<CheckResult> out;
  const Grid grid = cfg.grid();
  const EinParams params = cfg.params();
  const int n = cfg.dim;
  const ChecksOptions& opt = cfg.checks;
  Probe probe(cfg, opt.symmetry_width);

  // gauged operator
  out.push_back(at_most("F(0,0) sup norm", assemble_F(SymTensorField(grid), SymTensorField(grid), params).max_abs(),
                        1e-13));
  {
    const L0Symbol symbol(grid, params);
    double fd = 0.0;
    double equiv = 0.0;
    double trip = 0.0;
    double slope_lo = 0.0;
    double slope_hi = 0.0;
    for (int d = 0; d < opt.directions; ++d) {
      const SymTensorField h = probe.tensor(grid, 1.0);
      const SymTensorField lin = dF0(h, params);
      std::array<double, 2> errs{};
      const std::array<double, 2> eps{1e-3, 1e-4};
      for (int k = 0; k < 2; ++k) {
        SymTensorField diff = assemble_F(eps[k] * h, SymTensorField(grid), params);
        diff -= assemble_F(-eps[k] * h, SymTensorField(grid), params);
        diff *= 1.0 / (2.0 * eps[k]);
        errs[k] = rel_l2(diff, lin);
      }
      fd = std::max(fd, errs[1]);
      const double slope = std::log10(errs[0] / errs[1]);
      slope_lo = d == 0 ? slope : std::min(slope_lo, slope);
      slope_hi = d == 0 ? slope : std::max(slope_hi, slope);
      SymTensorField diff = lin;
      diff -= l0_apply(symbol, h);
      equiv = std::max(equiv, l2_norm(diff) / l2_norm(h));
      trip = std::max(trip, rel_l2(l0_solve(symbol, l0_apply(symbol, h)), h));
    }
    out.push_back(at_most("dF0 vs central differences (eps=1e-4)", fd, 1e-7));
    out.push_back(at_most("finite-difference slope deviation from 2",
                          std::max(std::abs(slope_lo - 2.0), std::abs(slope_hi - 2.0)), 0.1));
    out.push_back(at_most("dF0 vs Fourier symbol", equiv, 1e-12));
    out.push_back(at_most("L0 solve/apply round trip", trip, 1e-12));
  }
  {
    const ScalarField f = probe.scalar(grid);
    out.push_back(at_most("Helmholtz round trip", rel_max(apply_helmholtz(invert_helmholtz(f, 2.0 * cfg.lambda), 2.0 * cfg.lambda), f),
                          1e-12));
  }

  // contracted Bianchi identity against resolution
  {
    std::vector<double> residuals;
    std::string detail;
    for (int pts : opt.bianchi_points) {
      const Metric g(probe_bump(cfg, cfg.grid(pts), opt.bianchi_amplitude));
      const SymTensorField e = ein(g, params);
      const OneFormField b = fault == Fault::bianchi_sign ? corrupted_bianchi(g, e, params)
                                                          : bianchi_cal(g, e, params);
      residuals.push_back(l2_norm(b) / l2_norm(e));
      char buf[48];
      std::snprintf(buf, sizeof buf, "%sN=%d: %.3e", detail.empty() ? "" : ", ", pts, residuals.back());
      detail += buf;
    }
    const bool decreasing = std::ranges::adjacent_find(residuals, std::less_equal<>()) == residuals.end();
    out.push_back(holds("Bianchi residual decreasing in N", decreasing, detail));
    out.push_back(at_most("Bianchi residual at finest N", residuals.back(), 1e-6));
  }

  // curvature identities on resolved random data
  {
    const Metric g(probe.tensor(grid, opt.symmetry_amplitude));
    const SymTensorField e = ein(g, params);
    ScalarField expected = scalar_curvature(g);
    expected *= 1.0 + n * cfg.kappa;
    for (double& v : expected.values()) v += n * cfg.lambda;
    out.push_back(at_most("trace identity for Ein", rel_max(trace(g, e), expected), 1e-11));
    const FourTensorField cal = cal_ein(g, params);
    SymTensorField cal_expected = e;
    cal_expected *= params.a() * (n - 2) + 1.0;
    out.push_back(at_most("trace identity for the four-tensor", rel_max(metric_contraction(g, cal), cal_expected),
                          1e-11));

    const FourTensorField riem = riemann(g);
    out.push_back(at_most("Riemann symmetries", curvature_symmetry(riem).max(), 1e-11));
    out.push_back(at_most("Ricci vs contracted Riemann", rel_max(metric_contraction(g, riem), ricci(g)), 1e-11));
    const SymTensorField a = probe.tensor(grid, 1.0);
    const SymTensorField b = probe.tensor(grid, 1.0);
    out.push_back(at_most("Kulkarni-Nomizu symmetries", curvature_symmetry(kulkarni_nomizu(a, b)).max(), 1e-11));
    out.push_back(at_most("(1,3) image conditions", r13_residuals(riemann_christoffel_map(g.perturbation(), params)).max(),
                          1e-11));
  }

  // analysis probes
  {
    const std::uint64_t seed = cfg.seed;
    const AlgebraProbe coarse = algebra_probe(grid, cfg.s, cfg.t, opt.probe_samples, seed);
    const AlgebraProbe fine = algebra_probe(cfg.grid(2 * cfg.points), cfg.s, cfg.t, opt.probe_samples, seed);
    const double spread = std::max(coarse.constant / fine.constant, fine.constant / coarse.constant);
    char buf[96];
    std::snprintf(buf, sizeof buf, "C(N=%d) = %.4e, C(N=%d) = %.4e", cfg.points, coarse.constant,
                  2 * cfg.points, fine.constant);
    out.push_back(at_most("algebra constant spread across N, 2N", spread, 2.0, buf));

    double worst_embedding = 0.0;
    for (int k = 0; k < opt.directions; ++k) {
      worst_embedding =
          std::max(worst_embedding, embedding_probe(probe.tensor(grid, 1.0), cfg.s + 2.0, cfg.s, cfg.t, cfg.t));
    }
    out.push_back(at_most("embedding ratio |u|_{s,t} / |u|_{s+2,t}", worst_embedding, 1.0));

    const double radius = 1.0 / (2.0 * coarse.constant);
    double worst_ratio = 0.0;
    for (double frac : {0.1, 0.5, 0.9}) {
      SymTensorField h = probe.tensor(grid, 1.0);
      h *= frac * radius / sobolev_norm(h, cfg.s + 2.0, cfg.t);
      worst_ratio = std::max(worst_ratio, neumann_bound_check(h, cfg.s, cfg.t, coarse.constant).ratio);
    }
    out.push_back(at_most("Neumann bound ratio", worst_ratio, 2.0));
  }

  // order loss at the critical constant
  {
    const double crit = params.critical_kappa();
    const double near = crit + opt.order_kappa_offset;
    const double base = L0Symbol(grid, EinParams(n, 0.0, 1.0)).max_order_ratio();
    const double at_crit = L0Symbol(grid, EinParams(n, near, 1.0)).max_order_ratio();
    out.push_back(at_least("order ratio growth toward critical kappa", at_crit / base, 10.0));
    const double wide = 40.0;
    const double coarse = L0Symbol(make_grid(n, 16, wide), EinParams(n, crit + 1e-3, 1.0)).max_order_ratio();
    const double fine = L0Symbol(make_grid(n, 32, wide), EinParams(n, crit + 1e-3, 1.0)).max_order_ratio();
    out.push_back(at_least("order ratio growth under N doubling", fine / coarse, 3.5));

    auto rejected = [&](double kappa, double lambda) {
      ExperimentConfig probe_cfg = cfg;
      probe_cfg.kappa = kappa;
      probe_cfg.lambda = lambda;
      try {
        probe_cfg.validate();
      } catch (const ConfigError&) {
        return true;
      }
      return false;
    };
    out.push_back(holds("hypothesis checker rejects kappa <= critical and Lambda <= 0",
                        rejected(crit, 1.0) && rejected(crit - 0.1, 1.0) && rejected(0.0, 0.0) &&
                            rejected(0.0, -1.0)));
  }

  // manufactured solve and its gauge witness
  {
    const SymTensorField e = ein_excess(Metric(probe_bump(cfg, grid, 1e-2)), params);
    const SolveReport rep = solve(e, cfg.solve_config());
    out.push_back(holds("manufactured solve converged", rep.status == SolveStatus::converged,
                        std::string(to_string(rep.status)) + " after " + std::to_string(rep.iterations)));
    out.push_back(at_most("Einstein residual of the solve", rep.einstein_residual, 1e-8));
    out.push_back(at_most("gauge norm |omega|", rep.gauge_norm, 1e-8));
    out.push_back(at_most("gauge operator norm |P omega|", rep.gauge_operator_norm, 1e-8));
  }
  return out;
}

CommandResult cmd_checks(const ExperimentConfig& cfg, bool quiet, Fault fault) {
  const std::vector<CheckResult> results = run_battery(cfg, fault);
  CommandResult out;
  out.report = report_header("checks", cfg);
  if (fault != Fault::none) out.report["fault_injected"] = "bianchi_sign";
  Json table = Json::array();
  int failed = 0;
  for (const CheckResult& r : results) {
    table.push_back({{"check", r.name},
                     {"measured", r.measured},
                     {"relation", r.relation},
                     {"threshold", r.threshold},
                     {"passed", r.passed},
                     {"detail", r.detail}});
    if (!r.passed) ++failed;
  }
  out.report["checks"] = table;
  out.report["failed"] = failed;
  out.report["passed"] = failed == 0;
  out.exit_code = failed == 0 ? exit_ok : exit_checks_failed;
  std::filesystem::create_directories(cfg.out_dir);
  write_json(cfg.out_dir / "checks.json", out.report);
  if (!quiet) {
    for (const CheckResult& r : results) {
      std::printf("%-4s %-58s %12.4e %s %.1e  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.measured,
                  r.relation.c_str(), r.threshold, r.detail.c_str());
    }
    std::printf("%d of %zu checks failed\n", failed, results.size());
  }
  return out;
}

}  // namespace curvlab::harness
