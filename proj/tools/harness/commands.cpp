#include "harness/commands.hpp"

#include <cstdio>
#include <fstream>

namespace curvlab::harness {

namespace {

Provenance provenance(const std::string& command, const ExperimentConfig& cfg, const std::string& what) {
  return {{"command", command},
          {"config_sha256", cfg.sha256},
          {"seed", std::to_string(cfg.seed)},
          {"data_kind", to_string(cfg.kind)},
          {"field", what}};
}

int exit_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged:
      return exit_ok;
    case SolveStatus::symbol_degenerate:
      return exit_config;
    case SolveStatus::diverged:
    case SolveStatus::max_iter:
    case SolveStatus::non_riemannian:
      return exit_divergence;
  }
  return exit_divergence;
}

double relative_bianchi(const SymTensorField& h, const EinParams& params) {
  const Metric g(h);
  const SymTensorField e = ein(g, params);
  return l2_norm(bianchi_cal(g, e, params)) / l2_norm(e);
}

}  // namespace

CommandResult cmd_solve(const ExperimentConfig& cfg, bool quiet) {
  const Grid grid = cfg.grid();
  const SymTensorField e = source_term(cfg, grid);
  const SolveReport rep = solve(e, cfg.solve_config());

  CommandResult out;
  out.exit_code = exit_for(rep.status);
  out.report = report_header("solve", cfg);
  out.report["data_kind"] = to_string(cfg.kind);
  out.report["solver"] = {{"mode", to_string(cfg.mode)}, {"tol", cfg.tol}, {"max_iter", cfg.max_iter},
                          {"damping", cfg.damping}};
  out.report["result"] = to_json(rep);
  std::filesystem::create_directories(cfg.out_dir);
  write_json(cfg.out_dir / "solve.json", out.report);
  if (cfg.write_fields) write_efld(cfg.out_dir / "h.efld", rep.h, provenance("solve", cfg, "h"));
  if (!quiet) {
    std::printf("solve: %s after %d evaluations, |F| = %.3e, Ein residual = %.3e, gauge = %.3e\n",
                to_string(rep.status), rep.iterations,
                rep.residual_history.empty() ? 0.0 : rep.residual_history.back(),
                rep.einstein_residual, rep.gauge_norm);
  }
  return out;
}

CommandResult cmd_manufacture(const ExperimentConfig& cfg, bool quiet) {
  if (cfg.kind != DataKind::manufactured && cfg.kind != DataKind::zero) {
    throw ConfigError(std::string("manufacture needs [data] kind = manufactured or zero, got ") +
                      to_string(cfg.kind));
  }
  const Grid grid = cfg.grid();
  const SymTensorField h_star =
      cfg.kind == DataKind::zero ? SymTensorField(grid) : sample_generator(cfg, grid);
  const SymTensorField e = ein_excess(Metric(h_star), cfg.params());

  CommandResult out;
  out.report = report_header("manufacture", cfg);
  out.report["data_kind"] = to_string(cfg.kind);
  out.report["h_star"] = {{"max_abs", h_star.max_abs()}, {"norm_s2_t", sobolev_norm(h_star, cfg.s + 2.0, cfg.t)}};
  out.report["e"] = {{"max_abs", e.max_abs()},
                     {"l2", l2_norm(e)},
                     {"norm_s_t", sobolev_norm(e, cfg.s, cfg.t)},
                     {"norm_s2_t", sobolev_norm(e, cfg.s + 2.0, cfg.t)}};
  out.report["smallness_threshold"] = cfg.smallness * cfg.lambda;
  std::filesystem::create_directories(cfg.out_dir);
  write_efld(cfg.out_dir / "h_star.efld", h_star, provenance("manufacture", cfg, "h_star"));
  write_efld(cfg.out_dir / "e.efld", e, provenance("manufacture", cfg, "e"));
  write_json(cfg.out_dir / "manufacture.json", out.report);
  if (!quiet) {
    std::printf("manufacture: max|h*| = %.3e, |e|_{s+2,t} = %.3e -> %s\n", h_star.max_abs(),
                out.report["e"]["norm_s2_t"].get<double>(), (cfg.out_dir / "e.efld").c_str());
  }
  return out;
}

CommandResult cmd_convergence(const ExperimentConfig& cfg, bool quiet) {
  if (cfg.kind == DataKind::file) {
    throw ConfigError("convergence resamples the data on each grid and cannot use [data] kind = file");
  }
  CommandResult out;
  out.report = report_header("convergence", cfg);
  out.report["data_kind"] = to_string(cfg.kind);
  Json rows = Json::array();
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream csv(cfg.out_dir / "convergence.csv", std::ios::binary);
  csv << "N,status,iterations,residual,einstein_residual,gauge_norm,gauge_operator_norm,"
         "bianchi_residual,data_norm\n";
  csv.precision(17);
  const EinParams params = cfg.params();
  for (int n : cfg.convergence_points) {
    const Grid grid = cfg.grid(n);
    const SolveReport rep = solve(source_term(cfg, grid), cfg.solve_config());
    const double residual = rep.residual_history.empty() ? 0.0 : rep.residual_history.back();
    const double bianchi = relative_bianchi(rep.h, params);
    rows.push_back({{"N", n},
                    {"status", to_string(rep.status)},
                    {"iterations", rep.iterations},
                    {"residual", residual},
                    {"einstein_residual", rep.einstein_residual},
                    {"gauge_norm", rep.gauge_norm},
                    {"gauge_operator_norm", rep.gauge_operator_norm},
                    {"bianchi_residual", bianchi},
                    {"data_norm", rep.data_norm}});
    csv << n << ',' << to_string(rep.status) << ',' << rep.iterations << ',' << residual << ','
        << rep.einstein_residual << ',' << rep.gauge_norm << ',' << rep.gauge_operator_norm << ','
        << bianchi << ',' << rep.data_norm << '\n';
    if (rep.status != SolveStatus::converged) out.exit_code = exit_for(rep.status);
    if (!quiet) {
      std::printf("N=%3d %-10s it=%3d |F|=%.3e Ein=%.3e bianchi=%.3e\n", n, to_string(rep.status),
                  rep.iterations, residual, rep.einstein_residual, bianchi);
    }
  }
  out.report["rows"] = rows;
  write_json(cfg.out_dir / "convergence.json", out.report);
  return out;
}

}  // namespace curvlab::harness
