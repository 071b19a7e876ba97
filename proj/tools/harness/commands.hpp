#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "harness/config.hpp"
#include "harness/report.hpp"

namespace curvlab::harness {

enum ExitCode : int { exit_ok = 0, exit_checks_failed = 1, exit_config = 2, exit_divergence = 3 };

/// Debug-only corruption used to confirm the battery can fail.
enum class Fault { none, bianchi_sign };

struct CommandResult {
  int exit_code = exit_ok;
  Json report;
};

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation;  ///< "<=", ">=" or "==" (booleans as 0/1)
  bool passed = false;
  std::string detail;
};

/// Solves F(h,e) = 0 for the configured source; writes solve.json and h.efld.
CommandResult cmd_solve(const ExperimentConfig& cfg, bool quiet);

/// Samples h*, computes e = Ein(δ+h*) − Λδ and writes both fields plus
/// manufacture.json.
CommandResult cmd_manufacture(const ExperimentConfig& cfg, bool quiet);

/// Runs the property battery; writes checks.json and prints a table.
CommandResult cmd_checks(const ExperimentConfig& cfg, bool quiet, Fault fault = Fault::none);
std::vector<CheckResult> run_battery(const ExperimentConfig& cfg, Fault fault = Fault::none);

/// Repeats the solve for each N in [convergence] points; writes
/// convergence.csv and convergence.json.
CommandResult cmd_convergence(const ExperimentConfig& cfg, bool quiet);

}  // namespace curvlab::harness
