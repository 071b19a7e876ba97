#include "harness/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cstdio>
#include <iostream>
#include <optional>

#include "harness/commands.hpp"

namespace curvlab::harness {

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  std::string fault;
};

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.config, "INI experiment file")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", opt.out, "output directory (overrides [output] dir)");
  sub->add_option("--seed", opt.seed, "RNG seed (overrides [run] seed)");
  sub->add_flag("--quiet", opt.quiet, "only warnings and errors");
}

int fail(const std::string& command, const std::filesystem::path& out_dir, int code, const char* type,
         const std::string& message) {
  const Json err = error_json(command, code, type, message);
  std::cerr << err.dump() << '\n';
  std::error_code ec;
  if (!out_dir.empty() && (std::filesystem::create_directories(out_dir, ec), !ec)) {
    try {
      write_json(out_dir / "error.json", err);
    } catch (const std::exception&) {
    }
  }
  return code;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"curvlab: gauged Einstein-type solver and property checks"};
  app.require_subcommand(1);
  Options opt;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve F(h, e) = 0 for the configured source");
  CLI::App* manufacture_cmd = app.add_subcommand("manufacture", "sample h* and write e = Ein(delta+h*) - Lambda delta");
  CLI::App* checks_cmd = app.add_subcommand("checks", "run the property battery");
  CLI::App* convergence_cmd = app.add_subcommand("convergence", "repeat the solve over a list of resolutions");
  for (CLI::App* sub : {solve_cmd, manufacture_cmd, checks_cmd, convergence_cmd}) add_common(sub, opt);
  checks_cmd->add_option("--inject-fault", opt.fault)->check(CLI::IsMember({"bianchi-sign"}))->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (opt.quiet && spdlog::get_level() < spdlog::level::warn) spdlog::set_level(spdlog::level::warn);

  std::filesystem::path out_dir = opt.out;
  try {
    ExperimentConfig cfg = load_config(opt.config);
    if (!opt.out.empty()) cfg.out_dir = opt.out;
    if (opt.seed) cfg.seed = *opt.seed;
    out_dir = cfg.out_dir;
    cfg.validate();

    CommandResult result;
    if (command == "solve") {
      result = cmd_solve(cfg, opt.quiet);
    } else if (command == "manufacture") {
      result = cmd_manufacture(cfg, opt.quiet);
    } else if (command == "checks") {
      result = cmd_checks(cfg, opt.quiet, opt.fault.empty() ? Fault::none : Fault::bianchi_sign);
    } else {
      result = cmd_convergence(cfg, opt.quiet);
    }
    return result.exit_code;
  } catch (const ConfigError& e) {
    return fail(command, out_dir, exit_config, "config", e.what());
  } catch (const NonRiemannian& e) {
    return fail(command, out_dir, exit_divergence, "non_riemannian", e.what());
  } catch (const FormatError& e) {
    return fail(command, out_dir, exit_config, "format", e.what());
  } catch (const Error& e) {
    return fail(command, out_dir, exit_config, "invalid_argument", e.what());
  } catch (const std::exception& e) {
    return fail(command, out_dir, exit_config, "io", e.what());
  }
}

}  // namespace curvlab::harness
