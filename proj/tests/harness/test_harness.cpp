#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "harness/cli.hpp"
#include "harness/commands.hpp"

using namespace curvlab;
using namespace curvlab::harness;
namespace fs = std::filesystem;

namespace {

const fs::path fixtures = CURVLAB_FIXTURES_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("curvlab_harness_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "curvlab");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool same(const SymTensorField& a, const SymTensorField& b) { return std::ranges::equal(a.values(), b.values()); }

std::string config_error(const std::string& text) {
  try {
    parse_config(text).validate();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

const char* small_manufactured = R"(
[grid]
dim = 3
points = 16
length = 16
[data]
kind = manufactured
[bump0]
width = 2
amplitude = 1e-2
coefficients = 1 0.3 -0.2 0.7 0.1 -0.5
)";

}  // namespace

TEST_CASE("config defaults and overrides") {
  const ExperimentConfig cfg = parse_config("[grid]\npoints = 24\n[params]\nkappa = 0.5\nlambda = 2\n");
  CHECK(cfg.dim == 3);
  CHECK(cfg.points == 24);
  CHECK(cfg.lambda == 2.0);
  CHECK(cfg.params().kappa() == 0.5);
  CHECK(cfg.kind == DataKind::zero);
  CHECK_NOTHROW(cfg.validate());

  const ExperimentConfig loaded = load_config(fixtures / "default.ini");
  CHECK(loaded.sha256 == sha256_hex(slurp(fixtures / "default.ini")));
  CHECK(loaded.sha256.size() == 64);
  REQUIRE(loaded.bumps.size() == 1);
  CHECK(loaded.bumps[0].width == 1.75);
  CHECK(loaded.convergence_points == std::vector<int>{16, 24, 32, 48});
}

TEST_CASE("config structural errors") {
  CHECK_THROWS_AS(parse_config("[grid]\npionts = 16\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[gird]\npoints = 16\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid]\npoints = sixteen\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid]\npoints = 16x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[solver]\nmode = newton\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[data]\nkind = gaussian\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[bumpx]\nwidth = 1\n"), ConfigError);
  CHECK_THROWS_AS(load_config(fixtures / "missing.ini"), ConfigError);
  CHECK(config_error("[grid]\npoints = 7\n").find("points") != std::string::npos);
  CHECK(config_error("[data]\nkind = manufactured\n[bump3]\ncoefficients = 1 2\n").find("[bump3] coefficients") !=
        std::string::npos);
  CHECK(config_error("[data]\nkind = manufactured\n[bump0]\ncenter = 0 0 0 0\ncoefficients = 1 0 0 1 0 1\n")
            .find("center") != std::string::npos);
  CHECK(config_error("[data]\nkind = manufactured\n").find("needs at least one bump") != std::string::npos);
}

TEST_CASE("hypothesis violations are named") {
  CHECK(config_error("[sobolev]\ns = 1.5\n").find("s > n/2") != std::string::npos);
  CHECK(config_error("[sobolev]\nt = -1\n").find("t >= 0") != std::string::npos);
  CHECK(config_error("[params]\nlambda = 0\n").find("Lambda > 0") != std::string::npos);
  CHECK(config_error("[params]\nkappa = -0.3\n").find("kappa > -1/(2(n-1))") != std::string::npos);
  CHECK(config_error("[grid]\ndim = 2\n[sobolev]\ns = 2\n[params]\nkappa = -0.5\n").find("kappa != -1/n") !=
        std::string::npos);
  CHECK(config_error("[params]\na = -1\n").find("a != -1/(n-2)") != std::string::npos);
  // every violation is listed, not only the first
  const std::string both = config_error("[params]\nlambda = -1\nkappa = -1\n");
  CHECK(both.find("Lambda > 0") != std::string::npos);
  CHECK(both.find("kappa > -1/(2(n-1))") != std::string::npos);

  const ExperimentConfig ok;
  for (const Hypothesis& h : ok.hypotheses()) CHECK_MESSAGE(h.holds, h.name);
}

TEST_CASE("zero source solves in one evaluation") {
  TempDir tmp;
  CHECK(cli({"solve", "--config", (fixtures / "zero.ini").string(), "--out", tmp.path.string(), "--quiet"}) ==
        exit_ok);
  const Json rep = Json::parse(slurp(tmp.path / "solve.json"));
  CHECK(rep["result"]["status"] == "converged");
  CHECK(rep["result"]["iterations"] == 1);
  CHECK(rep["result"]["einstein_residual"] == 0.0);
  const SymTensorField h = read_efld<RankTag::sym2>(tmp.path / "h.efld");
  CHECK(h.max_abs() == 0.0);
}

TEST_CASE("hypothesis failures exit 2 and leave error.json") {
  for (const char* name : {"lambda_negative.ini", "kappa_critical.ini"}) {
    TempDir tmp;
    CHECK(cli({"solve", "--config", (fixtures / name).string(), "--out", tmp.path.string(), "--quiet"}) ==
          exit_config);
    const Json err = Json::parse(slurp(tmp.path / "error.json"));
    CHECK(err["exit_code"] == 2);
    CHECK(err["error"]["message"].get<std::string>().find("hypothesis violated") != std::string::npos);
    CHECK_FALSE(fs::exists(tmp.path / "solve.json"));
  }
  CHECK(cli({"solve"}) == exit_config);
  CHECK(cli({"frobnicate", "--config", (fixtures / "zero.ini").string()}) == exit_config);
}

TEST_CASE("manufacture with h* = 0 writes e = 0") {
  TempDir tmp;
  CHECK(cli({"manufacture", "--config", (fixtures / "zero.ini").string(), "--out", tmp.path.string(),
             "--quiet"}) == exit_ok);
  CHECK(read_efld<RankTag::sym2>(tmp.path / "e.efld").max_abs() == 0.0);
  CHECK(read_efld<RankTag::sym2>(tmp.path / "h_star.efld").max_abs() == 0.0);
}

TEST_CASE("manufactured e round-trips through EFLD and a file solve") {
  TempDir tmp;
  ExperimentConfig cfg = parse_config(small_manufactured);
  cfg.out_dir = tmp.path / "m";
  cfg.validate();
  CHECK(cmd_manufacture(cfg, true).exit_code == exit_ok);

  const SymTensorField e = read_efld<RankTag::sym2>(tmp.path / "m" / "e.efld");
  const SymTensorField expected = ein_excess(Metric(sample_generator(cfg, cfg.grid())), cfg.params());
  CHECK(same(e, expected));

  ExperimentConfig from_file = cfg;
  from_file.kind = DataKind::file;
  from_file.data_file = tmp.path / "m" / "e.efld";
  from_file.out_dir = tmp.path / "f";
  cfg.out_dir = tmp.path / "d";
  CHECK(cmd_solve(cfg, true).exit_code == exit_ok);
  CHECK(cmd_solve(from_file, true).exit_code == exit_ok);
  CHECK(slurp(tmp.path / "d" / "h.efld") == slurp(tmp.path / "f" / "h.efld"));

  // the solution reproduces h* up to a gauge-invisible remainder
  const SymTensorField h = read_efld<RankTag::sym2>(tmp.path / "d" / "h.efld");
  SymTensorField diff = h;
  diff -= sample_generator(cfg, cfg.grid());
  CHECK(diff.max_abs() < 0.5 * h.max_abs());

  from_file.points = 24;
  CHECK_THROWS_AS(source_term(from_file, from_file.grid()), ConfigError);
}

TEST_CASE("constant traceless field survives the file path bit for bit") {
  TempDir tmp;
  const Grid grid = make_grid(3, 16, 16.0);
  SymTensorField h(grid);
  std::ranges::fill(h(0, 0), 1e-3);
  std::ranges::fill(h(1, 1), -1e-3);
  std::ranges::fill(h(0, 2), 2.5e-4);
  write_efld(tmp.path / "h.efld", h, {{"field", "h"}});
  const SymTensorField back = read_efld<RankTag::sym2>(tmp.path / "h.efld");
  CHECK(same(back, h));
}

TEST_CASE("data norm grows with the bump amplitude") {
  double previous = 0.0;
  for (double amplitude : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
    ExperimentConfig cfg = parse_config(small_manufactured);
    cfg.bumps[0].amplitude = amplitude;
    const double norm =
        sobolev_norm(ein_excess(Metric(sample_generator(cfg, cfg.grid())), cfg.params()), cfg.s + 2.0, cfg.t);
    CHECK(norm > previous);
    previous = norm;
  }
}

TEST_CASE("random bumps follow the seed") {
  ExperimentConfig cfg = parse_config("[data]\nkind = manufactured\nrandom_bumps = 2\n[grid]\npoints = 16\n");
  const SymTensorField a = sample_generator(cfg, cfg.grid());
  const SymTensorField b = sample_generator(cfg, cfg.grid());
  CHECK(same(a, b));
  CHECK(a.max_abs() > 0.0);
  cfg.seed = 2;
  CHECK_FALSE(same(sample_generator(cfg, cfg.grid()), a));
}

TEST_CASE("seed and out overrides reach the report") {
  TempDir tmp;
  CHECK(cli({"manufacture", "--config", (fixtures / "zero.ini").string(), "--out", tmp.path.string(), "--seed",
             "77", "--quiet"}) == exit_ok);
  const Json rep = Json::parse(slurp(tmp.path / "manufacture.json"));
  CHECK(rep["seed"] == 77);
  CHECK(rep["config_sha256"] == sha256_hex(slurp(fixtures / "zero.ini")));
}

TEST_CASE("convergence on zero data gives zero rows") {
  TempDir tmp;
  CHECK(cli({"convergence", "--config", (fixtures / "zero.ini").string(), "--out", tmp.path.string(),
             "--quiet"}) == exit_ok);
  std::istringstream csv(slurp(tmp.path / "convergence.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("N,status,iterations", 0) == 0);
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line.find(",converged,1,0,0,0,0,0,0") != std::string::npos);
  }
  CHECK(rows == 2);
}

TEST_CASE("convergence on manufactured data tightens the Bianchi residual") {
  TempDir tmp;
  ExperimentConfig cfg = parse_config(small_manufactured);
  cfg.convergence_points = {16, 24};
  cfg.out_dir = tmp.path;
  const CommandResult r = cmd_convergence(cfg, true);
  CHECK(r.exit_code == exit_ok);
  const Json& rows = r.report["rows"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[1]["bianchi_residual"].get<double>() < rows[0]["bianchi_residual"].get<double>());
  CHECK(rows[1]["einstein_residual"].get<double>() < 1e-8);
}

TEST_CASE("large data is reported as divergence") {
  TempDir tmp;
  ExperimentConfig cfg = parse_config(small_manufactured);
  cfg.bumps[0].amplitude = 0.6;
  cfg.max_iter = 8;
  cfg.out_dir = tmp.path;
  const CommandResult r = cmd_solve(cfg, true);
  CHECK(r.exit_code == exit_divergence);
  CHECK(r.report["result"]["status"] != "converged");
}

TEST_CASE("checks battery fails under fault injection") {
  TempDir tmp;
  ExperimentConfig cfg = parse_config(small_manufactured);
  cfg.checks.bianchi_points = {16, 24};
  cfg.checks.probe_samples = 10;
  cfg.checks.directions = 2;
  cfg.out_dir = tmp.path;
  const CommandResult clean = cmd_checks(cfg, true);
  const CommandResult broken = cmd_checks(cfg, true, Fault::bianchi_sign);
  CHECK(broken.exit_code == exit_checks_failed);
  CHECK(broken.report["fault_injected"] == "bianchi_sign");
  for (const Json& c : broken.report["checks"]) {
    if (c["check"] == "Bianchi residual at finest N") CHECK_FALSE(c["passed"].get<bool>());
  }
  for (const Json& c : clean.report["checks"]) {
    if (c["check"] == "Bianchi residual at finest N") CHECK(c["passed"].get<bool>());
  }
}
