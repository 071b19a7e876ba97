#include "harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <type_traits>

#include "harness/report.hpp"

namespace curvlab::harness {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"run", {"seed"}},
      {"grid", {"dim", "points", "length"}},
      {"params", {"kappa", "lambda", "a"}},
      {"sobolev", {"s", "t"}},
      {"solver", {"mode", "tol", "max_iter", "damping", "smallness", "krylov_dim", "krylov_tol"}},
      {"data", {"kind", "file", "random_bumps", "random_amplitude"}},
      {"output", {"dir", "fields"}},
      {"checks",
       {"bianchi_points", "bianchi_amplitude", "probe_width", "directions", "probe_samples",
        "symmetry_width", "symmetry_amplitude", "order_kappa_offset"}},
      {"convergence", {"points"}},
  };
  return s;
}

const std::set<std::string> bump_keys{"center", "width", "amplitude", "coefficients"};

bool is_bump_section(const std::string& name) {
  return name.size() > 4 && name.compare(0, 4, "bump") == 0 &&
         name.find_first_not_of("0123456789", 4) == std::string::npos;
}

template <class T>
T get(const pt::ptree& tree, const std::string& section, const std::string& key, T fallback) {
  const auto sec = tree.get_child_optional(section);
  if (!sec) return fallback;
  const auto raw = sec->get_optional<std::string>(key);
  if (!raw) return fallback;
  if constexpr (std::is_same_v<T, std::string>) {
    return *raw;
  }
  std::istringstream in(*raw);
  T value{};
  in >> value;
  if (in.fail() || !(in >> std::ws).eof()) {
    throw ConfigError("[" + section + "] " + key + ": cannot parse '" + *raw + "'");
  }
  return value;
}

template <class T>
std::vector<T> get_list(const pt::ptree& tree, const std::string& section, const std::string& key,
                        std::vector<T> fallback) {
  const auto sec = tree.get_child_optional(section);
  if (!sec) return fallback;
  const auto raw = sec->get_optional<std::string>(key);
  if (!raw) return fallback;
  std::istringstream in(*raw);
  std::vector<T> out;
  T v{};
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw ConfigError("[" + section + "] " + key + ": cannot parse '" + *raw + "'");
  return out;
}

SolveMode parse_mode(const std::string& s) {
  if (s == "picard") return SolveMode::picard;
  if (s == "newton_krylov") return SolveMode::newton_krylov;
  throw ConfigError("[solver] mode: expected picard or newton_krylov, got '" + s + "'");
}

DataKind parse_kind(const std::string& s) {
  if (s == "zero") return DataKind::zero;
  if (s == "manufactured") return DataKind::manufactured;
  if (s == "source") return DataKind::source;
  if (s == "file") return DataKind::file;
  throw ConfigError("[data] kind: expected zero, manufactured, source or file, got '" + s + "'");
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

}  // namespace

const char* to_string(DataKind kind) {
  switch (kind) {
    case DataKind::zero:
      return "zero";
    case DataKind::manufactured:
      return "manufactured";
    case DataKind::source:
      return "source";
    case DataKind::file:
      return "file";
  }
  return "unknown";
}

EinParams ExperimentConfig::params() const {
  return a ? EinParams(dim, kappa, lambda, *a) : EinParams(dim, kappa, lambda);
}

SolveConfig ExperimentConfig::solve_config() const {
  SolveConfig c{params()};
  c.s = s;
  c.t = t;
  c.tol_residual = tol;
  c.max_iter = max_iter;
  c.damping = damping;
  c.mode = mode;
  c.smallness = smallness;
  c.krylov_dim = krylov_dim;
  c.krylov_tol = krylov_tol;
  return c;
}

std::vector<Hypothesis> ExperimentConfig::hypotheses() const {
  std::vector<Hypothesis> out;
  const double crit = -1.0 / (2.0 * (dim - 1));
  out.push_back({"s > n/2", s > dim / 2.0, "s = " + fmt(s) + ", n/2 = " + fmt(dim / 2.0)});
  out.push_back({"t >= 0", t >= 0.0, "t = " + fmt(t)});
  out.push_back({"Lambda > 0", lambda > 0.0, "Lambda = " + fmt(lambda)});
  out.push_back({"kappa > -1/(2(n-1))", kappa > crit,
                 "kappa = " + fmt(kappa) + ", critical = " + fmt(crit)});
  out.push_back({"kappa != -1/n", kappa * dim != -1.0, "kappa = " + fmt(kappa)});
  if (a && dim > 2) {
    out.push_back({"a != -1/(n-2)", *a * (dim - 2) != -1.0, "a = " + fmt(*a)});
  }
  return out;
}

void ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  for (const Hypothesis& h : hypotheses()) {
    if (!h.holds) problems.push_back("hypothesis violated: " + h.name + " (" + h.detail + ")");
  }
  auto check_grid = [&](int n_points, const std::string& where) {
    try {
      make_grid(dim, n_points, length);
    } catch (const Error& e) {
      problems.push_back(where + ": " + e.what());
    }
  };
  check_grid(points, "[grid]");
  for (int n : convergence_points) check_grid(n, "[convergence] points");
  for (int n : checks.bianchi_points) check_grid(n, "[checks] bianchi_points");
  if (!(tol > 0.0)) problems.push_back("[solver] tol must be positive");
  if (max_iter < 1) problems.push_back("[solver] max_iter must be at least 1");
  if (!(damping > 0.0 && damping <= 1.0)) problems.push_back("[solver] damping must lie in (0, 1]");
  if (krylov_dim < 1) problems.push_back("[solver] krylov_dim must be at least 1");
  if (random_bumps < 0) problems.push_back("[data] random_bumps must be nonnegative");
  if (checks.directions < 1) problems.push_back("[checks] directions must be at least 1");
  if (checks.probe_samples < 1) problems.push_back("[checks] probe_samples must be at least 1");
  if (checks.bianchi_points.size() < 2) problems.push_back("[checks] bianchi_points needs two sizes");
  const std::size_t ncoef = static_cast<std::size_t>(dim * (dim + 1) / 2);
  for (std::size_t b = 0; b < bumps.size(); ++b) {
    const std::string where = "[" + (bumps[b].section.empty() ? "bump" + std::to_string(b) : bumps[b].section) + "]";
    if (bumps[b].center_entries > dim) problems.push_back(where + " center has more than n entries");
    if (!(bumps[b].width > 0.0)) problems.push_back(where + " width must be positive");
    if (bumps[b].coefficients.size() != ncoef) {
      problems.push_back(where + " coefficients: expected " + std::to_string(ncoef) + " values");
    }
  }
  if ((kind == DataKind::manufactured || kind == DataKind::source) && bumps.empty() &&
      random_bumps == 0) {
    problems.push_back(std::string("[data] kind = ") + to_string(kind) + " needs at least one bump");
  }
  if (kind == DataKind::file && data_file.empty()) problems.push_back("[data] kind = file needs data.file");
  if (!problems.empty()) {
    std::string msg = "invalid configuration";
    if (!source.empty()) msg += " " + source.string();
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(origin + ": key '" + section + "' outside any section");
    }
    const std::set<std::string>* allowed = nullptr;
    if (is_bump_section(section)) {
      allowed = &bump_keys;
    } else if (auto it = schema().find(section); it != schema().end()) {
      allowed = &it->second;
    } else {
      throw ConfigError(origin + ": unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (!allowed->contains(key)) {
        throw ConfigError(origin + ": unknown key '" + key + "' in [" + section + "]");
      }
    }
  }

  ExperimentConfig c;
  c.sha256 = sha256_hex(text);
  c.seed = get<std::uint64_t>(tree, "run", "seed", c.seed);
  c.dim = get(tree, "grid", "dim", c.dim);
  c.points = get(tree, "grid", "points", c.points);
  c.length = get(tree, "grid", "length", c.length);
  c.kappa = get(tree, "params", "kappa", c.kappa);
  c.lambda = get(tree, "params", "lambda", c.lambda);
  if (tree.get_optional<std::string>(pt::ptree::path_type("params/a", '/'))) {
    c.a = get(tree, "params", "a", 0.0);
  }
  c.s = get(tree, "sobolev", "s", c.s);
  c.t = get(tree, "sobolev", "t", c.t);
  c.mode = parse_mode(get<std::string>(tree, "solver", "mode", "picard"));
  c.tol = get(tree, "solver", "tol", c.tol);
  c.max_iter = get(tree, "solver", "max_iter", c.max_iter);
  c.damping = get(tree, "solver", "damping", c.damping);
  c.smallness = get(tree, "solver", "smallness", c.smallness);
  c.krylov_dim = get(tree, "solver", "krylov_dim", c.krylov_dim);
  c.krylov_tol = get(tree, "solver", "krylov_tol", c.krylov_tol);
  c.kind = parse_kind(get<std::string>(tree, "data", "kind", "zero"));
  c.data_file = get<std::string>(tree, "data", "file", "");
  c.random_bumps = get(tree, "data", "random_bumps", c.random_bumps);
  c.random_amplitude = get(tree, "data", "random_amplitude", c.random_amplitude);
  c.out_dir = get<std::string>(tree, "output", "dir", c.out_dir.string());
  c.write_fields = get<std::string>(tree, "output", "fields", "true") == "true";
  c.checks.bianchi_points = get_list(tree, "checks", "bianchi_points", c.checks.bianchi_points);
  c.checks.bianchi_amplitude = get(tree, "checks", "bianchi_amplitude", c.checks.bianchi_amplitude);
  c.checks.probe_width = get(tree, "checks", "probe_width", c.checks.probe_width);
  c.checks.directions = get(tree, "checks", "directions", c.checks.directions);
  c.checks.probe_samples = get(tree, "checks", "probe_samples", c.checks.probe_samples);
  c.checks.symmetry_width = get(tree, "checks", "symmetry_width", c.checks.symmetry_width);
  c.checks.symmetry_amplitude = get(tree, "checks", "symmetry_amplitude", c.checks.symmetry_amplitude);
  c.checks.order_kappa_offset = get(tree, "checks", "order_kappa_offset", c.checks.order_kappa_offset);
  c.convergence_points = get_list(tree, "convergence", "points", c.convergence_points);

  // bump sections in numeric order
  std::map<int, const pt::ptree*> bump_sections;
  for (const auto& [section, body] : tree) {
    if (is_bump_section(section)) bump_sections[std::stoi(section.substr(4))] = &body;
  }
  for (const auto& [index, body] : bump_sections) {
    const std::string name = "bump" + std::to_string(index);
    BumpSpec b;
    b.section = name;
    const auto center = get_list<double>(tree, name, "center", {});
    if (center.size() > Grid::max_dim) throw ConfigError("[" + name + "] center has too many entries");
    std::ranges::copy(center, b.center.begin());
    b.center_entries = static_cast<int>(center.size());
    b.width = get(tree, name, "width", b.width);
    b.amplitude = get(tree, name, "amplitude", b.amplitude);
    b.coefficients = get_list<double>(tree, name, "coefficients", {});
    c.bumps.push_back(std::move(b));
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  ExperimentConfig c = parse_config(text.str(), path.string());
  c.source = path;
  if (c.kind == DataKind::file && c.data_file.is_relative()) {
    c.data_file = path.parent_path() / c.data_file;
  }
  return c;
}

SymTensorField sample_generator(const ExperimentConfig& cfg, const Grid& grid) {
  TensorBumps mix{grid.dim(), {}};
  for (const BumpSpec& b : cfg.bumps) {
    mix.bumps.push_back(TensorBump{GaussianBump{b.center, b.width, b.amplitude}, b.coefficients});
  }
  if (cfg.random_bumps > 0) {
    std::mt19937_64 rng(cfg.seed);
    const double len = grid.length();
    const BumpSampler sampler(grid.dim(), BumpSampler::Options{len / 16.0, len / 10.0, len / 48.0, 1, 1});
    for (int k = 0; k < cfg.random_bumps; ++k) {
      mix.bumps.push_back(sampler.tensor_mixture(rng, cfg.random_amplitude).bumps.front());
    }
  }
  return mix.sample(grid);
}

SymTensorField source_term(const ExperimentConfig& cfg, const Grid& grid) {
  switch (cfg.kind) {
    case DataKind::zero:
      return SymTensorField(grid);
    case DataKind::manufactured:
      return ein_excess(Metric(sample_generator(cfg, grid)), cfg.params());
    case DataKind::source:
      return sample_generator(cfg, grid);
    case DataKind::file: {
      SymTensorField e = read_efld<RankTag::sym2>(cfg.data_file);
      const Grid& g = e.grid();
      if (g.dim() != grid.dim() || g.points_per_axis() != grid.points_per_axis() ||
          g.length() != grid.length()) {
        throw ConfigError("data file " + cfg.data_file.string() + " does not match [grid]");
      }
      return e;
    }
  }
  return SymTensorField(grid);
}

}  // namespace curvlab::harness
