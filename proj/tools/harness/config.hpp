#pragma once

#include <curvlab/curvlab.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvlab::harness {

/// Bad or unusable configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Hypothesis {
  std::string name;     ///< e.g. "s > n/2"
  bool holds = true;
  std::string detail;   ///< measured values
};

enum class DataKind { zero, manufactured, source, file };

struct BumpSpec {
  std::string section;  ///< "bumpK" as written in the file
  int center_entries = 0;
  std::array<double, Grid::max_dim> center{};
  double width = 1.0;
  double amplitude = 1.0;
  std::vector<double> coefficients;  ///< n(n+1)/2 upper-triangular entries
};

struct ChecksOptions {
  std::vector<int> bianchi_points{16, 24, 32, 48};
  double bianchi_amplitude = 0.05;
  double probe_width = 1.75;
  int directions = 4;
  int probe_samples = 50;
  double symmetry_width = 1.875;
  double symmetry_amplitude = 1e-2;
  double order_kappa_offset = 1e-6;  ///< κ probed at critical + offset
};

struct ExperimentConfig {
  std::filesystem::path source;  ///< config file path (empty when built in code)
  std::string sha256;            ///< hash of the config file bytes
  std::uint64_t seed = 1;

  int dim = 3;
  int points = 32;
  double length = 16.0;

  double kappa = 0.0;
  double lambda = 1.0;
  std::optional<double> a;

  double s = 2.0;
  double t = 1.0;

  SolveMode mode = SolveMode::picard;
  double tol = 1e-10;
  int max_iter = 50;
  double damping = 1.0;
  double smallness = 0.1;
  int krylov_dim = 40;
  double krylov_tol = 1e-6;

  DataKind kind = DataKind::zero;
  std::filesystem::path data_file;
  std::vector<BumpSpec> bumps;
  int random_bumps = 0;
  double random_amplitude = 1e-2;

  std::filesystem::path out_dir = "out";
  bool write_fields = true;

  ChecksOptions checks;
  std::vector<int> convergence_points{16, 24, 32, 48};

  EinParams params() const;
  Grid grid() const { return make_grid(dim, points, length); }
  Grid grid(int n_points) const { return make_grid(dim, n_points, length); }
  SolveConfig solve_config() const;

  /// Theorem hypotheses evaluated on the current values.
  std::vector<Hypothesis> hypotheses() const;
  /// Throws ConfigError listing every violated hypothesis and structural
  /// problem (grid, solver settings, bump shapes).
  void validate() const;
};

/// Reads the INI file at `path`. Unknown sections or keys are errors.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Parses INI text; `origin` only labels error messages.
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");

const char* to_string(DataKind kind);

/// The generator's h* (manufactured) or e (source) on `grid`. Random bumps are
/// drawn from `seed` so the same draw can be sampled on several resolutions.
SymTensorField sample_generator(const ExperimentConfig& cfg, const Grid& grid);

/// Source term e for a solve: zero, Ein(δ+h*) − Λδ, the bumps themselves, or
/// the EFLD file.
SymTensorField source_term(const ExperimentConfig& cfg, const Grid& grid);

}  // namespace curvlab::harness
