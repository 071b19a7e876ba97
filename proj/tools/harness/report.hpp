#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

#include "harness/config.hpp"

namespace curvlab::harness {

using Json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& bytes);

/// Fields every report starts with: command, config hash, seed, grid,
/// parameters and the hypothesis checks.
Json report_header(const std::string& command, const ExperimentConfig& cfg);

Json to_json(const SolveReport& report);

/// Writes `j` with two-space indentation and a trailing newline. Output is a
/// function of `j` alone, so equal reports give byte-identical files.
void write_json(const std::filesystem::path& path, const Json& j);

/// Machine-readable error record, also written to <out>/error.json when the
/// directory is usable.
Json error_json(const std::string& command, int exit_code, const std::string& type,
                const std::string& message);

}  // namespace curvlab::harness
