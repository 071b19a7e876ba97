#include "harness/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>

namespace curvlab::harness {

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

Json report_header(const std::string& command, const ExperimentConfig& cfg) {
  Json j;
  j["command"] = command;
  j["config_sha256"] = cfg.sha256;
  j["seed"] = cfg.seed;
  j["grid"] = {{"n", cfg.dim}, {"N", cfg.points}, {"L", cfg.length}};
  const EinParams p = cfg.params();
  j["params"] = {{"kappa", p.kappa()}, {"lambda", p.lambda()}, {"a", p.a()}, {"b", p.b()}, {"c", p.c()}};
  j["sobolev"] = {{"s", cfg.s}, {"t", cfg.t}};
  Json hyp = Json::array();
  for (const Hypothesis& h : cfg.hypotheses()) {
    hyp.push_back({{"hypothesis", h.name}, {"holds", h.holds}, {"detail", h.detail}});
  }
  j["hypotheses"] = hyp;
  return j;
}

Json to_json(const SolveReport& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["message"] = r.message;
  j["iterations"] = r.iterations;
  j["residual_history"] = r.residual_history;
  j["residual_l2_history"] = r.residual_l2_history;
  j["krylov_iterations"] = r.krylov_iterations;
  j["data_norm"] = r.data_norm;
  j["smallness_warning"] = r.smallness_warning;
  j["gauge_norm"] = r.gauge_norm;
  j["gauge_operator_norm"] = r.gauge_operator_norm;
  j["einstein_residual"] = r.einstein_residual;
  j["einstein_residual_l2"] = r.einstein_residual_l2;
  return j;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Json error_json(const std::string& command, int exit_code, const std::string& type,
                const std::string& message) {
  return Json{{"command", command},
              {"exit_code", exit_code},
              {"error", {{"type", type}, {"message", message}}}};
}

}  // namespace curvlab::harness
