#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "curvlab/field.hpp"

namespace curvlab {

/// EFLD binary field file, all little-endian:
///
///   offset  0  char[4]  "EFLD"
///   offset  4  u32      version (1)
///   offset  8  u32      n
///   offset 12  u32      N
///   offset 16  f64      L
///   offset 24  u32      rank tag (RankTag value)
///   offset 28  u32      component count
///   offset 32  f64[]    payload, component-major then lattice index
///
/// A JSON sidecar `<file>.json` records the header values and free-form
/// provenance strings.
struct EfldHeader {
  std::uint32_t version = 1;
  int dim = 0;
  int points = 0;
  double length = 0.0;
  RankTag rank = RankTag::scalar;
  std::uint32_t components = 0;
};

inline constexpr std::uint32_t efld_version = 1;
inline constexpr std::size_t efld_header_bytes = 32;

using Provenance = std::map<std::string, std::string>;

template <RankTag Tag>
void write_efld(const std::filesystem::path& path, const Field<Tag>& field,
                const Provenance& provenance = {});

EfldHeader read_efld_header(const std::filesystem::path& path);

/// Reads a field, checking rank, component count, size and finiteness.
template <RankTag Tag>
Field<Tag> read_efld(const std::filesystem::path& path);

std::filesystem::path efld_sidecar_path(const std::filesystem::path& path);

}  // namespace curvlab
