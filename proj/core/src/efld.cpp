#include "curvlab/efld.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <json.hpp>

#include "curvlab/error.hpp"

namespace curvlab {

namespace {

template <class T>
void put_le(std::ostream& out, T value) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits = std::bit_cast<U>(value);
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw FormatError("EFLD file truncated");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

EfldHeader read_header(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || std::memcmp(magic.data(), "EFLD", 4) != 0) throw FormatError("not an EFLD file");
  EfldHeader h;
  h.version = get_le<std::uint32_t>(in);
  if (h.version != efld_version) throw FormatError("unsupported EFLD version");
  h.dim = static_cast<int>(get_le<std::uint32_t>(in));
  h.points = static_cast<int>(get_le<std::uint32_t>(in));
  h.length = get_le<double>(in);
  h.rank = static_cast<RankTag>(get_le<std::uint32_t>(in));
  h.components = get_le<std::uint32_t>(in);
  return h;
}

}  // namespace

std::filesystem::path efld_sidecar_path(const std::filesystem::path& path) {
  auto p = path;
  p += ".json";
  return p;
}

template <RankTag Tag>
void write_efld(const std::filesystem::path& path, const Field<Tag>& field,
                const Provenance& provenance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  const Grid& grid = field.grid();
  out.write("EFLD", 4);
  put_le<std::uint32_t>(out, efld_version);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.dim()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.points_per_axis()));
  put_le<double>(out, grid.length());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(Tag));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(field.components()));
  for (double v : field.values()) put_le<double>(out, v);
  if (!out) throw FormatError("failed writing " + path.string());

  nlohmann::ordered_json meta;
  meta["format"] = "EFLD";
  meta["version"] = efld_version;
  meta["n"] = grid.dim();
  meta["N"] = grid.points_per_axis();
  meta["L"] = grid.length();
  meta["rank_tag"] = static_cast<std::uint32_t>(Tag);
  meta["components"] = field.components();
  meta["provenance"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : provenance) meta["provenance"][k] = v;
  std::ofstream side(efld_sidecar_path(path));
  side << meta.dump(2) << '\n';
}

EfldHeader read_efld_header(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_header(in);
}

template <RankTag Tag>
Field<Tag> read_efld(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  const EfldHeader h = read_header(in);
  if (h.rank != Tag) throw FormatError("EFLD rank tag does not match the requested field type");
  const Grid grid = make_grid(h.dim, h.points, h.length);
  if (h.components != component_count(Tag, h.dim)) {
    throw FormatError("EFLD component count does not match the rank tag");
  }
  std::vector<double> values(static_cast<std::size_t>(h.components) * grid.size());
  for (double& v : values) v = get_le<double>(in);
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("EFLD file has trailing bytes");
  Field<Tag> field(grid, std::move(values));
  if (!field.all_finite()) throw FormatError("EFLD payload has non-finite values");
  return field;
}

#define CURVLAB_INSTANTIATE_EFLD(TAG)                                                        \
  template void write_efld(const std::filesystem::path&, const Field<TAG>&, const Provenance&); \
  template Field<TAG> read_efld(const std::filesystem::path&);

CURVLAB_INSTANTIATE_EFLD(RankTag::scalar)
CURVLAB_INSTANTIATE_EFLD(RankTag::one_form)
CURVLAB_INSTANTIATE_EFLD(RankTag::sym2)
CURVLAB_INSTANTIATE_EFLD(RankTag::christoffel)
CURVLAB_INSTANTIATE_EFLD(RankTag::four)
CURVLAB_INSTANTIATE_EFLD(RankTag::r13)

#undef CURVLAB_INSTANTIATE_EFLD

}  // namespace curvlab
