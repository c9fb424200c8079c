#include "otflow/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "otflow/errors.hpp"

namespace otflow {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open for reading: " + path.string());
  }
  return in;
}

double parse_double(std::string_view token, const fs::path& path) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw IoError("malformed number '" + std::string(token) + "' in " + path.string());
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
      ++pos;
    }
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') {
      ++pos;
    }
    if (pos > start) {
      tokens.push_back(line.substr(start, pos - start));
    }
  }
  return tokens;
}

Coords read_coord_lines(std::istream& in, Index n, const fs::path& path) {
  Coords coords(n, 3);
  std::string line;
  for (Index i = 0; i < n; ++i) {
    if (!std::getline(in, line)) {
      throw IoError("unexpected end of file in " + path.string());
    }
    const auto tokens = split_ws(line);
    if (tokens.size() != 3) {
      throw IoError("expected 3 values per line in " + path.string());
    }
    for (int c = 0; c < 3; ++c) {
      coords(i, c) = parse_double(tokens[static_cast<std::size_t>(c)], path);
    }
  }
  return coords;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                    std::chars_format::general, 17);
  if (ec != std::errc{}) {
    throw IoError("failed to format double");
  }
  return std::string(buffer.data(), ptr);
}

void write_ply(const fs::path& path, const PointCloud& cloud) {
  std::ofstream out = open_out(path);
  out << "ply\n"
      << "format ascii 1.0\n"
      << "element vertex " << cloud.size() << "\n"
      << "property double x\n"
      << "property double y\n"
      << "property double z\n"
      << "end_header\n";
  for (Index i = 0; i < cloud.size(); ++i) {
    out << format_double(cloud.data()(i, 0)) << ' ' << format_double(cloud.data()(i, 1)) << ' '
        << format_double(cloud.data()(i, 2)) << '\n';
  }
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

PointCloud read_ply(const fs::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || split_ws(line) != std::vector<std::string_view>{"ply"}) {
    throw IoError("not a PLY file: " + path.string());
  }
  Index vertex_count = -1;
  bool ascii = false;
  std::vector<std::string> properties;
  while (std::getline(in, line)) {
    const auto tokens = split_ws(line);
    if (tokens.empty()) {
      continue;
    }
    if (tokens[0] == "format") {
      ascii = tokens.size() >= 2 && tokens[1] == "ascii";
    } else if (tokens[0] == "element") {
      if (tokens.size() == 3 && tokens[1] == "vertex") {
        vertex_count = static_cast<Index>(parse_double(tokens[2], path));
      } else if (tokens.size() >= 2 && tokens[1] != "vertex") {
        throw IoError("unsupported PLY element in " + path.string());
      }
    } else if (tokens[0] == "property") {
      if (tokens.size() != 3) {
        throw IoError("unsupported PLY property in " + path.string());
      }
      properties.emplace_back(tokens[2]);
    } else if (tokens[0] == "end_header") {
      break;
    } else if (tokens[0] != "comment") {
      throw IoError("unsupported PLY header line in " + path.string());
    }
  }
  if (!ascii) {
    throw IoError("only ascii PLY is supported: " + path.string());
  }
  if (vertex_count < 1) {
    throw IoError("missing or empty vertex element in " + path.string());
  }
  if (properties.size() < 3 || properties[0] != "x" || properties[1] != "y" ||
      properties[2] != "z") {
    throw IoError("PLY must carry x, y, z as its first properties: " + path.string());
  }
  Coords coords(vertex_count, 3);
  for (Index i = 0; i < vertex_count; ++i) {
    if (!std::getline(in, line)) {
      throw IoError("unexpected end of file in " + path.string());
    }
    const auto tokens = split_ws(line);
    if (tokens.size() != properties.size()) {
      throw IoError("vertex line does not match property count in " + path.string());
    }
    for (int c = 0; c < 3; ++c) {
      coords(i, c) = parse_double(tokens[static_cast<std::size_t>(c)], path);
    }
  }
  return PointCloud(std::move(coords));
}

void write_flow(const fs::path& path, const FlowField& flow) {
  std::ofstream out = open_out(path);
  for (Index i = 0; i < flow.size(); ++i) {
    out << format_double(flow.data()(i, 0)) << ' ' << format_double(flow.data()(i, 1)) << ' '
        << format_double(flow.data()(i, 2)) << '\n';
  }
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

FlowField read_flow(const fs::path& path) {
  std::ifstream in = open_in(path);
  std::vector<std::array<double, 3>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto tokens = split_ws(line);
    if (tokens.empty()) {
      continue;
    }
    if (tokens.size() != 3) {
      throw IoError("expected 3 values per line in " + path.string());
    }
    rows.push_back({parse_double(tokens[0], path), parse_double(tokens[1], path),
                    parse_double(tokens[2], path)});
  }
  if (rows.empty()) {
    throw IoError("empty flow file: " + path.string());
  }
  Coords coords(static_cast<Index>(rows.size()), 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    coords.row(static_cast<Index>(i)) << rows[i][0], rows[i][1], rows[i][2];
  }
  return FlowField(std::move(coords));
}

void write_mask(const fs::path& path, const ValidityMask& mask) {
  std::ofstream out = open_out(path);
  for (Index i = 0; i < mask.size(); ++i) {
    out << (mask[i] ? '1' : '0') << '\n';
  }
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

ValidityMask read_mask(const fs::path& path) {
  std::ifstream in = open_in(path);
  std::vector<bool> flags;
  std::string line;
  while (std::getline(in, line)) {
    const auto tokens = split_ws(line);
    if (tokens.empty()) {
      continue;
    }
    if (tokens.size() != 1 || (tokens[0] != "0" && tokens[0] != "1")) {
      throw IoError("mask lines must be 0 or 1 in " + path.string());
    }
    flags.push_back(tokens[0] == "1");
  }
  if (flags.empty()) {
    throw IoError("empty mask file: " + path.string());
  }
  return ValidityMask(std::move(flags));
}

void write_permutation(const fs::path& path, const std::vector<Index>& perm) {
  std::ofstream out = open_out(path);
  for (Index value : perm) {
    out << value << '\n';
  }
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

std::vector<Index> read_permutation(const fs::path& path) {
  std::ifstream in = open_in(path);
  std::vector<Index> perm;
  std::string line;
  while (std::getline(in, line)) {
    const auto tokens = split_ws(line);
    if (tokens.empty()) {
      continue;
    }
    if (tokens.size() != 1) {
      throw IoError("permutation lines must hold one index in " + path.string());
    }
    long long value = 0;
    const auto [ptr, ec] =
        std::from_chars(tokens[0].data(), tokens[0].data() + tokens[0].size(), value);
    if (ec != std::errc{} || ptr != tokens[0].data() + tokens[0].size()) {
      throw IoError("malformed index in " + path.string());
    }
    perm.push_back(static_cast<Index>(value));
  }
  return perm;
}

fs::path write_scene(const fs::path& directory, const std::string& basename,
                     const ScenePair& scene) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  const std::string p_name = basename + "_p.ply";
  const std::string q_name = basename + "_q.ply";
  const std::string flow_name = basename + "_flow.txt";
  const std::string mask_name = basename + "_mask.txt";
  const std::string perm_name = basename + "_perm.txt";

  write_ply(directory / p_name, scene.source());
  write_ply(directory / q_name, scene.target());
  write_flow(directory / flow_name, scene.truth());
  write_mask(directory / mask_name, scene.mask());

  json manifest;
  manifest["source"] = p_name;
  manifest["target"] = q_name;
  manifest["flow"] = flow_name;
  manifest["mask"] = mask_name;
  if (scene.permutation().has_value()) {
    write_permutation(directory / perm_name, *scene.permutation());
    manifest["permutation"] = perm_name;
  }

  const fs::path manifest_path = directory / (basename + ".json");
  std::ofstream out = open_out(manifest_path);
  out << manifest.dump(2) << '\n';
  if (!out) {
    throw IoError("write failed: " + manifest_path.string());
  }
  return manifest_path;
}

ScenePair read_scene(const fs::path& manifest_path) {
  std::ifstream in = open_in(manifest_path);
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw IoError("malformed manifest " + manifest_path.string() + ": " + e.what());
  }
  const fs::path base = manifest_path.parent_path();
  auto resolve = [&](const std::string& key) -> fs::path {
    if (!manifest.contains(key) || !manifest[key].is_string()) {
      throw IoError("manifest missing '" + key + "': " + manifest_path.string());
    }
    return base / manifest[key].get<std::string>();
  };

  PointCloud source = read_ply(resolve("source"));
  PointCloud target = read_ply(resolve("target"));
  FlowField truth = read_flow(resolve("flow"));
  ValidityMask mask = read_mask(resolve("mask"));
  std::optional<std::vector<Index>> perm;
  if (manifest.contains("permutation")) {
    perm = read_permutation(resolve("permutation"));
  }
  try {
    return ScenePair(std::move(source), std::move(target), std::move(truth), std::move(mask),
                     std::move(perm));
  } catch (const std::invalid_argument& e) {
    throw IoError("inconsistent scene files for " + manifest_path.string() + ": " + e.what());
  }
}

}  // namespace otflow
