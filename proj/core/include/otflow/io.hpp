#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "otflow/types.hpp"

namespace otflow {

/// Formats a double with 17 significant digits ('.' decimal separator),
/// enough to round-trip any value exactly through text.
std::string format_double(double value);

/// Point clouds travel as ASCII PLY with x, y, z properties.
void write_ply(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud read_ply(const std::filesystem::path& path);

/// Flow fields are plain text, one "fx fy fz" line per point, LF endings.
void write_flow(const std::filesystem::path& path, const FlowField& flow);
FlowField read_flow(const std::filesystem::path& path);

/// Masks are one '0' or '1' per line.
void write_mask(const std::filesystem::path& path, const ValidityMask& mask);
ValidityMask read_mask(const std::filesystem::path& path);

/// Permutations are one target index per line.
void write_permutation(const std::filesystem::path& path, const std::vector<Index>& perm);
std::vector<Index> read_permutation(const std::filesystem::path& path);

/// Writes the four scene files (plus the permutation when present) next to a
/// JSON manifest naming them, and returns the manifest path. File names are
/// derived from `basename`.
std::filesystem::path write_scene(const std::filesystem::path& directory,
                                  const std::string& basename, const ScenePair& scene);

/// Loads a scene from its manifest; relative entries resolve against the
/// manifest's directory.
ScenePair read_scene(const std::filesystem::path& manifest_path);

}  // namespace otflow
