#pragma once

// Mesh JSON: {"vertices": [[x, y], ...], "triangles": [[i, j, k], ...], "level": k}
// Indices are zero-based; "level" is optional on input.

#include "leab/mesh.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace leab {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// Throws ParseError with line or field context on malformed input, and the
/// validate_and_orient() errors on invalid geometry.
TriMeshd parse_mesh_json(std::string_view text);
TriMeshd read_mesh_file(const std::filesystem::path& path);

std::string mesh_to_json(const TriMeshd& mesh);
void write_mesh_file(const std::filesystem::path& path, const TriMeshd& mesh);

}  // namespace leab
