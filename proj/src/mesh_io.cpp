#include "leab/mesh_io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace leab {

namespace {

using nlohmann::json;

std::string line_context(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

double read_number(const json& node, const std::string& field) {
  if (!node.is_number()) throw ParseError(field + ": expected a number");
  return node.get<double>();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

TriMeshd parse_mesh_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("mesh JSON syntax error at " + line_context(text, e.byte > 0 ? e.byte - 1 : 0) +
                     ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("mesh JSON: top level must be an object");
  if (!doc.contains("vertices")) throw ParseError("mesh JSON: missing field \"vertices\"");
  if (!doc.contains("triangles")) throw ParseError("mesh JSON: missing field \"triangles\"");
  const json& verts = doc["vertices"];
  const json& tris = doc["triangles"];
  if (!verts.is_array()) throw ParseError("vertices: expected an array");
  if (!tris.is_array()) throw ParseError("triangles: expected an array");

  std::vector<Point2d> vertices;
  vertices.reserve(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string field = "vertices[" + std::to_string(i) + "]";
    if (!verts[i].is_array() || verts[i].size() != 2) throw ParseError(field + ": expected [x, y]");
    vertices.emplace_back(read_number(verts[i][0], field + "[0]"), read_number(verts[i][1], field + "[1]"));
  }

  std::vector<std::array<VertexId, 3>> triangles;
  triangles.reserve(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const std::string field = "triangles[" + std::to_string(t) + "]";
    if (!tris[t].is_array() || tris[t].size() != 3) throw ParseError(field + ": expected [i, j, k]");
    std::array<VertexId, 3> v{};
    for (int j = 0; j < 3; ++j) {
      const json& idx = tris[t][j];
      const std::string sub = field + "[" + std::to_string(j) + "]";
      if (!idx.is_number_integer() || idx.get<long long>() < 0) {
        throw ParseError(sub + ": expected a nonnegative integer index");
      }
      v[j] = idx.get<VertexId>();
      if (v[j] >= vertices.size()) {
        throw ParseError(sub + ": index " + std::to_string(v[j]) + " out of range (" +
                         std::to_string(vertices.size()) + " vertices)");
      }
    }
    triangles.push_back(v);
  }

  TriMeshd mesh = make_mesh<double>(std::move(vertices), triangles);
  if (doc.contains("level")) {
    const json& level = doc["level"];
    if (!level.is_number_integer() || level.get<long long>() < 0) {
      throw ParseError("level: expected a nonnegative integer");
    }
    mesh.level = level.get<int>();
    for (auto& tri : mesh.triangles) tri.level = mesh.level;
  }
  return mesh;
}

TriMeshd read_mesh_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_mesh_json(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string mesh_to_json(const TriMeshd& mesh) {
  std::string out = "{\n  \"vertices\": [";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    out += i == 0 ? "\n    [" : ",\n    [";
    out += format_double(mesh.vertices[i].x());
    out += ", ";
    out += format_double(mesh.vertices[i].y());
    out += "]";
  }
  out += mesh.vertices.empty() ? "],\n" : "\n  ],\n";
  out += "  \"triangles\": [";
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& v = mesh.triangles[t].v;
    out += t == 0 ? "\n    [" : ",\n    [";
    out += std::to_string(v[0]) + ", " + std::to_string(v[1]) + ", " + std::to_string(v[2]) + "]";
  }
  out += mesh.triangles.empty() ? "],\n" : "\n  ],\n";
  out += "  \"level\": " + std::to_string(mesh.level) + "\n}\n";
  return out;
}

void write_mesh_file(const std::filesystem::path& path, const TriMeshd& mesh) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << mesh_to_json(mesh);
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace leab
