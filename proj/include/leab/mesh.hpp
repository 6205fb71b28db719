#pragma once

// Planar indexed triangulations and the longest-edge refinement operators.
//
// All geometry is templated on the coordinate scalar. double is adequate for
// a handful of levels; deep refinements of thin elements need Quad.

#include "leab/errors.hpp"
#include "leab/scalar.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace leab {

using VertexId = std::size_t;
using TriangleId = std::size_t;

enum class Side { Left, Right };
enum class Method { LEAB, LEB };

namespace tolerance {
/// Triangles with area below this times diameter^2 are degenerate.
inline constexpr double kDegenerateArea = 1e-14;
/// Split vertices closer than this times the split element's diameter to an
/// existing vertex are merged with it.
inline constexpr double kMergeRelative = 1e-9;
/// Relative tolerance on squared edge lengths under which edges tie.
inline constexpr double kEdgeTie = 1e-12;
/// Slack on the altitude-foot projection parameter.
inline constexpr double kFootParameter = 1e-12;
}  // namespace tolerance

struct Triangle {
  std::array<VertexId, 3> v{};
  std::optional<TriangleId> parent;
  int level = 0;
  std::optional<Side> side;

  friend bool operator==(const Triangle&, const Triangle&) = default;
};

template <typename Scalar>
struct TriMesh {
  std::vector<Point2<Scalar>> vertices;
  std::vector<Triangle> triangles;
  int level = 0;

  std::array<Point2<Scalar>, 3> corners(const Triangle& t) const {
    return {vertices[t.v[0]], vertices[t.v[1]], vertices[t.v[2]]};
  }
  std::array<Point2<Scalar>, 3> corners(TriangleId id) const { return corners(triangles[id]); }

  /// Geometric equality: vertex table, index triples and level. Triangle
  /// provenance (parent, side) is not compared.
  friend bool operator==(const TriMesh& a, const TriMesh& b) {
    if (a.level != b.level || a.triangles.size() != b.triangles.size()) return false;
    for (std::size_t t = 0; t < a.triangles.size(); ++t) {
      if (a.triangles[t].v != b.triangles[t].v) return false;
    }
    if (a.vertices.size() != b.vertices.size()) return false;
    for (std::size_t i = 0; i < a.vertices.size(); ++i) {
      if (a.vertices[i] != b.vertices[i]) return false;
    }
    return true;
  }
};

using TriMeshd = TriMesh<double>;
using TriMeshq = TriMesh<Quad>;

template <typename To, typename From>
TriMesh<To> mesh_cast(const TriMesh<From>& mesh) {
  TriMesh<To> out;
  out.vertices.reserve(mesh.vertices.size());
  for (const auto& p : mesh.vertices) out.vertices.push_back(point_cast<To>(p));
  out.triangles = mesh.triangles;
  out.level = mesh.level;
  return out;
}

/// Direct or reflecting similarity q = S(p): scale, rotate, translate, then
/// mirror across the x-axis when reflected.
template <typename Scalar>
struct SimilarityTransform {
  Scalar scale{1};
  Scalar rotation{0};  // radians
  Point2<Scalar> translation = Point2<Scalar>::Zero();
  bool reflected = false;

  Point2<Scalar> apply(const Point2<Scalar>& p) const {
    using std::cos;
    using std::sin;
    const Scalar c = cos(rotation), s = sin(rotation);
    Point2<Scalar> q(scale * (c * p.x() - s * p.y()) + translation.x(),
                     scale * (s * p.x() + c * p.y()) + translation.y());
    if (reflected) q.y() = -q.y();
    return q;
  }

  Point2<Scalar> apply_inverse(const Point2<Scalar>& q) const {
    using std::cos;
    using std::sin;
    Point2<Scalar> p = q;
    if (reflected) p.y() = -p.y();
    p -= translation;
    const Scalar c = cos(rotation), s = sin(rotation);
    return Point2<Scalar>((c * p.x() + s * p.y()) / scale, (-s * p.x() + c * p.y()) / scale);
  }
};

/// Squared length of the edge opposite each local vertex.
template <typename Scalar>
std::array<Scalar, 3> squared_edge_lengths(const std::array<Point2<Scalar>, 3>& p) {
  return {(p[1] - p[2]).squaredNorm(), (p[2] - p[0]).squaredNorm(), (p[0] - p[1]).squaredNorm()};
}

template <typename Scalar>
Scalar signed_area(const std::array<Point2<Scalar>, 3>& p) {
  return cross2(p[1] - p[0], p[2] - p[0]) / Scalar(2);
}

template <typename Scalar>
bool is_degenerate(const std::array<Point2<Scalar>, 3>& p) {
  using std::abs;
  const auto len2 = squared_edge_lengths(p);
  const Scalar diam2 = std::max({len2[0], len2[1], len2[2]});
  const Scalar area = abs(signed_area(p));
  return !(area >= Scalar(tolerance::kDegenerateArea) * diam2) || !(diam2 > Scalar(0));
}

namespace detail {

template <typename Scalar>
bool strictly_shorter(const Scalar& a, const Scalar& b) {
  return a < b && (b - a) > Scalar(tolerance::kEdgeTie) * b;
}

}  // namespace detail

/// Local roles of a triangle's corners with respect to its longest edge.
struct EdgeLayout {
  int apex;      // opposite the longest edge
  int zero_end;  // longest-edge endpoint shared with the shorter remaining edge
  int one_end;
};

/// Longest edge ties resolve to the smallest opposite local index; equal
/// remaining edges put the smaller local index at zero_end.
template <typename Scalar>
EdgeLayout edge_layout(const std::array<Point2<Scalar>, 3>& p) {
  if (is_degenerate(p)) throw DegeneracyError("degenerate triangle");
  const auto len2 = squared_edge_lengths(p);
  int apex = 0;
  for (int i = 1; i < 3; ++i) {
    if (detail::strictly_shorter(len2[apex], len2[i])) apex = i;
  }
  const int a = (apex + 1) % 3;
  const int b = (apex + 2) % 3;
  // Edge apex-a has length len2[b]; edge apex-b has length len2[a].
  int zero_end;
  if (detail::strictly_shorter(len2[b], len2[a])) {
    zero_end = a;
  } else if (detail::strictly_shorter(len2[a], len2[b])) {
    zero_end = b;
  } else {
    zero_end = std::min(a, b);
  }
  return {apex, zero_end, zero_end == a ? b : a};
}

/// Edge identifier (local index of the opposite vertex) of the longest edge.
template <typename Scalar>
int longest_edge(const TriMesh<Scalar>& mesh, TriangleId t) {
  try {
    return edge_layout(mesh.corners(t)).apex;
  } catch (const DegeneracyError& e) {
    throw DegeneracyError(std::string("longest_edge: ") + e.what(), t);
  }
}

/// Orthogonal projection of c onto the supporting line of segment ab, where
/// ab is the longest edge.
template <typename Scalar>
Point2<Scalar> altitude_foot(const Point2<Scalar>& a, const Point2<Scalar>& b,
                             const Point2<Scalar>& c) {
  using std::sqrt;
  const Point2<Scalar> ab = b - a;
  const Scalar len2 = ab.squaredNorm();
  const Scalar reach = std::max((c - a).norm(), (c - b).norm());
  if (!(len2 > Scalar(0)) || sqrt(len2) <= Scalar(tolerance::kDegenerateArea) * reach) {
    throw DegeneracyError("altitude_foot: base edge has (near) zero length");
  }
  const Scalar t = (c - a).dot(ab) / len2;
  const Scalar slack(tolerance::kFootParameter);
  if (t < -slack || t > Scalar(1) + slack) {
    throw PreconditionError("altitude_foot: foot falls outside the base edge; it is not the longest");
  }
  return a + t * ab;
}

/// Ordered-by-x lookup of mesh vertices used to merge coincident split
/// points.
template <typename Scalar>
class VertexIndex {
 public:
  VertexIndex() = default;
  explicit VertexIndex(const std::vector<Point2<Scalar>>& vertices) {
    for (VertexId i = 0; i < vertices.size(); ++i) by_x_.emplace(vertices[i].x(), i);
  }

  std::optional<VertexId> find(const std::vector<Point2<Scalar>>& vertices,
                               const Point2<Scalar>& p, const Scalar& radius) const {
    std::optional<VertexId> best;
    Scalar best_d2 = radius * radius;
    const auto hi = by_x_.upper_bound(p.x() + radius);
    for (auto it = by_x_.lower_bound(p.x() - radius); it != hi; ++it) {
      const Scalar d2 = (vertices[it->second] - p).squaredNorm();
      if (d2 < best_d2 || (d2 == best_d2 && (!best || it->second < *best))) {
        best = it->second;
        best_d2 = d2;
      }
    }
    return best;
  }

  VertexId find_or_insert(std::vector<Point2<Scalar>>& vertices, const Point2<Scalar>& p,
                          const Scalar& radius) {
    if (auto hit = find(vertices, p, radius)) return *hit;
    vertices.push_back(p);
    by_x_.emplace(p.x(), vertices.size() - 1);
    return vertices.size() - 1;
  }

 private:
  std::multimap<Scalar, VertexId> by_x_;
};

struct SplitResult {
  Triangle left;
  Triangle right;
  VertexId split_vertex;
};

namespace detail {

template <typename Scalar>
SplitResult split_at(TriMesh<Scalar>& mesh, TriangleId id, Method method,
                     VertexIndex<Scalar>& index) {
  const Triangle parent = mesh.triangles.at(id);
  const auto p = mesh.corners(parent);
  EdgeLayout layout;
  try {
    layout = edge_layout(p);
  } catch (const DegeneracyError& e) {
    throw DegeneracyError(e.what() + std::string(" (triangle ") + std::to_string(id) + ")", id);
  }
  const int apex = layout.apex;
  const int a = (apex + 1) % 3;
  const int b = (apex + 2) % 3;

  const Point2<Scalar> split = method == Method::LEAB
                                   ? altitude_foot<Scalar>(p[a], p[b], p[apex])
                                   : Point2<Scalar>((p[a] + p[b]) / Scalar(2));
  const Scalar diam = (p[a] - p[b]).norm();
  const VertexId s =
      index.find_or_insert(mesh.vertices, split, Scalar(tolerance::kMergeRelative) * diam);

  // Both sub-triangles keep the parent's counter-clockwise orientation.
  Triangle with_a{{parent.v[apex], parent.v[a], s}, id, parent.level + 1, std::nullopt};
  Triangle with_b{{parent.v[apex], s, parent.v[b]}, id, parent.level + 1, std::nullopt};
  for (const Triangle* child : {&with_a, &with_b}) {
    if (is_degenerate(mesh.corners(*child))) {
      throw DegeneracyError("split of triangle " + std::to_string(id) + " produced a degenerate child",
                            id);
    }
  }
  const bool a_is_left = layout.zero_end == a;
  with_a.side = a_is_left ? Side::Left : Side::Right;
  with_b.side = a_is_left ? Side::Right : Side::Left;
  return a_is_left ? SplitResult{with_a, with_b, s} : SplitResult{with_b, with_a, s};
}

}  // namespace detail

/// Longest-edge altitude bisection of triangle id. Appends the altitude foot
/// to mesh.vertices unless it coincides with an existing vertex; the mesh's
/// triangle list is not modified. The left child contains the longest-edge
/// endpoint adjacent to the shorter remaining edge.
template <typename Scalar>
SplitResult leab_split(TriMesh<Scalar>& mesh, TriangleId id) {
  VertexIndex<Scalar> index(mesh.vertices);
  return detail::split_at(mesh, id, Method::LEAB, index);
}

/// Classical longest-edge bisection through the longest-edge midpoint.
template <typename Scalar>
SplitResult leb_split(TriMesh<Scalar>& mesh, TriangleId id) {
  VertexIndex<Scalar> index(mesh.vertices);
  return detail::split_at(mesh, id, Method::LEB, index);
}

/// One global refinement step: every triangle is split, children are
/// appended in parent order, left before right.
template <typename Scalar>
TriMesh<Scalar> refine_once(const TriMesh<Scalar>& mesh, Method method) {
  TriMesh<Scalar> work = mesh;
  TriMesh<Scalar> next;
  next.level = mesh.level + 1;
  next.triangles.reserve(2 * mesh.triangles.size());
  VertexIndex<Scalar> index(work.vertices);
  for (TriangleId id = 0; id < mesh.triangles.size(); ++id) {
    SplitResult r = detail::split_at(work, id, method, index);
    r.left.level = r.right.level = next.level;
    next.triangles.push_back(r.left);
    next.triangles.push_back(r.right);
  }
  next.vertices = std::move(work.vertices);
  return next;
}

/// Levels 0..steps of successive global refinement.
template <typename Scalar>
std::vector<TriMesh<Scalar>> refine_global(const TriMesh<Scalar>& mesh, int steps, Method method) {
  if (steps < 0) throw PreconditionError("refine_global: steps must be nonnegative");
  std::vector<TriMesh<Scalar>> levels;
  levels.reserve(static_cast<std::size_t>(steps) + 1);
  levels.push_back(mesh);
  for (int k = 0; k < steps; ++k) levels.push_back(refine_once(levels.back(), method));
  return levels;
}

/// Interior angles in degrees at each local vertex (law of cosines).
template <typename Scalar>
std::array<Scalar, 3> interior_angles(const std::array<Point2<Scalar>, 3>& p) {
  using std::acos;
  using std::sqrt;
  const auto len2 = squared_edge_lengths(p);
  std::array<Scalar, 3> angles;
  for (int i = 0; i < 3; ++i) {
    const Scalar& opp = len2[i];
    const Scalar& s1 = len2[(i + 1) % 3];
    const Scalar& s2 = len2[(i + 2) % 3];
    Scalar c = (s1 + s2 - opp) / (Scalar(2) * sqrt(s1 * s2));
    c = std::clamp(c, Scalar(-1), Scalar(1));
    angles[i] = to_degrees(acos(c));
  }
  return angles;
}

template <typename Scalar>
struct TriangleMetrics {
  Scalar diameter;
  Scalar min_angle;  // degrees
  Scalar max_angle;  // degrees
  Scalar area;
};

template <typename Scalar>
TriangleMetrics<Scalar> triangle_metrics(const std::array<Point2<Scalar>, 3>& p) {
  using std::abs;
  using std::sqrt;
  if (is_degenerate(p)) throw DegeneracyError("triangle_metrics: degenerate triangle");
  const auto len2 = squared_edge_lengths(p);
  const auto angles = interior_angles(p);
  return {sqrt(std::max({len2[0], len2[1], len2[2]})),
          std::min({angles[0], angles[1], angles[2]}),
          std::max({angles[0], angles[1], angles[2]}), abs(signed_area(p))};
}

template <typename Scalar>
TriangleMetrics<Scalar> triangle_metrics(const TriMesh<Scalar>& mesh, TriangleId t) {
  try {
    return triangle_metrics(mesh.corners(t));
  } catch (const DegeneracyError& e) {
    throw DegeneracyError(e.what() + std::string(" (triangle ") + std::to_string(t) + ")", t);
  }
}

template <typename Scalar>
Scalar bounding_box_diagonal(const TriMesh<Scalar>& mesh) {
  if (mesh.vertices.empty()) return Scalar(0);
  Point2<Scalar> lo = mesh.vertices.front(), hi = lo;
  for (const auto& p : mesh.vertices) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

/// Checks index ranges and coordinate finiteness, rejects exactly repeated
/// vertices and degenerate triangles, and reorders clockwise triangles to
/// counter-clockwise.
template <typename Scalar>
void validate_and_orient(TriMesh<Scalar>& mesh) {
  using std::isfinite;
  for (VertexId i = 0; i < mesh.vertices.size(); ++i) {
    const auto& p = mesh.vertices[i];
    if (!isfinite(p.x()) || !isfinite(p.y())) {
      throw PreconditionError("vertex " + std::to_string(i) + " has non-finite coordinates");
    }
  }
  std::vector<VertexId> order(mesh.vertices.size());
  for (VertexId i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    const auto& p = mesh.vertices[a];
    const auto& q = mesh.vertices[b];
    return p.x() < q.x() || (p.x() == q.x() && (p.y() < q.y() || (p.y() == q.y() && a < b)));
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (mesh.vertices[order[i]] == mesh.vertices[order[i - 1]]) {
      throw PreconditionError("vertices " + std::to_string(order[i - 1]) + " and " +
                              std::to_string(order[i]) + " coincide");
    }
  }
  for (TriangleId t = 0; t < mesh.triangles.size(); ++t) {
    auto& tri = mesh.triangles[t];
    for (VertexId v : tri.v) {
      if (v >= mesh.vertices.size()) {
        throw PreconditionError("triangle " + std::to_string(t) + " references vertex " +
                                std::to_string(v) + " out of range");
      }
    }
    const auto p = mesh.corners(tri);
    if (is_degenerate(p)) throw DegeneracyError("triangle " + std::to_string(t) + " is degenerate", t);
    if (signed_area(p) < Scalar(0)) std::swap(tri.v[1], tri.v[2]);
  }
}

/// Builds a level-0 mesh from coordinates and index triples.
template <typename Scalar>
TriMesh<Scalar> make_mesh(std::vector<Point2<Scalar>> vertices,
                          const std::vector<std::array<VertexId, 3>>& triangles) {
  TriMesh<Scalar> mesh;
  mesh.vertices = std::move(vertices);
  mesh.triangles.reserve(triangles.size());
  for (const auto& v : triangles) mesh.triangles.push_back(Triangle{v, std::nullopt, 0, std::nullopt});
  validate_and_orient(mesh);
  return mesh;
}

template <typename Scalar>
TriMesh<Scalar> single_triangle_mesh(const Point2<Scalar>& a, const Point2<Scalar>& b,
                                     const Point2<Scalar>& c) {
  return make_mesh<Scalar>({a, b, c}, {{0, 1, 2}});
}

struct HangingNode {
  VertexId vertex;
  TriangleId triangle;
  int edge;  // local index of the vertex opposite the edge

  friend bool operator==(const HangingNode&, const HangingNode&) = default;
};

/// Vertices lying strictly inside an edge (within distance tol, and farther
/// than tol from both endpoints) of a triangle they do not belong to.
template <typename Scalar>
std::vector<HangingNode> find_hanging_nodes(const TriMesh<Scalar>& mesh, const Scalar& tol) {
  using std::abs;
  using std::sqrt;
  std::vector<std::pair<Scalar, VertexId>> by_x;
  by_x.reserve(mesh.vertices.size());
  for (VertexId i = 0; i < mesh.vertices.size(); ++i) by_x.emplace_back(mesh.vertices[i].x(), i);
  std::sort(by_x.begin(), by_x.end());

  std::vector<HangingNode> out;
  for (TriangleId t = 0; t < mesh.triangles.size(); ++t) {
    const Triangle& tri = mesh.triangles[t];
    for (int e = 0; e < 3; ++e) {
      const Point2<Scalar>& a = mesh.vertices[tri.v[(e + 1) % 3]];
      const Point2<Scalar>& b = mesh.vertices[tri.v[(e + 2) % 3]];
      const Point2<Scalar> ab = b - a;
      const Scalar len2 = ab.squaredNorm();
      const Scalar len = sqrt(len2);
      if (!(len > Scalar(2) * tol)) continue;
      const Scalar x_lo = std::min(a.x(), b.x()) - tol;
      const Scalar x_hi = std::max(a.x(), b.x()) + tol;
      const Scalar y_lo = std::min(a.y(), b.y()) - tol;
      const Scalar y_hi = std::max(a.y(), b.y()) + tol;
      auto it = std::lower_bound(by_x.begin(), by_x.end(), x_lo,
                                 [](const auto& entry, const Scalar& x) { return entry.first < x; });
      for (; it != by_x.end() && it->first <= x_hi; ++it) {
        const VertexId v = it->second;
        if (v == tri.v[0] || v == tri.v[1] || v == tri.v[2]) continue;
        const Point2<Scalar>& p = mesh.vertices[v];
        if (p.y() < y_lo || p.y() > y_hi) continue;
        const Scalar s = (p - a).dot(ab) / len2;
        if (!(s * len > tol) || !((Scalar(1) - s) * len > tol)) continue;
        if (abs(cross2(ab, p - a)) / len <= tol) out.push_back({v, t, e});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const HangingNode& x, const HangingNode& y) {
    return std::tie(x.vertex, x.triangle, x.edge) < std::tie(y.vertex, y.triangle, y.edge);
  });
  return out;
}

}  // namespace leab
