#pragma once

// Bridge between planar triangles and shape space, and the level-wise checks
// of LEAB refinement: two-sided diameter bounds, right-triangle persistence,
// similarity classes and heterogeneity.

#include "leab/mesh.hpp"
#include "leab/mesh_io.hpp"
#include "leab/shape_space.hpp"

#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace leab {

namespace tolerance {
inline constexpr double kBoundSlack = 1e-9;
inline constexpr double kSimilarity = 1e-8;
}  // namespace tolerance

template <typename Scalar>
struct NormalizedTriangle {
  ShapePoint shape;
  /// Maps the triangle onto its normalized position {0, 1, z}.
  SimilarityTransform<Scalar> transform;
  /// Local indices of the corners sent to 0, 1 and z.
  std::array<int, 3> order;
  /// z at full scalar precision.
  Point2<Scalar> apex;
};

/// Places the longest edge on [0, 1] with the shortest edge at 0 and the
/// third vertex in the upper half-plane. Throws DegeneracyError.
template <typename Scalar>
NormalizedTriangle<Scalar> normalize_triangle(const Point2<Scalar>& a, const Point2<Scalar>& b,
                                              const Point2<Scalar>& c) {
  using std::atan2;
  using std::sqrt;
  const std::array<Point2<Scalar>, 3> p{a, b, c};
  const EdgeLayout layout = edge_layout(p);
  const Point2<Scalar>& p0 = p[layout.zero_end];
  const Point2<Scalar>& p1 = p[layout.one_end];
  const Point2<Scalar> d = p1 - p0;
  const Point2<Scalar> q = p[layout.apex] - p0;
  const Scalar len2 = d.squaredNorm();

  Point2<Scalar> z(q.dot(d) / len2, cross2(d, q) / len2);
  NormalizedTriangle<Scalar> out;
  out.transform.scale = Scalar(1) / sqrt(len2);
  out.transform.rotation = -atan2(d.y(), d.x());
  out.transform.translation = Point2<Scalar>::Zero();
  out.transform.translation = -out.transform.apply(p0);
  out.transform.reflected = z.y() < Scalar(0);
  if (out.transform.reflected) z.y() = -z.y();
  out.order = {layout.zero_end, layout.one_end, layout.apex};
  out.apex = z;
  out.shape = ShapePoint(static_cast<double>(z.x()), static_cast<double>(z.y()));
  return out;
}

template <typename Scalar>
NormalizedTriangle<Scalar> normalize_triangle(const std::array<Point2<Scalar>, 3>& p) {
  return normalize_triangle(p[0], p[1], p[2]);
}

struct CommutationResidual {
  double left;
  double right;
};

/// Distance between the normalized LEAB children of a triangle and the
/// images of its normalized shape under w_left / w_right.
template <typename Scalar>
CommutationResidual commutation_check(const Point2<Scalar>& a, const Point2<Scalar>& b,
                                      const Point2<Scalar>& c) {
  TriMesh<Scalar> mesh = single_triangle_mesh(a, b, c);
  const ShapePoint parent = normalize_triangle(mesh.corners(0)).shape;
  const SplitResult split = leab_split(mesh, 0);
  const ShapePoint left = normalize_triangle(mesh.corners(split.left)).shape;
  const ShapePoint right = normalize_triangle(mesh.corners(split.right)).shape;
  return {distance(left, w_left(parent)), distance(right, w_right(parent))};
}

template <typename Scalar>
struct LevelStats {
  int k = 0;
  std::size_t n = 0;
  Scalar min_diam;
  Scalar max_diam;
  Scalar min_angle;  // degrees
  Scalar max_angle;  // degrees
  Scalar heterogeneity;
};

/// Throws EmptyInputError for a mesh without triangles.
template <typename Scalar>
LevelStats<Scalar> level_stats(const TriMesh<Scalar>& mesh) {
  if (mesh.triangles.empty()) throw EmptyInputError("level_stats: mesh has no triangles");
  LevelStats<Scalar> s;
  s.k = mesh.level;
  s.n = mesh.triangles.size();
  for (TriangleId t = 0; t < mesh.triangles.size(); ++t) {
    const auto m = triangle_metrics(mesh, t);
    if (t == 0) {
      s.min_diam = s.max_diam = m.diameter;
      s.min_angle = m.min_angle;
      s.max_angle = m.max_angle;
      continue;
    }
    s.min_diam = std::min(s.min_diam, m.diameter);
    s.max_diam = std::max(s.max_diam, m.diameter);
    s.min_angle = std::min(s.min_angle, m.min_angle);
    s.max_angle = std::max(s.max_angle, m.max_angle);
  }
  s.heterogeneity = s.max_diam / s.min_diam;
  return s;
}

template <typename Scalar>
struct LevelBound {
  int k;
  Scalar lower;
  Scalar upper;
  Scalar observed_min;
  Scalar observed_max;
  bool pass;
};

template <typename Scalar>
struct BoundViolation {
  int k;
  TriangleId triangle;
  Scalar observed;
  Scalar bound;
  bool below_lower;
};

template <typename Scalar>
struct BoundsReport {
  Scalar alpha0;  // degrees, minimal angle of level 0
  Scalar alpha1;  // degrees, minimal angle of level 1
  Scalar c;       // minimal diameter of level 1
  Scalar C;       // maximal diameter of level 1
  std::vector<LevelBound<Scalar>> levels;  // k >= 1
  bool angle_halving_pass = false;
  bool pass = false;
  std::optional<BoundViolation<Scalar>> first_violation;
};

/// Incremental form of verify_bounds(): levels are fed in order 0, 1, 2, ...
/// so a refinement can be checked without keeping every level alive.
template <typename Scalar>
class BoundsChecker {
 public:
  explicit BoundsChecker(double slack = tolerance::kBoundSlack) : slack_(slack) {}

  void add_level(const TriMesh<Scalar>& mesh) {
    using std::cos;
    using std::sin;
    const int k = levels_seen_++;
    if (k == 0) {
      report_.alpha0 = level_stats(mesh).min_angle;
      return;
    }
    if (k == 1) {
      const LevelStats<Scalar> s1 = level_stats(mesh);
      report_.alpha1 = s1.min_angle;
      report_.c = s1.min_diam;
      report_.C = s1.max_diam;
      report_.angle_halving_pass = report_.alpha1 >= report_.alpha0 / Scalar(2) - Scalar(slack_);
      report_.pass = report_.angle_halving_pass;
      const Scalar a1 = to_radians(report_.alpha1);
      sin_a1_ = sin(a1);
      cos_a1_ = cos(a1);
      lower_ = report_.c;
      upper_ = report_.C;
    } else {
      lower_ *= sin_a1_;
      upper_ *= cos_a1_;
    }
    if (mesh.triangles.empty()) throw EmptyInputError("verify_bounds: empty level " + std::to_string(k));

    const Scalar lo_factor = Scalar(1) - Scalar(slack_);
    const Scalar hi_factor = Scalar(1) + Scalar(slack_);
    LevelBound<Scalar> lb{k, lower_, upper_, Scalar(0), Scalar(0), true};
    for (TriangleId t = 0; t < mesh.triangles.size(); ++t) {
      const Scalar diam = triangle_metrics(mesh, t).diameter;
      lb.observed_min = t == 0 ? diam : std::min(lb.observed_min, diam);
      lb.observed_max = t == 0 ? diam : std::max(lb.observed_max, diam);
      const bool low = diam < lb.lower * lo_factor;
      const bool high = diam > lb.upper * hi_factor;
      if ((low || high) && !report_.first_violation) {
        report_.first_violation = BoundViolation<Scalar>{k, t, diam, low ? lb.lower : lb.upper, low};
      }
      lb.pass = lb.pass && !low && !high;
    }
    report_.pass = report_.pass && lb.pass;
    report_.levels.push_back(lb);
  }

  int levels_seen() const { return levels_seen_; }

  /// Throws InsufficientInputError before levels 0 and 1 have been added.
  const BoundsReport<Scalar>& report() const {
    if (levels_seen_ < 2) throw InsufficientInputError("verify_bounds: need levels 0 and 1 at least");
    return report_;
  }

 private:
  double slack_;
  int levels_seen_ = 0;
  BoundsReport<Scalar> report_;
  Scalar sin_a1_{0}, cos_a1_{0}, lower_{0}, upper_{0};
};

/// Checks c sin(a1)^(k-1) <= diam(T) <= C cos(a1)^(k-1) for every triangle
/// of every level k >= 1 (position in `levels` is k) with relative slack, and
/// a1 >= a0 / 2. Throws InsufficientInputError for fewer than two levels.
template <typename Scalar>
BoundsReport<Scalar> verify_bounds(std::span<const TriMesh<Scalar>> levels,
                                   double slack = tolerance::kBoundSlack) {
  if (levels.size() < 2) {
    throw InsufficientInputError("verify_bounds: need levels 0 and 1 at least");
  }
  BoundsChecker<Scalar> checker(slack);
  for (const auto& mesh : levels) checker.add_level(mesh);
  return checker.report();
}

template <typename Scalar>
BoundsReport<Scalar> verify_bounds(const std::vector<TriMesh<Scalar>>& levels,
                                   double slack = tolerance::kBoundSlack) {
  return verify_bounds(std::span<const TriMesh<Scalar>>(levels), slack);
}

/// True iff every triangle has an angle within tol_deg of 90 degrees and its
/// longest edge is opposite that angle.
template <typename Scalar>
bool right_triangle_check(const TriMesh<Scalar>& mesh, double tol_deg) {
  using std::abs;
  for (TriangleId t = 0; t < mesh.triangles.size(); ++t) {
    const auto p = mesh.corners(t);
    const auto angles = interior_angles(p);
    int best = 0;
    for (int i = 1; i < 3; ++i) {
      if (abs(angles[i] - Scalar(90)) < abs(angles[best] - Scalar(90))) best = i;
    }
    if (!(abs(angles[best] - Scalar(90)) <= Scalar(tol_deg))) return false;
    if (edge_layout(p).apex != best) return false;
  }
  return true;
}

template <typename Scalar>
std::vector<ShapePoint> shape_points(const TriMesh<Scalar>& mesh) {
  std::vector<ShapePoint> shapes;
  shapes.reserve(mesh.triangles.size());
  for (TriangleId t = 0; t < mesh.triangles.size(); ++t) {
    shapes.push_back(normalize_triangle(mesh.corners(t)).shape);
  }
  return shapes;
}

/// Number of single-linkage clusters of the normalized shapes, two shapes
/// being linked when their distance is at most tol.
int cluster_count(std::span<const ShapePoint> shapes, double tol);

template <typename Scalar>
int similarity_class_count(const TriMesh<Scalar>& mesh, double tol = tolerance::kSimilarity) {
  const auto shapes = shape_points(mesh);
  return cluster_count(shapes, tol);
}

/// max_diam / min_diam of each level; entry k belongs to levels[k].
template <typename Scalar>
std::vector<Scalar> heterogeneity_ratio(std::span<const TriMesh<Scalar>> levels) {
  std::vector<Scalar> ratios;
  ratios.reserve(levels.size());
  for (const auto& mesh : levels) ratios.push_back(level_stats(mesh).heterogeneity);
  return ratios;
}

template <typename Scalar>
std::vector<Scalar> heterogeneity_ratio(const std::vector<TriMesh<Scalar>>& levels) {
  return heterogeneity_ratio(std::span<const TriMesh<Scalar>>(levels));
}

inline constexpr const char* kStatsCsvHeader =
    "k,n,min_diam,max_diam,min_angle_deg,max_angle_deg,heterogeneity,bound_lower,bound_upper,pass";

/// One row per level. Bound columns are left empty where no bound applies
/// (level 0, or no report).
template <typename Scalar>
void write_stats_csv(std::ostream& out, std::span<const LevelStats<Scalar>> stats,
                     const BoundsReport<Scalar>* report) {
  auto num = [](const Scalar& v) { return format_double(static_cast<double>(v)); };
  out << kStatsCsvHeader << '\n';
  for (const auto& s : stats) {
    out << s.k << ',' << s.n << ',' << num(s.min_diam) << ',' << num(s.max_diam) << ','
        << num(s.min_angle) << ',' << num(s.max_angle) << ',' << num(s.heterogeneity) << ',';
    const LevelBound<Scalar>* bound = nullptr;
    if (report) {
      for (const auto& lb : report->levels) {
        if (lb.k == s.k) bound = &lb;
      }
    }
    if (bound) {
      out << num(bound->lower) << ',' << num(bound->upper) << ',' << (bound->pass ? "true" : "false");
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

}  // namespace leab
