// Randomized invariants. Generators are seeded so failures reproduce.

#include "leab/analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace leab {
namespace {

using Rng = std::mt19937_64;

std::array<Point2d, 3> random_triangle(Rng& rng, double min_angle_deg = 0.5) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const std::array<Point2d, 3> p{Point2d(u(rng), u(rng)), Point2d(u(rng), u(rng)), Point2d(u(rng), u(rng))};
    if (is_degenerate(p)) continue;
    const auto a = interior_angles(p);
    if (std::min({a[0], a[1], a[2]}) >= min_angle_deg) return p;
  }
}

SimilarityTransform<double> random_similarity(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {std::exp(std::log(100.0) * (u(rng) - 0.5)), 2 * std::numbers::pi * u(rng),
          Point2d(20 * u(rng) - 10, 20 * u(rng) - 10), u(rng) < 0.5};
}

// Independent oracle: second intersection of the ray o + t (z - o) with |w - 1/2| = 1/2.
Complex ray_circle(Complex o, Complex z) {
  const Complex d = z - o;
  const Complex oc = o - 0.5;
  const double a = std::norm(d);
  const double b = 2.0 * (oc * std::conj(d)).real();
  const double c = std::norm(oc) - 0.25;
  const double disc = std::sqrt(b * b - 4 * a * c);
  const double t1 = (-b - disc) / (2 * a);
  const double t2 = (-b + disc) / (2 * a);
  // o lies on the circle, so one root is 0.
  const double t = std::abs(t1) > std::abs(t2) ? t1 : t2;
  return o + t * d;
}

TEST(Property, OneStepCollapseOntoGamma) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const ShapePoint z = sample_sigma(rng);
    EXPECT_LE(gamma_residual(w_left(z).value()), 1e-10);
    EXPECT_LE(gamma_residual(w_right(z).value()), 1e-10);
  }
}

TEST(Property, ImagesStayInSigma) {
  Rng rng(2);
  for (int i = 0; i < 10000; ++i) {
    const ShapePoint z = sample_sigma(rng);
    EXPECT_TRUE(is_on_gamma(w_left(z).value(), 1e-10)) << z.re() << ' ' << z.im();
    EXPECT_TRUE(is_on_gamma(w_right(z).value(), 1e-10)) << z.re() << ' ' << z.im();
  }
}

TEST(Property, GammaPointsAreFixed) {
  for (int i = 0; i < 1000; ++i) {
    // Open arc from 90 to 180 degrees.
    const double theta = std::numbers::pi * (0.5 + 0.5 * (i + 0.5) / 1000.0);
    const ShapePoint z = gamma_point(theta);
    EXPECT_LE(distance(w_left(z), z), 1e-10);
    EXPECT_LE(distance(w_right(z), z), 1e-10);
  }
}

TEST(Property, MapsAgreeWithRayCircleOracle) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const ShapePoint z = sample_sigma(rng);
    const ShapePoint left = canonical_symmetry(ray_circle(0.0, z.value()));
    const ShapePoint right = canonical_symmetry(ray_circle(1.0, z.value()));
    EXPECT_LE(distance(w_left(z), left), 1e-9);
    EXPECT_LE(distance(w_right(z), right), 1e-9);
    EXPECT_LE(distance(ray_gamma_intersection(RayOrigin::Zero, z), left), 1e-9);
    EXPECT_LE(distance(ray_gamma_intersection(RayOrigin::One, z), right), 1e-9);
  }
}

TEST(Property, PoincareIsAMetric) {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const Complex a = sample_sigma(rng).value();
    const Complex b = sample_sigma(rng).value();
    const Complex c = sample_sigma(rng).value();
    const double ab = poincare_distance(a, b);
    EXPECT_EQ(poincare_distance(a, a), 0.0);
    EXPECT_GT(ab, 0.0);
    EXPECT_NEAR(ab, poincare_distance(b, a), 1e-12 * (1 + ab));
    EXPECT_LE(ab, poincare_distance(a, c) + poincare_distance(c, b) + 1e-12);
  }
}

TEST(Property, NormalizeRoundTrip) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_triangle(rng);
    const auto n = normalize_triangle(p);
    const Point2d targets[3] = {{0, 0}, {1, 0}, n.apex};
    const double scale = triangle_metrics(p).diameter;
    for (int j = 0; j < 3; ++j) {
      EXPECT_LE((n.transform.apply_inverse(targets[j]) - p[n.order[j]]).norm(), 1e-9 * scale);
    }
    EXPECT_TRUE(is_in_sigma(n.shape.value()));
    EXPECT_LE(std::abs(n.shape.value()), std::abs(n.shape.value() - 1.0) + 1e-12);
  }
}

TEST(Property, NormalizeIsSimilarityInvariant) {
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_triangle(rng, 2.0);
    const auto s = random_similarity(rng);
    const std::array<Point2d, 3> q{s.apply(p[0]), s.apply(p[1]), s.apply(p[2])};
    EXPECT_LE(distance(normalize_triangle(p).shape, normalize_triangle(q).shape), 1e-10);
  }
}

TEST(Property, MeshShapeCommutation) {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_triangle(rng);
    const auto r = commutation_check(p[0], p[1], p[2]);
    EXPECT_LE(r.left, 1e-9);
    EXPECT_LE(r.right, 1e-9);
  }
}

TEST(Property, LeabChildrenPartitionTheParent) {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_triangle(rng);
    TriMeshd m = single_triangle_mesh(p[0], p[1], p[2]);
    const SplitResult s = leab_split(m, 0);
    const double parent = signed_area(m.corners(0));
    const double left = signed_area(m.corners(s.left));
    const double right = signed_area(m.corners(s.right));
    EXPECT_GT(left, 0.0);
    EXPECT_GT(right, 0.0);
    EXPECT_NEAR(left + right, parent, 1e-12 * parent);
    // The split vertex lies on the parent's longest edge.
    const auto layout = edge_layout(m.corners(0));
    const Point2d a = m.corners(0)[layout.zero_end];
    const Point2d b = m.corners(0)[layout.one_end];
    EXPECT_LE(std::abs(cross2(Point2d(b - a), Point2d(m.vertices[s.split_vertex] - a))), 1e-12);
  }
}

TEST(Property, RightTrianglesPersistAndClassesFreeze) {
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_triangle(rng, 5.0);
    const TriMeshq seed = mesh_cast<Quad>(single_triangle_mesh(p[0], p[1], p[2]));
    const auto levels = refine_global(seed, 8, Method::LEAB);
    const int classes = similarity_class_count(levels[1]);
    EXPECT_LE(classes, 2);
    for (int k = 1; k <= 8; ++k) {
      EXPECT_TRUE(right_triangle_check(levels[k], 1e-9)) << "seed " << i << " level " << k;
      EXPECT_EQ(similarity_class_count(levels[k]), classes) << "seed " << i << " level " << k;
    }
  }
}

TEST(Property, BoundsHoldForRandomSeeds) {
  Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_triangle(rng, 5.0);
    const TriMeshq seed = mesh_cast<Quad>(single_triangle_mesh(p[0], p[1], p[2]));
    const auto report = verify_bounds(refine_global(seed, 8, Method::LEAB));
    EXPECT_TRUE(report.pass) << "seed " << i;
  }
}

TEST(Property, SingleTriangleSeedsConformUpToLevelTwo) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_triangle(rng, 2.0);
    const auto levels = refine_global(single_triangle_mesh(p[0], p[1], p[2]), 2, Method::LEAB);
    const double tol = 1e-12 * bounding_box_diagonal(levels[0]);
    for (const auto& m : levels) EXPECT_TRUE(find_hanging_nodes(m, tol).empty()) << "seed " << i;
  }
}

TEST(Property, RefinementIsDeterministic) {
  Rng rng(12);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_triangle(rng);
    const TriMeshd seed = single_triangle_mesh(p[0], p[1], p[2]);
    const auto a = refine_global(seed, 5, Method::LEAB);
    const auto b = refine_global(seed, 5, Method::LEAB);
    EXPECT_EQ(a.back(), b.back());
    EXPECT_EQ(a.back().triangles, b.back().triangles);
  }
}

}  // namespace
}  // namespace leab
