// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "leab/analysis.hpp"

#include <boost/multiprecision/float128.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace leab;
using Rng = std::mt19937_64;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Seed {
  std::string name;
  TriMeshq mesh;
};

std::vector<Seed> seeds() {
  using boost::multiprecision::cos;
  using boost::multiprecision::sin;
  using boost::multiprecision::sqrt;
  const Quad a = to_radians(Quad(5));
  std::vector<Seed> out;
  out.push_back({"equilateral", single_triangle_mesh<Quad>({0, 0}, {1, 0}, {Quad(1) / 2, sqrt(Quad(3)) / 2})});
  out.push_back({"3-4-5", single_triangle_mesh<Quad>({0, 0}, {4, 0}, {4, 3})});
  out.push_back({"right 5deg", single_triangle_mesh<Quad>({0, 0}, {1, 0}, {cos(a) * cos(a), cos(a) * sin(a)})});
  out.push_back({"scalene", single_triangle_mesh<Quad>({Quad(0.13), Quad(-0.41)}, {Quad(1.7), Quad(0.22)},
                                                        {Quad(0.61), Quad(1.38)})});
  return out;
}

constexpr int kLevels = 12;

const std::vector<std::vector<TriMeshq>>& refinements() {
  static const std::vector<std::vector<TriMeshq>> all = [] {
    std::vector<std::vector<TriMeshq>> r;
    for (const auto& s : seeds()) r.push_back(refine_global(s.mesh, kLevels, Method::LEAB));
    return r;
  }();
  return all;
}

double rel(const Quad& a, const Quad& b) { return static_cast<double>(abs(a - b) / abs(b)); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

// Second intersection of the ray o + t (z - o) with |w - 1/2| = 1/2, from the quadratic in t.
Complex ray_circle(Complex o, Complex z) {
  const Complex d = z - o;
  const Complex oc = o - 0.5;
  const double a = std::norm(d);
  const double b = 2.0 * (oc * std::conj(d)).real();
  const double c = std::norm(oc) - 0.25;
  const double disc = std::sqrt(b * b - 4 * a * c);
  const double t1 = (-b - disc) / (2 * a);
  const double t2 = (-b + disc) / (2 * a);
  return o + (std::abs(t1) > std::abs(t2) ? t1 : t2) * d;
}

Outcome children_of_sample() {
  const ShapePoint z(0.25, 0.125);
  const ShapePoint l = w_left(z);
  const ShapePoint r = w_right(z);
  const double err = std::max({std::abs(l.re() - 0.2), std::abs(l.im() - 0.4), std::abs(r.re() - 0.027027),
                               std::abs(r.im() - 0.162162)});
  return {err <= 1e-5, "W_L = " + fmt("%.6f", l.re()) + "+" + fmt("%.6f", l.im()) + "i, W_R = " +
                           fmt("%.6f", r.re()) + "+" + fmt("%.6f", r.im()) + "i, max err " + fmt("%.1e", err)};
}

Outcome one_step_collapse() {
  Rng rng(20260101);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const ShapePoint z = sample_sigma(rng);
    worst = std::max({worst, gamma_residual(w_left(z).value()), gamma_residual(w_right(z).value())});
  }
  return {worst <= 1e-10, "10000 samples, max residual " + fmt("%.2e", worst)};
}

Outcome fixed_points() {
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double theta = std::numbers::pi * (0.5 + 0.5 * (i + 0.5) / 1000.0);
    const ShapePoint z = gamma_point(theta);
    worst = std::max({worst, distance(w_left(z), z), distance(w_right(z), z)});
  }
  return {worst <= 1e-10, "1000 points, max |W(z) - z| " + fmt("%.2e", worst)};
}

Outcome oracle_equivalence() {
  Rng rng(20260102);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const ShapePoint z = sample_sigma(rng);
    worst = std::max({worst, distance(w_left(z), canonical_symmetry(ray_circle(0.0, z.value()))),
                      distance(w_right(z), canonical_symmetry(ray_circle(1.0, z.value())))});
  }
  return {worst <= 1e-9, "10000 samples, max deviation " + fmt("%.2e", worst)};
}

Outcome commutation() {
  Rng rng(20260103);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0;
  int n = 0;
  while (n < 1000) {
    const Point2d a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
    if (is_degenerate<double>({a, b, c})) continue;
    const auto r = commutation_check(a, b, c);
    worst = std::max({worst, r.left, r.right});
    ++n;
  }
  return {worst <= 1e-9, "1000 triangles, max residual " + fmt("%.2e", worst)};
}

Outcome diameter_bounds() {
  const auto names = seeds();
  bool pass = true;
  std::string detail;
  for (std::size_t s = 0; s < names.size(); ++s) {
    const auto report = verify_bounds(refinements()[s]);
    pass = pass && report.pass && report.angle_halving_pass;
    detail += names[s].name + (report.pass ? " ok" : " FAIL");
    if (report.first_violation) {
      detail += " (level " + std::to_string(report.first_violation->k) + ", triangle " +
                std::to_string(report.first_violation->triangle) + ")";
    }
    if (s == 0) {
      double worst = 0;
      for (const auto& lb : report.levels) {
        worst = std::max({worst, rel(lb.observed_min, lb.lower), rel(lb.observed_max, lb.upper)});
      }
      pass = pass && worst <= 1e-12;
      detail += " [attained to " + fmt("%.1e", worst) + "]";
    }
    detail += s + 1 < names.size() ? ", " : "";
  }
  return {pass, std::to_string(kLevels) + " levels: " + detail};
}

Outcome regularization() {
  const TriMeshq& t1 = refinements()[0][1];
  double worst = 0;
  for (TriangleId t = 0; t < t1.triangles.size(); ++t) {
    worst = std::max(worst, static_cast<double>(abs(triangle_metrics(t1, t).diameter - 1)));
  }
  const auto s = level_stats(t1);
  const double angle_err = static_cast<double>(abs(s.min_angle - 30));
  const bool pass = t1.triangles.size() == 2 && worst <= 1e-12 && angle_err <= 1e-12;
  return {pass, "n = " + std::to_string(t1.triangles.size()) + ", max |diam - 1| " + fmt("%.1e", worst) +
                    ", min angle " + fmt("%.12f", static_cast<double>(s.min_angle))};
}

Outcome right_triangle_persistence() {
  const auto names = seeds();
  bool pass = true;
  std::string detail;
  for (std::size_t s = 0; s < names.size(); ++s) {
    const auto& levels = refinements()[s];
    const int classes = similarity_class_count(levels[1]);
    bool ok = true;
    for (int k = 1; k <= kLevels; ++k) {
      ok = ok && right_triangle_check(levels[k], 1e-9) && similarity_class_count(levels[k]) == classes;
    }
    pass = pass && ok;
    detail += names[s].name + ": " + std::to_string(classes) + (classes == 1 ? " class" : " classes") +
              (ok ? "" : " FAIL") + (s + 1 < names.size() ? ", " : "");
  }
  return {pass, detail};
}

Outcome heterogeneity() {
  const auto& levels = refinements()[2];
  const auto ratios = heterogeneity_ratio(levels);
  const Quad alpha1 = level_stats(levels[1]).min_angle;
  const Quad cot = 1 / boost::multiprecision::tan(to_radians(alpha1));
  double worst = 0;
  double lo = 0, hi = 0;
  for (int k = 1; k <= kLevels; ++k) {
    const Quad predicted = boost::multiprecision::pow(cot, k - 1);
    worst = std::max(worst, rel(ratios[k], predicted));
    const double q = static_cast<double>(ratios[k] / predicted);
    lo = k == 1 ? q : std::min(lo, q);
    hi = k == 1 ? q : std::max(hi, q);
  }
  std::ostringstream d;
  d << "alpha1 = " << fmt("%.6f", static_cast<double>(alpha1)) << " deg, k = 5: ratio "
    << fmt("%.6g", static_cast<double>(ratios[5])) << " vs cot^4 "
    << fmt("%.6g", static_cast<double>(boost::multiprecision::pow(cot, 4))) << "; observed/predicted in ["
    << fmt("%.10g", lo) << ", " << fmt("%.10g", hi) << "] for k = 1.." << kLevels << " (cot alpha1 = "
    << fmt("%.10g", static_cast<double>(cot)) << "), max rel err " << fmt("%.3g", worst);
  return {worst <= 1e-9, d.str()};
}

Outcome non_conformity() {
  const TriMeshq two = mesh_cast<Quad>(make_mesh<double>({{0, 0}, {1, 0}, {0.2, 0.8}, {0.5, -0.3}},
                                                         {{0, 1, 2}, {0, 1, 3}}));
  const auto l1 = refine_once(two, Method::LEAB);
  const auto hanging = find_hanging_nodes(l1, Quad(1e-12));
  bool pass = hanging.size() == 1;
  std::string detail = std::to_string(hanging.size()) + " hanging node(s) in the pair";
  if (hanging.size() == 1) {
    const Point2q& v = l1.vertices[hanging[0].vertex];
    const double off = static_cast<double>((v - Point2q(Quad(0.5), Quad(0))).norm());
    pass = pass && off <= 1e-12;
    detail += " at (" + fmt("%g", static_cast<double>(v.x())) + ", " + fmt("%g", static_cast<double>(v.y())) + ")";
  }
  std::size_t single = 0;
  for (const auto& s : seeds()) {
    const auto levels = refine_global(s.mesh, 2, Method::LEAB);
    for (const auto& m : levels) single += find_hanging_nodes(m, Quad(1e-12) * bounding_box_diagonal(m)).size();
  }
  pass = pass && single == 0;
  return {pass, detail + "; " + std::to_string(single) + " in single-triangle seeds through level 2"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"children of 0.25+0.125i", children_of_sample},
      {"one-step collapse onto the geodesic", one_step_collapse},
      {"geodesic points are fixed", fixed_points},
      {"formula maps match ray-circle intersection", oracle_equivalence},
      {"geometry/shape commutation", commutation},
      {"two-sided diameter bounds", diameter_bounds},
      {"regularization step", regularization},
      {"right-triangle persistence", right_triangle_persistence},
      {"heterogeneity growth", heterogeneity},
      {"non-conformity", non_conformity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s (%.0f ms)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), ms);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
