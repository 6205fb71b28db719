#include "leab/svg.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace leab::svg {

namespace {

constexpr double kWorldMin = -0.05;
constexpr double kWorldMax = 1.05;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Frame {
  double scale;
  double x0;
  double y0;

  double x(double wx) const { return (wx - x0) * scale; }
  double y(double wy) const { return kCanvas - (wy - y0) * scale; }
};

std::string header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"700\" height=\"700\" "
         "viewBox=\"0 0 700 700\">\n"
         "<rect width=\"700\" height=\"700\" fill=\"white\"/>\n";
}

// Arc of the circle (cx, cy, r) from angle t0 to t1 in degrees.
std::string arc_points(const Frame& f, double cx, double cy, double r, double t0, double t1) {
  constexpr int kSamples = 100;
  std::string pts;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = (t0 + (t1 - t0) * i / kSamples) * std::numbers::pi / 180.0;
    if (i > 0) pts += ' ';
    pts += fmt(f.x(cx + r * std::cos(t))) + "," + fmt(f.y(cy + r * std::sin(t)));
  }
  return pts;
}

std::string line(const Frame& f, double ax, double ay, double bx, double by, const std::string& attrs) {
  return "<line x1=\"" + fmt(f.x(ax)) + "\" y1=\"" + fmt(f.y(ay)) + "\" x2=\"" + fmt(f.x(bx)) +
         "\" y2=\"" + fmt(f.y(by)) + "\" " + attrs + "/>\n";
}

}  // namespace

std::string shape_space(std::span<const LabeledPoint> points) {
  const Frame f{kCanvas / (kWorldMax - kWorldMin), kWorldMin, kWorldMin};
  const double apex = std::sqrt(3.0) / 2.0;
  std::string out = header();

  out += "<g class=\"sigma\" stroke=\"black\" stroke-width=\"2\" fill=\"none\">\n";
  out += line(f, 0.0, 0.0, 0.5, 0.0, "");
  out += line(f, 0.5, 0.0, 0.5, apex, "");
  out += "<polyline points=\"" + arc_points(f, 1.0, 0.0, 1.0, 120.0, 180.0) + "\"/>\n";
  out += "</g>\n";

  out += "<g class=\"branches\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"6,4\">\n";
  out += line(f, 0.0, 0.0, 0.5, 0.5, "");
  const double s = 1.0 - std::sqrt(0.5);  // 1 - Re = Im meets |z - 1| = 1
  out += line(f, s, 1.0 - s, 0.5, 0.5, "");
  out += "</g>\n";

  out += "<g class=\"gamma\" stroke=\"blue\" stroke-width=\"3\" fill=\"none\">\n";
  out += "<polyline points=\"" + arc_points(f, 0.5, 0.0, 0.5, 90.0, 180.0) + "\"/>\n";
  out += "<polyline stroke-dasharray=\"2,4\" points=\"" + arc_points(f, 0.5, 0.0, 0.5, 0.0, 90.0) +
         "\"/>\n";
  out += "</g>\n";

  out += "<g class=\"points\" fill=\"red\" font-family=\"sans-serif\" font-size=\"14\">\n";
  for (const auto& p : points) {
    const double px = f.x(p.z.real());
    const double py = f.y(p.z.imag());
    out += "<circle class=\"point\" cx=\"" + fmt(px) + "\" cy=\"" + fmt(py) + "\" r=\"5\"/>\n";
    if (!p.label.empty()) {
      out += "<text x=\"" + fmt(px + 8) + "\" y=\"" + fmt(py - 8) + "\">" + escape(p.label) +
             "</text>\n";
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string mesh(const TriMeshd& m) {
  std::string out = header();
  if (m.vertices.empty()) return out + "</svg>\n";
  Point2d lo = m.vertices.front(), hi = lo;
  for (const auto& p : m.vertices) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double extent = std::max(hi.x() - lo.x(), hi.y() - lo.y());
  const double margin = 0.05 * extent;
  const Frame f{kCanvas / (extent + 2.0 * margin), lo.x() - margin, lo.y() - margin};

  out += "<g class=\"mesh\" stroke=\"black\" stroke-width=\"1\" fill=\"none\" "
         "stroke-linejoin=\"round\">\n";
  for (const auto& t : m.triangles) {
    out += "<polygon class=\"triangle\" points=\"";
    for (int i = 0; i < 3; ++i) {
      const auto& p = m.vertices[t.v[i]];
      if (i > 0) out += ' ';
      out += fmt(f.x(p.x())) + "," + fmt(f.y(p.y()));
    }
    out += "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace leab::svg
