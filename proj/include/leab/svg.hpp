#pragma once

#include "leab/mesh.hpp"
#include "leab/shape_space.hpp"

#include <span>
#include <string>
#include <vector>

namespace leab::svg {

inline constexpr double kCanvas = 700.0;

struct LabeledPoint {
  Complex z;
  std::string label;
};

/// Shape-space figure. The world square [-0.05, 1.05]^2 maps onto a fixed
/// 700x700 viewBox with Im increasing upward. Draws the region boundary
/// (black), Gamma (blue; dotted beyond Re = 1/2), the branch lines
/// Re = Im and 1 - Re = Im (dashed), and the points (red, labeled).
std::string shape_space(std::span<const LabeledPoint> points);

/// Every triangle of the mesh as a black-stroked polygon, fitted to the
/// 700x700 canvas.
std::string mesh(const TriMeshd& mesh);

}  // namespace leab::svg
