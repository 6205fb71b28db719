#pragma once

// Normalized triangle shape space: a similarity class of triangles is the
// point z of the upper half-plane obtained by placing the longest edge on
// [0, 1] with the shortest edge attached to 0. Right triangles form the arc
// |z - 1/2| = 1/2 (the geodesic Gamma).

#include <complex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace leab {

using Complex = std::complex<double>;

namespace tolerance {
inline constexpr double kMembership = 1e-12;
inline constexpr double kMapEquivalence = 1e-9;
inline constexpr double kDegenerateIm = 1e-14;
}  // namespace tolerance

/// A point of the shape space. Construction is unchecked; use
/// make_shape_point() to validate against the region constraints.
class ShapePoint {
 public:
  ShapePoint() = default;
  explicit ShapePoint(Complex z) : z_(z) {}
  ShapePoint(double re, double im) : z_(re, im) {}

  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }
  Complex value() const { return z_; }

  friend bool operator==(const ShapePoint&, const ShapePoint&) = default;

 private:
  Complex z_{0.5, 0.5};
};

inline double distance(const ShapePoint& a, const ShapePoint& b) {
  return std::abs(a.value() - b.value());
}

enum class Letter : char { L = 'L', R = 'R' };

/// Finite word over {L, R}.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  /// Throws ParseError on any character other than 'L' or 'R'.
  static Word parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::string str() const;

 private:
  std::vector<Letter> letters_;
};

struct OrbitStep {
  Letter letter;
  ShapePoint point;
  /// Value of the piecewise formula before canonical_symmetry.
  Complex raw;
};

struct OrbitTrace {
  ShapePoint start;
  std::vector<OrbitStep> steps;
  /// ||z - 1/2| - 1/2| for each step's point.
  std::vector<double> residuals;
};

/// Conjugates into the upper half-plane, then reflects across Re = 1/2 when
/// needed. Both moves preserve the circle |w - 1/2| = 1/2.
/// Throws DegenerateShapeError for real (or non-finite) input.
ShapePoint canonical_symmetry(Complex w);

/// Names the first violated constraint of the region, if any.
std::optional<std::string> sigma_violation(Complex z, double tol = tolerance::kMembership);

bool is_in_sigma(Complex z, double tol = tolerance::kMembership);

/// Throws DomainError naming the violated constraint.
ShapePoint make_shape_point(Complex z, double tol = tolerance::kMembership);

/// ||z - 1/2| - 1/2|.
double gamma_residual(Complex z);

bool is_on_gamma(Complex z, double tol = tolerance::kMembership);

/// Piecewise formulas prior to normalization. The first branch is taken on
/// the branch boundary.
Complex w_left_raw(const ShapePoint& z);
Complex w_right_raw(const ShapePoint& z);

/// Normalized shape of the left (right) LEAB child of z.
ShapePoint w_left(const ShapePoint& z);
ShapePoint w_right(const ShapePoint& z);

ShapePoint apply(Letter letter, const ShapePoint& z);

enum class RayOrigin { Zero, One };

/// Intersection of the ray from the origin through z with the circle
/// |w - 1/2| = 1/2, found by solving the quadratic in the ray parameter and
/// keeping the root other than t = 0. Independent of the closed-form maps.
/// Throws DegenerateShapeError when Im(z) < 1e-14.
ShapePoint ray_gamma_intersection(RayOrigin origin, const ShapePoint& z);

/// Upper half-plane hyperbolic distance. Throws DomainError when either
/// argument has a nonpositive imaginary part.
double poincare_distance(Complex z, Complex w);

OrbitTrace orbit(const ShapePoint& z, const Word& word);

/// Point of Gamma at polar angle theta (radians) about 1/2; theta in
/// (pi/2, pi) lies inside the region.
ShapePoint gamma_point(double theta);

/// Uniform sample of the region by rejection from (0, 1/2] x (0, 1].
template <typename URBG>
ShapePoint sample_sigma(URBG& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const double re = 0.5 - 0.5 * unit(rng);
    const double im = 1.0 - unit(rng);
    if (std::abs(Complex(re, im) - 1.0) <= 1.0) return ShapePoint(re, im);
  }
}

}  // namespace leab
