#include "leab/shape_space.hpp"

#include "leab/errors.hpp"

#include <cmath>
#include <limits>

namespace leab {

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'L': letters.push_back(Letter::L); break;
      case 'R': letters.push_back(Letter::R); break;
      default:
        throw ParseError("word: invalid letter '" + std::string(1, text[i]) + "' at position " +
                         std::to_string(i) + " (expected L or R)");
    }
  }
  return Word(std::move(letters));
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(static_cast<char>(l));
  return s;
}

ShapePoint canonical_symmetry(Complex w) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw DegenerateShapeError("canonical_symmetry: non-finite shape value");
  }
  if (w.imag() == 0.0) {
    throw DegenerateShapeError("canonical_symmetry: real value does not represent a triangle");
  }
  if (w.imag() < 0.0) w = std::conj(w);
  if (w.real() > 0.5) w = 1.0 - std::conj(w);
  return ShapePoint(w);
}

std::optional<std::string> sigma_violation(Complex z, double tol) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return "value is not finite";
  if (!(z.real() > 0.0)) return "Re(z) > 0";
  if (z.real() > 0.5 + tol) return "Re(z) <= 1/2";
  if (!(z.imag() > 0.0)) return "Im(z) > 0";
  if (std::abs(z - 1.0) > 1.0 + tol) return "|z - 1| <= 1";
  return std::nullopt;
}

bool is_in_sigma(Complex z, double tol) { return !sigma_violation(z, tol).has_value(); }

ShapePoint make_shape_point(Complex z, double tol) {
  if (auto violated = sigma_violation(z, tol)) {
    throw DomainError("shape point outside the shape space: violates " + *violated);
  }
  return ShapePoint(z);
}

double gamma_residual(Complex z) { return std::abs(std::abs(z - 0.5) - 0.5); }

bool is_on_gamma(Complex z, double tol) {
  return is_in_sigma(z, tol) && gamma_residual(z) <= tol;
}

Complex w_left_raw(const ShapePoint& p) {
  const Complex z = p.value();
  if (p.re() <= p.im()) return (z + std::conj(z)) / (2.0 * z);
  return (z - std::conj(z)) / (2.0 * z);
}

Complex w_right_raw(const ShapePoint& p) {
  const Complex z = p.value();
  if (1.0 - p.re() <= p.im()) return (z + std::conj(z) - 2.0) / (2.0 * (z - 1.0));
  return (z - std::conj(z)) / (2.0 * (z - 1.0));
}

ShapePoint w_left(const ShapePoint& z) { return canonical_symmetry(w_left_raw(z)); }

ShapePoint w_right(const ShapePoint& z) { return canonical_symmetry(w_right_raw(z)); }

ShapePoint apply(Letter letter, const ShapePoint& z) {
  return letter == Letter::L ? w_left(z) : w_right(z);
}

ShapePoint ray_gamma_intersection(RayOrigin origin, const ShapePoint& z) {
  if (!(z.im() >= tolerance::kDegenerateIm)) {
    throw DegenerateShapeError("ray_gamma_intersection: degenerate ray (Im(z) below 1e-14)");
  }
  const Complex o = origin == RayOrigin::Zero ? Complex(0.0) : Complex(1.0);
  const Complex d = z.value() - o;
  const Complex oc = o - 0.5;

  // |oc + t d|^2 = 1/4  <=>  a t^2 + b t + c = 0
  const double a = std::norm(d);
  const double b = 2.0 * (oc.real() * d.real() + oc.imag() * d.imag());
  const double c = std::norm(oc) - 0.25;
  const double disc = std::max(0.0, b * b - 4.0 * a * c);
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  const double t1 = q / a;
  const double t2 = q != 0.0 ? c / q : 0.0;
  const double t = std::abs(t1) >= std::abs(t2) ? t1 : t2;
  return canonical_symmetry(o + t * d);
}

double poincare_distance(Complex z, Complex w) {
  if (!(z.imag() > 0.0) || !(w.imag() > 0.0)) {
    throw DomainError("poincare_distance: arguments must lie in the upper half-plane");
  }
  // Same quantity as arccosh(1 + |z-w|^2 / (2 Im z Im w)) without the
  // cancellation near the diagonal.
  return 2.0 * std::asinh(std::abs(z - w) / (2.0 * std::sqrt(z.imag() * w.imag())));
}

OrbitTrace orbit(const ShapePoint& z, const Word& word) {
  OrbitTrace trace;
  trace.start = z;
  trace.steps.reserve(word.size());
  trace.residuals.reserve(word.size());
  ShapePoint current = z;
  for (Letter letter : word.letters()) {
    const Complex raw = letter == Letter::L ? w_left_raw(current) : w_right_raw(current);
    current = canonical_symmetry(raw);
    trace.steps.push_back({letter, current, raw});
    trace.residuals.push_back(gamma_residual(current.value()));
  }
  return trace;
}

ShapePoint gamma_point(double theta) {
  return ShapePoint(0.5 * (1.0 + std::cos(theta)), 0.5 * std::sin(theta));
}

}  // namespace leab
