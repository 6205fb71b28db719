#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>
#include <Eigen/Core>

#include <cmath>

namespace leab {

/// IEEE binary128. Deep refinements of thin seeds produce elements ~1e-13 of
/// the domain size, which double coordinates cannot resolve to 1e-9 relative.
using Quad = boost::multiprecision::float128;

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

using Point2d = Point2<double>;
using Point2q = Point2<Quad>;

template <typename Scalar>
inline Scalar pi() {
  using std::acos;
  return acos(Scalar(-1));
}

template <typename Scalar>
inline Scalar to_degrees(const Scalar& radians) {
  return radians * Scalar(180) / pi<Scalar>();
}

template <typename Scalar>
inline Scalar to_radians(const Scalar& degrees) {
  return degrees * pi<Scalar>() / Scalar(180);
}

/// z-component of the 3D cross product of two planar vectors.
template <typename DerivedA, typename DerivedB>
inline typename DerivedA::Scalar cross2(const Eigen::MatrixBase<DerivedA>& a,
                                        const Eigen::MatrixBase<DerivedB>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

template <typename To, typename From>
inline Point2<To> point_cast(const Point2<From>& p) {
  return Point2<To>(static_cast<To>(p.x()), static_cast<To>(p.y()));
}

}  // namespace leab
