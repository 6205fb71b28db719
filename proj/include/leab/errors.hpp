#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace leab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A shape-space value that does not represent a nondegenerate triangle
/// (a real complex number).
class DegenerateShapeError : public Error {
 public:
  using Error::Error;
};

/// A value outside the domain of an operation, e.g. a point outside the
/// shape space or in the lower half-plane.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A collapsed or near-collinear triangle in a mesh.
class DegeneracyError : public Error {
 public:
  explicit DegeneracyError(const std::string& what,
                           std::optional<std::size_t> triangle = std::nullopt)
      : Error(what), triangle_(triangle) {}

  std::optional<std::size_t> triangle() const { return triangle_; }

 private:
  std::optional<std::size_t> triangle_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class InsufficientInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace leab
