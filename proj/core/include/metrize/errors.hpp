#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metrize {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte offset of the offending
/// token in the source string.
struct SyntaxError : Error {
  std::size_t offset;
  SyntaxError(const std::string& what, std::size_t off)
      : Error(what + " (offset " + std::to_string(off) + ")"), offset(off) {}
};

/// An identifier that is neither a declared variable, a function name nor
/// a reserved constant.
struct UnknownIdentifier : Error {
  std::string name;
  std::size_t offset;
  UnknownIdentifier(std::string id, std::size_t off)
      : Error("unknown identifier '" + id + "' (offset " + std::to_string(off) + ")"),
        name(std::move(id)),
        offset(off) {}
};

/// Evaluation outside the domain of a function (log of a non-positive
/// number, pole of tan/cot, ...) or outside a chart domain.
struct DomainError : Error {
  std::string fn;
  double arg;
  DomainError(std::string fn_name, double argument)
      : Error("domain error: " + fn_name + " at argument " + std::to_string(argument)),
        fn(std::move(fn_name)),
        arg(argument) {}
  explicit DomainError(const std::string& what) : Error(what), arg(0) {}
};

/// |det g| below the degeneracy threshold at an evaluation point.
struct SingularMetric : Error {
  using Error::Error;
};

/// Jacobian of a diffeomorphism is singular at the evaluation point.
struct NonInvertible : Error {
  using Error::Error;
};

/// A profile function vanishes (or a metric block degenerates) at a grid point.
struct DegenerateProfile : Error {
  using Error::Error;
};

/// Adaptive quadrature exceeded the recursion-depth limit.
struct QuadratureFailure : Error {
  using Error::Error;
};

/// Violated precondition (zero constant, bad dimension, ...).
struct InvalidArgument : Error {
  using Error::Error;
};

/// Bad CLI configuration file or schema violation.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace metrize
