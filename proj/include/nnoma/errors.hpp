#pragma once

#include <stdexcept>
#include <string>

namespace nnoma {

/// Missing, unknown or unparsable configuration entry.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter value violates a model invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature or recursion failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Work estimate exceeds the configured budget.
class ComplexityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent geometry inside an integrand (e.g. arccos argument out of range).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two mixture rates coincide, so a partial-fraction pole is not simple in the assumed sense.
class DegeneratePoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nnoma
