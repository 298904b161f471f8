#pragma once

#include <stdexcept>
#include <string>

namespace cubesim {

/// Invalid user input: bad arguments, malformed configs, schema violations.
/// CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ArgumentError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Structurally invalid assembly (overlapping cells, disconnected lattice).
class StructuralError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Numerical failure: divergence, loss of rank, singular transform.
/// CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class SingularityError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

class ConditioningError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Mesh is not a closed orientable surface.
class TopologyError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

} // namespace cubesim
