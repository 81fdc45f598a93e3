#pragma once

#include <stdexcept>
#include <string>

namespace flylsh {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/hash dimensions.
struct DimensionError : Error {
  using Error::Error;
};

/// Invalid parameter value (m, k, alpha, counts, ...).
struct ParameterError : Error {
  using Error::Error;
};

/// Malformed input file or byte stream.
struct FormatError : Error {
  using Error::Error;
};

/// A hash does not satisfy the structural invariant of its scheme.
struct StructuralError : Error {
  using Error::Error;
};

/// Invalid experiment/CLI configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace flylsh
