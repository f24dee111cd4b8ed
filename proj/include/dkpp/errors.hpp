#pragma once

#include <stdexcept>
#include <string>

namespace dkpp {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input sizes disagree with the grid or time window.
struct DimensionError : Error {
  using Error::Error;
};

/// A parameter is outside its documented range.
struct ParameterError : Error {
  using Error::Error;
};

/// Non-finite values where finite data is required.
struct DataError : Error {
  using Error::Error;
};

/// Kernel fails the admissibility requirements (G and G'' absolutely
/// integrable in the classical sense, G nontrivial).
struct AdmissibilityError : Error {
  using Error::Error;
};

/// A declared bound (Lipschitz constant, growth bound) is violated by a
/// sampled witness.
struct AssumptionViolation : Error {
  using Error::Error;
};

/// The contraction certificate is inadmissible and no override was given.
struct InadmissibleError : Error {
  using Error::Error;
};

/// Malformed configuration (parse failure, unknown keys, bad values).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace dkpp
