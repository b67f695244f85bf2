#pragma once

#include <stdexcept>
#include <string>

namespace fclust {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument: self-query, out-of-range vertex, malformed input.
struct DomainError : Error {
  using Error::Error;
};

/// An instance specification that cannot be realized (e.g. the balance
/// floor rounds above the average cluster size).
struct InfeasibleSpecError : Error {
  using Error::Error;
};

/// A sampling-based routine was given fewer vertices than its required
/// sample size (strict mode only; pipelines clamp instead).
struct InsufficientVerticesError : Error {
  using Error::Error;
};

/// The degree filter left fewer vertices than clusters requested.
struct DegenerateFilterError : Error {
  using Error::Error;
};

/// Eigendecomposition of the centered adjacency did not converge.
struct DecompositionError : Error {
  using Error::Error;
};

/// Bad experiment configuration; maps to CLI exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace fclust
