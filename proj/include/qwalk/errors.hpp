#pragma once

#include <stdexcept>

namespace qwalk {

// Root of the library's exception hierarchy. Every error thrown by qwalk
// derives from this, so callers can catch qwalk::Error for blanket handling.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear-algebra preconditions.
struct NotUnitary : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct DimensionUnsupported : Error { using Error::Error; };

// Coin registry.
struct UnknownCoin : Error { using Error::Error; };
struct BadParam : Error { using Error::Error; };

// Walk engine.
struct OutOfBounds : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct BoundaryHit : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };

// Analysis.
struct InsufficientSamples : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct EmptyDistribution : Error { using Error::Error; };

// Experiment configuration.
struct ConfigError : Error { using Error::Error; };

}  // namespace qwalk
