#pragma once

#include <stdexcept>

namespace fjvote {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input / configuration problems (CLI exit code 2).
struct NotRowStochastic : Error { using Error::Error; };
struct NegativeWeight : Error { using Error::Error; };
struct TooSmall : Error { using Error::Error; };
struct PolicyError : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// Simulation failures (CLI exit code 3).
struct DimensionMismatch : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// Filesystem failures (CLI exit code 4).
struct IoError : Error { using Error::Error; };

}  // namespace fjvote
