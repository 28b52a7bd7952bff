#pragma once

#include <stdexcept>
#include <string>

namespace excomp {

// Error taxonomy. The CLI maps these onto its exit codes: configuration
// problems (1), truncated-basis failures (2), forbidden spectral zones (3),
// and failed property verification (4).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed argument, dimension mismatch, non-physical state payload, ...
struct ValidationError : Error {
  using Error::Error;
};

// Problems with a config file or a command-line override.
struct ConfigError : Error {
  using Error::Error;
};

// The truncated number basis cannot represent the requested object to the
// advertised accuracy. `captured` carries the population (or trace) that the
// basis did capture, when known.
struct TruncationError : Error {
  double captured;
  explicit TruncationError(const std::string& msg, double captured_population = 0.0)
      : Error(msg), captured(captured_population) {}
};

// Propagation requested inside a spectral zone where the lossless squared
// index is non-positive and no travelling wave exists.
struct ForbiddenZoneError : Error {
  using Error::Error;
};

// Undamped response evaluated exactly on a resonance pole.
struct PoleError : Error {
  using Error::Error;
};

// A result would be entirely below the floating-point floor or is too
// ill-conditioned to trust.
struct AccuracyError : Error {
  using Error::Error;
};

}  // namespace excomp
