#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace svkit {

/// Base class for all svkit failures.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Caller handed in an argument outside a function's documented domain.
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// A sample is too small or has zero spread where spread is required.
class DegenerateSample : public Error {
public:
  using Error::Error;
};

/// The moment-matched envelope proposal could not be formed (non-finite or
/// out-of-range lambda/phi); callers fall back to a random-walk step.
class DegenerateProposal : public Error {
public:
  using Error::Error;
};

/// A closed-form conditional posterior has a non-positive variance or scale.
class DegeneratePosterior : public Error {
public:
  using Error::Error;
};

/// Pilot chain output unusable for residual extraction.
class InvalidPilot : public Error {
public:
  using Error::Error;
};

/// The envelope sampler exceeded its rejection budget; aborts the chain.
class StuckSampler : public Error {
public:
  using Error::Error;
};

/// Bad command line flags or config file contents.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// File reading/writing failure, with the offending line where known.
class IoError : public Error {
public:
  explicit IoError(const std::string& what, std::size_t line = 0)
      : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_ = 0;
};

}  // namespace svkit
