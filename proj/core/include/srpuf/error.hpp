#pragma once

#include <stdexcept>
#include <string>

namespace srpuf {

/// Base for every error raised by the simulator.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or parameter set (CLI exit code 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File system failure (CLI exit code 2).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Dataset file that cannot be parsed back (CLI exit code 3).
class DatasetError : public Error {
 public:
  using Error::Error;
};

/// Physically meaningless model state, e.g. a non-positive gate delay.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Malformed challenge or mode violation.
class ChallengeError : public Error {
 public:
  using Error::Error;
};

}  // namespace srpuf
