#pragma once

#include <stdexcept>
#include <string>

namespace actsearch {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid instance or configuration. The CLI maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside the support or domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// KL divergence would be infinite: p puts mass where q has none.
class AbsoluteContinuityError : public Error {
 public:
  using Error::Error;
};

// A rate quantity is undefined because some divergence is zero.
class DegenerateInstanceError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace actsearch
