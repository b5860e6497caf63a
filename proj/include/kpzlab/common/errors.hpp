#pragma once

#include <stdexcept>
#include <string>

namespace kpzlab {

/// Invalid or unstable configuration, detected before any work is done.
/// The message names the offending parameter.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters outside the range where the sampled representation is proven.
class RegimeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace kpzlab
