#pragma once

#include <stdexcept>
#include <string>

namespace cellflow {

/** Invalid configuration or malformed input file. CLI exit code 1. */
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Numerical failure (divergence, non-finite state). CLI exit code 2. */
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Misuse of a stateful protocol, e.g. stepping a finished episode. */
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cellflow
