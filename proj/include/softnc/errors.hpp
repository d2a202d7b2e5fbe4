#pragma once

#include <stdexcept>

namespace softnc {

// Bad user-supplied configuration (config file, CLI flags). Maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A broken internal invariant. Maps to exit code 3.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace softnc
