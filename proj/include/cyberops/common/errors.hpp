#pragma once

#include <stdexcept>
#include <string>

namespace cyberops {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent configuration content (scenario files, experiment
// configs, hyperparameters, artifact headers).
struct ConfigError : Error {
  using Error::Error;
};

// Filesystem problems: missing files, unreadable or unwritable paths.
struct IoError : Error {
  using Error::Error;
};

// A persisted policy does not fit the context it is loaded into.
struct ArtifactError : Error {
  using Error::Error;
};

}  // namespace cyberops
