#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace voxdet {

using std::int64_t;

/// Invalid configuration (bad shapes, thresholds, member counts, ...).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Tensor/volume shape disagreement at an operation boundary.
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file (CSV, JSON sidecar, checkpoint).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem-level failure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A required upstream artifact (checkpoint, prediction file) is absent.
struct MissingPrerequisite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Training diverged (non-finite loss) or another unrecoverable runtime fault.
struct RuntimeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void check_config(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

inline void check_shape(bool ok, const std::string& msg) {
  if (!ok) throw ShapeError(msg);
}

}  // namespace voxdet
