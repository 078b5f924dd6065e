#pragma once

#include <stdexcept>
#include <string>

namespace netfuse {

/// Invalid solver/experiment configuration or inconsistent dimensions.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph or tree structure violates a required property (connectivity, acyclicity).
class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Local least-squares fit failed (singular Gram matrix).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Synthetic instance generation failed.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Round-based transport misuse (send after shutdown, duplicate broadcast).
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation diagnostic could not be computed (singular covariance, short trajectory).
class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tuning-parameter selection failed (no grid point converged).
class SelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace netfuse
