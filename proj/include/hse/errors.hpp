#pragma once

#include <stdexcept>
#include <string>

namespace hse {

/// Input outside the mathematical domain of an operation (negative slip,
/// slip angle at +-90 deg, non-finite demand).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid configuration value or combination.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed-loop error dynamics have an eigenvalue with non-negative real part.
class UnstableGains : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Simulation state went non-finite or left the model's valid region.
class IntegrationFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solve produced no usable answer, fallback included.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hse
