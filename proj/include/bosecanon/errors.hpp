#pragma once

#include <stdexcept>
#include <string>

namespace bosecanon {

/// Argument outside the domain where a formula or model is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid configuration (bad flag, bad config key, inconsistent options).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its accuracy target. The message
/// carries the diagnostics needed to reproduce the failure.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bosecanon
