#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pairgen {

/// A physical quantity was requested outside the domain where it is defined
/// (frequency outside a transparency window, evanescent propagation, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First-order (in the coupling constant) results are not trustworthy: a
/// surface factor made (1 + V) negative.
class PerturbativeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid scenario configuration. Carries every violation found, not just
/// the first one.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace pairgen
