#include "pairgen/errors.hpp"

#include <utility>

namespace pairgen {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::string message = "invalid configuration";
  for (const auto& v : violations) {
    message += "\n  - ";
    message += v;
  }
  return message;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

}  // namespace pairgen
