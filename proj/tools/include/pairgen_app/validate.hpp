#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pairgen/oracle.hpp"

namespace pairgen::app {

struct ValidateOptions {
  std::uint64_t seed = oracle::kDefaultSeed;
  std::optional<double> tolerance;  // replaces every suite tolerance
  std::filesystem::path media_file; // empty: library default
};

struct SuiteResult {
  std::string name;
  std::vector<OracleReport> reports;

  std::size_t failures() const;
};

/// Every registered oracle suite with its default case count.
std::vector<SuiteResult> run_validation(const ValidateOptions& options);

/// Full table, one row per case, followed by per-suite totals.
std::string validation_report_text(const std::vector<SuiteResult>& suites, std::uint64_t seed);
std::string validation_report_csv(const std::vector<SuiteResult>& suites);

}  // namespace pairgen::app
