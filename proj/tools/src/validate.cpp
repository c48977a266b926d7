#include "pairgen_app/validate.hpp"

#include <cstdio>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/media.hpp"
#include "pairgen_app/scenario.hpp"

namespace pairgen::app {
namespace {

constexpr std::size_t kVolumeCases = 1000;
constexpr std::size_t kBoundaryCases = 1000;
constexpr std::size_t kPoledCases = 64;
constexpr std::size_t kPoledMaxDomains = 10000;

const OpticalMedium& poled_medium(const MediaCatalog& catalog) {
  if (catalog.contains("LiNbO3_e")) return catalog.at("LiNbO3_e");
  for (const auto& name : catalog.names()) {
    const auto& m = catalog.at(name);
    if (!m.is_linear() && std::holds_alternative<SellmeierIndex>(m.index_model)) return m;
  }
  throw ConfigError({"media fixture has no dispersive nonlinear medium for the poled suite"});
}

// Two equal domains with no phase mismatch cancel exactly in both methods.
// The middle node of this grid is exactly degenerate, so Δk is exactly 0.
OracleReport poled_cancellation(double tolerance) {
  PoledCrystalSpec spec;
  spec.medium.name = "flat";
  spec.medium.index_model = ConstantIndex{2.0};
  spec.medium.d_eff = 1e-11;
  spec.poling_period = 10e-6;
  spec.total_length = 10e-6;
  const double wp = angular_frequency(532e-9);
  const auto grid = FrequencyGrid::cw_line(wp, 0.25 * wp, 0.75 * wp, 17);
  const PumpSpectrum pump = PumpSpectrum::cw(wp);
  const KernelPair k = structures::poled_kernel(spec, pump, grid, PoledMethod::GeometricSum);
  constexpr std::size_t mid = 8;
  return make_report("poled-cancel", k.signal.volume[mid],
                     oracle::poled_direct_sum(spec, pump, grid.signal_omega(mid), grid.idler_omega(mid)),
                     tolerance);
}

}  // namespace

std::size_t SuiteResult::failures() const {
  std::size_t n = 0;
  for (const auto& r : reports) n += r.pass ? 0 : 1;
  return n;
}

std::vector<SuiteResult> run_validation(const ValidateOptions& options) {
  const MediaCatalog catalog = MediaCatalog::load(
      options.media_file.empty() ? MediaCatalog::default_path() : options.media_file);
  auto tol = [&](double fallback) { return options.tolerance.value_or(fallback); };

  std::vector<SuiteResult> out;
  out.push_back({"volume-quadrature", oracle::volume_suite(options.seed, kVolumeCases, tol(1e-10))});
  out.push_back({"boundary-solve", oracle::boundary_suite(options.seed, kBoundaryCases, tol(1e-12))});
  SuiteResult poled{"poled-direct-sum",
                    oracle::poled_suite(poled_medium(catalog), options.seed, kPoledCases,
                                        kPoledMaxDomains, tol(1e-10))};
  poled.reports.push_back(poled_cancellation(tol(1e-10)));
  out.push_back(std::move(poled));
  return out;
}

std::string validation_report_text(const std::vector<SuiteResult>& suites, std::uint64_t seed) {
  std::string out = "seed " + std::to_string(seed) + "\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-24s %-14s %-12s %-12s %s\n", "suite", "case", "rel_error",
                "tolerance", "result");
  out += line;
  for (const auto& s : suites) {
    for (const auto& r : s.reports) {
      std::snprintf(line, sizeof line, "%-24s %-14s %-12.4e %-12.4e %s\n", s.name.c_str(),
                    r.case_id.c_str(), r.rel_error, r.tolerance, r.pass ? "PASS" : "FAIL");
      out += line;
    }
  }
  for (const auto& s : suites) {
    std::snprintf(line, sizeof line, "%-24s %zu cases, %zu failed\n", s.name.c_str(),
                  s.reports.size(), s.failures());
    out += line;
  }
  return out;
}

std::string validation_report_csv(const std::vector<SuiteResult>& suites) {
  std::string out =
      "suite,case_id,analytic_re,analytic_im,oracle_re,oracle_im,rel_error,tolerance,pass\n";
  for (const auto& s : suites) {
    for (const auto& r : s.reports) {
      out += s.name + "," + r.case_id + "," + format_number(r.analytic.real()) + "," +
             format_number(r.analytic.imag()) + "," + format_number(r.oracle.real()) + "," +
             format_number(r.oracle.imag()) + "," + format_number(r.rel_error) + "," +
             format_number(r.tolerance) + "," + (r.pass ? "1" : "0") + "\n";
    }
  }
  return out;
}

}  // namespace pairgen::app
