#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pairgen/spectra.hpp"
#include "pairgen_app/config.hpp"

namespace pairgen::app {

struct RunOptions {
  std::optional<unsigned> threads;  // overrides the config
  bool no_surface = false;
  bool check_convergence = true;
};

/// Relative changes between the run grid and its refinement (2n − 1 nodes
/// per axis). The spectrum change is taken on the shared signal nodes and
/// normalized by the curve maximum.
struct ConvergenceMetrics {
  std::size_t refined_signal_nodes = 0;
  std::size_t refined_idler_nodes = 0;
  double pair_rate_change = 0.0;
  double spectrum_change = 0.0;
};

/// Observables at one pump wavelength.
struct PointResult {
  double pump_wavelength_nm = 0.0;
  std::optional<double> poling_period;  // m, poled crystals only
  SpectralDensityMap volume;
  SpectralDensityMap surface;
  SpectralDensityMap total;
  SpectrumCurve s_volume;
  SpectrumCurve s_surface;
  SpectrumCurve s_total;
  double n_volume = 0.0;
  double n_total = 0.0;
  double relative_surface = 0.0;
  KernelDiagnostics diagnostics;
  std::optional<ConvergenceMetrics> convergence;
};

struct RunResult {
  std::vector<PointResult> points;  // one per sweep point, or a single one
  unsigned threads = 1;
  bool surface = true;
};

/// Kernels of the configured structure at one pump wavelength on `grid`.
KernelPair compute_kernels(const ScenarioConfig& cfg, const PumpSpectrum& pump,
                           const FrequencyGrid& grid, std::optional<double> poling_period,
                           unsigned threads, bool surface);

PumpSpectrum make_pump(const ScenarioConfig& cfg, double wavelength_nm);

/// Grid for one pump wavelength: explicit ranges from the config, otherwise
/// the automatic support window of the crystal.
FrequencyGrid make_grid(const ScenarioConfig& cfg, double wavelength_nm,
                        std::optional<double> poling_period);

PointResult evaluate_point(const ScenarioConfig& cfg, double wavelength_nm,
                           const RunOptions& options);

/// Single point or full pump sweep, as configured.
RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& options);

/// Shortest round-trip decimal form; "nan"/"inf" for non-finite values.
std::string format_number(double x);

std::string spectrum_csv(const PointResult& point);
std::string density_map_csv(const PointResult& point);
std::string summary_csv(const RunResult& result);

/// Writes spectrum/density/summary CSVs and, last, manifest.json (via a
/// temporary file and rename). Returns the files written.
std::vector<std::filesystem::path> write_outputs(const ScenarioConfig& cfg,
                                                 const RunResult& result,
                                                 const std::filesystem::path& dir,
                                                 double wall_seconds);

}  // namespace pairgen::app
