#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "pairgen/grid.hpp"
#include "pairgen/structures.hpp"

namespace pairgen::app {

inline constexpr int kSchemaVersion = 1;

enum class StructureKind { Bulk, Poled, Layered };

struct PumpSettings {
  PumpSpectrum::Kind kind = PumpSpectrum::Kind::Cw;
  double wavelength_nm = 0.0;
  double bandwidth_nm = 0.0;  // rms width in wavelength, pulsed only
  double amplitude = 1.0;
  double backward_amplitude = 0.0;  // layered stacks only
};

struct GridSettings {
  GridMode mode = GridMode::CwLine;
  std::optional<std::pair<double, double>> signal_range_nm;
  std::optional<std::pair<double, double>> idler_range_nm;
  std::size_t signal_nodes = 0;
  std::size_t idler_nodes = 0;
  int support_lobes = 3;
};

struct SweepSettings {
  double from_nm = 0.0;
  double to_nm = 0.0;
  std::size_t points = 0;
};

/// Validated scenario. Media are resolved into the structure specs.
struct ScenarioConfig {
  std::string name;
  std::filesystem::path source;        // config file, empty for in-memory text
  std::filesystem::path media_file;
  std::string media_version;
  nlohmann::json document;             // parsed input, echoed into the manifest

  StructureKind kind = StructureKind::Bulk;
  BulkCrystalSpec bulk;
  PoledCrystalSpec poled;               // poling_period is 0 when optimum_period
  bool optimum_period = false;
  PoledMethod poled_method = PoledMethod::GeometricSum;
  LayeredStackSpec stack;

  PumpSettings pump;
  GridSettings grid;
  bool surface = true;
  std::uint8_t channel_mask = kAllChannels;
  std::optional<SweepSettings> sweep;
  std::string output_dir;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Reads and validates a config file. Throws ConfigError carrying every
/// violation found (missing file, schema violations, unknown keys,
/// wavelengths outside media windows).
ScenarioConfig parse_config(const std::filesystem::path& path);

/// Same on in-memory text; relative media_file entries resolve against
/// base_dir.
ScenarioConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir,
                                 const std::string& origin = "<memory>");

/// Replaces the pump sweep (sweep-pump command). Throws ConfigError when
/// the scenario cannot be swept or the new range leaves a medium window.
void apply_sweep_override(ScenarioConfig& cfg, const SweepSettings& sweep);

const char* to_string(StructureKind kind) noexcept;

}  // namespace pairgen::app
