#include "pairgen_app/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/version.hpp"

namespace pairgen::app {
namespace {

using nlohmann::json;

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Largest change on the shared signal nodes (coarse i ↔ refined 2i), over
// the coarse curve's maximum.
double curve_change(const SpectrumCurve& coarse, const SpectrumCurve& fine) {
  const double scale = max_of(coarse.value);
  double worst = 0.0;
  for (std::size_t i = 0; i < coarse.value.size(); ++i) {
    worst = std::max(worst, std::abs(fine.value[2 * i] - coarse.value[i]));
  }
  return scale > 0.0 ? worst / scale : worst;
}

double rate_change(double coarse, double fine) {
  return coarse != 0.0 ? std::abs(fine - coarse) / std::abs(coarse) : std::abs(fine - coarse);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw DomainError("write failed for '" + path.string() + "'");
}

PointResult blank_point(double wavelength_nm, std::optional<double> period, const FrequencyGrid& grid) {
  const SpectralDensityMap empty{grid, DensityVariant::Volume, {}, {}};
  return {wavelength_nm, period, empty, empty, empty, {}, {}, {}, 0.0, 0.0, 0.0, {}, std::nullopt};
}

std::string two_digits(std::size_t i) {
  std::string s = std::to_string(i);
  return s.size() < 2 ? "0" + s : s;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

PumpSpectrum make_pump(const ScenarioConfig& cfg, double wavelength_nm) {
  const double lambda = wavelength_nm * 1e-9;
  const double wp = angular_frequency(lambda);
  PumpSpectrum pump;
  if (cfg.pump.kind == PumpSpectrum::Kind::Cw) {
    pump = PumpSpectrum::cw(wp, cfg.pump.amplitude);
  } else {
    // rms wavelength width mapped to rms angular-frequency width
    const double sigma = kTwoPi * PhysicalConstants::c * (cfg.pump.bandwidth_nm * 1e-9) / (lambda * lambda);
    pump = PumpSpectrum::pulsed(wp, sigma, cfg.pump.amplitude);
  }
  pump.backward_amplitude = cfg.pump.backward_amplitude;
  return pump;
}

FrequencyGrid make_grid(const ScenarioConfig& cfg, double wavelength_nm,
                        std::optional<double> poling_period) {
  const double wp = angular_frequency(wavelength_nm * 1e-9);
  const auto& g = cfg.grid;
  if (g.mode == GridMode::Full2D) {
    const auto [sl, sh] = *g.signal_range_nm;
    const auto [il, ih] = *g.idler_range_nm;
    return FrequencyGrid::full_2d(angular_frequency(sh * 1e-9), angular_frequency(sl * 1e-9),
                                  g.signal_nodes, angular_frequency(ih * 1e-9),
                                  angular_frequency(il * 1e-9), g.idler_nodes);
  }
  if (g.signal_range_nm) {
    const auto [sl, sh] = *g.signal_range_nm;
    return FrequencyGrid::cw_line(wp, angular_frequency(sh * 1e-9), angular_frequency(sl * 1e-9),
                                  g.signal_nodes);
  }
  const OpticalMedium& medium = cfg.kind == StructureKind::Poled ? cfg.poled.medium : cfg.bulk.medium;
  const double length = cfg.kind == StructureKind::Poled ? cfg.poled.total_length : cfg.bulk.length;
  const double grating = poling_period ? kTwoPi / *poling_period : 0.0;
  const auto [lo, hi] = structures::cw_support_window(medium, length, wp, grating, g.support_lobes);
  return FrequencyGrid::cw_line(wp, lo, hi, g.signal_nodes);
}

KernelPair compute_kernels(const ScenarioConfig& cfg, const PumpSpectrum& pump,
                           const FrequencyGrid& grid, std::optional<double> poling_period,
                           unsigned threads, bool surface) {
  KernelOptions opts;
  opts.surface = surface;
  opts.channel_mask = cfg.channel_mask;
  opts.threads = threads;
  switch (cfg.kind) {
    case StructureKind::Bulk:
      return structures::bulk_kernel(cfg.bulk, pump, grid, opts);
    case StructureKind::Poled: {
      PoledCrystalSpec spec = cfg.poled;
      spec.poling_period = *poling_period;
      return structures::poled_kernel(spec, pump, grid, cfg.poled_method, opts);
    }
    case StructureKind::Layered:
      break;
  }
  return structures::stack_kernel(cfg.stack, pump, grid, opts);
}

PointResult evaluate_point(const ScenarioConfig& cfg, double wavelength_nm,
                           const RunOptions& options) {
  const unsigned threads = options.threads.value_or(cfg.threads);
  const bool surface = cfg.surface && !options.no_surface;

  std::optional<double> period;
  if (cfg.kind == StructureKind::Poled) {
    if (cfg.optimum_period) {
      period = structures::optimum_poling_period(cfg.poled.medium, wavelength_nm * 1e-9);
      if (!period) throw DomainError("degenerate process is phase matched; no poling period exists");
    } else {
      period = cfg.poled.poling_period;
    }
  }
  const PumpSpectrum pump = make_pump(cfg, wavelength_nm);

  auto observe = [&](const FrequencyGrid& grid, PointResult& out) {
    const KernelPair k = compute_kernels(cfg, pump, grid, period, threads, surface);
    out.volume = spectra::density_map(k, grid, DensityVariant::Volume);
    out.surface = spectra::density_map(k, grid, DensityVariant::Surface);
    out.total = spectra::density_map(k, grid, DensityVariant::Total);
    out.s_volume = spectra::signal_spectrum(out.volume);
    out.s_surface = spectra::signal_spectrum(out.surface);
    out.s_total = spectra::signal_spectrum(out.total);
    out.n_volume = spectra::pair_rate(out.volume);
    out.n_total = spectra::pair_rate(out.total);
    out.diagnostics = k.diagnostics;
  };

  const FrequencyGrid grid = make_grid(cfg, wavelength_nm, period);
  PointResult r = blank_point(wavelength_nm, period, grid);
  observe(grid, r);
  r.relative_surface = spectra::relative_surface_contribution(r.n_total, r.n_volume);

  if (options.check_convergence) {
    const FrequencyGrid fine = grid.refined();
    PointResult f = blank_point(wavelength_nm, period, fine);
    observe(fine, f);
    ConvergenceMetrics c;
    c.refined_signal_nodes = fine.signal_nodes();
    c.refined_idler_nodes = fine.idler_nodes();
    c.pair_rate_change = std::max(rate_change(r.n_volume, f.n_volume), rate_change(r.n_total, f.n_total));
    c.spectrum_change = std::max(curve_change(r.s_volume, f.s_volume), curve_change(r.s_total, f.s_total));
    r.convergence = c;
  }
  return r;
}

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& options) {
  RunResult out;
  out.threads = options.threads.value_or(cfg.threads);
  out.surface = cfg.surface && !options.no_surface;
  if (!cfg.sweep) {
    out.points.push_back(evaluate_point(cfg, cfg.pump.wavelength_nm, options));
    return out;
  }
  const auto& s = *cfg.sweep;
  for (std::size_t i = 0; i < s.points; ++i) {
    const double lambda = s.from_nm + (s.to_nm - s.from_nm) * (double(i) / double(s.points - 1));
    out.points.push_back(evaluate_point(cfg, lambda, options));
  }
  return out;
}

std::string spectrum_csv(const PointResult& p) {
  std::string out = "lambda_s_nm,S_vol,S_surf,S_total,ratio_total_over_vol\n";
  const std::size_t n = p.s_volume.omega.size();
  // Ascending wavelength = descending frequency.
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = n - 1 - k;
    const double sv = p.s_volume.value[i];
    const double st = p.s_total.value[i];
    const double ratio = sv != 0.0 ? st / sv : std::nan("");
    out += format_number(vacuum_wavelength(p.s_volume.omega[i]) * 1e9) + "," + format_number(sv) +
           "," + format_number(p.s_surface.value[i]) + "," + format_number(st) + "," +
           format_number(ratio) + "\n";
  }
  return out;
}

std::string density_map_csv(const PointResult& p) {
  std::string out = "lambda_s_nm,lambda_i_nm,n_vol,n_surf,n_total\n";
  const FrequencyGrid& g = p.volume.grid;
  for (std::size_t node = 0; node < g.size(); ++node) {
    out += format_number(vacuum_wavelength(g.signal_omega(node)) * 1e9) + "," +
           format_number(vacuum_wavelength(g.idler_omega(node)) * 1e9) + "," +
           format_number(p.volume.values[node]) + "," + format_number(p.surface.values[node]) + "," +
           format_number(p.total.values[node]) + "\n";
  }
  return out;
}

std::string summary_csv(const RunResult& result) {
  std::string out =
      "lambda_p_nm,poling_period_um,inverse_period_per_um,N_vol,N_total,relative_surface_contribution\n";
  for (const auto& p : result.points) {
    std::string period, inverse;
    if (p.poling_period) {
      period = format_number(*p.poling_period * 1e6);
      inverse = format_number(1.0 / (*p.poling_period * 1e6));
    }
    out += format_number(p.pump_wavelength_nm) + "," + period + "," + inverse + "," +
           format_number(p.n_volume) + "," + format_number(p.n_total) + "," +
           format_number(p.relative_surface) + "\n";
  }
  return out;
}

std::vector<std::filesystem::path> write_outputs(const ScenarioConfig& cfg,
                                                 const RunResult& result,
                                                 const std::filesystem::path& dir,
                                                 double wall_seconds) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DomainError("cannot create output directory '" + dir.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    write_file(dir / name, text);
    written.push_back(dir / name);
  };
  const bool sweep = result.points.size() > 1 || cfg.sweep.has_value();
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& p = result.points[i];
    const std::string suffix = sweep ? "_p" + two_digits(i) : "";
    emit("spectrum" + suffix + ".csv", spectrum_csv(p));
    if (p.volume.grid.mode() == GridMode::Full2D) emit("density_map" + suffix + ".csv", density_map_csv(p));
  }
  emit("summary.csv", summary_csv(result));

  json manifest;
  manifest["tool"] = "pairgen";
  manifest["version"] = kVersion;
  manifest["name"] = cfg.name;
  manifest["config_file"] = cfg.source.string();
  manifest["config"] = cfg.document;
  manifest["media_file"] = cfg.media_file.string();
  manifest["media_fixture_version"] = cfg.media_version;
  manifest["structure"] = to_string(cfg.kind);
  manifest["threads"] = result.threads;
  manifest["surface"] = result.surface;
  manifest["seed"] = cfg.seed;
  json points = json::array();
  double worst_rate = 0.0, worst_curve = 0.0;
  std::size_t invalid = 0, large = 0, negative = 0;
  for (const auto& p : result.points) {
    const FrequencyGrid& g = p.volume.grid;
    json jp;
    jp["lambda_p_nm"] = p.pump_wavelength_nm;
    if (p.poling_period) jp["poling_period_um"] = *p.poling_period * 1e6;
    jp["grid"] = {{"mode", g.mode() == GridMode::CwLine ? "cw-line" : "full-2d"},
                  {"signal_nodes", g.signal_nodes()},
                  {"idler_nodes", g.idler_nodes()},
                  {"signal_range_nm", {vacuum_wavelength(g.signal_max()) * 1e9,
                                       vacuum_wavelength(g.signal_min()) * 1e9}}};
    jp["N_vol"] = p.n_volume;
    jp["N_total"] = p.n_total;
    jp["relative_surface_contribution"] = p.relative_surface;
    jp["invalid_nodes"] = p.diagnostics.invalid_nodes;
    jp["large_surface_factor_evaluations"] = p.diagnostics.large_surface_factor;
    jp["negative_surface_factor_evaluations"] = p.diagnostics.negative_surface_factor;
    jp["notices"] = p.diagnostics.notices;
    if (p.convergence) {
      jp["convergence"] = {{"refined_signal_nodes", p.convergence->refined_signal_nodes},
                           {"refined_idler_nodes", p.convergence->refined_idler_nodes},
                           {"pair_rate_change", p.convergence->pair_rate_change},
                           {"signal_spectrum_change", p.convergence->spectrum_change}};
      worst_rate = std::max(worst_rate, p.convergence->pair_rate_change);
      worst_curve = std::max(worst_curve, p.convergence->spectrum_change);
    }
    invalid += p.diagnostics.invalid_nodes;
    large += p.diagnostics.large_surface_factor;
    negative += p.diagnostics.negative_surface_factor;
    points.push_back(std::move(jp));
  }
  manifest["points"] = std::move(points);
  manifest["convergence"] = {{"max_pair_rate_change", worst_rate},
                             {"max_signal_spectrum_change", worst_curve}};
  manifest["invalid_nodes"] = invalid;
  manifest["perturbative"] = {{"large_surface_factor_evaluations", large},
                              {"negative_surface_factor_evaluations", negative}};
  manifest["outputs"] = json::array();
  for (const auto& w : written) manifest["outputs"].push_back(w.filename().string());
  manifest["wall_time_s"] = wall_seconds;

  const auto final_path = dir / "manifest.json";
  const auto tmp_path = dir / "manifest.json.tmp";
  write_file(tmp_path, manifest.dump(2) + "\n");
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) throw DomainError("cannot finalize manifest: " + ec.message());
  written.push_back(final_path);
  return written;
}

}  // namespace pairgen::app
