// pairgen: photon-pair spectra of bulk, poled and layered χ(2) structures.
//
//   pairgen simulate   --config <file> --out <dir> [--threads N] [--no-surface]
//   pairgen sweep-pump --config <file> --from-nm A --to-nm B --points K [--out <dir>]
//   pairgen validate   [--seed S] [--tolerance T] [--out <dir>] [--media <file>]
//
// Exit codes: 0 success, 1 configuration error, 2 numerical or domain error,
// 3 validation failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pairgen/errors.hpp"
#include "pairgen/version.hpp"
#include "pairgen_app/config.hpp"
#include "pairgen_app/scenario.hpp"
#include "pairgen_app/validate.hpp"

namespace {

enum ExitCode : int { kOk = 0, kConfig = 1, kNumerical = 2, kValidation = 3 };

namespace fs = std::filesystem;
using namespace pairgen;

std::string output_dir_for(const app::ScenarioConfig& cfg, const std::string& flag) {
  if (!flag.empty()) return flag;
  if (cfg.output_dir.empty()) {
    throw ConfigError({"no output directory: pass --out or set output_dir in the config"});
  }
  const fs::path p(cfg.output_dir);
  return (p.is_absolute() || cfg.source.empty() ? p : cfg.source.parent_path() / p).string();
}

int run(const app::ScenarioConfig& cfg, const app::RunOptions& options, const std::string& out) {
  const auto start = std::chrono::steady_clock::now();
  const app::RunResult result = app::run_scenario(cfg, options);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto files = app::write_outputs(cfg, result, out, wall);
  for (const auto& p : result.points) {
    std::cout << "lambda_p " << p.pump_wavelength_nm << " nm  N_vol " << p.n_volume << "  N_total "
              << p.n_total << "  relative surface " << p.relative_surface;
    if (p.diagnostics.invalid_nodes) std::cout << "  invalid nodes " << p.diagnostics.invalid_nodes;
    std::cout << "\n";
    for (const auto& n : p.diagnostics.notices) std::cerr << "notice: " << n << "\n";
  }
  std::cout << "wrote " << files.size() << " files to " << out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Photon-pair spectra with surface contributions"};
  cli.set_version_flag("--version", std::string(kVersion));
  cli.require_subcommand(1);

  std::string config_path, out_dir;
  unsigned threads = 0;
  bool no_surface = false;
  auto* simulate = cli.add_subcommand("simulate", "Run the scenario described by a config file");
  simulate->add_option("--config", config_path, "Scenario config (JSON)")->required();
  simulate->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  simulate->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_flag("--no-surface", no_surface, "Drop the surface contributions");

  double from_nm = 0.0, to_nm = 0.0;
  std::size_t points = 0;
  auto* sweep = cli.add_subcommand("sweep-pump", "Sweep the pump wavelength of a crystal scenario");
  sweep->add_option("--config", config_path, "Scenario config (JSON)")->required();
  sweep->add_option("--from-nm", from_nm, "First pump wavelength (nm)")->required();
  sweep->add_option("--to-nm", to_nm, "Last pump wavelength (nm)")->required();
  sweep->add_option("--points", points, "Number of sweep points")->required();
  sweep->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  sweep->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_flag("--no-surface", no_surface, "Drop the surface contributions");

  std::uint64_t seed = oracle::kDefaultSeed;
  double tolerance = -1.0;
  std::string media;
  auto* validate = cli.add_subcommand("validate", "Run the oracle comparison suites");
  validate->add_option("--seed", seed, "Random seed")->capture_default_str();
  validate->add_option("--tolerance", tolerance, "Replace every suite tolerance")
      ->check(CLI::NonNegativeNumber);
  validate->add_option("--out", out_dir, "Directory for validation_report.{txt,csv}");
  validate->add_option("--media", media, "Media fixture file");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (validate->parsed()) {
      app::ValidateOptions opts;
      opts.seed = seed;
      if (tolerance >= 0.0) opts.tolerance = tolerance;
      opts.media_file = media;
      const auto suites = app::run_validation(opts);
      const std::string text = app::validation_report_text(suites, seed);
      std::size_t failed = 0, total = 0;
      for (const auto& s : suites) {
        failed += s.failures();
        total += s.reports.size();
        std::cout << s.name << ": " << s.reports.size() << " cases, " << s.failures() << " failed\n";
        for (const auto& r : s.reports) {
          if (!r.pass) {
            std::cout << "  FAIL " << r.case_id << " rel_error " << r.rel_error << " > "
                      << r.tolerance << "\n";
          }
        }
      }
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream(fs::path(out_dir) / "validation_report.txt", std::ios::binary) << text;
        std::ofstream(fs::path(out_dir) / "validation_report.csv", std::ios::binary)
            << app::validation_report_csv(suites);
      }
      std::cout << (failed == 0 ? "all " : "") << total - failed << "/" << total << " cases passed (seed "
                << seed << ")\n";
      return failed == 0 ? kOk : kValidation;
    }

    app::ScenarioConfig cfg = app::parse_config(config_path);
    app::RunOptions options;
    if (threads > 0) options.threads = threads;
    options.no_surface = no_surface;
    if (sweep->parsed()) app::apply_sweep_override(cfg, {from_nm, to_nm, points});
    return run(cfg, options, output_dir_for(cfg, out_dir));
  } catch (const ConfigError& e) {
    std::cerr << "configuration error:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
    return kConfig;
  } catch (const PerturbativeError& e) {
    std::cerr << "perturbative validity error: " << e.what() << "\n";
    return kNumerical;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}
