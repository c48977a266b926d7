#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "pairgen/errors.hpp"
#include "pairgen_app/config.hpp"
#include "pairgen_app/scenario.hpp"
#include "pairgen_app/validate.hpp"

namespace {

namespace fs = std::filesystem;
using namespace pairgen;

const fs::path kConfigs = PAIRGEN_TEST_CONFIG_DIR;

std::vector<std::string> violations_of(const std::string& text) {
  try {
    (void)app::parse_config_text(text, kConfigs, "test.json");
  } catch (const ConfigError& e) {
    return e.violations();
  }
  return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& a, const std::string& b = "") {
  for (const auto& s : v) {
    if (s.find(a) != std::string::npos && s.find(b) != std::string::npos) return true;
  }
  return false;
}

std::string bulk_text(const std::string& structure_extra, const std::string& top_extra = "") {
  return R"({"schema_version": 1, "name": "t", "media_file": "../data/media.json",
    "structure": {"type": "bulk", "medium": "GaN_o", "length_um": 2)" +
         structure_extra + R"(},
    "pump": {"kind": "cw", "wavelength_nm": 664.5},
    "grid": {"mode": "cw-line", "signal_range_nm": [1200, 1450], "nodes": 64})" +
         top_extra + "}";
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + PAIRGEN_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::path(testing::TempDir()) / ("pairgen_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TEST(ParseConfig, ShippedStackConfig) {
  const auto cfg = app::parse_config(kConfigs / "gan_aln_stack.json");
  EXPECT_EQ(cfg.kind, app::StructureKind::Layered);
  ASSERT_EQ(cfg.stack.layers.size(), 49u);
  std::size_t gan = 0;
  for (const auto& l : cfg.stack.layers) gan += l.medium.name == "GaN_o";
  EXPECT_EQ(gan, 25u);
  EXPECT_DOUBLE_EQ(cfg.stack.layers.front().thickness, 117e-9);
  EXPECT_DOUBLE_EQ(cfg.stack.layers[1].thickness, 180e-9);
}

TEST(ParseConfig, EveryShippedConfigParses) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(kConfigs)) {
    if (e.path().extension() != ".json") continue;
    EXPECT_NO_THROW((void)app::parse_config(e.path())) << e.path();
    ++n;
  }
  EXPECT_GE(n, 3u);
}

TEST(ParseConfig, NegativeThicknessNamesField) {
  const std::string text = R"({"schema_version": 1, "name": "t", "media_file": "../data/media.json",
    "structure": {"type": "layered", "layers": [
      {"medium": "GaN_o", "thickness_nm": 117}, {"medium": "AlN_o", "thickness_nm": -180}]},
    "pump": {"kind": "cw", "wavelength_nm": 664.5},
    "grid": {"mode": "cw-line", "signal_range_nm": [1200, 1450], "nodes": 64}})";
  const auto v = violations_of(text);
  ASSERT_FALSE(v.empty());
  EXPECT_TRUE(mentions(v, "layers[1].thickness_nm")) << v.front();
}

TEST(ParseConfig, UnknownKeyIsListed) {
  const auto v = violations_of(bulk_text(R"(, "colour": "blue")"));
  EXPECT_TRUE(mentions(v, "colour", "unknown key"));
}

TEST(ParseConfig, CollectsAllViolations) {
  const auto v = violations_of(bulk_text(R"(, "colour": "blue")", R"(, "seed": -3, "flavour": 1)"));
  EXPECT_GE(v.size(), 3u);
  EXPECT_TRUE(mentions(v, "flavour"));
  EXPECT_TRUE(mentions(v, "seed"));
}

TEST(ParseConfig, OutOfWindowWavelength) {
  std::string text = bulk_text("");
  text.replace(text.find("664.5"), 5, "200.0");
  EXPECT_TRUE(mentions(violations_of(text), "wavelength"));
}

TEST(ParseConfig, MissingFile) {
  EXPECT_THROW((void)app::parse_config(kConfigs / "does_not_exist.json"), ConfigError);
}

TEST(Scenario, SurfaceOffGivesUnitRatio) {
  const auto cfg = app::parse_config(kConfigs / "ppln_532_cw.json");
  app::RunOptions o;
  o.no_surface = true;
  o.check_convergence = false;
  const auto r = app::run_scenario(cfg, o);
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_EQ(r.points[0].relative_surface, 0.0);
  std::istringstream csv(app::spectrum_csv(r.points[0]));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "lambda_s_nm,S_vol,S_surf,S_total,ratio_total_over_vol");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "1") << line;
    ++rows;
  }
  EXPECT_EQ(rows, cfg.grid.signal_nodes);
}

TEST(Scenario, DeterministicAcrossThreadCounts) {
  for (const char* name : {"ppln_532_cw.json", "gan_film_pulsed.json"}) {
    const auto cfg = app::parse_config(kConfigs / name);
    std::vector<std::string> outputs;
    for (unsigned threads : {1u, 8u, 1u}) {
      app::RunOptions o;
      o.threads = threads;
      o.check_convergence = false;
      const auto r = app::run_scenario(cfg, o);
      outputs.push_back(app::spectrum_csv(r.points[0]) + app::density_map_csv(r.points[0]) +
                        app::summary_csv(r));
    }
    EXPECT_EQ(outputs[0], outputs[1]) << name;
    EXPECT_EQ(outputs[0], outputs[2]) << name;
  }
}

TEST(Scenario, NumberFormatRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) {
    EXPECT_EQ(std::stod(app::format_number(x)), x);
  }
  EXPECT_EQ(app::format_number(1.0), "1");
}

TEST(Validate, ZeroToleranceReportsCaseIds) {
  app::ValidateOptions o;
  o.tolerance = 0.0;
  const auto suites = app::run_validation(o);
  std::size_t total = 0, failed = 0;
  for (const auto& s : suites) {
    total += s.reports.size();
    failed += s.failures();
  }
  EXPECT_GT(failed, 0u);

  const std::string text = app::validation_report_text(suites, o.seed);
  std::size_t rows = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.ends_with(" PASS") || line.ends_with(" FAIL")) ++rows;
  }
  EXPECT_EQ(rows, total);
  const std::string csv = app::validation_report_csv(suites);
  EXPECT_EQ(std::size_t(std::count(csv.begin(), csv.end(), '\n')), total + 1);
}

TEST(CommandLine, ExitCodes) {
  EXPECT_EQ(run_cli("simulate --config /nonexistent/x.json --out /tmp"), 1);
  EXPECT_EQ(run_cli("simulate"), 1);
  EXPECT_EQ(run_cli("frobnicate"), 1);

  const fs::path dir = scratch_dir("exit_codes");
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << bulk_text(R"(, "length_um": -1)");
  EXPECT_EQ(run_cli("simulate --config " + bad.string() + " --out " + dir.string()), 1);

  EXPECT_EQ(run_cli("validate --tolerance 0"), 3);
}

TEST(CommandLine, SimulateWritesOutputs) {
  const fs::path dir = scratch_dir("simulate");
  const std::string cfg = (kConfigs / "ppln_532_cw.json").string();
  ASSERT_EQ(run_cli("simulate --config " + cfg + " --out " + (dir / "a").string()), 0);
  ASSERT_EQ(run_cli("simulate --config " + cfg + " --threads 8 --out " + (dir / "b").string()), 0);
  for (const char* f : {"spectrum.csv", "summary.csv"}) {
    EXPECT_TRUE(fs::exists(dir / "a" / f));
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
  EXPECT_TRUE(fs::exists(dir / "a" / "manifest.json"));
  EXPECT_FALSE(fs::exists(dir / "a" / "density_map.csv"));
}

TEST(CommandLine, SweepPump) {
  const fs::path dir = scratch_dir("sweep");
  const std::string cfg = (kConfigs / "ppln_532_cw.json").string();
  std::string text = slurp(cfg);
  ASSERT_EQ(run_cli("sweep-pump --config " + cfg + " --from-nm 500 --to-nm 600 --points 3 --out " +
                    dir.string()),
            1)
      << "explicit signal range cannot follow the pump";

  const fs::path sweepable = dir / "sweepable.json";
  text.replace(text.find(R"("signal_range_nm": [900, 1300], )"), 32, "");
  text.replace(text.find("../data/media.json"), 18, fs::absolute(kConfigs / "../data/media.json").string());
  std::ofstream(sweepable) << text;
  ASSERT_EQ(run_cli("sweep-pump --config " + sweepable.string() +
                    " --from-nm 500 --to-nm 600 --points 3 --out " + dir.string()),
            0);
  std::istringstream summary(slurp(dir / "summary.csv"));
  std::size_t lines = 0;
  for (std::string line; std::getline(summary, line);) ++lines;
  EXPECT_EQ(lines, 4u);
  EXPECT_TRUE(fs::exists(dir / "spectrum_p02.csv"));
}

}  // namespace
