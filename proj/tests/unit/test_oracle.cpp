#include <cmath>

#include <gtest/gtest.h>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/media.hpp"
#include "pairgen/oracle.hpp"
#include "pairgen/structures.hpp"

namespace {

using namespace pairgen;

constexpr cplx kG{0.0, 2.2e-6};
constexpr cplx kPump{1.0, 0.4};

TEST(RelativeError, Definition) {
  EXPECT_NEAR(relative_error({1.1, 0.0}, {1.0, 0.0}), 0.1, 1e-15);
  EXPECT_NEAR(relative_error({0.0, 3.0}, {0.0, 2.0}), 0.5, 1e-15);
  EXPECT_EQ(relative_error({0.0, 2e-20}, {}), 2e-20);
  const auto ok = make_report("a", {1.0, 0.0}, {1.0, 0.0}, 0.0);
  EXPECT_TRUE(ok.pass);
  const auto bad = make_report("b", {1.0, 1e-9}, {1.0, 0.0}, 1e-10);
  EXPECT_FALSE(bad.pass);
  EXPECT_EQ(bad.case_id, "b");
}

TEST(IntegrateVolumeKernel, PhaseMatched) {
  const double kp = 1.9e7, L = 1e-3;
  const cplx r = oracle::integrate_volume_kernel(kG, kPump, kp, 0.0, L, 1000);
  const cplx exact = kG * kPump * std::polar(1.0, kp * L) * L;
  EXPECT_LT(std::abs(r - exact), 1e-14 * std::abs(exact));
}

TEST(IntegrateVolumeKernel, FullPeriodCancels) {
  const double L = 2e-5;
  const cplx r = oracle::integrate_volume_kernel(kG, kPump, 1e7, 2 * kPi / L, L, 4000);
  EXPECT_LT(std::abs(r), 1e-10 * std::abs(kG * kPump) * L);
}

TEST(IntegrateVolumeKernel, StepFloor) {
  EXPECT_GE(oracle::volume_steps(0.0, 1e-3), 1000u);
  EXPECT_EQ(oracle::volume_steps(1e6, 1e-3) % 2, 0u);
  EXPECT_GE(oracle::volume_steps(1e6, 1e-3), std::size_t(1e3 / 4e-4));
}

TEST(SolveBoundary, ZeroSources) {
  const auto [f, b] = oracle::solve_boundary({}, {}, 1e7, 1e15, 2.0);
  EXPECT_EQ(f, cplx{});
  EXPECT_EQ(b, cplx{});
}

TEST(SolveBoundary, Linear) {
  const cplx h{3e-3, -1e-3};
  const auto [f1, b1] = oracle::solve_boundary(h, h, 1e7, 1e15, 2.0);
  const auto [f2, b2] = oracle::solve_boundary(2.0 * h, 2.0 * h, 1e7, 1e15, 2.0);
  EXPECT_LT(std::abs(f2 - 2.0 * f1), 1e-14 * std::abs(f2));
  EXPECT_LT(std::abs(b2 - 2.0 * b1), 1e-14 * std::abs(b2));
}

TEST(SolveBoundary, SingularSystemThrows) {
  EXPECT_THROW(oracle::solve_boundary({1.0, 0.0}, {1.0, 0.0}, 0.0, 1e15, 2.0), DomainError);
}

TEST(PoledDirectSum, SingleDomainEqualsBulk) {
  const auto catalog = MediaCatalog::load(PAIRGEN_TEST_MEDIA_FILE);
  PoledCrystalSpec spec;
  spec.medium = catalog.at("LiNbO3_e");
  spec.total_length = 3e-6;
  spec.poling_period = 8e-6;
  const double wp = angular_frequency(800e-9);
  const auto grid = FrequencyGrid::cw_line(wp, 0.45 * wp, 0.55 * wp, 21);
  const auto pump = PumpSpectrum::cw(wp);
  const auto bulk = structures::bulk_kernel({spec.medium, 3e-6, spec.medium}, pump, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx o = oracle::poled_direct_sum(spec, pump, grid.signal_omega(i), grid.idler_omega(i));
    EXPECT_LT(relative_error(bulk.signal.volume[i], o), 1e-10);
    const cplx os =
        oracle::poled_direct_sum(spec, pump, grid.signal_omega(i), grid.idler_omega(i), true);
    EXPECT_LT(relative_error(bulk.signal.total(i), os), 1e-10);
  }
}

TEST(PoledDirectSum, TwoDomainsCancel) {
  PoledCrystalSpec spec;
  spec.medium.name = "flat";
  spec.medium.index_model = ConstantIndex{1.8};
  spec.medium.d_eff = 2e-12;
  spec.total_length = spec.poling_period = 6e-6;
  const double wp = angular_frequency(600e-9);
  EXPECT_EQ(oracle::poled_direct_sum(spec, PumpSpectrum::cw(wp), wp / 2, wp / 2), cplx{});
}

TEST(Suites, SmallRunsPassAndAreSeeded) {
  const auto a = oracle::volume_suite(7, 20, 1e-10);
  const auto b = oracle::volume_suite(7, 20, 1e-10);
  ASSERT_EQ(a.size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(a[i].pass) << a[i].case_id;
    EXPECT_EQ(a[i].analytic, b[i].analytic);
    EXPECT_EQ(a[i].case_id, b[i].case_id);
  }
  for (const auto& r : oracle::boundary_suite(7, 50, 1e-12)) EXPECT_TRUE(r.pass) << r.case_id;

  const auto catalog = MediaCatalog::load(PAIRGEN_TEST_MEDIA_FILE);
  for (const auto& r : oracle::poled_suite(catalog.at("LiNbO3_e"), 7, 8, 500, 1e-10)) {
    EXPECT_TRUE(r.pass) << r.case_id << " " << r.rel_error;
  }
}

TEST(Suites, ZeroToleranceReportsFailures) {
  const auto r = oracle::volume_suite(oracle::kDefaultSeed, 10, 0.0);
  std::size_t failed = 0;
  for (const auto& x : r) failed += x.pass ? 0 : 1;
  EXPECT_GT(failed, 0u);
}

}  // namespace
