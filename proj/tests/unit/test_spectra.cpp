#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/spectra.hpp"

namespace {

using namespace pairgen;

KernelPair kernels_of(std::size_t n, cplx vol, double vs, double vi) {
  KernelPair k;
  k.signal.field = FieldTag::Signal;
  k.idler.field = FieldTag::Idler;
  k.signal.volume.assign(n, vol);
  k.idler.volume.assign(n, vol);
  k.signal.surface.assign(n, vs * vol);
  k.idler.surface.assign(n, vi * vol);
  k.valid.assign(n, 1);
  return k;
}

SpectralDensityMap map_on(const FrequencyGrid& grid, auto&& f) {
  SpectralDensityMap m{grid, DensityVariant::Volume, std::vector<double>(grid.size()),
                       std::vector<std::uint8_t>(grid.size(), 1)};
  for (std::size_t node = 0; node < grid.size(); ++node) {
    m.values[node] = f(grid.signal_omega(node), grid.idler_omega(node));
  }
  return m;
}

TEST(FrequencyGrid, CwLineGeometry) {
  const double wp = 3e15;
  const auto g = FrequencyGrid::cw_line(wp, 1e15, 1.4e15, 17);
  EXPECT_EQ(g.size(), 17u);
  EXPECT_EQ(g.idler_nodes(), 1u);
  EXPECT_DOUBLE_EQ(g.signal_omega(0), 1e15);
  EXPECT_DOUBLE_EQ(g.signal_omega(16), 1.4e15);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_DOUBLE_EQ(g.signal_omega(i) + g.idler_omega(i), wp);
  }
}

TEST(FrequencyGrid, RejectsBadInput) {
  EXPECT_THROW(FrequencyGrid::cw_line(3e15, 1e15, 1.4e15, 15), DomainError);
  EXPECT_THROW(FrequencyGrid::cw_line(3e15, 1.4e15, 1e15, 32), DomainError);
  EXPECT_THROW(FrequencyGrid::cw_line(3e15, 1e15, 3e15, 32), DomainError);
  EXPECT_THROW(FrequencyGrid::full_2d(1e15, 2e15, 16, 1e15, 2e15, 8), DomainError);
}

TEST(FrequencyGrid, RefinementKeepsNodes) {
  const auto g = FrequencyGrid::full_2d(1e15, 1.2e15, 20, 0.9e15, 1.3e15, 30);
  const auto r = g.refined();
  ASSERT_EQ(r.signal_nodes(), 39u);
  ASSERT_EQ(r.idler_nodes(), 59u);
  for (std::size_t is = 0; is < g.signal_nodes(); ++is) {
    EXPECT_NEAR(r.signal_axis(2 * is), g.signal_axis(is), 1e-15 * g.signal_axis(is));
  }
  for (std::size_t ii = 0; ii < g.idler_nodes(); ++ii) {
    EXPECT_NEAR(r.idler_axis(2 * ii), g.idler_axis(ii), 1e-15 * g.idler_axis(ii));
  }
}

TEST(DensityMap, ZeroKernelsGiveZeroMap) {
  const auto g = FrequencyGrid::cw_line(3e15, 1e15, 1.4e15, 32);
  const auto m = spectra::density_map(kernels_of(32, {}, 0.3, 0.1), g, DensityVariant::Total);
  for (double v : m.values) EXPECT_EQ(v, 0.0);
}

TEST(DensityMap, VariantsAndRatio) {
  const auto g = FrequencyGrid::cw_line(3e15, 1e15, 1.4e15, 32);
  const cplx vol{0.4, -0.7};
  const double vs = 0.35, vi = -0.2;
  const auto k = kernels_of(32, vol, vs, vi);
  const auto mv = spectra::density_map(k, g, DensityVariant::Volume);
  const auto ms = spectra::density_map(k, g, DensityVariant::Surface);
  const auto mt = spectra::density_map(k, g, DensityVariant::Total);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_GE(mv.values[i], 0.0);
    EXPECT_DOUBLE_EQ(mv.values[i], std::norm(vol));
    EXPECT_NEAR(ms.values[i], vs * vi * std::norm(vol), 1e-15);
    EXPECT_NEAR(mt.values[i] / mv.values[i], (1 + vs) * (1 + vi), 1e-14);
  }
}

TEST(DensityMap, InvalidNodesAreZero) {
  const auto g = FrequencyGrid::cw_line(3e15, 1e15, 1.4e15, 32);
  auto k = kernels_of(32, {1.0, 0.0}, 0.0, 0.0);
  k.valid[5] = 0;
  const auto m = spectra::density_map(k, g, DensityVariant::Volume);
  EXPECT_EQ(m.values[5], 0.0);
  EXPECT_EQ(m.valid[5], 0);
  EXPECT_EQ(m.values[6], 1.0);
}

TEST(DensityMap, GridMismatchThrows) {
  const auto g = FrequencyGrid::cw_line(3e15, 1e15, 1.4e15, 32);
  EXPECT_THROW(spectra::density_map(kernels_of(31, {1.0, 0.0}, 0, 0), g, DensityVariant::Volume),
               DomainError);
}

TEST(SignalSpectrum, ZeroMap) {
  const auto g = FrequencyGrid::full_2d(1e15, 1.2e15, 16, 1e15, 1.2e15, 16);
  const auto s = spectra::signal_spectrum(map_on(g, [](double, double) { return 0.0; }));
  for (double v : s.value) EXPECT_EQ(v, 0.0);
}

TEST(SignalSpectrum, CwLineIsLineValue) {
  const auto g = FrequencyGrid::cw_line(3e15, 1e15, 1.4e15, 32);
  const auto m = map_on(g, [](double ws, double) { return ws * 1e-15; });
  const auto s = spectra::signal_spectrum(m);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_DOUBLE_EQ(s.value[i], PhysicalConstants::hbar * g.signal_omega(i) * m.values[i]);
  }
}

TEST(SignalSpectrum, SeparableMap) {
  const double c = 1.1e15, w = 8e12;
  const auto f = [](double ws) { return 1.0 + 0.3 * std::sin(ws * 1e-13); };
  const auto gi = [&](double wi) { return std::exp(-0.5 * std::pow((wi - c) / w, 2)); };
  const auto g = FrequencyGrid::full_2d(1e15, 1.2e15, 16, c - 12 * w, c + 12 * w, 512);
  const auto s = spectra::signal_spectrum(map_on(g, [&](double ws, double wi) { return f(ws) * gi(wi); }));
  const double integral = w * std::sqrt(2 * kPi);
  for (std::size_t is = 0; is < g.signal_nodes(); ++is) {
    const double ws = g.signal_axis(is);
    const double expected = PhysicalConstants::hbar * ws * f(ws) * integral;
    EXPECT_NEAR(s.value[is], expected, 1e-6 * expected);
  }
}

TEST(PairRate, ZeroAndConstant) {
  const auto g = FrequencyGrid::full_2d(1e15, 1.2e15, 40, 0.8e15, 1.1e15, 24);
  EXPECT_EQ(spectra::pair_rate(map_on(g, [](double, double) { return 0.0; })), 0.0);
  const double area = 0.2e15 * 0.3e15;
  EXPECT_NEAR(spectra::pair_rate(map_on(g, [](double, double) { return 2.5; })), 2.5 * area,
              1e-12 * area);

  const auto line = FrequencyGrid::cw_line(3e15, 1e15, 1.4e15, 64);
  EXPECT_NEAR(spectra::pair_rate(map_on(line, [](double, double) { return 3.0; })), 3.0 * 0.4e15,
              1e-12 * 1.2e15);
}

TEST(PairRate, RefinementConverges) {
  const double c = 1.1e15, w = 1.5e13;
  const auto density = [&](double ws, double wi) {
    return std::exp(-std::pow((ws - c) / w, 2) - std::pow((wi - c) / (2 * w), 2));
  };
  const auto g = FrequencyGrid::full_2d(c - 8 * w, c + 8 * w, 64, c - 16 * w, c + 16 * w, 64);
  const double n1 = spectra::pair_rate(map_on(g, density));
  const double n2 = spectra::pair_rate(map_on(g.refined(), density));
  EXPECT_LT(std::abs(n2 - n1) / n2, 1e-3);
}

TEST(RelativeSurfaceContribution, Definition) {
  EXPECT_EQ(spectra::relative_surface_contribution(2.0, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(spectra::relative_surface_contribution(3.0, 2.0), 0.5);
  EXPECT_THROW(spectra::relative_surface_contribution(1.0, 0.0), DomainError);
}

TEST(PairwiseSum, FixedOrderMatchesExactSum) {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / double(i + 1);
  const double a = spectra::pairwise_sum(v);
  EXPECT_EQ(a, spectra::pairwise_sum(v));
  EXPECT_NEAR(a, 7.485470860550345, 1e-13);
  EXPECT_DOUBLE_EQ(spectra::trapezoid(std::vector<double>{1.0, 3.0, 5.0}, 0.5), 3.0);
}

}  // namespace
