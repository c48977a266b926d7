#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "pairgen/amplitudes.hpp"
#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/oracle.hpp"

namespace {

using namespace pairgen;
using namespace std::complex_literals;

constexpr cplx kG{0.0, 3.1e-6};
constexpr cplx kPump{0.7, -0.2};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

TEST(CouplingConstant, LinearMediumIsZero) {
  EXPECT_EQ(amplitudes::coupling_constant(0.0, 1e15, 1.1e15, 2.0, 2.1), cplx{});
}

TEST(CouplingConstant, LinearInDeff) {
  const cplx a = amplitudes::coupling_constant(3e-12, 1e15, 1.1e15, 2.0, 2.1);
  const cplx b = amplitudes::coupling_constant(6e-12, 1e15, 1.1e15, 2.0, 2.1);
  EXPECT_NEAR(std::abs(b), 2 * std::abs(a), 1e-15 * std::abs(b));
}

TEST(CouplingConstant, HandEvaluated) {
  const double w = angular_frequency(1.33e-6);
  const cplx g = amplitudes::coupling_constant(5e-12, w, w, 2.3, 2.3);
  EXPECT_EQ(g.real(), 0.0);
  EXPECT_NEAR(g.imag(), 8.19427353589735372e-6, 1e-20);
}

TEST(VolumeAmplitude, ZeroLength) {
  EXPECT_EQ(amplitudes::volume_amplitude(kG, kPump, 1e7, 3e4, 0.0), cplx{});
}

TEST(VolumeAmplitude, PhaseMatched) {
  const double kp = 1.7e7, L = 2.5e-3;
  const cplx f = amplitudes::volume_amplitude(kG, kPump, kp, 0.0, L);
  EXPECT_LT(rel(f, kG * kPump * std::polar(1.0, kp * L) * L), 1e-14);
  EXPECT_NEAR(std::abs(f), std::abs(kG * kPump) * L, 1e-14 * std::abs(f));
}

TEST(VolumeAmplitude, FullPeriodVanishes) {
  const double L = 1e-4;
  const cplx f = amplitudes::volume_amplitude(kG, kPump, 1e7, 2 * kPi / L, L);
  EXPECT_LT(std::abs(f), 1e-15 * std::abs(kG * kPump) * L);
}

TEST(VolumeAmplitude, MatchesQuadrature) {
  const double L = 3e-5, dk = 1.7 / L, kp = 2.2e7;
  const cplx f = amplitudes::volume_amplitude(kG, kPump, kp, dk, L);
  const cplx o = oracle::integrate_volume_kernel(kG, kPump, kp, dk, L, oracle::volume_steps(dk, L));
  EXPECT_LT(rel(f, o), 1e-10);
}

TEST(VolumeAmplitude, OffsetOnlyShiftsPumpPhase) {
  const double kp = 1.3e7, dk = 4e4, L = 1e-5, z0 = 7e-6;
  const cplx a = amplitudes::volume_amplitude(kG, kPump, kp, dk, L, z0);
  const cplx b = amplitudes::volume_amplitude(kG, kPump, kp, dk, L) * std::polar(1.0, kp * z0);
  EXPECT_LT(rel(a, b), 1e-12);
}

TEST(VolumeAmplitude, VanishingLimit) {
  const double kp = 1.3e7;
  for (double dk : {0.0, 3e3, -2e4}) {
    const double tiny = std::abs(amplitudes::volume_amplitude(kG, kPump, kp, dk, 1e-12));
    EXPECT_NEAR(tiny, std::abs(kG * kPump) * 1e-12, 1e-15 * tiny);
  }
  // |F| grows linearly from zero, so the 1e-12 m to 1 mm ratio is smallest
  // (exactly 1e-9 in exact arithmetic) at phase matching.
  const double ref = std::abs(amplitudes::volume_amplitude(kG, kPump, kp, 0.0, 1e-3));
  const double tiny = std::abs(amplitudes::volume_amplitude(kG, kPump, kp, 0.0, 1e-12));
  EXPECT_LT(tiny, 1e-9 * ref);
}

TEST(VolumeAmplitude, PhaseMatchedIsMaximal) {
  const double L = 1e-4, kp = 1e7;
  const double peak = std::abs(amplitudes::volume_amplitude(kG, kPump, kp, 0.0, L));
  for (double dk = -1e6; dk <= 1e6; dk += 1.3e3) {
    EXPECT_LE(std::abs(amplitudes::volume_amplitude(kG, kPump, kp, dk, L)), peak);
  }
}

TEST(SurfaceFactor, Definition) {
  EXPECT_EQ(amplitudes::surface_factor(0.0, 1e7), 0.0);
  EXPECT_EQ(amplitudes::surface_factor(1e7, 1e7), 1.0);
  const double ks = 2.0 * 1e15 / PhysicalConstants::c;
  EXPECT_DOUBLE_EQ(amplitudes::surface_factor(2 * ks, ks), 2.0);
  EXPECT_LT(amplitudes::surface_factor(-5e4, 1e7), 0.0);
  EXPECT_THROW(amplitudes::surface_factor(1.0, 0.0), DomainError);
}

TEST(SurfaceAmplitude, ScalarMultiply) {
  EXPECT_EQ(amplitudes::surface_amplitude(1.0 + 2i, 0.0), cplx{});
  EXPECT_EQ(amplitudes::surface_amplitude(cplx{}, 0.4), cplx{});
  EXPECT_EQ(amplitudes::surface_amplitude(1.0, 0.3), cplx(0.3, 0.0));
}

TEST(TotalAmplitude, Sum) {
  EXPECT_EQ(amplitudes::total_amplitude(1.0, 0.0), cplx(1.0));
  const cplx t = amplitudes::total_amplitude(1.0, 0.447);
  EXPECT_NEAR(std::norm(t), 2.09, 0.01);
  EXPECT_NEAR(std::norm(cplx(0.447)), 0.2, 0.001);
}

TEST(TransmittedAmplitude, Products) {
  EXPECT_EQ(amplitudes::transmitted_amplitude(1.0 - 1i, 1.0, 1.0), cplx(1.0, -1.0));
  EXPECT_EQ(amplitudes::transmitted_amplitude(1.0 - 1i, 0.0, 0.7), cplx{});
  const cplx f = amplitudes::transmitted_amplitude(2i, 0.8, 0.9);
  EXPECT_NEAR(f.real(), 0.0, 1e-15);
  EXPECT_NEAR(f.imag(), 1.44, 1e-15);
}

TEST(JointDensity, RealPartOfConjugateProduct) {
  const cplx f{0.3, -1.1};
  EXPECT_DOUBLE_EQ(amplitudes::joint_density(f, f), std::norm(f));
  EXPECT_EQ(amplitudes::joint_density(1.0, 1i), 0.0);
  // Im{conj(a)·b} is dropped, not folded into the result.
  EXPECT_DOUBLE_EQ(amplitudes::joint_density(1.0 + 1i, 2.0 - 1i), 1.0);
}

TEST(JointDensity, SurfaceFactorsMultiply) {
  const cplx vol{0.8, 0.35};
  const double ts = 0.71, ti = 0.66;
  for (double vs : {-0.4, 0.0, 0.2, 1.5}) {
    for (double vi : {-0.1, 0.3, 2.0}) {
      const cplx fs = amplitudes::transmitted_amplitude((1 + vs) * vol, ts, ti);
      const cplx fi = amplitudes::transmitted_amplitude((1 + vi) * vol, ts, ti);
      const double expected = ts * ts * ti * ti * (1 + vs) * (1 + vi) * std::norm(vol);
      EXPECT_NEAR(amplitudes::joint_density(fs, fi), expected, 1e-12 * std::abs(expected));

      const cplx phi = amplitudes::bulk_substitution(vol, vs, vi);
      EXPECT_NEAR(std::norm(phi) / std::norm(vol), (1 + vs) * (1 + vi), 1e-12);
    }
  }
}

TEST(BulkSubstitution, Examples) {
  const cplx phi{0.2, -0.9};
  EXPECT_EQ(amplitudes::bulk_substitution(phi, 0.0, 0.0), phi);
  EXPECT_LT(rel(amplitudes::bulk_substitution(phi, 3.0, 3.0), 4.0 * phi), 1e-15);
  EXPECT_THROW(amplitudes::bulk_substitution(phi, -1.5, 0.2), PerturbativeError);
  EXPECT_THROW(amplitudes::bulk_substitution(phi, 0.2, -2.0), PerturbativeError);
}

TEST(SurfaceCorrectionKernel, Examples) {
  EXPECT_EQ(amplitudes::surface_correction_kernel(cplx{}, kPump, 1e7), cplx{});
  const cplx k = amplitudes::surface_correction_kernel(kG, kPump, 1.2e7);
  EXPECT_LT(rel(k, 1i / 1.2e7 * kG * kPump), 1e-15);
}

TEST(SurfaceCorrectionKernel, MatchesBoundarySolve) {
  const double ws = 1.3e15, ns = 2.2, area = 1e-10;
  const double ks = ns * ws / PhysicalConstants::c, kp = 2.1e7, ki = 1.0e7;
  const cplx h = amplitudes::nonlinear_magnetic_kernel(kG, kPump, ws, ns, kp, ki, 0.0, area);
  const auto [fwd, bwd] = oracle::solve_boundary(h, h, ks, ws, ns, area);
  const cplx closed = amplitudes::surface_correction_kernel(kG, kPump, ks);
  EXPECT_LT(rel(fwd, closed), 1e-12);
  EXPECT_LT(rel(bwd, closed), 1e-12);
}

TEST(NonlinearMagneticKernel, Examples) {
  EXPECT_EQ(amplitudes::nonlinear_magnetic_kernel(cplx{}, kPump, 1e15, 2.0, 2e7, 1e7, 0.0), cplx{});
  const double kp = 2.3e7, ki = 1.1e7;
  // No propagation phase at z = 0, so both directions see the same source.
  const cplx a = amplitudes::nonlinear_magnetic_kernel(kG, kPump, 1e15, 2.0, kp, ki, 0.0);
  using C = PhysicalConstants;
  const double scale = std::sqrt(C::hbar * C::c / (2 * C::mu0 * 1e15 * 2.0));
  EXPECT_LT(rel(a, scale * kG * kPump), 1e-15);
  const double z = 3.7e-6;
  const cplx at = amplitudes::nonlinear_magnetic_kernel(kG, kPump, 1e15, 2.0, kp, ki, z);
  const cplx shifted =
      amplitudes::nonlinear_magnetic_kernel(kG, kPump, 1e15, 2.0, kp, ki, z + 2 * kPi / (kp - ki));
  EXPECT_NEAR(std::abs(at), std::abs(shifted), 1e-14 * std::abs(at));
  EXPECT_LT(std::abs(at - shifted), 1e-8 * std::abs(at));
}

TEST(SurfaceFactorValidity, Classification) {
  EXPECT_FALSE(amplitudes::classify_surface_factor(0.5).large);
  EXPECT_TRUE(amplitudes::classify_surface_factor(1.0).large);
  EXPECT_TRUE(amplitudes::classify_surface_factor(-1.2).negative);
  EXPECT_FALSE(amplitudes::classify_surface_factor(-0.9).negative);
}

TEST(PumpSpectrum, Envelopes) {
  const auto cw = PumpSpectrum::cw(2e15, {0.5, 0.5});
  EXPECT_EQ(cw.envelope(2e15), 1.0);
  const auto p = PumpSpectrum::pulsed(2e15, 1e12, 2.0);
  EXPECT_EQ(p.envelope(2e15), 1.0);
  EXPECT_NEAR(p.envelope(2e15 + 1e12), std::exp(-0.5), 1e-15);
  EXPECT_EQ(p.forward_amplitude, cplx(2.0));
}

}  // namespace
