#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pairgen/dispersion.hpp"

namespace pairgen {

using cplx = std::complex<double>;

enum class FieldTag : std::uint8_t { Signal, Idler };

/// Classical undepleted pump. A cw pump is a constraint ωs + ωi = ωp⁰ on the
/// frequency grid; it is never sampled as a spectral spike.
struct PumpSpectrum {
  enum class Kind : std::uint8_t { Cw, Pulsed };

  Kind kind = Kind::Cw;
  double center_omega = 0.0;  // rad/s
  double sigma_omega = 0.0;   // rad/s, Gaussian amplitude width (pulsed only)
  cplx forward_amplitude{1.0, 0.0};
  cplx backward_amplitude{0.0, 0.0};

  static PumpSpectrum cw(double omega, cplx amplitude = {1.0, 0.0});
  static PumpSpectrum pulsed(double center_omega, double sigma_omega, cplx peak = {1.0, 0.0});

  /// Spectral envelope relative to the peak: 1 for cw, Gaussian
  /// exp(−(ω−ω₀)²/(2σ²)) for pulsed.
  double envelope(double omega) const;
};

/// Output-boundary transmission amplitudes (s-polarization, lossless).
struct BoundaryCoefficients {
  double t_signal = 1.0;
  double t_idler = 1.0;
};

/// Complex amplitude on every node of a frequency grid, split into the
/// volume and surface contributions.
struct TwoPhotonKernel {
  FieldTag field = FieldTag::Signal;
  std::uint8_t channel_mask = 1;  // bit DirectionChannel::index() set for contributing channels
  std::vector<cplx> volume;
  std::vector<cplx> surface;
  std::uint64_t provenance = 0;  // hash of the structure description

  std::size_t size() const noexcept { return volume.size(); }
  cplx total(std::size_t node) const { return volume[node] + surface[node]; }
};

/// Counters collected while assembling kernels.
struct KernelDiagnostics {
  std::size_t invalid_nodes = 0;           // evanescent or otherwise excluded nodes
  std::size_t large_surface_factor = 0;    // evaluations with |V| >= 1
  std::size_t negative_surface_factor = 0; // evaluations with 1 + V < 0
  std::vector<std::string> notices;
};

struct KernelPair {
  TwoPhotonKernel signal;
  TwoPhotonKernel idler;
  std::vector<std::uint8_t> valid;  // 1 where the node entered the computation
  KernelDiagnostics diagnostics;
};

namespace amplitudes {

/// g(ωs,ωi) = 2i·d_eff·√(ωsωi) / (c·√(2π)·√(n_s n_i)).
cplx coupling_constant(double d_eff, double omega_s, double omega_i, double n_s, double n_i);

/// sin(x)/x with sinc(0) = 1.
double sinc(double x) noexcept;

/// Volume two-photon amplitude of a homogeneous segment of length L whose
/// input face sits at z0:
///   g·E_p·exp(ik_p(z0+L))·exp(−iΔk·L/2)·L·sinc(Δk·L/2).
/// Propagation of the generated photons beyond the segment is the caller's
/// bookkeeping.
cplx volume_amplitude(cplx g, cplx pump, double k_pump, double delta_k, double length,
                      double z0 = 0.0);

/// V = Δk / k_m. Throws DomainError for k_m <= 0.
double surface_factor(double delta_k, double k_m);

cplx surface_amplitude(cplx f_volume, double v) noexcept;
cplx total_amplitude(cplx f_volume, cplx f_surface) noexcept;
cplx transmitted_amplitude(cplx f, double t_s, double t_i) noexcept;

/// n = Re{F̃s*·F̃i}. The imaginary part of the product is discarded.
double joint_density(cplx f_signal, cplx f_idler) noexcept;

/// Φ ← √(1+Vs)·√(1+Vi)·Φ_vol. Throws PerturbativeError when either factor
/// is negative.
cplx bulk_substitution(cplx phi_volume, double v_s, double v_i);

/// c-number kernel (i/k_s)·g·E_p of the input-boundary correction; the
/// forward and backward corrections are equal.
cplx surface_correction_kernel(cplx g, cplx pump, double k_s);

/// c-number kernel of the purely nonlinear magnetic-field term at z,
///   √(ħc/(2μ₀ωs·n_s·𝒜))·g·E_p·exp(ik_p z)·exp(−ik_i z).
/// `area` is the transverse area 𝒜 (m²).
cplx nonlinear_magnetic_kernel(cplx g, cplx pump, double omega_s, double n_s, double k_pump,
                               double k_idler, double z, double area = 1.0);

/// Classification used by the perturbative-validity counters.
struct Validity {
  bool large = false;     // |V| >= 1
  bool negative = false;  // 1 + V < 0
};
Validity classify_surface_factor(double v) noexcept;

}  // namespace amplitudes
}  // namespace pairgen
