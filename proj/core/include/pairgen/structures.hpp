#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pairgen/amplitudes.hpp"
#include "pairgen/dispersion.hpp"
#include "pairgen/grid.hpp"

namespace pairgen {

struct BulkCrystalSpec {
  OpticalMedium medium;
  double length = 0.0;  // m
  OpticalMedium surround = vacuum_medium();
};

/// Periodically poled crystal; each period holds a + domain of length
/// duty_cycle·Λ followed by a − domain.
struct PoledCrystalSpec {
  OpticalMedium medium;
  double total_length = 0.0;   // m
  double poling_period = 0.0;  // m
  double duty_cycle = 0.5;
};

struct StackLayer {
  OpticalMedium medium;
  double thickness = 0.0;  // m
  int d_eff_sign = 1;
};

/// 1D multilayer between two linear half-spaces. Angles are external
/// (vacuum-side); the pump enters from the incident side.
struct LayeredStackSpec {
  std::vector<StackLayer> layers;
  OpticalMedium incident = vacuum_medium();
  OpticalMedium exit = vacuum_medium();
  double pump_angle = 0.0;    // rad
  double signal_angle = 0.0;  // rad
};

struct DomainSegment {
  double z_start = 0.0;
  double length = 0.0;
  int sign = 1;
  const OpticalMedium* medium = nullptr;
};

enum class PoledMethod : std::uint8_t { DirectSum, GeometricSum };

struct KernelOptions {
  bool surface = true;
  std::uint8_t channel_mask = kAllChannels;
  unsigned threads = 1;
};

/// One (layer, channel) term of a layered-stack kernel at a single node,
/// already weighted by the linear propagation to the forward output port.
struct StackContribution {
  std::size_t layer = 0;
  DirectionChannel channel;
  double delta_k = 0.0;   // signed, rad/m
  double k_signal = 0.0;  // |k_z| of the signal in the layer
  double k_idler = 0.0;
  double v_signal = 0.0;
  double v_idler = 0.0;
  cplx volume;
  cplx surface_signal;
  cplx surface_idler;
};

namespace structures {

/// Contiguous tiling of the poled crystal, signs alternating from +. A
/// final domain cut short by total_length is kept.
std::vector<DomainSegment> segment_decomposition(const PoledCrystalSpec& spec);
std::vector<DomainSegment> segment_decomposition(const LayeredStackSpec& spec);

/// Fresnel transmission (normal incidence) from the crystal into its
/// surround at the signal and idler frequencies.
BoundaryCoefficients output_boundary(const BulkCrystalSpec& spec, double omega_s, double omega_i);

/// Collinear F,FF kernels of a homogeneous crystal:
/// F̃^m = t_s·t_i·(1 + V^m)·F_vol at every node.
KernelPair bulk_kernel(const BulkCrystalSpec& spec, const PumpSpectrum& pump,
                       const FrequencyGrid& grid, const KernelOptions& options = {});

/// Coherent sum over sign-alternating domains, each contributing
/// sign·(1 + V^m)·F_vol with its own pump phase. GeometricSum evaluates the
/// periodic sum in closed form and falls back to DirectSum (with a notice)
/// when the last domain is truncated.
KernelPair poled_kernel(const PoledCrystalSpec& spec, const PumpSpectrum& pump,
                        const FrequencyGrid& grid, PoledMethod method = PoledMethod::GeometricSum,
                        const KernelOptions& options = {});

/// Λ = 2π/|Δk(ωp/2, ωp/2)| for the collinear F,FF channel; nullopt when the
/// degenerate process is already phase matched.
std::optional<double> optimum_poling_period(const OpticalMedium& medium, double pump_wavelength);

/// Signal-frequency interval around degeneracy where |Δk − K|·L/2 stays
/// below (1 + lobes)·π, K being the poling grating vector (0 for bulk).
/// Clamped to the media windows. Throws DomainError when the degenerate
/// point itself lies outside that interval.
std::pair<double, double> cw_support_window(const OpticalMedium& medium, double length,
                                            double pump_omega, double grating_k, int lobes = 3);

/// External idler angle fixed by transverse momentum conservation; nullopt
/// when the idler would be evanescent in vacuum.
std::optional<double> idler_external_angle(double omega_s, double omega_i, double pump_angle,
                                           double signal_angle);

/// Every (layer, channel) term at one node. Throws DomainError if any field
/// is evanescent at this node.
std::vector<StackContribution> stack_contributions(const LayeredStackSpec& spec,
                                                   const PumpSpectrum& pump, double omega_s,
                                                   double omega_i,
                                                   std::uint8_t channel_mask = kAllChannels);

/// Coherent sum of stack_contributions over layers and channels at every
/// node. Nodes with evanescent fields are marked invalid and counted.
KernelPair stack_kernel(const LayeredStackSpec& spec, const PumpSpectrum& pump,
                        const FrequencyGrid& grid, const KernelOptions& options = {});

/// FNV-1a hash used for kernel provenance.
std::uint64_t provenance_hash(const std::string& description) noexcept;

}  // namespace structures
}  // namespace pairgen
