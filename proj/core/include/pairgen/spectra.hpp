#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pairgen/amplitudes.hpp"
#include "pairgen/grid.hpp"

namespace pairgen {

/// Which kernel parts enter the joint density.
enum class DensityVariant : std::uint8_t { Volume, Surface, Total };

/// Real joint signal-idler photon-number density n(ωs,ωi) on a grid.
struct SpectralDensityMap {
  FrequencyGrid grid;
  DensityVariant variant = DensityVariant::Total;
  std::vector<double> values;       // zero at invalid nodes
  std::vector<std::uint8_t> valid;  // 1 where the node entered the computation
};

/// S_s(ωs) sampled on the signal axis (arbitrary units).
struct SpectrumCurve {
  std::vector<double> omega;
  std::vector<double> value;
};

namespace spectra {

/// Nodewise Re{F̃s*·F̃i} of the selected kernel parts. Throws DomainError when
/// the kernels do not match the grid.
SpectralDensityMap density_map(const KernelPair& kernels, const FrequencyGrid& grid,
                               DensityVariant variant);

/// S_s(ωs) = ħωs ∫dωi n(ωs,ωi); on a cw line the integral collapses to the
/// line value.
SpectrumCurve signal_spectrum(const SpectralDensityMap& map);

/// N = ∫dωs ∫dωi n (trapezoidal; a single integral along a cw line).
double pair_rate(const SpectralDensityMap& map);

/// N_total / N_vol − 1. Throws DomainError for N_vol <= 0.
double relative_surface_contribution(double n_total, double n_volume);

/// Pairwise (cascade) summation; order fixed by the input layout.
double pairwise_sum(std::span<const double> values) noexcept;

/// Composite trapezoid with uniform spacing.
double trapezoid(std::span<const double> values, double step) noexcept;

}  // namespace spectra
}  // namespace pairgen
