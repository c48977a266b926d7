#pragma once

#include <numbers>

namespace pairgen {

/// CODATA 2018 values in SI units. ε₀ is derived from μ₀ and c so that
/// c²μ₀ε₀ = 1 holds to rounding.
struct PhysicalConstants {
  static constexpr double c = 299792458.0;            // m/s
  static constexpr double hbar = 1.054571817e-34;     // J s
  static constexpr double mu0 = 1.25663706212e-6;     // H/m
  static constexpr double eps0 = 1.0 / (mu0 * c * c); // F/m
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Vacuum wavelength (m) for an angular frequency (rad/s) and back.
double vacuum_wavelength(double omega);
double angular_frequency(double wavelength);

}  // namespace pairgen
