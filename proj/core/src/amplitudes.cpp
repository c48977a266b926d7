#include "pairgen/amplitudes.hpp"

#include <cmath>
#include <sstream>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"

namespace pairgen {

PumpSpectrum PumpSpectrum::cw(double omega, cplx amplitude) {
  PumpSpectrum p;
  p.kind = Kind::Cw;
  p.center_omega = omega;
  p.forward_amplitude = amplitude;
  return p;
}

PumpSpectrum PumpSpectrum::pulsed(double center_omega, double sigma_omega, cplx peak) {
  PumpSpectrum p;
  p.kind = Kind::Pulsed;
  p.center_omega = center_omega;
  p.sigma_omega = sigma_omega;
  p.forward_amplitude = peak;
  return p;
}

double PumpSpectrum::envelope(double omega) const {
  if (kind == Kind::Cw) return 1.0;
  const double x = (omega - center_omega) / sigma_omega;
  return std::exp(-0.5 * x * x);
}

namespace amplitudes {

cplx coupling_constant(double d_eff, double omega_s, double omega_i, double n_s, double n_i) {
  const double magnitude = 2.0 * d_eff * std::sqrt(omega_s * omega_i) /
                           (PhysicalConstants::c * std::sqrt(kTwoPi) * std::sqrt(n_s * n_i));
  return {0.0, magnitude};
}

double sinc(double x) noexcept {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

cplx volume_amplitude(cplx g, cplx pump, double k_pump, double delta_k, double length,
                      double z0) {
  if (length == 0.0) return {0.0, 0.0};
  const double half = 0.5 * delta_k * length;
  const cplx phase = std::polar(1.0, k_pump * (z0 + length) - half);
  return g * pump * phase * (length * sinc(half));
}

double surface_factor(double delta_k, double k_m) {
  if (!(k_m > 0.0)) {
    std::ostringstream os;
    os << "surface_factor: wave-vector magnitude must be positive, got " << k_m;
    throw DomainError(os.str());
  }
  return delta_k / k_m;
}

cplx surface_amplitude(cplx f_volume, double v) noexcept { return v * f_volume; }

cplx total_amplitude(cplx f_volume, cplx f_surface) noexcept { return f_volume + f_surface; }

cplx transmitted_amplitude(cplx f, double t_s, double t_i) noexcept { return (t_s * t_i) * f; }

double joint_density(cplx f_signal, cplx f_idler) noexcept {
  // Re{conj(a)·b} written out so no imaginary residue is ever formed.
  return f_signal.real() * f_idler.real() + f_signal.imag() * f_idler.imag();
}

cplx bulk_substitution(cplx phi_volume, double v_s, double v_i) {
  const double a = 1.0 + v_s;
  const double b = 1.0 + v_i;
  if (a < 0.0 || b < 0.0) {
    std::ostringstream os;
    os << "first-order surface substitution invalid: 1+Vs = " << a << ", 1+Vi = " << b;
    throw PerturbativeError(os.str());
  }
  return std::sqrt(a) * std::sqrt(b) * phi_volume;
}

cplx surface_correction_kernel(cplx g, cplx pump, double k_s) {
  return cplx{0.0, 1.0 / k_s} * g * pump;
}

cplx nonlinear_magnetic_kernel(cplx g, cplx pump, double omega_s, double n_s, double k_pump,
                               double k_idler, double z, double area) {
  const double prefactor =
      std::sqrt(PhysicalConstants::hbar * PhysicalConstants::c /
                (2.0 * PhysicalConstants::mu0 * omega_s * n_s * area));
  return prefactor * g * pump * std::polar(1.0, (k_pump - k_idler) * z);
}

Validity classify_surface_factor(double v) noexcept {
  return {std::abs(v) >= 1.0, 1.0 + v < 0.0};
}

}  // namespace amplitudes
}  // namespace pairgen
