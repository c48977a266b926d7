#pragma once

#include <vector>

#include <Eigen/Core>

#include "pairgen/amplitudes.hpp"
#include "pairgen/structures.hpp"

namespace pairgen {

/// Forward/backward amplitudes of E_y = a·e^{ik_z u} + b·e^{−ik_z u}, with u
/// measured from the left face of the medium (from the interface for the two
/// half-spaces).
struct LayerAmplitudes {
  cplx forward;
  cplx backward;
};

/// Linear s-polarized response of a layered stack at one (ω, θ_ext).
/// Media are indexed 0 (incident half-space), 1..N (layers), N+1 (exit).
struct StackResponse {
  std::vector<double> index;  // n per medium
  std::vector<double> kz;     // longitudinal wave vector per medium
  /// interfaces[m] maps amplitudes at the right face of medium m to the left
  /// face of medium m+1.
  std::vector<Eigen::Matrix2cd> interfaces;
  /// cumulative[m] maps incident-side amplitudes to the left face of medium
  /// m; cumulative[N+1] is the full system matrix.
  std::vector<Eigen::Matrix2cd> cumulative;
  /// Field for the requested illumination, per medium.
  std::vector<LayerAmplitudes> field;
  /// Amplitude leaving through the exit side for a unit forward (.forward)
  /// or backward (.backward) source referenced to the left face of layer m
  /// (entries 0..N−1).
  std::vector<LayerAmplitudes> output_coupling;
  cplx transmission;  // unit forward incidence, exit-side amplitude
  cplx reflection;
};

namespace structures {

/// Characteristic-matrix chain for s-polarization. incident_forward enters
/// from the incident side, incident_backward from the exit side. Throws
/// DomainError on evanescent propagation in any medium.
StackResponse transfer_matrix(const LayeredStackSpec& spec, double omega, double external_angle,
                              cplx incident_forward = {1.0, 0.0},
                              cplx incident_backward = {0.0, 0.0});

}  // namespace structures
}  // namespace pairgen
