#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pairgen {

enum class Direction : std::uint8_t { Forward, Backward };

/// +1 for forward (+z) propagation, -1 for backward.
constexpr double direction_sign(Direction d) noexcept { return d == Direction::Forward ? 1.0 : -1.0; }

enum class FieldRole : std::uint8_t { Pump, Signal, Idler };

struct FieldMode {
  FieldRole role = FieldRole::Signal;
  Direction direction = Direction::Forward;
  double angular_frequency = 0.0;  // rad/s
  double external_angle = 0.0;     // rad, measured in vacuum outside the structure
};

/// Propagation directions of pump, signal and idler in one interaction term.
struct DirectionChannel {
  Direction pump = Direction::Forward;
  Direction signal = Direction::Forward;
  Direction idler = Direction::Forward;

  /// Bit position in a channel mask; F,FF is 0 and B,BB is 7.
  constexpr unsigned index() const noexcept {
    return (pump == Direction::Backward ? 4u : 0u) | (signal == Direction::Backward ? 2u : 0u) |
           (idler == Direction::Backward ? 1u : 0u);
  }

  static constexpr DirectionChannel from_index(unsigned i) noexcept {
    return {(i & 4u) ? Direction::Backward : Direction::Forward,
            (i & 2u) ? Direction::Backward : Direction::Forward,
            (i & 1u) ? Direction::Backward : Direction::Forward};
  }

  static constexpr std::array<DirectionChannel, 8> all() noexcept {
    std::array<DirectionChannel, 8> out{};
    for (unsigned i = 0; i < 8; ++i) out[i] = from_index(i);
    return out;
  }

  /// "F,FF" style label: pump, then signal and idler.
  std::string label() const;

  /// Inverse of label(); nullopt for malformed text.
  static std::optional<DirectionChannel> parse(std::string_view text);

  friend constexpr bool operator==(const DirectionChannel&, const DirectionChannel&) = default;
};

inline constexpr DirectionChannel kForwardChannel{};
inline constexpr std::uint8_t kAllChannels = 0xFF;

struct ConstantIndex {
  double n0 = 1.0;
};

/// n² = constant + Σ strength·λ²/(λ² − resonance), λ in µm, resonance in µm².
struct SellmeierIndex {
  struct Term {
    double strength = 0.0;
    double resonance_um2 = 0.0;
  };
  double constant = 1.0;
  std::vector<Term> terms;
};

using IndexModel = std::variant<ConstantIndex, SellmeierIndex>;

/// Dispersion and effective nonlinearity of one material.
struct OpticalMedium {
  std::string name;
  IndexModel index_model = ConstantIndex{};
  double d_eff = 0.0;              // m/V; zero marks a linear medium
  double lambda_min = 1e-9;        // m, transparency window
  double lambda_max = 1e-3;        // m
  std::string source;              // literature reference for the coefficients

  bool is_linear() const noexcept { return d_eff == 0.0; }
};

OpticalMedium vacuum_medium();

/// External (vacuum-side) angles of the three interacting fields.
struct EmissionAngles {
  double pump = 0.0;
  double signal = 0.0;
  double idler = 0.0;
};

struct FresnelCoefficients {
  double t = 1.0;
  double r = 0.0;
};

namespace dispersion {

/// Refractive index at angular frequency omega. Throws DomainError when the
/// vacuum wavelength lies outside the medium's transparency window.
double refractive_index(const OpticalMedium& medium, double omega);

/// True when 2πc/omega is inside the transparency window.
bool in_window(const OpticalMedium& medium, double omega) noexcept;

/// Signed longitudinal wave vector s·(ω/c)·√(n² − sin²θ_ext), s = −1 for
/// backward fields. Throws DomainError for evanescent propagation.
double wave_vector(const OpticalMedium& medium, const FieldMode& mode);

/// Longitudinal wave-vector magnitude for a known index; shared by callers
/// that already evaluated n(ω).
double longitudinal_wave_vector(double n, double omega, double external_angle);

/// k_p(ωs+ωi) − k_s(ωs) − k_i(ωi) with signed wave vectors for the channel.
double phase_mismatch(const OpticalMedium& medium, double omega_s, double omega_i,
                      DirectionChannel channel, const EmissionAngles& angles = {});

/// π/|Δk|. nullopt marks an infinite coherence length (Δk = 0).
std::optional<double> coherence_length(double delta_k) noexcept;

/// s-polarization amplitude coefficients for a wave going from n1 into n2
/// at incidence angle theta1 (rad). Throws DomainError on total reflection.
FresnelCoefficients fresnel_interface(double n1, double n2, double theta1);

}  // namespace dispersion
}  // namespace pairgen
