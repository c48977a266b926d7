#pragma once

#include <cstddef>
#include <cstdint>

namespace pairgen {

enum class GridMode : std::uint8_t { CwLine, Full2D };

/// Uniform frequency grid. A cw-line grid samples ωs and fixes ωi = ωp⁰ − ωs;
/// a full-2D grid is the rectangle ωs × ωi with node index is·ni + ii.
class FrequencyGrid {
 public:
  static constexpr std::size_t kMinNodes = 16;

  /// Throws DomainError for fewer than kMinNodes nodes, an empty range, or a
  /// range reaching ωs >= ωp⁰.
  static FrequencyGrid cw_line(double pump_omega, double omega_s_min, double omega_s_max,
                               std::size_t nodes);
  static FrequencyGrid full_2d(double omega_s_min, double omega_s_max, std::size_t signal_nodes,
                               double omega_i_min, double omega_i_max, std::size_t idler_nodes);

  GridMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return mode_ == GridMode::CwLine ? ns_ : ns_ * ni_; }
  std::size_t signal_nodes() const noexcept { return ns_; }
  std::size_t idler_nodes() const noexcept { return mode_ == GridMode::CwLine ? 1 : ni_; }

  double pump_omega() const noexcept { return pump_omega_; }
  double signal_axis(std::size_t is) const noexcept;
  double idler_axis(std::size_t ii) const noexcept;
  double signal_step() const noexcept { return (ws_max_ - ws_min_) / double(ns_ - 1); }
  double idler_step() const noexcept { return (wi_max_ - wi_min_) / double(ni_ - 1); }
  double signal_min() const noexcept { return ws_min_; }
  double signal_max() const noexcept { return ws_max_; }
  double idler_min() const noexcept { return wi_min_; }
  double idler_max() const noexcept { return wi_max_; }

  double signal_omega(std::size_t node) const noexcept;
  double idler_omega(std::size_t node) const noexcept;

  /// Same ranges with the spacing halved (2n − 1 nodes per axis); every node
  /// of *this is also a node of the result.
  FrequencyGrid refined() const;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

 private:
  FrequencyGrid() = default;

  GridMode mode_ = GridMode::CwLine;
  double pump_omega_ = 0.0;
  double ws_min_ = 0.0, ws_max_ = 0.0;
  double wi_min_ = 0.0, wi_max_ = 0.0;
  std::size_t ns_ = 0, ni_ = 0;
};

}  // namespace pairgen
