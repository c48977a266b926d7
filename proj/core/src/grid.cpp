#include "pairgen/grid.hpp"

#include <string>

#include "pairgen/errors.hpp"

namespace pairgen {

namespace {

void check_axis(double lo, double hi, std::size_t nodes, const char* what) {
  if (nodes < FrequencyGrid::kMinNodes) {
    throw DomainError(std::string(what) + ": at least " +
                      std::to_string(FrequencyGrid::kMinNodes) + " nodes are required, got " +
                      std::to_string(nodes));
  }
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError(std::string(what) + ": empty or non-positive range");
}

double axis_value(double lo, double hi, std::size_t n, std::size_t k) {
  // Endpoints are reproduced exactly so refined grids share nodes bitwise.
  if (k == 0) return lo;
  if (k + 1 == n) return hi;
  const double t = double(k) / double(n - 1);
  return lo + (hi - lo) * t;
}

}  // namespace

FrequencyGrid FrequencyGrid::cw_line(double pump_omega, double omega_s_min, double omega_s_max,
                                     std::size_t nodes) {
  check_axis(omega_s_min, omega_s_max, nodes, "cw-line grid");
  if (!(omega_s_max < pump_omega)) throw DomainError("cw-line grid: signal range must stay below the pump frequency");
  FrequencyGrid g;
  g.mode_ = GridMode::CwLine;
  g.pump_omega_ = pump_omega;
  g.ws_min_ = omega_s_min;
  g.ws_max_ = omega_s_max;
  g.ns_ = nodes;
  g.wi_min_ = pump_omega - omega_s_max;
  g.wi_max_ = pump_omega - omega_s_min;
  g.ni_ = 1;
  return g;
}

FrequencyGrid FrequencyGrid::full_2d(double omega_s_min, double omega_s_max,
                                     std::size_t signal_nodes, double omega_i_min,
                                     double omega_i_max, std::size_t idler_nodes) {
  check_axis(omega_s_min, omega_s_max, signal_nodes, "full-2D grid (signal)");
  check_axis(omega_i_min, omega_i_max, idler_nodes, "full-2D grid (idler)");
  FrequencyGrid g;
  g.mode_ = GridMode::Full2D;
  g.ws_min_ = omega_s_min;
  g.ws_max_ = omega_s_max;
  g.ns_ = signal_nodes;
  g.wi_min_ = omega_i_min;
  g.wi_max_ = omega_i_max;
  g.ni_ = idler_nodes;
  return g;
}

double FrequencyGrid::signal_axis(std::size_t is) const noexcept {
  return axis_value(ws_min_, ws_max_, ns_, is);
}

double FrequencyGrid::idler_axis(std::size_t ii) const noexcept {
  return axis_value(wi_min_, wi_max_, ni_, ii);
}

double FrequencyGrid::signal_omega(std::size_t node) const noexcept {
  return mode_ == GridMode::CwLine ? signal_axis(node) : signal_axis(node / ni_);
}

double FrequencyGrid::idler_omega(std::size_t node) const noexcept {
  return mode_ == GridMode::CwLine ? pump_omega_ - signal_axis(node) : idler_axis(node % ni_);
}

FrequencyGrid FrequencyGrid::refined() const {
  if (mode_ == GridMode::CwLine) return cw_line(pump_omega_, ws_min_, ws_max_, 2 * ns_ - 1);
  return full_2d(ws_min_, ws_max_, 2 * ns_ - 1, wi_min_, wi_max_, 2 * ni_ - 1);
}

}  // namespace pairgen
