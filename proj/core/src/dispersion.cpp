#include "pairgen/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"

namespace pairgen {

namespace {

char direction_letter(Direction d) { return d == Direction::Forward ? 'F' : 'B'; }

std::optional<Direction> parse_direction(char c) {
  if (c == 'F' || c == 'f') return Direction::Forward;
  if (c == 'B' || c == 'b') return Direction::Backward;
  return std::nullopt;
}

struct IndexEvaluator {
  double lambda_um;

  double operator()(const ConstantIndex& m) const { return m.n0; }

  double operator()(const SellmeierIndex& m) const {
    const double l2 = lambda_um * lambda_um;
    double n2 = m.constant;
    for (const auto& term : m.terms) n2 += term.strength * l2 / (l2 - term.resonance_um2);
    return std::sqrt(n2);
  }
};

}  // namespace

std::string DirectionChannel::label() const {
  return {direction_letter(pump), ',', direction_letter(signal), direction_letter(idler)};
}

std::optional<DirectionChannel> DirectionChannel::parse(std::string_view text) {
  if (text.size() != 4 || text[1] != ',') return std::nullopt;
  auto p = parse_direction(text[0]);
  auto s = parse_direction(text[2]);
  auto i = parse_direction(text[3]);
  if (!p || !s || !i) return std::nullopt;
  return DirectionChannel{*p, *s, *i};
}

OpticalMedium vacuum_medium() {
  OpticalMedium m;
  m.name = "vacuum";
  m.index_model = ConstantIndex{1.0};
  m.lambda_min = 1e-12;
  m.lambda_max = 1.0;
  m.source = "definition";
  return m;
}

namespace dispersion {

bool in_window(const OpticalMedium& medium, double omega) noexcept {
  if (!(omega > 0.0)) return false;
  const double lambda = vacuum_wavelength(omega);
  return lambda >= medium.lambda_min && lambda <= medium.lambda_max;
}

double refractive_index(const OpticalMedium& medium, double omega) {
  if (!in_window(medium, omega)) {
    std::ostringstream os;
    os << "medium '" << medium.name << "': wavelength " << vacuum_wavelength(omega) * 1e9
       << " nm is outside the transparency window [" << medium.lambda_min * 1e9 << ", "
       << medium.lambda_max * 1e9 << "] nm";
    throw DomainError(os.str());
  }
  const double n = std::visit(IndexEvaluator{vacuum_wavelength(omega) * 1e6}, medium.index_model);
  if (!(n >= 1.0) || !std::isfinite(n)) {
    std::ostringstream os;
    os << "medium '" << medium.name << "': index model gives n = " << n << " at "
       << vacuum_wavelength(omega) * 1e9 << " nm";
    throw DomainError(os.str());
  }
  return n;
}

double longitudinal_wave_vector(double n, double omega, double external_angle) {
  const double k0 = omega / PhysicalConstants::c;
  if (external_angle == 0.0) return n * k0;
  const double s = std::sin(external_angle);
  const double q = n * n - s * s;
  if (!(q > 0.0)) {
    std::ostringstream os;
    os << "evanescent propagation: sin(theta_ext) = " << s << " >= n = " << n;
    throw DomainError(os.str());
  }
  return k0 * std::sqrt(q);
}

double wave_vector(const OpticalMedium& medium, const FieldMode& mode) {
  const double n = refractive_index(medium, mode.angular_frequency);
  return direction_sign(mode.direction) *
         longitudinal_wave_vector(n, mode.angular_frequency, mode.external_angle);
}

double phase_mismatch(const OpticalMedium& medium, double omega_s, double omega_i,
                      DirectionChannel channel, const EmissionAngles& angles) {
  const double kp =
      wave_vector(medium, {FieldRole::Pump, channel.pump, omega_s + omega_i, angles.pump});
  const double ks = wave_vector(medium, {FieldRole::Signal, channel.signal, omega_s, angles.signal});
  const double ki = wave_vector(medium, {FieldRole::Idler, channel.idler, omega_i, angles.idler});
  return kp - ks - ki;
}

std::optional<double> coherence_length(double delta_k) noexcept {
  if (delta_k == 0.0) return std::nullopt;
  return kPi / std::abs(delta_k);
}

FresnelCoefficients fresnel_interface(double n1, double n2, double theta1) {
  if (!(n1 >= 1.0) || !(n2 >= 1.0)) throw DomainError("fresnel_interface: indices must be >= 1");
  const double sin2 = n1 * std::sin(theta1) / n2;
  if (!(std::abs(sin2) < 1.0)) throw DomainError("fresnel_interface: total reflection");
  if (n1 == n2) return {1.0, 0.0};
  const double cos1 = std::cos(theta1);
  const double cos2 = std::sqrt(1.0 - sin2 * sin2);
  const double a = n1 * cos1;
  const double b = n2 * cos2;
  return {2.0 * a / (a + b), (a - b) / (a + b)};
}

}  // namespace dispersion
}  // namespace pairgen
