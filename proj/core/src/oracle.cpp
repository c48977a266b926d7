#include "pairgen/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <Eigen/Dense>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"

namespace pairgen {

double relative_error(cplx analytic, cplx oracle) noexcept {
  const double diff = std::abs(analytic - oracle);
  const double scale = std::abs(oracle);
  return scale == 0.0 ? diff : diff / scale;
}

OracleReport make_report(std::string case_id, cplx analytic, cplx oracle, double tolerance) {
  OracleReport r;
  r.case_id = std::move(case_id);
  r.analytic = analytic;
  r.oracle = oracle;
  r.rel_error = relative_error(analytic, oracle);
  r.tolerance = tolerance;
  r.pass = r.rel_error <= tolerance;
  return r;
}

namespace oracle {
namespace {

// Neumaier-compensated complex accumulator.
struct CompensatedSum {
  double re = 0.0, re_c = 0.0;
  double im = 0.0, im_c = 0.0;

  static void add(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  void operator+=(cplx x) {
    add(re, re_c, x.real());
    add(im, im_c, x.imag());
  }
  cplx value() const { return {re + re_c, im + im_c}; }
};

std::string case_name(const char* prefix, std::size_t i) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s-%04zu", prefix, i);
  return buf;
}

cplx random_complex(std::mt19937_64& rng, double log10_lo, double log10_hi) {
  std::uniform_real_distribution<double> mag(log10_lo, log10_hi);
  std::uniform_real_distribution<double> arg(-kPi, kPi);
  return std::polar(std::pow(10.0, mag(rng)), arg(rng));
}

}  // namespace

std::size_t volume_steps(double delta_k, double length) {
  const double needed = std::ceil(std::abs(delta_k * length) / 4e-4);
  std::size_t steps = std::max<std::size_t>(1000, static_cast<std::size_t>(needed));
  return steps + (steps % 2);
}

cplx integrate_volume_kernel(cplx g, cplx pump, double k_pump, double delta_k, double length,
                             std::size_t steps) {
  steps = std::max<std::size_t>(steps, 1000);
  steps += steps % 2;
  const double h = length / double(steps);
  CompensatedSum acc;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double z = length * (double(i) / double(steps));
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * std::exp(cplx(0.0, -delta_k * (length - z)));
  }
  return g * pump * std::exp(cplx(0.0, k_pump * length)) * (h / 3.0) * acc.value();
}

std::pair<cplx, cplx> solve_boundary(cplx h_forward, cplx h_backward, double k_s, double omega_s,
                                     double n_s, double area) {
  if (!(k_s > 0.0)) throw DomainError("boundary system is singular for k_s <= 0");
  const double mu0 = PhysicalConstants::mu0;
  const double admittance = k_s / (omega_s * mu0);
  // Unknowns (δE_F, δE_B):
  //   δE_F − δE_B = 0                       (tangential E continuous)
  //   Y·δE_F + Y·δE_B = −(H_F + H_B)        (tangential H continuous)
  Eigen::Matrix2cd a;
  a << 1.0, -1.0, admittance, admittance;
  Eigen::Vector2cd b(0.0, -(h_forward + h_backward));
  const Eigen::Vector2cd de = a.fullPivLu().solve(b);
  const double norm = std::sqrt(PhysicalConstants::hbar * omega_s /
                                (2.0 * PhysicalConstants::eps0 * PhysicalConstants::c * area * n_s));
  const cplx to_mode = cplx(0.0, norm);
  return {de(0) / to_mode, de(1) / to_mode};
}

cplx poled_direct_sum(const PoledCrystalSpec& spec, const PumpSpectrum& pump, double omega_s,
                      double omega_i, bool include_surface, FieldTag field) {
  const double wp = omega_s + omega_i;
  const double n_s = dispersion::refractive_index(spec.medium, omega_s);
  const double n_i = dispersion::refractive_index(spec.medium, omega_i);
  const double n_p = dispersion::refractive_index(spec.medium, wp);
  const double c = PhysicalConstants::c;
  const double k_s = n_s * (omega_s / c);
  const double k_i = n_i * (omega_i / c);
  const double dk = n_p * (wp / c) - k_s - k_i;
  const cplx g(0.0, 2.0 * spec.medium.d_eff * std::sqrt(omega_s * omega_i) /
                        (c * std::sqrt(2.0 * kPi * n_s * n_i)));
  const double v = include_surface ? dk / (field == FieldTag::Signal ? k_s : k_i) : 0.0;
  const cplx ep = pump.forward_amplitude * pump.envelope(wp);

  const double period = spec.poling_period;
  const double total = spec.total_length;
  const double plus = spec.duty_cycle * period;
  const double tol = 1e-9 * period;
  cplx sum;
  for (std::size_t p = 0;; ++p) {
    const double starts[2] = {double(p) * period, double(p) * period + plus};
    const double ends[2] = {double(p) * period + plus, double(p + 1) * period};
    bool done = false;
    for (int half = 0; half < 2; ++half) {
      const double z = starts[half];
      if (z >= total - tol) {
        done = true;
        break;
      }
      const double z_end = ends[half] > total - tol ? total : ends[half];
      const double l = z_end - z;
      const double x = 0.5 * dk * l;
      const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
      const double sign = half == 0 ? 1.0 : -1.0;
      sum += sign * (1.0 + v) * l * sinc * std::exp(cplx(0.0, dk * (z + 0.5 * l)));
    }
    if (done) break;
  }
  return g * ep * std::exp(cplx(0.0, (k_s + k_i) * total)) * sum;
}

std::vector<OracleReport> volume_suite(std::uint64_t seed, std::size_t cases, double tolerance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_length(-8.0, -2.0);
  std::uniform_real_distribution<double> phase(-40.0, 40.0);
  std::uniform_real_distribution<double> k_pump(1e6, 3e7);
  std::vector<OracleReport> out;
  out.reserve(cases);
  for (std::size_t i = 0; i < cases; ++i) {
    const double length = std::pow(10.0, log_length(rng));
    const double dk = phase(rng) / length;
    const double kp = k_pump(rng);
    const cplx g = random_complex(rng, -3.0, 3.0);
    const cplx ep = random_complex(rng, -3.0, 3.0);
    const cplx analytic = amplitudes::volume_amplitude(g, ep, kp, dk, length);
    const cplx brute = integrate_volume_kernel(g, ep, kp, dk, length, volume_steps(dk, length));
    out.push_back(make_report(case_name("volume", i), analytic, brute, tolerance));
  }
  return out;
}

std::vector<OracleReport> boundary_suite(std::uint64_t seed, std::size_t cases, double tolerance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> wavelength(300e-9, 3000e-9);
  std::uniform_real_distribution<double> index(1.0, 4.0);
  std::uniform_real_distribution<double> log_area(-12.0, -6.0);
  std::uniform_real_distribution<double> k_pump(1e6, 3e7);
  std::vector<OracleReport> out;
  out.reserve(cases);
  for (std::size_t i = 0; i < cases; ++i) {
    const double ws = angular_frequency(wavelength(rng));
    const double n_s = index(rng);
    const double k_s = n_s * ws / PhysicalConstants::c;
    const double area = std::pow(10.0, log_area(rng));
    const double kp = k_pump(rng);
    const double ki = k_pump(rng);
    const cplx g = random_complex(rng, -3.0, 3.0);
    const cplx ep = random_complex(rng, -3.0, 3.0);
    // Both directions see the same nonlinear source at the input face.
    const cplx h = amplitudes::nonlinear_magnetic_kernel(g, ep, ws, n_s, kp, ki, 0.0, area);
    const auto [da_f, da_b] = solve_boundary(h, h, k_s, ws, n_s, area);
    const cplx closed = amplitudes::surface_correction_kernel(g, ep, k_s);
    OracleReport f = make_report(case_name("boundary", i), closed, da_f, tolerance);
    const OracleReport b = make_report(f.case_id, closed, da_b, tolerance);
    if (b.rel_error > f.rel_error) f = b;
    out.push_back(f);
  }
  return out;
}

std::vector<OracleReport> poled_suite(const OpticalMedium& medium, std::uint64_t seed,
                                      std::size_t cases, std::size_t max_domains,
                                      double tolerance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pump_um(0.4, 1.0);
  std::uniform_real_distribution<double> detune(0.97, 1.03);
  std::uniform_real_distribution<double> duty(0.2, 0.8);
  std::uniform_real_distribution<double> log_domains(0.0, std::log10(double(max_domains)));
  std::bernoulli_distribution half_duty(0.5);
  std::vector<OracleReport> out;
  out.reserve(cases);
  for (std::size_t i = 0; i < cases; ++i) {
    const double lp = pump_um(rng) * 1e-6;
    const auto opt = structures::optimum_poling_period(medium, lp);
    if (!opt) throw DomainError("poled oracle suite needs a dispersive medium");
    PoledCrystalSpec spec;
    spec.medium = medium;
    spec.poling_period = *opt * detune(rng);
    spec.duty_cycle = half_duty(rng) ? 0.5 : duty(rng);
    auto domains = static_cast<std::size_t>(std::llround(std::pow(10.0, log_domains(rng))));
    domains = std::clamp<std::size_t>(domains, spec.duty_cycle < 0.5 ? 2 : 1, max_domains);
    spec.total_length = double(domains / 2) * spec.poling_period +
                        (domains % 2 ? spec.duty_cycle * spec.poling_period : 0.0);

    const double wp = angular_frequency(lp);
    const auto grid = FrequencyGrid::cw_line(wp, 0.49 * wp, 0.51 * wp, FrequencyGrid::kMinNodes);
    const PumpSpectrum pump = PumpSpectrum::cw(wp);
    const KernelPair k = structures::poled_kernel(spec, pump, grid, PoledMethod::GeometricSum);

    double worst = 0.0, scale = 0.0;
    std::size_t peak = 0;
    for (std::size_t node = 0; node < grid.size(); ++node) {
      const double ws = grid.signal_omega(node);
      const double wi = grid.idler_omega(node);
      const cplx os = poled_direct_sum(spec, pump, ws, wi, true, FieldTag::Signal);
      const cplx oi = poled_direct_sum(spec, pump, ws, wi, true, FieldTag::Idler);
      worst = std::max({worst, std::abs(k.signal.total(node) - os), std::abs(k.idler.total(node) - oi)});
      if (std::abs(os) > scale) {
        scale = std::abs(os);
        peak = node;
      }
      scale = std::max(scale, std::abs(oi));
    }
    OracleReport r;
    r.case_id = case_name("poled", i);
    r.analytic = k.signal.total(peak);
    r.oracle = poled_direct_sum(spec, pump, grid.signal_omega(peak), grid.idler_omega(peak), true,
                                FieldTag::Signal);
    r.rel_error = scale == 0.0 ? worst : worst / scale;
    r.tolerance = tolerance;
    r.pass = r.rel_error <= tolerance;
    out.push_back(r);
  }
  return out;
}

}  // namespace oracle
}  // namespace pairgen
