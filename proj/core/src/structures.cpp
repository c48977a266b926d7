#include "pairgen/structures.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/parallel.hpp"

namespace pairgen::structures {
namespace {

// Relative slack (in units of Λ) when deciding whether total_length is an
// integer number of periods or ends exactly on a domain wall.
constexpr double kTilingTolerance = 1e-9;

struct PoledLayout {
  std::size_t periods = 0;
  double plus_length = 0.0;
  double minus_length = 0.0;
  double tail_plus = 0.0;   // + domain after the last complete period
  double tail_minus = 0.0;  // − remainder after that
  bool uniform() const { return tail_minus == 0.0 && (tail_plus == 0.0 || tail_plus == plus_length); }
};

void check_poled(const PoledCrystalSpec& spec) {
  std::vector<std::string> problems;
  if (!(spec.poling_period > 0.0)) problems.push_back("poling_period must be positive");
  if (!(spec.duty_cycle > 0.0 && spec.duty_cycle < 1.0))
    problems.push_back("duty_cycle must lie in (0, 1)");
  if (!(spec.total_length > 0.0)) problems.push_back("total_length must be positive");
  if (!problems.empty()) {
    std::string msg = "invalid poled crystal:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw DomainError(msg);
  }
}

PoledLayout poled_layout(const PoledCrystalSpec& spec) {
  check_poled(spec);
  PoledLayout out;
  const double period = spec.poling_period;
  out.plus_length = spec.duty_cycle * period;
  out.minus_length = period - out.plus_length;
  const double tol = kTilingTolerance * period;
  out.periods = static_cast<std::size_t>(std::floor(spec.total_length / period + kTilingTolerance));
  double rest = spec.total_length - double(out.periods) * period;
  if (rest <= tol) rest = 0.0;
  if (std::abs(rest - out.plus_length) <= tol) {
    out.tail_plus = out.plus_length;
  } else if (rest > out.plus_length) {
    out.tail_plus = out.plus_length;
    out.tail_minus = rest - out.plus_length;
  } else {
    out.tail_plus = rest;
  }
  return out;
}

void check_bulk(const BulkCrystalSpec& spec) {
  if (!(spec.length > 0.0)) throw DomainError("bulk crystal length must be positive");
}

void check_stack(const LayeredStackSpec& spec) {
  std::vector<std::string> problems;
  if (spec.layers.empty()) problems.push_back("stack has no layers");
  for (std::size_t j = 0; j < spec.layers.size(); ++j) {
    if (!(spec.layers[j].thickness > 0.0))
      problems.push_back("layer " + std::to_string(j) + " thickness must be positive");
  }
  if (!spec.incident.is_linear()) problems.push_back("incident medium must be linear");
  if (!spec.exit.is_linear()) problems.push_back("exit medium must be linear");
  if (!problems.empty()) {
    std::string msg = "invalid layered stack:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw DomainError(msg);
  }
}

KernelPair empty_pair(std::size_t nodes, std::uint8_t mask, std::uint64_t provenance) {
  KernelPair out;
  for (TwoPhotonKernel* k : {&out.signal, &out.idler}) {
    k->channel_mask = mask;
    k->volume.assign(nodes, cplx{});
    k->surface.assign(nodes, cplx{});
    k->provenance = provenance;
  }
  out.signal.field = FieldTag::Signal;
  out.idler.field = FieldTag::Idler;
  out.valid.assign(nodes, 1);
  return out;
}

// Per-node validity flags, folded into the diagnostics after the parallel
// section so the counters never depend on the partitioning.
struct NodeFlags {
  std::uint32_t large = 0;
  std::uint32_t negative = 0;
};

void note_factor(NodeFlags& flags, double v) {
  const auto c = amplitudes::classify_surface_factor(v);
  flags.large += c.large ? 1u : 0u;
  flags.negative += c.negative ? 1u : 0u;
}

void fold_flags(KernelPair& out, const std::vector<NodeFlags>& flags) {
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (!out.valid[i]) ++out.diagnostics.invalid_nodes;
    out.diagnostics.large_surface_factor += flags[i].large;
    out.diagnostics.negative_surface_factor += flags[i].negative;
  }
}

// Collinear forward waves of one medium at a node.
struct CollinearWaves {
  double n_s, n_i;
  double k_s, k_i, k_p;
  double delta_k;
};

CollinearWaves collinear_waves(const OpticalMedium& medium, double omega_s, double omega_i) {
  CollinearWaves w{};
  const double omega_p = omega_s + omega_i;
  w.n_s = dispersion::refractive_index(medium, omega_s);
  w.n_i = dispersion::refractive_index(medium, omega_i);
  const double n_p = dispersion::refractive_index(medium, omega_p);
  w.k_s = dispersion::longitudinal_wave_vector(w.n_s, omega_s, 0.0);
  w.k_i = dispersion::longitudinal_wave_vector(w.n_i, omega_i, 0.0);
  w.k_p = dispersion::longitudinal_wave_vector(n_p, omega_p, 0.0);
  w.delta_k = w.k_p - w.k_s - w.k_i;
  return w;
}

std::string number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

// Σ_{p<P} e^{ipθ} evaluated as a Dirichlet kernel on θ reduced to (−π, π].
cplx periodic_sum(double theta, std::size_t periods) {
  if (periods == 0) return {0.0, 0.0};
  const double eps = std::remainder(theta, kTwoPi);
  const double p = double(periods);
  const double denom = std::sin(0.5 * eps);
  if (denom == 0.0) return {p, 0.0};
  return std::polar(std::sin(0.5 * p * eps) / denom, 0.5 * (p - 1.0) * eps);
}

}  // namespace

std::vector<DomainSegment> segment_decomposition(const PoledCrystalSpec& spec) {
  const PoledLayout layout = poled_layout(spec);
  const double period = spec.poling_period;
  const double total = spec.total_length;

  // Domain walls by multiplication (no running sum); the last wall is the
  // crystal end itself.
  std::vector<double> walls;
  walls.reserve(2 * layout.periods + 3);
  for (std::size_t p = 0; p < layout.periods; ++p) {
    walls.push_back(double(p) * period);
    walls.push_back(double(p) * period + layout.plus_length);
  }
  if (layout.tail_plus > 0.0) walls.push_back(double(layout.periods) * period);
  if (layout.tail_minus > 0.0)
    walls.push_back(double(layout.periods) * period + layout.plus_length);
  walls.push_back(total);

  std::vector<DomainSegment> out;
  out.reserve(walls.size() - 1);
  for (std::size_t j = 0; j + 1 < walls.size(); ++j) {
    out.push_back({walls[j], walls[j + 1] - walls[j], (j % 2 == 0) ? 1 : -1, &spec.medium});
  }
  return out;
}

std::vector<DomainSegment> segment_decomposition(const LayeredStackSpec& spec) {
  check_stack(spec);
  std::vector<DomainSegment> out;
  out.reserve(spec.layers.size());
  double z = 0.0;
  for (const auto& layer : spec.layers) {
    out.push_back({z, layer.thickness, layer.d_eff_sign, &layer.medium});
    z += layer.thickness;
  }
  return out;
}

BoundaryCoefficients output_boundary(const BulkCrystalSpec& spec, double omega_s, double omega_i) {
  BoundaryCoefficients b;
  b.t_signal = dispersion::fresnel_interface(dispersion::refractive_index(spec.medium, omega_s),
                                             dispersion::refractive_index(spec.surround, omega_s),
                                             0.0)
                   .t;
  b.t_idler = dispersion::fresnel_interface(dispersion::refractive_index(spec.medium, omega_i),
                                            dispersion::refractive_index(spec.surround, omega_i),
                                            0.0)
                  .t;
  return b;
}

KernelPair bulk_kernel(const BulkCrystalSpec& spec, const PumpSpectrum& pump,
                       const FrequencyGrid& grid, const KernelOptions& options) {
  check_bulk(spec);
  const std::uint8_t mask = options.channel_mask & 1u;
  const auto provenance = provenance_hash("bulk|" + spec.medium.name + "|" + number(spec.length) +
                                          "|" + spec.surround.name);
  KernelPair out = empty_pair(grid.size(), mask, provenance);
  if (mask == 0) {
    out.diagnostics.notices.push_back("bulk crystal only radiates into F,FF; channel mask excludes it");
    return out;
  }
  std::vector<NodeFlags> flags(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t node = begin; node < end; ++node) {
      const double ws = grid.signal_omega(node);
      const double wi = grid.idler_omega(node);
      CollinearWaves w;
      BoundaryCoefficients t;
      try {
        w = collinear_waves(spec.medium, ws, wi);
        t = output_boundary(spec, ws, wi);
      } catch (const DomainError&) {
        out.valid[node] = 0;
        continue;
      }
      const cplx g = amplitudes::coupling_constant(spec.medium.d_eff, ws, wi, w.n_s, w.n_i);
      const cplx ep = pump.forward_amplitude * pump.envelope(ws + wi);
      const cplx vol = amplitudes::transmitted_amplitude(
          amplitudes::volume_amplitude(g, ep, w.k_p, w.delta_k, spec.length), t.t_signal,
          t.t_idler);
      const double vs = amplitudes::surface_factor(w.delta_k, w.k_s);
      const double vi = amplitudes::surface_factor(w.delta_k, w.k_i);
      out.signal.volume[node] = vol;
      out.idler.volume[node] = vol;
      if (options.surface) {
        out.signal.surface[node] = amplitudes::surface_amplitude(vol, vs);
        out.idler.surface[node] = amplitudes::surface_amplitude(vol, vi);
        note_factor(flags[node], vs);
        note_factor(flags[node], vi);
      }
    }
  });
  fold_flags(out, flags);
  return out;
}

KernelPair poled_kernel(const PoledCrystalSpec& spec, const PumpSpectrum& pump,
                        const FrequencyGrid& grid, PoledMethod method,
                        const KernelOptions& options) {
  const PoledLayout layout = poled_layout(spec);
  const std::uint8_t mask = options.channel_mask & 1u;
  const auto provenance =
      provenance_hash("poled|" + spec.medium.name + "|" + number(spec.total_length) + "|" +
                      number(spec.poling_period) + "|" + number(spec.duty_cycle));
  KernelPair out = empty_pair(grid.size(), mask, provenance);
  if (mask == 0) {
    out.diagnostics.notices.push_back("poled crystal only radiates into F,FF; channel mask excludes it");
    return out;
  }
  if (method == PoledMethod::GeometricSum && !layout.uniform()) {
    out.diagnostics.notices.push_back(
        "last poled domain is truncated; geometric sum replaced by the direct domain sum");
    method = PoledMethod::DirectSum;
  }
  const std::vector<DomainSegment> segments =
      method == PoledMethod::DirectSum ? segment_decomposition(spec) : std::vector<DomainSegment>{};
  const double total = spec.total_length;
  const double period = spec.poling_period;

  std::vector<NodeFlags> flags(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t node = begin; node < end; ++node) {
      const double ws = grid.signal_omega(node);
      const double wi = grid.idler_omega(node);
      CollinearWaves w;
      try {
        w = collinear_waves(spec.medium, ws, wi);
      } catch (const DomainError&) {
        out.valid[node] = 0;
        continue;
      }
      const cplx g = amplitudes::coupling_constant(spec.medium.d_eff, ws, wi, w.n_s, w.n_i);
      const cplx ep = pump.forward_amplitude * pump.envelope(ws + wi);
      const double k_pair = w.k_s + w.k_i;
      // Domain of length l starting at z = 0, without the common
      // propagation phase e^{i(k_s+k_i)L} applied once at the end; that phase
      // is large for long crystals and is kept out of the sum.
      auto domain = [&](double l) {
        return amplitudes::volume_amplitude(g, ep, w.k_p, w.delta_k, l) *
               std::polar(1.0, -k_pair * l);
      };

      cplx sum;
      if (method == PoledMethod::DirectSum) {
        for (const auto& s : segments) {
          sum += double(s.sign) * domain(s.length) * std::polar(1.0, w.delta_k * s.z_start);
        }
      } else {
        const cplx a_plus = domain(layout.plus_length);
        const cplx pair =
            a_plus - domain(layout.minus_length) * std::polar(1.0, w.delta_k * layout.plus_length);
        sum = pair * periodic_sum(w.delta_k * period, layout.periods);
        if (layout.tail_plus > 0.0) {
          sum += a_plus * std::polar(1.0, w.delta_k * (double(layout.periods) * period));
        }
      }
      sum *= std::polar(1.0, k_pair * total);

      const double vs = amplitudes::surface_factor(w.delta_k, w.k_s);
      const double vi = amplitudes::surface_factor(w.delta_k, w.k_i);
      out.signal.volume[node] = sum;
      out.idler.volume[node] = sum;
      if (options.surface) {
        out.signal.surface[node] = amplitudes::surface_amplitude(sum, vs);
        out.idler.surface[node] = amplitudes::surface_amplitude(sum, vi);
        note_factor(flags[node], vs);
        note_factor(flags[node], vi);
      }
    }
  });
  fold_flags(out, flags);
  return out;
}

std::optional<double> optimum_poling_period(const OpticalMedium& medium, double pump_wavelength) {
  const double wp = angular_frequency(pump_wavelength);
  const double dk = dispersion::phase_mismatch(medium, 0.5 * wp, 0.5 * wp, kForwardChannel);
  if (dk == 0.0) return std::nullopt;
  return kTwoPi / std::abs(dk);
}

std::pair<double, double> cw_support_window(const OpticalMedium& medium, double length,
                                            double pump_omega, double grating_k, int lobes) {
  if (!(length > 0.0)) throw DomainError("support window needs a positive length");
  if (lobes < 0) throw DomainError("support window needs a non-negative lobe count");
  const double center = 0.5 * pump_omega;
  const double target = (1.0 + lobes) * kPi;
  auto excess = [&](double delta) {
    const double dk =
        dispersion::phase_mismatch(medium, center + delta, center - delta, kForwardChannel);
    return std::abs(std::abs(dk) - grating_k) * 0.5 * length;
  };
  if (excess(0.0) >= target) {
    throw DomainError(
        "degenerate point is not phase matched within the requested lobes; give an explicit "
        "signal range");
  }
  // Largest symmetric detuning with both photons inside the window.
  const double omega_hi = angular_frequency(medium.lambda_min);
  const double omega_lo = angular_frequency(medium.lambda_max);
  const double delta_max = (1.0 - 1e-12) * std::min(omega_hi - center, center - omega_lo);
  if (!(delta_max > 0.0)) throw DomainError("degenerate frequency outside the medium window");

  double lo = 0.0;
  double hi = std::min(1e-4 * center, delta_max);
  while (excess(hi) < target) {
    if (hi == delta_max) return {center - hi, center + hi};
    lo = hi;
    hi = std::min(2.0 * hi, delta_max);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * center; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < target ? lo : hi) = mid;
  }
  return {center - hi, center + hi};
}

std::optional<double> idler_external_angle(double omega_s, double omega_i, double pump_angle,
                                           double signal_angle) {
  const double s =
      ((omega_s + omega_i) * std::sin(pump_angle) - omega_s * std::sin(signal_angle)) / omega_i;
  if (!(std::abs(s) < 1.0)) return std::nullopt;
  return std::asin(s);
}

std::uint64_t provenance_hash(const std::string& description) noexcept {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : description) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace pairgen::structures
