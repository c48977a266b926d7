#include "pairgen/transfer_matrix.hpp"

#include <array>
#include <sstream>

#include <Eigen/Dense>

#include "pairgen/errors.hpp"
#include "pairgen/parallel.hpp"

namespace pairgen::structures {
namespace {

using Mat2 = Eigen::Matrix2cd;

const OpticalMedium& medium_at(const LayeredStackSpec& spec, std::size_t m) {
  if (m == 0) return spec.incident;
  if (m == spec.layers.size() + 1) return spec.exit;
  return spec.layers[m - 1].medium;
}

Mat2 interface_matrix(double k_left, double k_right) {
  // Continuity of E_y and of H_x ∝ k_z·(a − b) across a flat interface.
  const double r = k_left / k_right;
  Mat2 m;
  m << 0.5 * (1.0 + r), 0.5 * (1.0 - r), 0.5 * (1.0 - r), 0.5 * (1.0 + r);
  return m;
}

Mat2 propagation_matrix(double k, double length) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::polar(1.0, k * length);
  m(1, 1) = std::polar(1.0, -k * length);
  return m;
}

// Everything the per-layer sum needs at one node.
struct NodeResponses {
  StackResponse pump;
  StackResponse signal;
  StackResponse idler;
};

void accumulate_contributions(const LayeredStackSpec& spec, const NodeResponses& r, double omega_s,
                              double omega_i, std::uint8_t mask,
                              std::vector<StackContribution>& out) {
  for (std::size_t j = 0; j < spec.layers.size(); ++j) {
    const StackLayer& layer = spec.layers[j];
    if (layer.medium.is_linear() || layer.d_eff_sign == 0) continue;
    const std::size_t m = j + 1;
    const double l = layer.thickness;
    const cplx g = amplitudes::coupling_constant(layer.medium.d_eff * layer.d_eff_sign, omega_s,
                                                 omega_i, r.signal.index[m], r.idler.index[m]);
    const double kp = r.pump.kz[m];
    const double ks = r.signal.kz[m];
    const double ki = r.idler.kz[m];
    for (unsigned c = 0; c < 8; ++c) {
      if (!(mask & (1u << c))) continue;
      const DirectionChannel ch = DirectionChannel::from_index(c);
      const double sp = direction_sign(ch.pump);
      const double ss = direction_sign(ch.signal);
      const double si = direction_sign(ch.idler);
      const cplx ep = ch.pump == Direction::Forward ? r.pump.field[m].forward
                                                    : r.pump.field[m].backward;
      const cplx ts = ch.signal == Direction::Forward ? r.signal.output_coupling[j].forward
                                                      : r.signal.output_coupling[j].backward;
      const cplx ti = ch.idler == Direction::Forward ? r.idler.output_coupling[j].forward
                                                     : r.idler.output_coupling[j].backward;
      StackContribution sc;
      sc.layer = j;
      sc.channel = ch;
      sc.delta_k = sp * kp - ss * ks - si * ki;
      sc.k_signal = ks;
      sc.k_idler = ki;
      // Amplitude referenced to the layer's left face, then carried out.
      sc.volume = amplitudes::volume_amplitude(g, ep, sp * kp, sc.delta_k, l) *
                  std::polar(1.0, -(ss * ks + si * ki) * l) * ts * ti;
      sc.v_signal = amplitudes::surface_factor(sc.delta_k, ks);
      sc.v_idler = amplitudes::surface_factor(sc.delta_k, ki);
      sc.surface_signal = amplitudes::surface_amplitude(sc.volume, sc.v_signal);
      sc.surface_idler = amplitudes::surface_amplitude(sc.volume, sc.v_idler);
      out.push_back(sc);
    }
  }
}

NodeResponses node_responses(const LayeredStackSpec& spec, const PumpSpectrum& pump,
                             double omega_s, double omega_i) {
  const auto idler_angle =
      idler_external_angle(omega_s, omega_i, spec.pump_angle, spec.signal_angle);
  if (!idler_angle) throw DomainError("idler is evanescent outside the stack at this node");
  const double wp = omega_s + omega_i;
  const double env = pump.envelope(wp);
  return {transfer_matrix(spec, wp, spec.pump_angle, pump.forward_amplitude * env,
                          pump.backward_amplitude * env),
          transfer_matrix(spec, omega_s, spec.signal_angle),
          transfer_matrix(spec, omega_i, *idler_angle)};
}

}  // namespace

StackResponse transfer_matrix(const LayeredStackSpec& spec, double omega, double external_angle,
                              cplx incident_forward, cplx incident_backward) {
  const std::size_t n = spec.layers.size();
  if (n == 0) throw DomainError("transfer matrix needs at least one layer");
  const std::size_t media = n + 2;

  StackResponse r;
  r.index.resize(media);
  r.kz.resize(media);
  for (std::size_t m = 0; m < media; ++m) {
    r.index[m] = dispersion::refractive_index(medium_at(spec, m), omega);
    r.kz[m] = dispersion::longitudinal_wave_vector(r.index[m], omega, external_angle);
  }

  r.interfaces.resize(media - 1);
  for (std::size_t m = 0; m + 1 < media; ++m) r.interfaces[m] = interface_matrix(r.kz[m], r.kz[m + 1]);

  std::vector<Mat2> prop(media, Mat2::Identity());
  for (std::size_t m = 1; m <= n; ++m) prop[m] = propagation_matrix(r.kz[m], spec.layers[m - 1].thickness);

  r.cumulative.resize(media);
  r.cumulative[0] = Mat2::Identity();
  r.cumulative[1] = r.interfaces[0];
  for (std::size_t m = 1; m <= n; ++m) r.cumulative[m + 1] = r.interfaces[m] * prop[m] * r.cumulative[m];
  const Mat2& sys = r.cumulative[n + 1];

  r.reflection = -sys(1, 0) / sys(1, 1);
  r.transmission = sys(0, 0) + sys(0, 1) * r.reflection;

  const cplx b0 = (incident_backward - sys(1, 0) * incident_forward) / sys(1, 1);
  const Eigen::Vector2cd in(incident_forward, b0);
  r.field.resize(media);
  for (std::size_t m = 0; m < media; ++m) {
    const Eigen::Vector2cd v = r.cumulative[m] * in;
    r.field[m] = {v(0), v(1)};
  }

  // to_exit maps amplitudes at the left face of layer m to the exit medium.
  // A source adds (1, 0) to the right of itself for a forward wave and
  // (0, −1) for a backward one; nothing may come in from the exit side.
  r.output_coupling.resize(n);
  Mat2 to_exit = r.interfaces[n] * prop[n];
  for (std::size_t m = n; m >= 1; --m) {
    if (m < n) to_exit = to_exit * r.interfaces[m] * prop[m];
    const cplx ratio = sys(0, 1) / sys(1, 1);
    r.output_coupling[m - 1] = {to_exit(0, 0) - ratio * to_exit(1, 0),
                                -to_exit(0, 1) + ratio * to_exit(1, 1)};
  }
  return r;
}

std::vector<StackContribution> stack_contributions(const LayeredStackSpec& spec,
                                                   const PumpSpectrum& pump, double omega_s,
                                                   double omega_i, std::uint8_t channel_mask) {
  segment_decomposition(spec);  // validates
  const NodeResponses r = node_responses(spec, pump, omega_s, omega_i);
  std::vector<StackContribution> out;
  accumulate_contributions(spec, r, omega_s, omega_i, channel_mask, out);
  return out;
}

KernelPair stack_kernel(const LayeredStackSpec& spec, const PumpSpectrum& pump,
                        const FrequencyGrid& grid, const KernelOptions& options) {
  const auto segments = segment_decomposition(spec);
  std::ostringstream desc;
  desc.precision(17);
  desc << "stack|" << spec.incident.name << "|" << spec.exit.name << "|" << spec.pump_angle << "|"
       << spec.signal_angle;
  for (const auto& s : segments) desc << "|" << s.medium->name << ":" << s.length << ":" << s.sign;

  KernelPair out;
  for (TwoPhotonKernel* k : {&out.signal, &out.idler}) {
    k->channel_mask = options.channel_mask;
    k->volume.assign(grid.size(), cplx{});
    k->surface.assign(grid.size(), cplx{});
    k->provenance = provenance_hash(desc.str());
  }
  out.signal.field = FieldTag::Signal;
  out.idler.field = FieldTag::Idler;
  out.valid.assign(grid.size(), 1);

  std::vector<std::array<std::uint32_t, 2>> flags(grid.size(), {0u, 0u});
  parallel_for(grid.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<StackContribution> terms;
    for (std::size_t node = begin; node < end; ++node) {
      const double ws = grid.signal_omega(node);
      const double wi = grid.idler_omega(node);
      terms.clear();
      try {
        accumulate_contributions(spec, node_responses(spec, pump, ws, wi), ws, wi,
                                 options.channel_mask, terms);
      } catch (const DomainError&) {
        out.valid[node] = 0;
        continue;
      }
      cplx vol, surf_s, surf_i;
      for (const auto& t : terms) {
        vol += t.volume;
        surf_s += t.surface_signal;
        surf_i += t.surface_idler;
        for (double v : {t.v_signal, t.v_idler}) {
          const auto c = amplitudes::classify_surface_factor(v);
          flags[node][0] += c.large ? 1u : 0u;
          flags[node][1] += c.negative ? 1u : 0u;
        }
      }
      out.signal.volume[node] = vol;
      out.idler.volume[node] = vol;
      if (options.surface) {
        out.signal.surface[node] = surf_s;
        out.idler.surface[node] = surf_i;
      }
    }
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!out.valid[i]) ++out.diagnostics.invalid_nodes;
    if (options.surface) {
      out.diagnostics.large_surface_factor += flags[i][0];
      out.diagnostics.negative_surface_factor += flags[i][1];
    }
  }
  return out;
}

}  // namespace pairgen::structures
