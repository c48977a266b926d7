#include "pairgen/spectra.hpp"

#include <sstream>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"

namespace pairgen::spectra {

namespace {

double node_density(const KernelPair& k, std::size_t node, DensityVariant variant) {
  switch (variant) {
    case DensityVariant::Volume:
      return amplitudes::joint_density(k.signal.volume[node], k.idler.volume[node]);
    case DensityVariant::Surface:
      return amplitudes::joint_density(k.signal.surface[node], k.idler.surface[node]);
    case DensityVariant::Total:
      break;
  }
  return amplitudes::joint_density(k.signal.total(node), k.idler.total(node));
}

}  // namespace

double pairwise_sum(std::span<const double> values) noexcept {
  constexpr std::size_t kBlock = 8;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double trapezoid(std::span<const double> values, double step) noexcept {
  if (values.size() < 2) return 0.0;
  const double ends = 0.5 * (values.front() + values.back());
  return step * (pairwise_sum(values.subspan(1, values.size() - 2)) + ends);
}

SpectralDensityMap density_map(const KernelPair& kernels, const FrequencyGrid& grid,
                               DensityVariant variant) {
  const std::size_t n = grid.size();
  if (kernels.signal.size() != n || kernels.idler.size() != n || kernels.valid.size() != n ||
      kernels.signal.surface.size() != n || kernels.idler.surface.size() != n) {
    std::ostringstream os;
    os << "density_map: kernel size " << kernels.signal.size() << " does not match grid size "
       << n;
    throw DomainError(os.str());
  }
  SpectralDensityMap map{grid, variant, std::vector<double>(n, 0.0), kernels.valid};
  for (std::size_t node = 0; node < n; ++node) {
    if (kernels.valid[node]) map.values[node] = node_density(kernels, node, variant);
  }
  return map;
}

SpectrumCurve signal_spectrum(const SpectralDensityMap& map) {
  const auto& grid = map.grid;
  SpectrumCurve curve;
  curve.omega.resize(grid.signal_nodes());
  curve.value.resize(grid.signal_nodes());
  const std::size_t ni = grid.idler_nodes();
  for (std::size_t is = 0; is < grid.signal_nodes(); ++is) {
    const double ws = grid.signal_axis(is);
    curve.omega[is] = ws;
    double line = 0.0;
    if (grid.mode() == GridMode::CwLine) {
      line = map.values[is];
    } else {
      line = trapezoid(std::span<const double>(map.values).subspan(is * ni, ni), grid.idler_step());
    }
    curve.value[is] = PhysicalConstants::hbar * ws * line;
  }
  return curve;
}

double pair_rate(const SpectralDensityMap& map) {
  const auto& grid = map.grid;
  if (grid.mode() == GridMode::CwLine) return trapezoid(map.values, grid.signal_step());
  const std::size_t ni = grid.idler_nodes();
  std::vector<double> rows(grid.signal_nodes());
  for (std::size_t is = 0; is < rows.size(); ++is) {
    rows[is] = trapezoid(std::span<const double>(map.values).subspan(is * ni, ni), grid.idler_step());
  }
  return trapezoid(rows, grid.signal_step());
}

double relative_surface_contribution(double n_total, double n_volume) {
  if (!(n_volume > 0.0)) throw DomainError("relative_surface_contribution: N_vol must be positive");
  return n_total / n_volume - 1.0;
}

}  // namespace pairgen::spectra
