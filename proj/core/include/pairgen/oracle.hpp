#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pairgen/amplitudes.hpp"
#include "pairgen/structures.hpp"

namespace pairgen {

/// Outcome of one analytic-vs-brute-force comparison.
struct OracleReport {
  std::string case_id;
  cplx analytic;
  cplx oracle;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// |analytic − oracle| / |oracle|; the absolute difference when the oracle
/// value is exactly zero.
double relative_error(cplx analytic, cplx oracle) noexcept;

OracleReport make_report(std::string case_id, cplx analytic, cplx oracle, double tolerance);

namespace oracle {

inline constexpr std::uint64_t kDefaultSeed = 20260101;

/// Composite Simpson rule for ∫₀ᴸ g·E_p·e^{ik_pL}·e^{−iΔk(L−z)} dz with
/// compensated summation. `steps` is rounded up to an even number >= 1000.
cplx integrate_volume_kernel(cplx g, cplx pump, double k_pump, double delta_k, double length,
                             std::size_t steps);

/// Step count keeping Δk·h below 4·10⁻⁴ rad (never below 1000).
std::size_t volume_steps(double delta_k, double length);

/// Solves the two continuity equations at the input face for (δE_F, δE_B)
/// with a general 2×2 linear solve and converts them to mode amplitudes.
/// h_forward/h_backward are the nonlinear magnetic-field kernels at z = 0.
/// Throws DomainError when k_s <= 0 (singular system).
std::pair<cplx, cplx> solve_boundary(cplx h_forward, cplx h_backward, double k_s, double omega_s,
                                     double n_s, double area = 1.0);

/// Literal loop over the poled domains at one (ωs, ωi): each domain adds
/// sign·(1 + V)·g·E_p·l·sinc(Δk·l/2) at its centre phase. With
/// include_surface false V is taken as 0.
cplx poled_direct_sum(const PoledCrystalSpec& spec, const PumpSpectrum& pump, double omega_s,
                      double omega_i, bool include_surface = false,
                      FieldTag field = FieldTag::Signal);

/// Seeded comparison suites. Each returns one report per case.
std::vector<OracleReport> volume_suite(std::uint64_t seed, std::size_t cases, double tolerance);
std::vector<OracleReport> boundary_suite(std::uint64_t seed, std::size_t cases, double tolerance);

/// Geometric-sum poled kernel against poled_direct_sum on random uniform
/// specs with up to max_domains domains. The error of a case is the largest
/// node difference over the largest oracle magnitude on its grid.
std::vector<OracleReport> poled_suite(const OpticalMedium& medium, std::uint64_t seed,
                                      std::size_t cases, std::size_t max_domains,
                                      double tolerance);

}  // namespace oracle
}  // namespace pairgen
