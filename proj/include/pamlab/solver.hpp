#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pamlab/potential.hpp"
#include "pamlab/signed_log.hpp"

namespace pamlab {

// Nearest-neighbour geometric path.
struct Path {
  std::vector<std::int64_t> vertices;

  explicit Path(std::vector<std::int64_t> v);
  std::size_t length() const { return vertices.size() - 1; }  // edges
};

// U(t,y) = e^{-2t} I_{l(y)}(t; xi(y_0), ..., xi(y_l)).
SignedLog path_weight(const PotentialField& field, double t, const Path& path);

enum class SolveMethod { propagator, path_sum };

struct SolutionProfile {
  double t = 0;
  std::int64_t radius = 0;
  std::vector<SignedLog> u;  // index z + radius
  SignedLog total_mass;
  SolveMethod method = SolveMethod::propagator;
  std::string backend;       // "uniformisation", "peak_spectral", "path_sum"
  double error_estimate = 0;  // relative, on U(t)

  const SignedLog& u_at(std::int64_t z) const {
    if (z < -radius || z > radius) throw RangeError("site outside window");
    return u[static_cast<std::size_t>(z + radius)];
  }
};

struct PropagatorOptions {
  double rel_target = 1e-9;      // on U(t)
  std::uint64_t max_steps = 200000000;
};

// Action of exp(t(Laplacian + xi)) on the point mass at 0, absorbing
// boundary at +-L.  Positivity-preserving uniformisation with the step
// bound h <= 0.5/(max xi + 4) and a running log rescale; the reported
// error_estimate collects the per-step series tails plus roundoff.
SolutionProfile solve_profile_propagator(const PotentialField& field, double t,
                                         const PropagatorOptions& opts = {});

// Exhaustive sum over geometric paths from 0 of length <= length_cap.
// Enforced small: L <= 8, cap <= 14.  error_estimate is the Poisson(2t)
// tail beyond the cap, relative to the computed mass.
SolutionProfile solve_profile_pathsum(const PotentialField& field, double t,
                                      int length_cap);

// e^{t xi(Z1) - 2t} prod_{j=0}^{|Z1|-1} (xi(Z1) - xi(j iota))^{-1}.
template <class FieldLike>
SignedLog direct_path_contribution(const FieldLike& field, double t,
                                   const MaximizerReport& report, int iota) {
  if (iota != 1 && iota != -1)
    throw ParameterError("direct_path_contribution: iota must be +-1");
  if (!report.e_t)
    throw StateError("direct_path_contribution requires the typical event");
  std::int64_t n = report.z1 < 0 ? -report.z1 : report.z1;
  double xi1 = report.xi1;
  double lg = t * xi1 - 2.0 * t;
  for (std::int64_t j = 0; j < n; ++j) {
    double gap = xi1 - field.xi(j * iota);
    if (gap <= 0)
      throw GapViolationError("direct path gap violation at site " +
                              std::to_string(j * iota));
    lg -= std::log(gap);
  }
  return SignedLog(1, lg);
}

// 2 |Z1| max_j (xi(Z1) - xi(j iota))^{-2}: bound on the relative weight of
// single 2-loop insertions along the direct path.
template <class FieldLike>
double loop_penalty_report(const FieldLike& field, double t,
                           const MaximizerReport& report) {
  (void)t;
  if (!report.e_t)
    throw StateError("loop_penalty_report requires the typical event");
  std::int64_t n = report.z1 < 0 ? -report.z1 : report.z1;
  int iota = report.z1 < 0 ? -1 : 1;
  double worst = 0;
  for (std::int64_t j = 0; j < n; ++j) {
    double gap = report.xi1 - field.xi(j * iota);
    if (gap <= 0)
      throw GapViolationError("loop penalty gap violation at site " +
                              std::to_string(j * iota));
    worst = std::max(worst, 1.0 / (gap * gap));
  }
  return 2.0 * static_cast<double>(n) * worst;
}

// (sum_{z in omega} u(t,z)) / U(t).
double localisation_mass(const SolutionProfile& profile,
                         std::span<const std::int64_t> omega);

// log u(t, Z1) - log u(t, -Z1) from a propagator profile (small windows).
double log_ratio_from_profile(const SolutionProfile& profile,
                              const MaximizerReport& report);

}  // namespace pamlab
