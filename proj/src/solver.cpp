#include "pamlab/solver.hpp"

#include <algorithm>
#include <cmath>

#include "pamlab/errors.hpp"
#include "pamlab/eval_i.hpp"

namespace pamlab {

Path::Path(std::vector<std::int64_t> v) : vertices(std::move(v)) {
  if (vertices.empty()) throw ParameterError("Path: empty vertex list");
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    std::int64_t d = vertices[i] - vertices[i - 1];
    if (d != 1 && d != -1)
      throw ParameterError("Path: steps must be nearest-neighbour");
  }
}

SignedLog path_weight(const PotentialField& field, double t,
                      const Path& path) {
  std::vector<double> a;
  a.reserve(path.vertices.size());
  for (std::int64_t z : path.vertices) a.push_back(field.xi(z));  // may throw
  SignedLog i_val = eval_I(t, a);
  return SignedLog(i_val.sign, i_val.log_mag - 2.0 * t);
}

SolutionProfile solve_profile_propagator(const PotentialField& field, double t,
                                         const PropagatorOptions& opts) {
  if (!(t > 0)) throw DomainError("solve_profile_propagator: t must be > 0");
  const std::int64_t L = field.radius();
  const std::size_t n = static_cast<std::size_t>(2 * L + 1);

  double xi_max = 1.0, xi_min = SignedLog::inf();
  for (std::size_t i = 0; i < n; ++i) {
    xi_max = std::max(xi_max, field.values()[i]);
    xi_min = std::min(xi_min, field.values()[i]);
  }
  const double h_max = 0.5 / (xi_max + 4.0);
  const std::uint64_t steps =
      static_cast<std::uint64_t>(std::ceil(t / h_max));
  if (steps > opts.max_steps)
    throw ConvergenceError(
        "propagator step-size underflow: max xi = " + std::to_string(xi_max) +
        " needs " + std::to_string(steps) + " steps");
  const double h = t / static_cast<double>(steps);

  // B = H - sigma I with sigma = xi_max - 2; P = I + B/theta >= 0.
  const double sigma = xi_max - 2.0;
  const double theta = (xi_max - xi_min) + 2.0;
  const double h_theta = h * theta;
  const double step_tol = opts.rel_target / static_cast<double>(steps) * 0.5;

  std::vector<double> w(n, 0.0), pw(n), acc(n), tmp(n);
  w[static_cast<std::size_t>(L)] = 1.0;
  double log_scale = 0.0;
  double series_err = 0.0;

  const std::vector<double>& xi = field.values();
  auto apply_p = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < n; ++i) {
      double diag = 1.0 - (xi_max - xi[i]) / theta;
      double s = diag * x[i];
      if (i > 0) s += x[i - 1] / theta;
      if (i + 1 < n) s += x[i + 1] / theta;
      y[i] = s;
    }
  };

  for (std::uint64_t s = 0; s < steps; ++s) {
    // e^{hB} w = e^{-h theta} sum_k (h theta)^k P^k w / k!
    acc = w;
    pw = w;
    double coeff = 1.0, tail = 1.0;
    int k = 0;
    while (true) {
      ++k;
      apply_p(pw, tmp);
      std::swap(pw, tmp);
      coeff *= h_theta / static_cast<double>(k);
      for (std::size_t i = 0; i < n; ++i) acc[i] += coeff * pw[i];
      tail *= h_theta / static_cast<double>(k + 1);
      if (coeff <= step_tol && tail < step_tol) break;
      if (k > 500) break;
    }
    series_err += tail * 2.0;
    double m = 0.0;
    for (double v : acc) m = std::max(m, v);
    if (m <= 0) throw ConvergenceError("propagator lost all mass");
    double inv = 1.0 / m;
    for (std::size_t i = 0; i < n; ++i) w[i] = acc[i] * inv;
    log_scale += std::log(m) + h * (sigma - theta);
  }

  SolutionProfile prof;
  prof.t = t;
  prof.radius = L;
  prof.method = SolveMethod::propagator;
  prof.backend = "uniformisation";
  prof.u.resize(n);
  double total = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    prof.u[i] = w[i] > 0 ? SignedLog(1, std::log(w[i]) + log_scale)
                         : SignedLog::zero();
    double y = w[i] - comp;
    double tt = total + y;
    comp = (tt - total) - y;
    total = tt;
  }
  prof.total_mass = SignedLog(1, std::log(total) + log_scale);
  prof.error_estimate =
      series_err + static_cast<double>(steps) * 8.0 * 1.1e-16;
  return prof;
}

SolutionProfile solve_profile_pathsum(const PotentialField& field, double t,
                                      int length_cap) {
  if (field.radius() > 8)
    throw SizeError("path-sum solver is limited to radius <= 8");
  if (length_cap < 0 || length_cap > 14)
    throw SizeError("path-sum solver is limited to length_cap <= 14");
  if (!(t > 0)) throw DomainError("solve_profile_pathsum: t must be > 0");

  const std::int64_t L = field.radius();
  const std::size_t n = static_cast<std::size_t>(2 * L + 1);
  std::vector<SignedLogSum> site_sums(n);

  std::vector<std::int64_t> verts{0};
  std::vector<double> a{field.xi(0)};
  auto weight = [&]() {
    SignedLog i_val = eval_I(t, a);
    return SignedLog(i_val.sign, i_val.log_mag - 2.0 * t);
  };
  // depth-first over all geometric paths from 0 up to the cap
  auto rec = [&](auto&& self, int depth) -> void {
    site_sums[static_cast<std::size_t>(verts.back() + L)].add(weight());
    if (depth == length_cap) return;
    for (int step : {+1, -1}) {
      std::int64_t nz = verts.back() + step;
      if (nz < -L || nz > L) continue;
      verts.push_back(nz);
      a.push_back(field.xi(nz));
      self(self, depth + 1);
      verts.pop_back();
      a.pop_back();
    }
  };
  rec(rec, 0);

  SolutionProfile prof;
  prof.t = t;
  prof.radius = L;
  prof.method = SolveMethod::path_sum;
  prof.backend = "path_sum";
  prof.u.resize(n);
  SignedLogSum total;
  for (std::size_t i = 0; i < n; ++i) {
    prof.u[i] = site_sums[i].value();
    total.add(prof.u[i]);
  }
  prof.total_mass = total.value();

  // Poisson(2t) tail beyond the cap, with the per-path bound
  // I_l <= t^l e^{t xi_max} / l!.
  double xi_max = 1.0;
  for (double v : field.values()) xi_max = std::max(xi_max, v);
  double lam = 2.0 * t;
  double log_tail_sum = 0.0;  // log of sum_{l>cap} lam^l / l!
  for (int k = 1; k <= length_cap + 1; ++k) log_tail_sum += std::log(lam / k);
  log_tail_sum -= std::log(std::max(1e-12, 1.0 - lam / (length_cap + 2)));
  double log_tail = t * (xi_max - 2.0) + log_tail_sum;
  prof.error_estimate = std::exp(log_tail - prof.total_mass.log_mag);
  return prof;
}

double localisation_mass(const SolutionProfile& profile,
                         std::span<const std::int64_t> omega) {
  if (omega.empty()) throw ParameterError("localisation_mass: empty omega");
  SignedLogSum num;
  for (std::int64_t z : omega) num.add(profile.u_at(z));
  SignedLog ratio = num.value() / profile.total_mass;
  return std::min(1.0, ratio.to_double());
}

double log_ratio_from_profile(const SolutionProfile& profile,
                              const MaximizerReport& report) {
  if (!report.dup_event)
    throw StateError("log_ratio requires the duplicated maximiser event");
  const SignedLog& up = profile.u_at(report.z1);
  const SignedLog& um = profile.u_at(-report.z1);
  if (up.sign <= 0 || um.sign <= 0)
    throw ConvergenceError("log_ratio: nonpositive solution values");
  return up.log_mag - um.log_mag;
}

}  // namespace pamlab
