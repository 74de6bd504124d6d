#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pamlab/errors.hpp"
#include "pamlab/rng.hpp"

namespace pamlab {

// ---------------------------------------------------------------------------
// Deterministic time scales.
//
//   r_t = (t/log t)^{alpha/(alpha-1)}   spatial scale of the maximiser
//   a_t = (t/log t)^{1/(alpha-1)}       vertical scale of the potential top
//   rho = 1/(alpha-1)
//   delta_t = (log t)^{-1/(2 alpha)}    high-potential threshold
//
// g_t and f_t = 1/g_t are the slowly varying auxiliary scales.  We use
// g_t = 16 * logloglog(t + T0) with T0 = exp(exp(e)):the triple log keeps
// the required O(logloglog t) order and the constant separates f_t and g_t
// far enough from 1 that the typicality event has workable probability at
// reachable times.
struct Scales {
  double alpha = 0;
  double t = 0;
  double r_t = 0;
  double a_t = 0;
  double rho = 0;
  double f_t = 0;
  double g_t = 0;
  double delta_t = 0;
  // |Z1|*(1+f_t); NaN until filled in by the maximiser scan.
  double R_t = std::numeric_limits<double>::quiet_NaN();
};

Scales compute_scales(double alpha, double t);

// Inverse-CDF Pareto draw and the conditional-below-threshold variant.
inline double pareto_from_uniform(double u_pos, double alpha) {
  return std::pow(u_pos, -1.0 / alpha);  // u in (0,1]
}
inline double pareto_below(double u, double alpha, double threshold_tail) {
  // threshold_tail = theta^{-alpha}; u in [0,1).
  return std::pow(1.0 - u * (1.0 - threshold_tail), -1.0 / alpha);
}

// Site-keyed uniforms shared by every field representation: counter 2n for
// site +n, 2n+1 for site -n.
inline double site_uniform_pos(const CounterRng& rng, std::int64_t z) {
  std::uint64_t n = static_cast<std::uint64_t>(z < 0 ? -z : z);
  return rng.uniform_pos(2 * n + (z < 0 ? 1 : 0));
}
inline double site_uniform(const CounterRng& rng, std::int64_t z) {
  std::uint64_t n = static_cast<std::uint64_t>(z < 0 ? -z : z);
  return rng.uniform(2 * n + (z < 0 ? 1 : 0));
}

// ---------------------------------------------------------------------------
// The partially duplicated Pareto potential on {-L,...,L}, materialised.
//
// Site values for z >= 0 are i.i.d. Pareto(alpha); for n >= 1 the value at
// -n equals the value at n with probability p (bit-identical copy) and is an
// independent Pareto draw otherwise.  Everything is a pure function of
// (alpha, p, radius, seed) through per-site counter RNG streams.
class PotentialField {
 public:
  PotentialField(double alpha, double p, std::int64_t radius,
                 std::uint64_t seed);

  // Test/tool constructor from explicit data.
  PotentialField(double alpha, double p, std::int64_t radius,
                 std::uint64_t seed, std::vector<double> values,
                 std::vector<bool> dup_mask);

  double alpha() const { return alpha_; }
  double p() const { return p_; }
  std::int64_t radius() const { return radius_; }
  std::uint64_t seed() const { return seed_; }

  double xi(std::int64_t z) const {
    if (z < -radius_ || z > radius_) throw RangeError("site outside window");
    return values_[static_cast<std::size_t>(z + radius_)];
  }

  // true iff the pair {-n, n} carries one duplicated value.
  bool duplicated(std::int64_t n) const {
    if (n < 1 || n > radius_) throw RangeError("pair index outside window");
    return dup_mask_[static_cast<std::size_t>(n - 1)];
  }

  // z in E: the value at z is exclusive to it.  z = 0 counts as exclusive.
  bool exclusive(std::int64_t z) const {
    std::int64_t n = z < 0 ? -z : z;
    return n == 0 || !duplicated(n);
  }

  template <class F>
  void for_each_site(std::int64_t a, std::int64_t b, F&& f) const {
    for (std::int64_t z = a; z <= b; ++z)
      f(z, values_[static_cast<std::size_t>(z + radius_)]);
  }

  // Visits at least every site in [a,b] with xi > floor (here: all of them).
  template <class F>
  void for_each_candidate(double /*floor*/, std::int64_t a, std::int64_t b,
                          F&& f) const {
    for_each_site(a, b, f);
  }

  // Lowest floor the candidate enumeration honours; dense fields see
  // everything.
  double candidate_floor(const Scales&) const { return 0.0; }

  const std::vector<double>& values() const { return values_; }
  const std::vector<bool>& dup_mask() const { return dup_mask_; }

  bool operator==(const PotentialField& o) const;

 private:
  double alpha_, p_;
  std::int64_t radius_;
  std::uint64_t seed_;
  std::vector<double> values_;    // index z + radius
  std::vector<bool> dup_mask_;    // index n - 1, n = 1..radius
};

PotentialField sample_potential(double alpha, double p, std::int64_t radius,
                                std::uint64_t seed);

// Penalisation functional Psi_t(z) = xi(z) - (|z|/t) log xi(z).
template <class FieldLike>
double psi(const FieldLike& field, double t, std::int64_t z) {
  if (t <= 0) throw DomainError("psi requires t > 0");
  double x = field.xi(z);
  double az = static_cast<double>(z < 0 ? -z : z);
  return x - (az / t) * std::log(x);
}

inline double psi_value(double xi_z, std::int64_t z, double t) {
  return xi_z - (static_cast<double>(z < 0 ? -z : z) / t) * std::log(xi_z);
}

// ---------------------------------------------------------------------------
// Maximiser structure and the typicality events.
struct MaximizerReport {
  std::int64_t z1 = 0;   // top Psi_t maximiser, positive on the dup event
  std::int64_t z2 = 0;   // maximiser outside Omega_t
  std::vector<std::int64_t> omega;  // {z1} or {-z1, z1}
  double psi1 = 0, psi2 = 0;
  double xi1 = 0, xi2 = 0;
  bool dup_event = false;
  std::vector<std::int64_t> n_set;  // N_t, sorted
  bool e_t = false;
  bool e_t_2inf = false;
  bool truncation_warning = false;  // window below 3 r_t g_t
  // true when the scan could not certify the argmax above its floor; the
  // sample fails every gap clause in that case and e_t is false.
  bool scan_floor_hit = false;
  // xi order statistics over |z| <= R_t (xi2_rt strictly below xi1).
  double xi1_rt = 0, xi2_rt = 0;
  bool xi2_rt_is_bound = false;  // xi2_rt fell below the scan floor
  Scales scales;
};

namespace detail {

// Pair-aware top-two tracker.  Duplicated pairs share one Psi value and
// count as one group; ties break to the smaller |z|, then the positive site.
struct TopTwoGroups {
  struct Entry {
    double psi = -std::numeric_limits<double>::infinity();
    std::int64_t z = 0;  // canonical representative (positive if dup)
    double xi = 0;
    bool dup = false;
    bool valid = false;
  };
  Entry best, second;

  static bool better(double ps, std::int64_t z, const Entry& e) {
    if (!e.valid) return true;
    if (ps != e.psi) return ps > e.psi;
    std::int64_t az = z < 0 ? -z : z, ae = e.z < 0 ? -e.z : e.z;
    if (az != ae) return az < ae;
    return z > e.z;
  }

  void offer(double ps, std::int64_t z, double xi_z, bool dup) {
    std::int64_t az = z < 0 ? -z : z;
    std::int64_t abest = best.z < 0 ? -best.z : best.z;
    bool same_group_as_best = best.valid && best.dup && dup && az == abest;
    if (same_group_as_best) return;  // mirror of the current best pair
    Entry e{ps, dup ? az : z, xi_z, dup, true};
    if (better(ps, e.z, best)) {
      second = best;
      best = e;
    } else if (better(ps, e.z, second)) {
      std::int64_t asec = second.z < 0 ? -second.z : second.z;
      if (!(second.valid && second.dup && dup && az == asec)) second = e;
    }
  }
};

struct Candidate {
  std::int64_t z;
  double xi;
  bool exclusive;
};

MaximizerReport finish_report(double alpha, double t, std::int64_t radius,
                              Scales scales, const TopTwoGroups& groups,
                              const std::vector<Candidate>& cands,
                              double cand_floor, bool tail_clause_ok,
                              double scan_floor);

}  // namespace detail

// Scans the window, extracts Z1/Z2/Omega/D_t, populates N_t and evaluates
// the typicality events.  Phase 1 finds the Psi maximisers among every site
// above the representation's floor (dense fields: every site); phase 2
// collects the high sites within |z| <= R_t for the order statistics and
// N_t.
template <class FieldLike>
MaximizerReport top_maximizers(const FieldLike& field, double t) {
  Scales scales = compute_scales(field.alpha(), t);
  const double scan_floor = field.candidate_floor(scales);

  detail::TopTwoGroups groups;
  bool tail_ok = true;
  const double rg = scales.r_t * scales.g_t;
  const double two_e_t = 2.0 * std::exp(1.0) * t;
  field.for_each_candidate(
      scan_floor, -field.radius(), field.radius(),
      [&](std::int64_t z, double xi_z) {
        groups.offer(psi_value(xi_z, z, t), z, xi_z,
                     z != 0 && !field.exclusive(z));
        double az = static_cast<double>(z < 0 ? -z : z);
        if (az > rg && xi_z >= (az / t) * std::log(az / two_e_t))
          tail_ok = false;
      });
  if (!groups.best.valid)
    throw StateError("top_maximizers: empty candidate set");

  std::int64_t az1 = groups.best.z < 0 ? -groups.best.z : groups.best.z;
  scales.R_t = static_cast<double>(az1) * (1.0 + scales.f_t);
  std::int64_t r_range =
      std::min<std::int64_t>(field.radius(),
                             static_cast<std::int64_t>(scales.R_t));

  // Floor low enough for both N_t (delta_t * xi1) and the xi gap clause.
  double want = std::min(scales.delta_t * groups.best.xi,
                         0.5 * scales.a_t * scales.f_t) *
                (1.0 - 1e-12);
  double cand_floor = std::max(want, scan_floor);
  std::vector<detail::Candidate> cands;
  field.for_each_candidate(
      cand_floor, -r_range, r_range, [&](std::int64_t z, double xi_z) {
        if (xi_z > cand_floor)
          cands.push_back({z, xi_z, z == 0 || field.exclusive(z)});
      });

  return detail::finish_report(field.alpha(), t, field.radius(), scales,
                               groups, cands, cand_floor, tail_ok, scan_floor);
}

}  // namespace pamlab
