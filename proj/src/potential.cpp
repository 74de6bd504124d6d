#include "pamlab/potential.hpp"

#include <algorithm>
#include <cmath>

namespace pamlab {

namespace {
constexpr double kGtScale = 16.0;
// exp(exp(e)); logloglog(T0) == 1 exactly.
const double kT0 = std::exp(std::exp(std::exp(1.0)));
}  // namespace

Scales compute_scales(double alpha, double t) {
  if (!(alpha > 1.0)) throw ParameterError("compute_scales: alpha must be > 1");
  if (!(t >= std::exp(1.0) * (1.0 - 1e-15)))
    throw DomainError("compute_scales: t must be >= e");
  Scales s;
  s.alpha = alpha;
  s.t = t;
  double lt = std::log(t);
  double base = t / lt;
  s.rho = 1.0 / (alpha - 1.0);
  s.a_t = std::pow(base, s.rho);
  s.r_t = std::pow(base, alpha * s.rho);
  s.delta_t = std::pow(lt, -1.0 / (2.0 * alpha));
  s.g_t = kGtScale * std::log(std::log(std::log(t + kT0)));
  s.f_t = 1.0 / s.g_t;
  return s;
}

PotentialField::PotentialField(double alpha, double p, std::int64_t radius,
                               std::uint64_t seed)
    : alpha_(alpha), p_(p), radius_(radius), seed_(seed) {
  if (!(alpha > 1.0)) throw ParameterError("alpha must be > 1");
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must be in (0,1)");
  if (radius < 1) throw ParameterError("radius must be >= 1");

  CounterRng site_rng(seed, static_cast<std::uint64_t>(RngStream::kSiteValue));
  CounterRng coin_rng(seed, static_cast<std::uint64_t>(RngStream::kDupCoin));

  values_.resize(static_cast<std::size_t>(2 * radius + 1));
  dup_mask_.resize(static_cast<std::size_t>(radius));
  auto at = [&](std::int64_t z) -> double& {
    return values_[static_cast<std::size_t>(z + radius_)];
  };
  at(0) = pareto_from_uniform(site_uniform_pos(site_rng, 0), alpha);
  for (std::int64_t n = 1; n <= radius; ++n) {
    double v = pareto_from_uniform(site_uniform_pos(site_rng, n), alpha);
    at(n) = v;
    bool dup = coin_rng.uniform(static_cast<std::uint64_t>(n)) < p;
    dup_mask_[static_cast<std::size_t>(n - 1)] = dup;
    at(-n) = dup ? v
                 : pareto_from_uniform(site_uniform_pos(site_rng, -n), alpha);
  }
}

PotentialField::PotentialField(double alpha, double p, std::int64_t radius,
                               std::uint64_t seed, std::vector<double> values,
                               std::vector<bool> dup_mask)
    : alpha_(alpha),
      p_(p),
      radius_(radius),
      seed_(seed),
      values_(std::move(values)),
      dup_mask_(std::move(dup_mask)) {
  if (values_.size() != static_cast<std::size_t>(2 * radius + 1) ||
      dup_mask_.size() != static_cast<std::size_t>(radius))
    throw ParameterError("PotentialField: array sizes do not match radius");
  for (double v : values_)
    if (!(v >= 1.0)) throw ParameterError("PotentialField: values must be >= 1");
  for (std::int64_t n = 1; n <= radius; ++n)
    if (dup_mask_[static_cast<std::size_t>(n - 1)] &&
        values_[static_cast<std::size_t>(n + radius)] !=
            values_[static_cast<std::size_t>(-n + radius)])
      throw ParameterError("PotentialField: dup mask contradicts values");
}

bool PotentialField::operator==(const PotentialField& o) const {
  return alpha_ == o.alpha_ && p_ == o.p_ && radius_ == o.radius_ &&
         seed_ == o.seed_ && values_ == o.values_ && dup_mask_ == o.dup_mask_;
}

PotentialField sample_potential(double alpha, double p, std::int64_t radius,
                                std::uint64_t seed) {
  return PotentialField(alpha, p, radius, seed);
}

namespace detail {

MaximizerReport finish_report(double alpha, double t, std::int64_t radius,
                              Scales scales, const TopTwoGroups& groups,
                              const std::vector<Candidate>& cands,
                              double cand_floor, bool tail_clause_ok,
                              double scan_floor) {
  MaximizerReport rep;
  rep.scales = scales;

  const TopTwoGroups::Entry& b = groups.best;
  rep.dup_event = b.dup;
  rep.z1 = b.z;  // already positive for dup groups
  rep.psi1 = b.psi;
  rep.xi1 = b.xi;
  rep.omega = b.dup ? std::vector<std::int64_t>{-b.z, b.z}
                    : std::vector<std::int64_t>{b.z};
  if (groups.second.valid) {
    rep.z2 = groups.second.z;
    rep.psi2 = groups.second.psi;
    rep.xi2 = groups.second.xi;
  }
  rep.scan_floor_hit = scan_floor > 0.0 && rep.psi1 <= scan_floor;

  std::int64_t az1 = rep.z1 < 0 ? -rep.z1 : rep.z1;
  rep.truncation_warning =
      static_cast<double>(radius) < 3.0 * scales.r_t * scales.g_t;

  // xi order statistics over |z| <= R_t from the collected candidates.
  rep.xi1_rt = 0.0;
  for (const Candidate& c : cands) rep.xi1_rt = std::max(rep.xi1_rt, c.xi);
  rep.xi2_rt = 0.0;
  for (const Candidate& c : cands)
    if (c.xi < rep.xi1_rt) rep.xi2_rt = std::max(rep.xi2_rt, c.xi);
  if (rep.xi2_rt == 0.0) {
    rep.xi2_rt = cand_floor;  // everything else sits below the floor
    rep.xi2_rt_is_bound = true;
  }
  if (rep.xi1_rt < cand_floor) rep.xi1_rt = rep.xi1;  // degenerate small field

  // N_t: exclusive sites of high potential strictly between the origin and
  // the maximiser.  Candidates carry every site above delta_t * xi1 when the
  // floor certification below holds.
  double n_floor = scales.delta_t * rep.xi1;
  bool n_floor_ok = cand_floor <= n_floor;
  // The candidate enumeration only covered |z| <= R_t, which contains the
  // open interval (0, |z1|).
  for (const Candidate& c : cands) {
    std::int64_t azc = c.z < 0 ? -c.z : c.z;
    if (azc == 0 || azc >= az1) continue;
    if (!c.exclusive || c.xi <= n_floor) continue;
    rep.n_set.push_back(c.z);
  }
  std::sort(rep.n_set.begin(), rep.n_set.end());

  // The seven clauses of the typicality event E_t.
  const Scales& s = scales;
  double psi2_eff = std::max(rep.psi2, scan_floor);
  bool c1 = s.r_t * s.f_t < static_cast<double>(az1) &&
            static_cast<double>(az1) < s.r_t * s.g_t;
  bool c2 = s.a_t * s.f_t < rep.xi1 && rep.xi1 < s.a_t * s.g_t;
  bool c3 = rep.psi1 - psi2_eff > s.a_t * s.f_t;
  bool c4 = rep.psi1 > s.f_t * rep.xi1;
  bool c5 = rep.xi1 == rep.xi1_rt;
  bool c6 = rep.xi1_rt - rep.xi2_rt > s.a_t * s.f_t;
  bool c7 = tail_clause_ok;
  rep.e_t = c1 && c2 && c3 && c4 && c5 && c6 && c7 && !rep.scan_floor_hit;

  // E_t^[2,inf): size sandwich for N_t plus separation from Omega_t.  The
  // sandwich bounds are evaluated literally; a nonpositive loglog makes the
  // lower bound vacuous.
  double inv_delta = 1.0 / s.delta_t;
  double lower = std::numeric_limits<double>::lowest();
  double ld = std::log(inv_delta);
  if (ld > 1.0) lower = std::pow(s.delta_t, -alpha) / std::log(ld);
  double upper = std::pow(s.delta_t, -alpha) * (ld > 0 ? ld : 0.0);
  double n_count = static_cast<double>(rep.n_set.size());
  bool size_ok = n_count > lower && n_count < upper && n_floor_ok;
  bool sep_ok = true;
  for (std::int64_t z : rep.n_set) {
    for (std::int64_t x : rep.omega) {
      std::int64_t d = z - x;
      if (d < 0) d = -d;
      if (static_cast<double>(d) <= s.g_t) sep_ok = false;
    }
  }
  rep.e_t_2inf = size_ok && sep_ok;

  return rep;
}

}  // namespace detail

}  // namespace pamlab
