#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pamlab/errors.hpp"
#include "pamlab/potential.hpp"
#include "pamlab/rng.hpp"

namespace pamlab {

// ---------------------------------------------------------------------------
// Same partially duplicated Pareto law as PotentialField, represented for
// windows far too large to materialise.
//
// The field is split at a threshold theta > 1.  The exceedance skeleton
// (which pairs carry a value above theta, their categories, and the high
// values themselves) is sampled up front by geometric jumps over pair
// indices, so construction costs O(#exceedances) instead of O(radius).
// Sub-threshold values are pure functions of the per-site uniforms mapped
// through the Pareto CDF conditioned below theta, so any walk regenerates
// them on demand.  Thresholding splits an i.i.d. Pareto field exactly, so
// the law matches the dense field; bit-level equality with it is not
// preserved (different uniforms feed the high values), which is fine for
// the Monte-Carlo paths that use this representation.
class ThresholdedField {
 public:
  ThresholdedField(double alpha, double p, std::int64_t radius,
                   std::uint64_t seed, double theta)
      : alpha_(alpha),
        p_(p),
        radius_(radius),
        seed_(seed),
        theta_(theta),
        site_rng_(seed, static_cast<std::uint64_t>(RngStream::kSiteValue)),
        coin_rng_(seed, static_cast<std::uint64_t>(RngStream::kDupCoin)) {
    if (!(alpha > 1.0)) throw ParameterError("alpha must be > 1");
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must be in (0,1)");
    if (!(theta > 1.0))
      throw ParameterError("ThresholdedField needs theta > 1");
    inv_alpha_ = 1.0 / alpha;
    q_exc_ = std::pow(theta, -alpha);
    double q = 1.0 - p;
    p_int_ = p * q_exc_ + q * (2.0 * q_exc_ - q_exc_ * q_exc_);
    p_dup_low_ = p * (1.0 - q_exc_) / (1.0 - p_int_);
    build_skeleton();
  }

  double alpha() const { return alpha_; }
  double p() const { return p_; }
  std::int64_t radius() const { return radius_; }
  std::uint64_t seed() const { return seed_; }
  double theta() const { return theta_; }
  double candidate_floor(const Scales&) const { return theta_; }
  std::size_t exceedance_count() const { return sites_.size(); }

  double xi(std::int64_t z) const {
    if (z < -radius_ || z > radius_) throw RangeError("site outside window");
    std::int64_t n = z < 0 ? -z : z;
    const PairEntry* e = find_entry(n);
    if (e) {
      if (z >= 0 && e->hi_pos) return e->v_pos;
      if (z < 0 && (e->dup ? e->hi_pos : e->hi_neg))
        return e->dup ? e->v_pos : e->v_neg;
      return low_value(z, e->dup);
    }
    return low_value(z, z != 0 && dup_low(n));
  }

  bool exclusive(std::int64_t z) const {
    std::int64_t n = z < 0 ? -z : z;
    if (n == 0) return true;
    const PairEntry* e = find_entry(n);
    if (e) return !e->dup;
    return !dup_low(n);
  }

  template <class F>
  void for_each_site(std::int64_t a, std::int64_t b, F&& f) const {
    auto it = std::lower_bound(
        sites_.begin(), sites_.end(), a,
        [](const Site& s, std::int64_t z) { return s.z < z; });
    for (std::int64_t z = a; z <= b; ++z) {
      if (it != sites_.end() && it->z == z) {
        f(z, it->xi);
        ++it;
      } else {
        f(z, low_site(z));
      }
    }
  }

  template <class F>
  void for_each_site_desc(std::int64_t b, std::int64_t a, F&& f) const {
    auto it = std::upper_bound(
        sites_.begin(), sites_.end(), b,
        [](std::int64_t z, const Site& s) { return z < s.z; });
    for (std::int64_t z = b; z >= a; --z) {
      if (it != sites_.begin() && std::prev(it)->z == z) {
        --it;
        f(z, it->xi);
      } else {
        f(z, low_site(z));
      }
    }
  }

  // Only the exceedance skeleton: correct for any floor >= theta.
  template <class F>
  void for_each_candidate(double floor, std::int64_t a, std::int64_t b,
                          F&& f) const {
    if (floor < theta_ * (1.0 - 1e-12))
      throw StateError("candidate floor below field threshold");
    auto it = std::lower_bound(
        sites_.begin(), sites_.end(), a,
        [](const Site& s, std::int64_t z) { return s.z < z; });
    for (; it != sites_.end() && it->z <= b; ++it) f(it->z, it->xi);
  }

 private:
  struct PairEntry {
    std::int64_t n;
    bool dup, hi_pos, hi_neg;
    double v_pos, v_neg;
  };
  struct Site {
    std::int64_t z;
    double xi;
  };

  void build_skeleton() {
    SequentialRng seq(seed_, 6 /* far-list stream */);
    auto hi_draw = [&] { return theta_ * std::pow(seq.uniform_pos(), -inv_alpha_); };
    if (seq.uniform() < q_exc_)
      entries_.push_back({0, false, true, false, hi_draw(), 0.0});
    double log1m = std::log1p(-p_int_);
    std::int64_t n = 0;
    double pq = p_ * q_exc_;
    double q2 = (1.0 - p_) * q_exc_ * q_exc_;
    double q_hi_lo = (1.0 - p_) * q_exc_ * (1.0 - q_exc_);
    while (true) {
      double u = seq.uniform_pos();
      double g = std::floor(std::log(u) / log1m);
      if (g > 4e18 || n > radius_ - 1 - static_cast<std::int64_t>(g)) break;
      n += 1 + static_cast<std::int64_t>(g);
      double c = seq.uniform() * p_int_;
      PairEntry e{n, false, false, false, 0.0, 0.0};
      if (c < pq) {
        e.dup = e.hi_pos = e.hi_neg = true;
        e.v_pos = e.v_neg = hi_draw();
      } else if (c < pq + q2) {
        e.hi_pos = e.hi_neg = true;
        e.v_pos = hi_draw();
        e.v_neg = hi_draw();
      } else if (c < pq + q2 + q_hi_lo) {
        e.hi_pos = true;
        e.v_pos = hi_draw();
      } else {
        e.hi_neg = true;
        e.v_neg = hi_draw();
      }
      entries_.push_back(e);
    }
    for (const PairEntry& e : entries_) {
      bool neg_hi = e.n > 0 && (e.dup ? e.hi_pos : e.hi_neg);
      if (neg_hi) sites_.push_back({-e.n, e.dup ? e.v_pos : e.v_neg});
      if (e.hi_pos) sites_.push_back({e.n, e.v_pos});
    }
    std::sort(sites_.begin(), sites_.end(),
              [](const Site& x, const Site& y) { return x.z < y.z; });
  }

  const PairEntry* find_entry(std::int64_t n) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), n,
        [](const PairEntry& e, std::int64_t k) { return e.n < k; });
    if (it != entries_.end() && it->n == n) return &*it;
    return nullptr;
  }

  bool dup_low(std::int64_t n) const {
    return coin_rng_.uniform(static_cast<std::uint64_t>(n)) < p_dup_low_;
  }

  double pareto_low(double u) const {
    double w = 1.0 - u * (1.0 - q_exc_);
    if (alpha_ == 1.5) {
      double c = std::cbrt(w);
      return 1.0 / (c * c);
    }
    return std::pow(w, -inv_alpha_);
  }

  double low_value(std::int64_t z, bool dup) const {
    std::int64_t src = dup && z < 0 ? -z : z;
    return pareto_low(site_uniform(site_rng_, src));
  }

  // Walk fast path for sites known not to be in the exceedance list.
  double low_site(std::int64_t z) const {
    if (z >= 0) return pareto_low(site_uniform(site_rng_, z));
    std::int64_t n = -z;
    const PairEntry* e = find_entry(n);
    bool dup = e ? e->dup : dup_low(n);
    return pareto_low(site_uniform(site_rng_, dup ? n : z));
  }

  double alpha_, p_;
  std::int64_t radius_;
  std::uint64_t seed_;
  double theta_, inv_alpha_, q_exc_, p_int_, p_dup_low_;
  CounterRng site_rng_, coin_rng_;
  std::vector<PairEntry> entries_;  // sorted by n
  std::vector<Site> sites_;         // signed positions, sorted by z
};

}  // namespace pamlab
