#include "pamlab/eval_i.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pamlab/errors.hpp"

namespace pamlab {

namespace {

// Confluent divided-difference tableau of e^{tx} at sorted nodes, in MPFR.
// Equal nodes must be adjacent; repeated-node entries use the derivative
// formula t^k e^{t a} / k!.
MpFloat tableau_mp(double t, const std::vector<double>& sorted,
                   mpfr_prec_t prec) {
  const std::size_t m = sorted.size();
  std::vector<MpFloat> diag;
  diag.reserve(m);
  for (double a : sorted) diag.emplace_back(MpFloat::exp(MpFloat(t * a, prec)));
  // column k holds f[a_i .. a_{i+k}]
  std::vector<MpFloat> cur = diag;
  MpFloat tpow(1.0, prec);
  double fact = 1.0;
  for (std::size_t k = 1; k < m; ++k) {
    tpow *= t;
    fact *= static_cast<double>(k);
    std::vector<MpFloat> next;
    next.reserve(m - k);
    for (std::size_t i = 0; i + k < m; ++i) {
      double lo = sorted[i], hi = sorted[i + k];
      if (hi == lo) {
        // t^k e^{t a} / k!
        MpFloat v = MpFloat::exp(MpFloat(t * lo, prec)) * tpow;
        mpfr_prec_t p = prec;
        MpFloat d(fact, p);
        next.push_back(v / d);
      } else {
        MpFloat num = cur[i + 1] - cur[i];
        MpFloat den(hi - lo, prec);
        next.push_back(num / den);
      }
    }
    cur = std::move(next);
  }
  return cur[0];
}

SignedLog to_signed_log(const MpFloat& v) {
  if (v.is_zero()) return SignedLog::zero();
  return SignedLog(v.sign(), MpFloat::log_abs(v).to_double());
}

mpfr_prec_t pick_precision(double t, const std::vector<double>& sorted,
                           long requested) {
  double spread = sorted.back() - sorted.front();
  double bits = 96.0 + 1.4427 * t * spread;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    double g = sorted[i] - sorted[i - 1];
    if (g > 0 && g < 1) bits += std::min(40.0, -std::log2(g));
  }
  long base = requested > 0 ? requested : extended_precision_bits();
  return static_cast<mpfr_prec_t>(
      std::min(1 << 16, std::max<long>(base, static_cast<long>(bits))));
}

}  // namespace

SignedLog eval_I(double t, std::span<const double> a,
                 const EvalIOptions& opts) {
  if (a.empty()) throw ParameterError("eval_I: empty node list");
  if (t < 0) throw DomainError("eval_I: t must be nonnegative");
  const std::size_t m = a.size();
  if (m == 1) return SignedLog(1, t * a[0]);
  if (t == 0) return SignedLog::zero();  // empty simplex for n >= 1

  std::vector<double> sorted(a.begin(), a.end());
  std::sort(sorted.begin(), sorted.end());
  double amax_abs = 0;
  for (double x : sorted) amax_abs = std::max(amax_abs, std::fabs(x));
  double gap_threshold = opts.gap_threshold_rel * std::max(amax_abs, 1e-300);

  double min_gap = SignedLog::inf();
  for (std::size_t i = 1; i < m; ++i)
    min_gap = std::min(min_gap, sorted[i] - sorted[i - 1]);

  if (!opts.force_extended && min_gap >= gap_threshold) {
    // Partial fractions in the signed log domain.
    SignedLogSum sum;
    for (std::size_t i = 0; i < m; ++i) {
      double lg = t * sorted[i];
      int sign = 1;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        double d = sorted[i] - sorted[j];
        if (d < 0) sign = -sign;
        lg -= std::log(std::fabs(d));
      }
      sum.add(sign, lg);
    }
    SignedLog v = sum.value();
    if (v.sign != 0 && sum.cancellation_factor() <= opts.cancel_limit)
      return v;
    // fall through: catastrophic cancellation, redo in extended precision
  }

  // Coalesce near-equal nodes to their group mean, then run the tableau.
  std::vector<double> nodes;
  nodes.reserve(m);
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    double acc = 0;
    while (j < m && (j == i || sorted[j] - sorted[j - 1] < gap_threshold))
      acc += sorted[j++];
    double mean = acc / static_cast<double>(j - i);
    for (std::size_t k = i; k < j; ++k) nodes.push_back(mean);
    i = j;
  }
  mpfr_prec_t prec = pick_precision(t, nodes, opts.precision_bits);
  return to_signed_log(tableau_mp(t, nodes, prec));
}

MpFloat eval_I_log_mp(double t, std::span<const double> a,
                      long precision_bits) {
  std::vector<double> sorted(a.begin(), a.end());
  std::sort(sorted.begin(), sorted.end());
  mpfr_prec_t prec = pick_precision(t, sorted, precision_bits);
  return MpFloat::log_abs(tableau_mp(t, sorted, prec));
}

}  // namespace pamlab
