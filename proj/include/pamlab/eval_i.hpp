#pragma once

#include <span>

#include "pamlab/mpfloat.hpp"
#include "pamlab/signed_log.hpp"

namespace pamlab {

// I_n(t; a_0..a_n): the exact weight of a geometric path with potential
// values a_i along it, as an iterated integral over jump times.  It equals
// the divided difference of x -> e^{tx} at the nodes a_0..a_n, which is the
// backbone of every evaluation route here:
//   * pairwise distinct, well separated -> partial-fraction sum
//     sum_i e^{t a_i} prod_{j != i} 1/(a_i - a_j), accumulated in the signed
//     log domain with running-max rescaling and compensated summation;
//   * clustered or repeated nodes -> nodes within gap_threshold coalesce and
//     the confluent divided-difference tableau runs in extended precision
//     (f[c,..,c] = t^k e^{tc} / k!);
//   * the partial-fraction route escalates itself to the tableau when its
//     cancellation estimate exceeds cancel_limit ulps.
struct EvalIOptions {
  double gap_threshold_rel = 1e-8;  // relative to max |a_i|
  double cancel_limit = 1e6;        // ulps of cancellation before escalation
  long precision_bits = 0;          // 0: PAMLAB_PRECISION_BITS or 256
  bool force_extended = false;
};

SignedLog eval_I(double t, std::span<const double> a,
                 const EvalIOptions& opts = {});

// log I_n in extended precision; used where finite differences of log I
// must resolve below double roundoff.
MpFloat eval_I_log_mp(double t, std::span<const double> a, long precision_bits);

}  // namespace pamlab
