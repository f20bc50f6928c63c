#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "heavyset/renorm.hpp"

namespace heavyset {

// Growth check on a branching sequence: holds iff m_k < (prod_{i<k} m_i)^eps
// for every k >= N in the prefix (k is 1-based). Evaluated exactly: for
// eps = p/q the test is m_k^q < P^p over the integers.
struct IrregularityVerdict {
  bool holds = true;
  std::optional<std::size_t> violation_k;  // first failing k
  std::size_t checked = 0;                 // number of k values tested
};
IrregularityVerdict irregularity_check(const std::vector<Int>& f2_sequence,
                                       const Rat& epsilon, std::size_t N);

// Truncated dimension estimate for the heavy set of cf. For each prefix of
// n steps,
//   ratio[n-1] = sum log f2 / sum -log f1
// evaluated from the delta enclosure midpoints (statistical), while
//   lower[n-1] <= true prefix ratio <= upper[n-1]
// are certified from the digit bounds alone: -log f1 is bounded above by
// log((2n+1)(m+1)) on even steps and log(2n+1) on odd ones, below by
// log(2nm) and log(n+1). Prefixes with zero numerator report 0 in all
// three sequences. running_inf is the infimum of ratio over n >= burn_in,
// a finite-depth stand-in for the liminf that defines the dimension; no
// limit is claimed. closed_form is the exact-cycle value when the exact
// trajectory revisits an angle. irregular applies the growth check to the
// f2 sequence with eps = 1/2 from k = 10 on.
struct DimEstimate {
  std::size_t depth = 0;  // steps actually walked
  std::vector<double> ratio;
  std::vector<double> lower;
  std::vector<double> upper;
  double running_inf = 0.0;
  std::size_t burn_in = 10;
  std::optional<double> closed_form;
  IrregularityVerdict irregular;
  bool partial = false;  // stream ended or budget ran out before depth
};
DimEstimate dim_estimate(const ContinuedFraction& cf, std::size_t depth);

// CSV rows (n, lower, ratio, upper), one per prefix length.
void write_dim_csv(std::ostream& os, const DimEstimate& e);

// Monte Carlo estimate of the almost-sure Birkhoff constant: ratio of the
// pooled means of log f2 and -log f1 along renormalization trajectories of
// uniformly drawn angles, with a delta-method 95% interval. Midpoint
// arithmetic throughout; this is a statistical figure, not a certified one.
struct CEstimate {
  double mean = 0.0;
  double half_width = 0.0;
  std::size_t samples = 0;  // requested
  std::size_t used = 0;     // samples that completed burnin+length steps
  std::size_t dropped = 0;  // samples whose digit budget ran out
  std::size_t burnin = 0;
  std::size_t length = 0;
  unsigned bits = 0;
  std::uint64_t seed = 0;
};
CEstimate estimate_c(std::size_t samples, std::size_t burnin,
                     std::size_t length, unsigned bits, std::uint64_t seed);

// Certifies -log f1 > log f2 on randomly drawn angles below 1/2. Digit
// bounds settle every case except a1 = 2, a2 = 1, which falls back to the
// delta enclosure. Draws with a1 = 1 (angle above 1/2) are redrawn.
struct PointwiseReport {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::optional<std::uint64_t> first_failure_sample;
  bool holds = true;
};
PointwiseReport pointwise_inequality_check(std::size_t samples,
                                           std::uint64_t seed);

// Angle whose heavy set has dimension d, as a lazy digit rule. d = 0 uses
// the factorial interleave [2!,1,3!,1,4!,1,...]; d = p/q in (0,1] uses
// [2 n_0, m_0, 2 n_1, m_1, ...] with m_i = 2^i and
// n_i = 1 + floor((m_i+1)^(q/p-1) / 2), the inner power evaluated exactly
// as the integer p-th root of (m_i+1)^(q-p).
ContinuedFraction theta_for_dimension(const Rat& d);

// log(m+1) / (log(2n) + log(m+1)) for the digit pair (2n, m) at positions
// (2i, 2i+1): the per-block ratio that theta_for_dimension drives to d.
double digit_pair_ratio(const ContinuedFraction& cf, std::size_t i);

}  // namespace heavyset
