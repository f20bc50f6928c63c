#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heavyset/cf.hpp"
#include "heavyset/heavy_set.hpp"

namespace heavyset {

// Brute-force ground truth for the cover construction: exact Birkhoff sums
// of the +-1 indicator of [0, 1/2] along the rotation orbit of x, and the
// structural checks built on them. Every indicator sign is decided by a
// certified comparison; when the digit stream cannot separate an orbit
// point from the boundary, BudgetExhausted (from cf.hpp) propagates.
//
// The worker is a fixed-point walk at scale 2^-128: positions advance by a
// rounded angle step with natural wraparound, and any step that lands
// within the accumulated rounding margin of 0 or 1/2 falls back to an
// exact quadratic or refined-interval comparison. Rational angles use an
// exact residue walk instead.

struct OrbitSum {
  Rat x;
  std::string theta;  // leading digits, for reports
  std::size_t N = 0;
  std::vector<long long> sums;  // S_1 .. S_N
  long long min_prefix = 0;
};

// S_n(x) for n = 1..N. f(y) = +1 on [0, 1/2] (closed), -1 on (1/2, 1).
// Requires 0 <= x < 1.
OrbitSum birkhoff(const Rat& x, const ContinuedFraction& cf, std::size_t N);

struct HeavyVerdict {
  bool heavy = true;
  std::optional<std::size_t> first_failure_n;  // least n with S_n < 0
  long long min_prefix = 0;                    // over the checked prefix
  std::size_t checked = 0;                     // steps examined
};

// Streams the sums and stops at the first negative prefix. heavy means
// S_n >= 0 held for every n <= N; it is a statement about the horizon
// only, not about the full orbit.
HeavyVerdict heavy_up_to(const Rat& x, const ContinuedFraction& cf,
                         std::size_t N);

// Heuristic horizon for depth-level verification: 10 q_{2 depth}, where
// q_k is the k-th convergent denominator (the last one available if the
// stream ends sooner), clamped to 1e8. Exclusion events at a given depth
// manifest within a small multiple of the matching denominator.
std::size_t default_horizon(const ContinuedFraction& cf, std::size_t depth);

struct Counterexample {
  Rat x;
  std::size_t n = 0;  // step at which the claim broke (0 if none applies)
  std::string note;
};

struct VerificationReport {
  std::string claim;
  std::string params;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t ambiguous = 0;  // undecidable within budget or horizon
  std::size_t failed = 0;
  std::optional<Counterexample> counterexample;  // first failure

  bool ok() const { return failed == 0; }
};

std::string report_to_json(const VerificationReport& r);

// First-return structure of the rotation on I' = [0, f1): sampled x in
// [0, f1/2] must keep S_i >= 1 up to the return time and land with
// S_{n(x)} = 1; x in (f1/2, f1) must keep S_i >= -1 and land at -1; and
// the return point must equal x shifted by (renormalized angle) * f1,
// wrapped at f1. Requires a1 >= 2. Samples whose side or return cannot
// be certified count as ambiguous.
VerificationReport verify_renormalization(const ContinuedFraction& cf,
                                          std::size_t sample_count,
                                          std::size_t N);

// Cover-versus-orbit equivalence at the given depth: certified members of
// the heavy set (strictly heavy images of a deeper cover, plus isolated
// points) must stay heavy up to N, while test points in the removed gaps,
// and in the step-one exclusion zones (f1/2, f1) and (f1/2 + theta, 1),
// must fail by N. grid_density asks for that many member samples per
// depth-level interval (capped by what the construction can supply).
// N = 0 selects default_horizon(cf, depth).
VerificationReport verify_levels(const ContinuedFraction& cf,
                                 std::size_t depth, std::size_t N,
                                 std::size_t grid_density);

// For a1 = 1 the angle flip theta -> 1 - theta reflects orbits through
// 1/2, so S_n(x; theta) = S_n(1/2 - x; g(theta)) term by term. Checks the
// full sum sequences for grid points x in [0, 1/2).
VerificationReport verify_reversal(const ContinuedFraction& cf,
                                   std::size_t N, std::size_t grid_density);

// Finds `count` times N_i with S_{N_i}(h*) = 1 for the strictly heavy
// point h*, then verifies each translate h* + N_i theta stays heavy for N
// more steps via the cocycle window S_{N_i + j} - S_{N_i} >= 0. Fewer
// witnesses than requested within the first N steps is reported as
// ambiguous (horizon too small), not failed.
VerificationReport verify_always_infinite(const ContinuedFraction& cf,
                                          std::size_t count, std::size_t N);

}  // namespace heavyset
