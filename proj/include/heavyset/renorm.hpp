#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "heavyset/cf.hpp"

namespace heavyset {

// The three branches of the digit-stream renormalization step:
//   a1 = 1      -> Flip      [a1,a2,a3,...] -> [a2+1,a3,...]   (value 1-x)
//   a1 odd, >1  -> OddFold   [a1,a2,...]    -> [1,a2,...]
//   a1 even     -> EvenDrop  [a1,a2,a3,...] -> [a3,a4,...]
enum class Branch { Flip, OddFold, EvenDrop };

const char* branch_name(Branch b);

struct GStepResult {
  ContinuedFraction next;
  Branch branch;
  Int a1;
  std::optional<Int> a2;  // recorded for EvenDrop (drives the branching count)
};

GStepResult g_step(const ContinuedFraction& cf);

// Scale factor of one step: delta = 1 - 2*floor(a1/2)*x, in (0,1], equal to
// 1 exactly on the Flip branch.
std::optional<Quad> delta_exact(const ContinuedFraction& cf);

// Certified enclosure of delta with relative width <= 2^-rel_bits (exact
// point handling for the Flip branch). Refines convergent bounds as needed.
RatInterval delta_enclosure(const ContinuedFraction& cf, unsigned rel_bits = 64);

// (f1 enclosure, f2). f1 is delta; f2 is 1 except on EvenDrop where it is
// a2 + 1.
std::pair<RatInterval, Int> weights(const ContinuedFraction& cf,
                                    unsigned rel_bits = 64);

struct RenormStep {
  std::size_t index;
  Branch branch;
  Int a1;
  std::optional<Int> a2;
  int parity;  // flips seen before this step, mod 2
  std::optional<Quad> delta_ex;  // set on the exact path
  RatInterval delta;             // always set, certified
  Int f2;
};

struct RenormTrajectory {
  enum class Stop { complete, budget, terminated };

  std::vector<RenormStep> steps;
  // Running products of delta: Delta[i] covers steps 0..i-1, Delta[0] = 1.
  // One entry longer than steps when the walk completed.
  std::vector<RatInterval> Delta;
  std::vector<std::optional<Quad>> Delta_ex;
  // Stream before each step; thetas[0] is the input, thetas[i] = g^i(input).
  std::vector<ContinuedFraction> thetas;

  bool exact = false;  // every delta carries an exact quadratic value
  Stop stop = Stop::complete;
  std::size_t requested_depth = 0;

  bool partial() const { return stop != Stop::complete; }
  std::size_t depth() const { return steps.size(); }

  // Parity after all recorded steps (continuation of the p sequence).
  int parity_after(std::size_t i) const;
};

// Walks depth steps of the renormalization, recording branches, parities,
// certified deltas and their running products. Runs the exact quadratic
// path when the stream carries an exact value, the enclosure path otherwise.
// Budget or stream termination yields a truncated, flagged trajectory.
RenormTrajectory trajectory(const ContinuedFraction& cf, std::size_t depth,
                            unsigned rel_bits = 64);

// CSV rows (i, a1, a2, branch, p, delta_lo, delta_hi, f2, Delta_lo, Delta_hi)
// with directed 40-digit decimal endpoints; a2 empty off the EvenDrop branch.
void write_trajectory_csv(std::ostream& os, const RenormTrajectory& traj);

}  // namespace heavyset
