#pragma once

#include <iosfwd>
#include <string>

#include "heavyset/cf.hpp"

namespace heavyset {

// Parses an angle descriptor. Accepted forms:
//   "[a1,a2,...]"              finite expansion (a rational angle)
//   "[a1,...;(p1,...,pk)]"     preperiod;period (quadratic), preperiod may
//                              be empty: "[;(2)]"
//   "rule:factorial_interleaved"
//   "rule:e_minus_2"
//   "rule:arith(start,step)"
//   "rule:target_d(d)"         d rational ("1/2") or decimal ("0.5")
//   "rule:inv_pi"
//   "rule:random(seed)" or "rule:random(seed,bits)"
// Throws std::invalid_argument with a message naming the defect.
ContinuedFraction theta_from_descriptor(const std::string& desc);

// Front end. Subcommands: cf, renorm, heavy, strict, dim, cconst,
// target-d, oracle. Every artifact embeds the invoking parameters, so a
// rerun with the same argv reproduces it byte for byte. Returns the
// process exit code: 0 success, 2 input error, 3 budget exhaustion or a
// truncated result. out/err default to std::cout/std::cerr.
int run_cli(int argc, const char* const* argv);
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace heavyset
