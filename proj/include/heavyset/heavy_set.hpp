#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "heavyset/renorm.hpp"

namespace heavyset {

// Rational outer description of a cover, the serializable form. Every
// endpoint encloses the true (possibly irrational) endpoint from outside, so
// gaps between consecutive outer intervals are certified gaps of the cover.
struct RatCoverLevel {
  std::size_t index;
  int parity;
  std::vector<RatInterval> intervals;  // ascending
};

struct RatIsolated {
  RatInterval enclosure;
  std::size_t birth;  // step whose branch created the point
};

struct CoverDescription {
  std::string theta;  // descriptor echo, may be empty
  std::size_t depth = 0;
  bool partial = false;
  Rat export_width;
  std::vector<RatCoverLevel> levels;
  std::vector<RatIsolated> isolated;
};

std::string cover_to_json(
    const CoverDescription& d,
    const std::vector<std::pair<std::string, std::string>>& config = {});
CoverDescription cover_from_json(const std::string& text);

struct Membership {
  enum class Kind { inside, isolated, excluded, ambiguous };
  Kind kind = Kind::ambiguous;
  // inside: deepest level confirmed; excluded: first level not containing x.
  std::size_t level = 0;
  std::optional<std::size_t> isolated_birth;
};

// Nested cover of the heavy set: levels of closed intervals (each level i
// has intervals of length Delta_i/2, pairwise gaps at least that long)
// plus the isolated points recorded at the steps that create them. Carries
// exact quadratic endpoints whenever the angle has an exact value, certified
// rational enclosures otherwise.
class HeavyCover {
 public:
  template <class S>
  struct Level {
    std::size_t index;
    int parity;
    std::vector<std::pair<S, S>> intervals;  // ascending [lo, hi]
  };
  // Isolated points are limits, so even the exact path stores a tight
  // two-sided bracket rather than a closed-form value.
  template <class S>
  struct Isolated {
    S lo, hi;
    std::size_t birth;
  };
  template <class S>
  struct Data {
    std::vector<Level<S>> levels;
    std::vector<Isolated<S>> isolated;
    // Affine image of the strictly heavy point of the deepest renormalized
    // angle inside each deepest-level interval: certified members of the
    // heavy set, aligned with levels.back().intervals.
    std::vector<std::pair<S, S>> strict_images;
  };

  static HeavyCover build(const ContinuedFraction& cf, std::size_t depth,
                          const Rat& point_tol = Rat(1, pow_int(10, 40)));

  bool exact() const { return std::holds_alternative<Data<Quad>>(data_); }
  bool partial() const { return partial_; }
  std::size_t depth() const;  // deepest level index present
  std::size_t requested_depth() const { return requested_depth_; }

  const Data<Quad>* exact_data() const;
  const Data<RatInterval>* enclosed_data() const;

  std::size_t interval_count(std::size_t level) const;
  std::size_t isolated_count() const;

  Membership membership(const Rat& x) const;

  CoverDescription describe(const Rat& export_width,
                            const std::string& theta_descriptor = "") const;

  // Outer enclosures of the strictly heavy images per deepest-level interval.
  std::vector<RatInterval> strict_images(const Rat& width) const;

 private:
  std::variant<Data<Quad>, Data<RatInterval>> data_;
  bool partial_ = false;
  std::size_t requested_depth_ = 0;
  Rat point_tol_;
};

struct StrictHeavy {
  RatInterval enclosure;
  std::size_t depth_used = 0;
  bool partial = false;  // budget ran out before the width target
};

// Certified enclosure of the strictly heavy point, by nesting the anchored
// E* intervals until their width drops below tol.
StrictHeavy strictly_heavy(const ContinuedFraction& cf, const Rat& tol);

// Whether every odd-position partial quotient (a1, a3, a5, ...) among the
// first digit_count digits is even; marks where that first fails. Positions
// are 1-based. Exactly characterizes angles whose strictly heavy point is 0.
struct OddEvenVerdict {
  bool holds = true;
  std::optional<std::size_t> violation_index;
  std::size_t digits_checked = 0;
};
OddEvenVerdict odd_even_criterion(const ContinuedFraction& cf,
                                  std::size_t digit_count);

}  // namespace heavyset
