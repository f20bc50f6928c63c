#pragma once

#include <optional>
#include <stdexcept>

#include "heavyset/rational.hpp"

namespace heavyset {

// Closed interval [lo, hi] with exact rational endpoints. All arithmetic is
// outward-exact: results enclose every pointwise combination of the inputs.
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  explicit RatInterval(const Rat& v) : lo(v), hi(v) {}
  RatInterval(const Rat& l, const Rat& h) : lo(l), hi(h) {
    if (lo > hi) throw std::invalid_argument("RatInterval: lo > hi");
  }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }

  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const RatInterval& o) const { return lo <= o.hi && o.lo <= hi; }

  RatInterval operator-() const { return RatInterval(-hi, -lo); }

  friend bool operator==(const RatInterval& a, const RatInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
  friend bool operator!=(const RatInterval& a, const RatInterval& b) {
    return !(a == b);
  }

  friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return RatInterval(a.lo + b.lo, a.hi + b.hi);
  }
  friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return RatInterval(a.lo - b.hi, a.hi - b.lo);
  }
  friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    Rat lo = p1, hi = p1;
    for (const Rat* p : {&p2, &p3, &p4}) {
      if (*p < lo) lo = *p;
      if (*p > hi) hi = *p;
    }
    return RatInterval(lo, hi);
  }
  friend RatInterval operator+(const RatInterval& a, const Rat& s) {
    return RatInterval(a.lo + s, a.hi + s);
  }
  friend RatInterval operator-(const Rat& s, const RatInterval& a) {
    return RatInterval(s - a.hi, s - a.lo);
  }
  friend RatInterval operator*(const RatInterval& a, const Rat& s) {
    if (s >= 0) return RatInterval(a.lo * s, a.hi * s);
    return RatInterval(a.hi * s, a.lo * s);
  }

  // Reciprocal; requires the interval to be strictly positive.
  RatInterval recip() const {
    if (lo <= 0) throw std::domain_error("RatInterval::recip: not strictly positive");
    return RatInterval(Rat(1) / hi, Rat(1) / lo);
  }
};

// Certified three-way comparison of an interval against a point: +1 means
// the whole interval is above x, -1 below, 0 the interval is the point x,
// nullopt undecidable at this width.
inline std::optional<int> cmp_interval_point(const RatInterval& I, const Rat& x) {
  if (I.hi < x) return -1;
  if (I.lo > x) return 1;
  if (I.lo == x && I.hi == x) return 0;
  return std::nullopt;
}

}  // namespace heavyset
