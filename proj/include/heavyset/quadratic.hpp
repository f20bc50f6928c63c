#pragma once

#include <optional>
#include <string>

#include "heavyset/interval.hpp"
#include "heavyset/rational.hpp"

namespace heavyset {

// Element of a real quadratic field: (a + b*sqrt(d)) / c with integer a, b,
// c and c > 0, gcd(a, b, c) = 1. d = 0 marks a plain rational (b = 0).
// Square factors of d found by trial division (and a perfect-square check on
// the cofactor) are folded into b, so small radicands are fully reduced.
// Arithmetic mixes two values only when their radicands agree or one side is
// rational; anything else throws, since exact comparison across distinct
// fields is not needed anywhere in this library.
class Quad {
 public:
  Quad() : a_(0), b_(0), c_(1), d_(0) {}
  Quad(const Rat& r) : a_(r.get_num()), b_(0), c_(r.get_den()), d_(0) {}
  Quad(long v) : a_(v), b_(0), c_(1), d_(0) {}
  Quad(const Int& a, const Int& b, const Int& c, const Int& d)
      : a_(a), b_(b), c_(c), d_(d) {
    canonicalize();
  }

  static Quad sqrt_of(const Int& d) { return Quad(0, 1, 1, d); }

  bool is_rational() const { return b_ == 0; }
  Rat as_rational() const;  // throws if irrational

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  const Int& d() const { return d_; }

  int sign() const;
  int cmp(const Quad& o) const { return (*this - o).sign(); }
  int cmp(const Rat& r) const { return (*this - Quad(r)).sign(); }

  bool operator==(const Quad& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
  }
  bool operator!=(const Quad& o) const { return !(*this == o); }
  bool operator<(const Quad& o) const { return cmp(o) < 0; }
  bool operator<=(const Quad& o) const { return cmp(o) <= 0; }
  bool operator>(const Quad& o) const { return cmp(o) > 0; }
  bool operator>=(const Quad& o) const { return cmp(o) >= 0; }

  Quad operator-() const;
  friend Quad operator+(const Quad& x, const Quad& y);
  friend Quad operator-(const Quad& x, const Quad& y);
  friend Quad operator*(const Quad& x, const Quad& y);
  friend Quad operator/(const Quad& x, const Quad& y);

  Quad recip() const;

  Int floor() const;

  // Certified rational enclosure of width <= max_width (exact point interval
  // when rational).
  RatInterval enclosure(const Rat& max_width) const;

  double to_double() const;

  std::string str() const;

 private:
  void canonicalize();
  static Int common_root(const Quad& x, const Quad& y);

  Int a_, b_, c_, d_;
};

}  // namespace heavyset
