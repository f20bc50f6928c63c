#include "heavyset/cf.hpp"

namespace heavyset {

namespace {

// floor-ish evaluation of atan(1/x) * 2^prec by the alternating series,
// every term truncated toward zero. Error budget: the term recurrence's
// floor error propagates with factor 1/x^2 and stays below x^2/(x^2-1),
// and the contribution floor adds another unit, so 3 units per term is a
// safe overcount; 2 initial units cover the omitted tail.
Int atan_inv_scaled(unsigned long x, unsigned prec, Int* error_units) {
  Int scale = pow_int(2, prec);
  Int x2 = Int(x) * x;
  Int term = scale / x;  // 2^prec / x^(2k+1), k = 0
  Int sum(0);
  long k = 0;
  Int units(2);
  while (term != 0) {
    Int contrib = term / (2 * k + 1);
    if (k % 2 == 0)
      sum += contrib;
    else
      sum -= contrib;
    term /= x2;
    ++k;
    units += 3;
  }
  *error_units = units;
  return sum;
}

}  // namespace

RatInterval inv_pi_interval() {
  // pi = 16 atan(1/5) - 4 atan(1/239), evaluated in integers at guard
  // precision; the error bound is carried explicitly.
  const unsigned prec = 4096 + 64;
  Int e5, e239;
  Int a5 = atan_inv_scaled(5, prec, &e5);
  Int a239 = atan_inv_scaled(239, prec, &e239);
  Int pi_scaled = 16 * a5 - 4 * a239;
  Int err = 16 * e5 + 4 * e239;
  Int scale = pow_int(2, prec);
  Rat pi_lo = make_rat(pi_scaled - err, scale);
  Rat pi_hi = make_rat(pi_scaled + err, scale);
  return RatInterval(Rat(1) / pi_hi, Rat(1) / pi_lo);
}

}  // namespace heavyset
