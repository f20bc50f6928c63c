#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace heavyset {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// floor(num/den) for den > 0.
inline Int floor_div(const Int& num, const Int& den) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

inline Int ceil_div(const Int& num, const Int& den) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

inline Int floor_rat(const Rat& x) {
  return floor_div(x.get_num(), x.get_den());
}

inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// floor(n^(1/k)) for n >= 0, k >= 1.
// Bit length of floor(1/x) for x in (0, 1]; sizes refinement targets.
inline std::size_t recip_bits(const Rat& x) {
  if (x >= 1) return 1;
  Int q = x.get_den() / x.get_num();
  return mpz_sizeinbase(q.get_mpz_t(), 2);
}

inline Int kth_root_floor(const Int& n, unsigned long k) {
  Int r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

inline Int int_from_ulong(unsigned long v) { return Int(v); }

// Double conversions with controlled direction. mpq_get_d rounds toward
// zero, so for x >= 0 it is already a lower bound.
inline double to_double(const Rat& x) { return mpq_get_d(x.get_mpq_t()); }

inline double to_double_lower(const Rat& x) {
  double d = mpq_get_d(x.get_mpq_t());
  if (Rat(d) > x) d = std::nextafter(d, -HUGE_VAL);
  return d;
}

inline double to_double_upper(const Rat& x) {
  double d = mpq_get_d(x.get_mpq_t());
  if (Rat(d) < x) d = std::nextafter(d, HUGE_VAL);
  return d;
}

// Natural log of a positive big integer with a quantified error bound.
// mpz_get_d_2exp returns m in [0.5,1) truncated, so |log m + e ln2 - ln n|
// is a few ulps; the public bounds widen by a safe margin.
double log_int_estimate(const Int& n);
double log_int_lower(const Int& n);
double log_int_upper(const Int& n);

double log_rat_estimate(const Rat& x);   // x > 0
double log_rat_lower(const Rat& x);
double log_rat_upper(const Rat& x);

// Decimal rendering with directed rounding; digits is the count after the
// decimal point. Used for reproducible CSV/JSON output of exact bounds.
std::string decimal_string(const Rat& x, int digits, int direction);

// Parses "p/q", plain integers, and decimal/scientific literals ("0.25",
// "1e-9") into exact rationals.
Rat parse_rational(const std::string& text);

// Deterministic 64-bit mix used to derive per-sample seeds from (seed, k).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k);

}  // namespace heavyset
