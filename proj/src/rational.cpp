#include "heavyset/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace heavyset {

namespace {

// Relative widening applied to double log computations. std::log and the
// 2exp decomposition are each good to ~1 ulp; 16 ulps of slack is generous
// and still nine orders of magnitude below every tolerance used here.
constexpr double kLogSlack = 16 * 2.220446049250313e-16;

double widen(double v, int direction) {
  double pad = kLogSlack * (std::fabs(v) + 1.0);
  return v + direction * pad;
}

}  // namespace

double log_int_estimate(const Int& n) {
  if (n <= 0) throw std::domain_error("log_int: nonpositive argument");
  signed long ex;
  double m = mpz_get_d_2exp(&ex, n.get_mpz_t());
  return std::log(m) + double(ex) * M_LN2;
}

double log_int_lower(const Int& n) { return widen(log_int_estimate(n), -1); }
double log_int_upper(const Int& n) { return widen(log_int_estimate(n), +1); }

double log_rat_estimate(const Rat& x) {
  if (x <= 0) throw std::domain_error("log_rat: nonpositive argument");
  return log_int_estimate(x.get_num()) - log_int_estimate(x.get_den());
}

double log_rat_lower(const Rat& x) { return widen(log_rat_estimate(x), -1); }
double log_rat_upper(const Rat& x) { return widen(log_rat_estimate(x), +1); }

std::string decimal_string(const Rat& x, int digits, int direction) {
  if (digits < 0) throw std::invalid_argument("decimal_string: negative digits");
  bool negative = x < 0;
  Rat ax = negative ? Rat(-x) : x;
  Int scale = pow_int(10, digits);
  Int units = ax.get_num() * scale;
  // Round the magnitude down/up so the printed value brackets x from the
  // requested side; for negative x the directions swap.
  int dir = negative ? -direction : direction;
  Int q = dir > 0 ? ceil_div(units, ax.get_den()) : floor_div(units, ax.get_den());
  Int whole = q / scale, frac = q % scale;
  std::string f = frac.get_str();
  if ((int)f.size() < digits) f.insert(f.begin(), digits - f.size(), '0');
  std::string out = whole.get_str();
  if (digits > 0) out += "." + f;
  if (negative && (whole != 0 || frac != 0)) out.insert(out.begin(), '-');
  return out;
}

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::string s = text;
  if (s.find('/') != std::string::npos) {
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
      throw std::invalid_argument("bad rational literal: " + text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
  }
  // Decimal / scientific form: sign, digits, optional fraction, optional
  // exponent. Everything is exact.
  size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
  std::string int_part, frac_part;
  while (pos < s.size() && std::isdigit((unsigned char)s[pos])) int_part += s[pos++];
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) frac_part += s[pos++];
  }
  long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    size_t rest = 0;
    try {
      exp10 = std::stol(s.substr(pos), &rest);
    } catch (...) {
      throw std::invalid_argument("bad exponent: " + text);
    }
    pos += rest;
  }
  if (pos != s.size() || (int_part.empty() && frac_part.empty()))
    throw std::invalid_argument("bad rational literal: " + text);
  Int mantissa(int_part.empty() ? "0" : int_part);
  for (char c : frac_part) mantissa = mantissa * 10 + (c - '0');
  exp10 -= (long)frac_part.size();
  Rat r(mantissa);
  if (exp10 > 0) r *= Rat(pow_int(10, exp10));
  if (exp10 < 0) r /= Rat(pow_int(10, -exp10));
  if (neg) r = -r;
  r.canonicalize();
  return r;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
  // splitmix64 finalizer over the combined word.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace heavyset
