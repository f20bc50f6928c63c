#include "heavyset/quadratic.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

namespace heavyset {

namespace {

// Primes below 1000, generated once; enough to reduce every radicand this
// library actually produces (periodic-stream discriminants keep their large
// square-free cofactors, which is harmless for arithmetic).
const std::vector<int>& small_primes() {
  static const std::vector<int> primes = [] {
    std::vector<int> p;
    std::array<bool, 1000> sieve{};
    for (int i = 2; i < 1000; ++i) {
      if (sieve[i]) continue;
      p.push_back(i);
      for (int j = 2 * i; j < 1000; j += i) sieve[j] = true;
    }
    return p;
  }();
  return primes;
}

}  // namespace

void Quad::canonicalize() {
  if (c_ == 0) throw std::domain_error("Quad: zero denominator");
  if (d_ < 0) throw std::domain_error("Quad: negative radicand");
  if (b_ == 0 || d_ == 0) {
    b_ = 0;
    d_ = 0;
  } else {
    for (int p : small_primes()) {
      Int p2 = Int(p) * p;
      while (mpz_divisible_p(d_.get_mpz_t(), p2.get_mpz_t())) {
        d_ /= p2;
        b_ *= p;
      }
      if (d_ < p2) break;
    }
    if (mpz_perfect_square_p(d_.get_mpz_t())) {
      b_ *= isqrt(d_);
      d_ = 1;
    }
    if (d_ == 1) {
      a_ += b_;
      b_ = 0;
      d_ = 0;
    }
  }
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  Int g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

Rat Quad::as_rational() const {
  if (b_ != 0) throw std::domain_error("Quad::as_rational: irrational value");
  return make_rat(a_, c_);
}

int Quad::sign() const {
  if (b_ == 0) return sgn(a_);
  int sa = sgn(a_), sb = sgn(b_);
  if (sa >= 0 && sb > 0) return 1;
  if (sa <= 0 && sb < 0) return -1;
  // a and b have opposite signs: compare a^2 against b^2 d.
  Int lhs = a_ * a_, rhs = b_ * b_ * d_;
  if (sa > 0) return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
  return rhs > lhs ? 1 : (rhs < lhs ? -1 : 0);
}

Int Quad::common_root(const Quad& x, const Quad& y) {
  if (x.d_ == 0) return y.d_;
  if (y.d_ == 0) return x.d_;
  if (x.d_ == y.d_) return x.d_;
  throw std::domain_error("Quad: mixing distinct quadratic fields");
}

Quad Quad::operator-() const {
  Quad r;
  r.a_ = -a_;
  r.b_ = -b_;
  r.c_ = c_;
  r.d_ = d_;
  return r;
}

Quad operator+(const Quad& x, const Quad& y) {
  Int d = Quad::common_root(x, y);
  return Quad(x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_,
              x.c_ * y.c_, d);
}

Quad operator-(const Quad& x, const Quad& y) { return x + (-y); }

Quad operator*(const Quad& x, const Quad& y) {
  Int d = Quad::common_root(x, y);
  return Quad(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_,
              x.c_ * y.c_, d);
}

Quad Quad::recip() const {
  if (sign() == 0) throw std::domain_error("Quad: division by zero");
  // 1 / ((a + b sqrt d)/c) = c (a - b sqrt d) / (a^2 - b^2 d)
  Int norm = a_ * a_ - b_ * b_ * d_;
  return Quad(c_ * a_, -(c_ * b_), norm, d_);
}

Quad operator/(const Quad& x, const Quad& y) { return x * y.recip(); }

Int Quad::floor() const {
  if (b_ == 0) return floor_div(a_, c_);
  Int t;
  mpz_set_d(t.get_mpz_t(), std::floor(to_double()));
  // Fix up the float estimate with exact sign tests.
  while (cmp(Rat(t)) < 0) --t;
  while (cmp(Rat(t + 1)) >= 0) ++t;
  return t;
}

RatInterval Quad::enclosure(const Rat& max_width) const {
  if (max_width <= 0) throw std::invalid_argument("Quad::enclosure: width must be positive");
  if (b_ == 0) return RatInterval(as_rational());
  // sqrt(d) in [s, s+1] / 2^k gives total width |b|/(c 2^k); pick k directly.
  Rat need = make_rat(abs(b_), c_) / max_width;  // need <= 2^k
  unsigned long k = 1;
  if (need > 1) {
    Int q = ceil_div(need.get_num(), need.get_den());
    k = mpz_sizeinbase(q.get_mpz_t(), 2);  // 2^k >= q
  }
  Int scale = pow_int(2, k);
  Int s = isqrt(d_ * scale * scale);
  Rat root_lo = make_rat(s, scale), root_hi = make_rat(s + 1, scale);
  Rat av = make_rat(a_, c_), bv = make_rat(b_, c_);
  Rat lo, hi;
  if (b_ > 0) {
    lo = av + bv * root_lo;
    hi = av + bv * root_hi;
  } else {
    lo = av + bv * root_hi;
    hi = av + bv * root_lo;
  }
  return RatInterval(lo, hi);
}

double Quad::to_double() const {
  if (b_ == 0) return heavyset::to_double(as_rational());
  signed long ex;
  double m = mpz_get_d_2exp(&ex, d_.get_mpz_t());
  double root = std::sqrt(m) * std::pow(2.0, double(ex) / 2.0);
  return (heavyset::to_double(Rat(a_)) + heavyset::to_double(Rat(b_)) * root) /
         heavyset::to_double(Rat(c_));
}

std::string Quad::str() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << a_;
    if (c_ != 1) os << "/" << c_;
    return os.str();
  }
  os << "(" << a_;
  if (b_ >= 0) os << "+";
  os << b_ << "*sqrt(" << d_ << "))/" << c_;
  return os.str();
}

}  // namespace heavyset
