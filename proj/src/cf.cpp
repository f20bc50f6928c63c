#include "heavyset/cf.hpp"

#include <random>

namespace heavyset {

const Int& DigitSource::digit(std::size_t i) {
  while (cache_.size() <= i) {
    if (!produce()) {
      if (stop_ == Stop::rational) throw RationalTerminated(cache_.size());
      throw BudgetExhausted(cache_.size());
    }
  }
  return cache_[i];
}

bool DigitSource::has_digit(std::size_t i) {
  while (cache_.size() <= i) {
    if (!produce()) return false;
  }
  return true;
}

namespace {

class FiniteRationalSource : public DigitSource {
 public:
  explicit FiniteRationalSource(const Rat& x) : value_(x) {
    if (x <= 0 || x >= 1) throw std::domain_error("cf_from_rational: need x in (0,1)");
    num_ = x.get_num();
    den_ = x.get_den();
  }
  const Rat& value() const { return value_; }

 protected:
  bool produce() override {
    if (num_ == 0) {
      stop_ = Stop::rational;
      return false;
    }
    // State is the remaining tail num_/den_ in (0,1): emit floor(den/num).
    Int a = floor_div(den_, num_);
    Int rem = den_ - a * num_;
    cache_.push_back(a);
    den_ = num_;
    num_ = rem;
    return true;
  }

 private:
  Rat value_;
  Int num_, den_;
};

class PeriodicQuadraticSource : public DigitSource {
 public:
  PeriodicQuadraticSource(std::vector<Int> pre, std::vector<Int> period)
      : pre_(std::move(pre)), period_(std::move(period)) {
    if (period_.empty()) throw std::domain_error("periodic cf: empty period");
    for (const Int& d : pre_)
      if (d < 1) throw std::domain_error("periodic cf: digit < 1");
    for (const Int& d : period_)
      if (d < 1) throw std::domain_error("periodic cf: digit < 1");
  }

  // Fixed point of the period's Moebius map, then the preperiod applied.
  Quad value() const {
    Int A(1), B(0), C(0), D(1);  // identity; maps compose as 2x2 products
    for (const Int& b : period_) {
      // T_b(x) = 1/(b+x) has matrix [[0,1],[1,b]]. Multiply on the right so
      // the product is T_{b1} o T_{b2} o ... (b1 outermost), whose fixed
      // point is the value of the repeating block in stream order.
      Int nA = B, nB = A + b * B;
      Int nC = D, nD = C + b * D;
      A = nA;
      B = nB;
      C = nC;
      D = nD;
    }
    // y = (Ay+B)/(Cy+D) with C > 0: positive root of C y^2 + (D-A) y - B.
    Int disc = (D - A) * (D - A) + 4 * B * C;
    Quad y = (Quad(Rat(A - D)) + Quad::sqrt_of(disc)) / Quad(Rat(2 * C));
    for (auto it = pre_.rbegin(); it != pre_.rend(); ++it)
      y = (Quad(Rat(*it)) + y).recip();
    return y;
  }

 protected:
  bool produce() override {
    std::size_t i = cache_.size();
    if (i < pre_.size())
      cache_.push_back(pre_[i]);
    else
      cache_.push_back(period_[(i - pre_.size()) % period_.size()]);
    return true;
  }

 private:
  std::vector<Int> pre_, period_;
};

class RuleSource : public DigitSource {
 public:
  explicit RuleSource(std::function<Int(std::size_t)> f) : f_(std::move(f)) {}

 protected:
  bool produce() override {
    Int d = f_(cache_.size());
    if (d < 1) throw std::domain_error("rule produced digit < 1");
    cache_.push_back(std::move(d));
    return true;
  }

 private:
  std::function<Int(std::size_t)> f_;
};

// Extracts the partial quotients common to every point of [lo, hi]; stops
// (budget) once the next floor is no longer uniform over the interval.
class IntervalBitsSource : public DigitSource {
 public:
  explicit IntervalBitsSource(const RatInterval& I) : lo_(I.lo), hi_(I.hi) {
    if (lo_ < 0 || hi_ > 1 || lo_ > hi_)
      throw std::domain_error("interval cf: need [lo,hi] within [0,1]");
  }

 protected:
  bool produce() override {
    if (lo_ == 0 || hi_ == 0 || lo_ == hi_) {
      stop_ = Stop::budget;
      return false;
    }
    // 1/x runs over [1/hi, 1/lo]; a digit is certified when both floors
    // agree (exact reciprocal of a rational is its swapped fraction).
    Int a_from_hi = floor_div(hi_.get_den(), hi_.get_num());
    Int a_from_lo = floor_div(lo_.get_den(), lo_.get_num());
    if (a_from_hi != a_from_lo || a_from_hi < 1) {
      stop_ = Stop::budget;
      return false;
    }
    Rat new_lo = make_rat(hi_.get_den(), hi_.get_num()) - Rat(a_from_hi);
    Rat new_hi = make_rat(lo_.get_den(), lo_.get_num()) - Rat(a_from_hi);
    cache_.push_back(a_from_hi);
    lo_ = new_lo;
    hi_ = new_hi;
    return true;
  }

 private:
  Rat lo_, hi_;
};

class FrozenSource : public DigitSource {
 public:
  explicit FrozenSource(std::vector<Int> digits) { cache_ = std::move(digits); }

 protected:
  bool produce() override {
    stop_ = Stop::budget;
    return false;
  }
};

}  // namespace

// --- ContinuedFraction ------------------------------------------------------

Int ContinuedFraction::digit(std::size_t i) const {
  if (i < head_.size()) return head_[i];
  if (!src_) throw RationalTerminated(head_.size());
  return src_->digit(drop_ + (i - head_.size()));
}

bool ContinuedFraction::has_digit(std::size_t i) const {
  if (i < head_.size()) return true;
  if (!src_) return false;
  return src_->has_digit(drop_ + (i - head_.size()));
}

std::vector<Int> ContinuedFraction::digits(std::size_t k) const {
  std::vector<Int> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(digit(i));
  return out;
}

std::size_t ContinuedFraction::digits_certified_hint() const {
  std::size_t from_src = 0;
  if (src_ && src_->cached() > drop_) from_src = src_->cached() - drop_;
  return head_.size() + from_src;
}

ContinuedFraction ContinuedFraction::with_head(std::vector<Int> new_head,
                                               std::size_t consumed) const {
  for (const Int& d : new_head)
    if (d < 1) throw std::domain_error("cf head rewrite: digit < 1");
  ContinuedFraction out;
  out.src_ = src_;
  out.head_ = std::move(new_head);
  if (consumed <= head_.size()) {
    out.head_.insert(out.head_.end(), head_.begin() + consumed, head_.end());
    out.drop_ = drop_;
  } else {
    // Consuming digits beyond the rewritten head must touch them first so
    // termination surfaces here, not at a later read.
    std::size_t extra = consumed - head_.size();
    for (std::size_t i = 0; i < extra; ++i) (void)digit(head_.size() + i);
    out.drop_ = drop_ + extra;
  }
  return out;
}

std::optional<Quad> ContinuedFraction::exact_value() const {
  Quad tail;
  if (auto* p = dynamic_cast<PeriodicQuadraticSource*>(src_.get())) {
    tail = p->value();
  } else if (auto* r = dynamic_cast<FiniteRationalSource*>(src_.get())) {
    tail = Quad(r->value());
  } else if (!src_) {
    tail = Quad(0L);
  } else {
    return std::nullopt;
  }
  // Peel the dropped digits off the source value, then wrap the head back on.
  for (std::size_t i = 0; i < drop_; ++i) {
    // tail -> 1/tail - a_i; a zero tail means the rational ran out.
    if (tail.sign() == 0) throw RationalTerminated(i);
    tail = tail.recip() - Quad(Rat(src_->digit(i)));
  }
  Quad v = tail;
  for (auto it = head_.rbegin(); it != head_.rend(); ++it)
    v = (Quad(Rat(*it)) + v).recip();
  return v;
}

// --- constructors -----------------------------------------------------------

ContinuedFraction cf_from_rational(const Rat& x) {
  return ContinuedFraction(std::make_shared<FiniteRationalSource>(x));
}

ContinuedFraction cf_from_periodic(std::vector<Int> preperiod,
                                   std::vector<Int> period) {
  return ContinuedFraction(std::make_shared<PeriodicQuadraticSource>(
      std::move(preperiod), std::move(period)));
}

ContinuedFraction cf_from_rule(std::function<Int(std::size_t)> digit_at) {
  return ContinuedFraction(std::make_shared<RuleSource>(std::move(digit_at)));
}

ContinuedFraction cf_from_random_bits(std::uint64_t seed, unsigned bits) {
  if (bits < 8) throw std::domain_error("cf_from_random_bits: need >= 8 bits");
  std::mt19937_64 rng(seed);
  std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> raw(words);
  for (auto& w : raw) w = rng();
  Int u(0);
  for (std::uint64_t w : raw) {
    u <<= 64;
    Int word;
    mpz_import(word.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
    u |= word;
  }
  Int mask = pow_int(2, bits) - 1;
  u &= mask;
  if (u == 0) u = 1;
  Int scale = pow_int(2, bits);
  return cf_from_interval(RatInterval(make_rat(u, scale), make_rat(u + 1, scale)));
}

ContinuedFraction cf_from_interval(const RatInterval& I) {
  return ContinuedFraction(std::make_shared<IntervalBitsSource>(I));
}

// --- operations -------------------------------------------------------------

namespace {

// p_{-1}/q_{-1} = 1/0, p_0/q_0 = 0/1, p_k = a_k p_{k-1} + p_{k-2}.
void convergent_pair(const ContinuedFraction& cf, std::size_t n, Rat& prev,
                     Rat& last) {
  Int p_prev(1), p(0), q_prev(0), q(1);
  for (std::size_t k = 0; k < n; ++k) {
    Int a = cf.digit(k);
    Int p_new = a * p + p_prev;
    Int q_new = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_new;
    q = q_new;
  }
  prev = make_rat(p_prev, q_prev == 0 ? Int(1) : q_prev);  // n==0: prev unused
  last = make_rat(p, q);
}

}  // namespace

Rat convergent(const ContinuedFraction& cf, std::size_t k) {
  Rat prev, last;
  convergent_pair(cf, k, prev, last);
  return last;
}

RatInterval bounds(const ContinuedFraction& cf, std::size_t n) {
  if (n == 0) return RatInterval(Rat(0), Rat(1));
  Rat prev, last;
  convergent_pair(cf, n, prev, last);
  return prev <= last ? RatInterval(prev, last) : RatInterval(last, prev);
}

ContinuedFraction gauss(const ContinuedFraction& cf) { return cf.dropped(1); }

int compare(const ContinuedFraction& cf, const Rat& x) {
  if (auto v = cf.exact_value()) return v->cmp(x);
  std::size_t n = 4;
  for (;;) {
    RatInterval I = bounds(cf, n);
    if (auto c = cmp_interval_point(I, x)) return *c;
    if (I.is_point()) return 0;
    n *= 2;  // deeper digits; BudgetExhausted propagates to the caller
  }
}

ContinuedFraction freeze(const ContinuedFraction& cf, std::size_t k) {
  return ContinuedFraction(std::make_shared<FrozenSource>(cf.digits(k)));
}

RatInterval refine_enclosure(const ContinuedFraction& cf, const Rat& max_width,
                             bool* exhausted) {
  if (exhausted) *exhausted = false;
  if (auto v = cf.exact_value()) return v->enclosure(max_width);
  std::size_t n = 2;
  RatInterval best(Rat(0), Rat(1));
  for (;;) {
    try {
      best = bounds(cf, n);
    } catch (const BudgetExhausted& e) {
      std::size_t avail = e.digits_available;
      if (avail >= 1) best = bounds(cf, avail);
      if (best.width() > max_width && exhausted) *exhausted = true;
      return best;
    } catch (const RationalTerminated& e) {
      // Head-edited streams can in principle lose their exact backing;
      // the final convergent is the exact value.
      best = RatInterval(convergent(cf, e.digits_available));
      return best;
    }
    if (best.width() <= max_width) return best;
    n *= 2;
  }
}

}  // namespace heavyset
