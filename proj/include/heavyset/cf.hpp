#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "heavyset/interval.hpp"
#include "heavyset/quadratic.hpp"
#include "heavyset/rational.hpp"

namespace heavyset {

// A rational backing ran out of partial quotients: the value terminated.
struct RationalTerminated : std::runtime_error {
  explicit RationalTerminated(std::size_t available)
      : std::runtime_error("continued fraction terminated after " +
                           std::to_string(available) + " digits"),
        digits_available(available) {}
  std::size_t digits_available;
};

// A finite-precision backing (random bits, frozen snapshot, builtin constant
// enclosure) cannot certify the next digit.
struct BudgetExhausted : std::runtime_error {
  explicit BudgetExhausted(std::size_t available)
      : std::runtime_error("digit budget exhausted after " +
                           std::to_string(available) + " certified digits"),
        digits_available(available) {}
  std::size_t digits_available;
};

// Lazy partial-quotient producer. Digits are cached on read; a source is
// single-owner while in use (freeze() yields a shareable snapshot).
class DigitSource {
 public:
  enum class Stop { none, rational, budget };

  virtual ~DigitSource() = default;

  // 0-based access to partial quotient a_{i+1}; throws past the end.
  const Int& digit(std::size_t i);

  // Non-throwing probe: extends the cache as far as possible toward i+1
  // digits and reports whether digit i exists.
  bool has_digit(std::size_t i);

  std::size_t cached() const { return cache_.size(); }
  Stop stop_reason() const { return stop_; }

 protected:
  // Appends at least one digit to cache_ or sets stop_ and returns false.
  virtual bool produce() = 0;

  std::vector<Int> cache_;
  Stop stop_ = Stop::none;
};

// A point of (0,1) presented as a lazy continued fraction [a1, a2, ...]
// (all digits >= 1). Value semantics: copies share the digit source but
// carry their own head rewrite, so renormalization steps are cheap views.
// The visible stream is head_ followed by the source digits from drop_ on.
class ContinuedFraction {
 public:
  ContinuedFraction() = default;
  explicit ContinuedFraction(std::shared_ptr<DigitSource> src)
      : src_(std::move(src)) {}

  Int digit(std::size_t i) const;        // 0-based: digit(0) == a1
  bool has_digit(std::size_t i) const;
  std::vector<Int> digits(std::size_t k) const;

  // Digits visible without further production (for partial reporting).
  std::size_t digits_certified_hint() const;

  // Replaces the first `consumed` digits of this stream with new_head.
  ContinuedFraction with_head(std::vector<Int> new_head, std::size_t consumed) const;
  ContinuedFraction dropped(std::size_t n) const { return with_head({}, n); }

  // Exact value when the backing supports it (finite rational or periodic
  // quadratic), with head rewrites and drops applied.
  std::optional<Quad> exact_value() const;

  std::shared_ptr<DigitSource> source() const { return src_; }

 private:
  std::shared_ptr<DigitSource> src_;
  std::vector<Int> head_;
  std::size_t drop_ = 0;
};

// --- constructors ---------------------------------------------------------

ContinuedFraction cf_from_rational(const Rat& x);     // x in (0,1)
ContinuedFraction cf_from_periodic(std::vector<Int> preperiod,
                                   std::vector<Int> period);
ContinuedFraction cf_from_rule(std::function<Int(std::size_t)> digit_at);
// Uniform draw at `bits` precision; digits certified by interval bracketing.
ContinuedFraction cf_from_random_bits(std::uint64_t seed, unsigned bits = 4096);
// Certified digits of an explicitly given enclosure in (0,1).
ContinuedFraction cf_from_interval(const RatInterval& Ienclosure);

// --- operations -----------------------------------------------------------

// k-th convergent p_k/q_k (k >= 0; p_0/q_0 = 0/1).
Rat convergent(const ContinuedFraction& cf, std::size_t k);

// Enclosure from consecutive convergents p_{n-1}/q_{n-1}, p_n/q_n (n >= 1);
// width is exactly 1/(q_n q_{n-1}). bounds(cf, 0) = [0, 1].
RatInterval bounds(const ContinuedFraction& cf, std::size_t n);

// Shift by one digit: [a2, a3, ...].
ContinuedFraction gauss(const ContinuedFraction& cf);

// Certified comparison against a rational; -1/0/+1 for cf <,==,> x.
// Refines until decided; exact backings decide algebraically.
int compare(const ContinuedFraction& cf, const Rat& x);

// Immutable snapshot of the first k digits (reads them now).
ContinuedFraction freeze(const ContinuedFraction& cf, std::size_t k);

// Refines bounds() until the width is <= max_width; on budget exhaustion
// returns the best enclosure reached. `exhausted` (optional) reports that.
RatInterval refine_enclosure(const ContinuedFraction& cf, const Rat& max_width,
                             bool* exhausted = nullptr);

// 4200-bit enclosure of 1/pi (integer Machin evaluation, directed error).
RatInterval inv_pi_interval();

}  // namespace heavyset
