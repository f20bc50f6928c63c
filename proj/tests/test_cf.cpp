#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "heavyset/cf.hpp"

using namespace heavyset;

namespace {

std::vector<Int> ints(std::initializer_list<long> v) {
  return std::vector<Int>(v.begin(), v.end());
}

// e - 2 = [1, 2, 1, 1, 4, 1, 1, 6, 1, ...]: every third digit from the
// second is the even ramp, the rest are ones.
Int e_minus_2_digit(std::size_t i) {
  if (i % 3 == 1) return Int(2 * (i / 3 + 1));
  return Int(1);
}

}  // namespace

TEST_CASE("rational expansions match hand-computed digits") {
  ContinuedFraction cf = cf_from_rational(make_rat(5, 7));
  CHECK(cf.digits(3) == ints({1, 2, 2}));
  CHECK_THROWS_AS(cf.digit(3), RationalTerminated);
  CHECK(cf_from_rational(make_rat(1, 2)).digits(1) == ints({2}));
  CHECK(cf_from_rational(make_rat(2, 5)).digits(2) == ints({2, 2}));

  CHECK_THROWS_AS(cf_from_rational(Rat(0)), std::domain_error);
  CHECK_THROWS_AS(cf_from_rational(Rat(1)), std::domain_error);
  CHECK_THROWS_AS(cf_from_rational(make_rat(3, 2)), std::domain_error);
}

TEST_CASE("expansion of a random rational reconstructs it (randomized)") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    long den = 2 + (long)(rng() % 100000);
    long num = 1 + (long)(rng() % (den - 1));
    Rat x = make_rat(num, den);
    ContinuedFraction cf = cf_from_rational(x);
    std::size_t k = 0;
    while (cf.has_digit(k)) ++k;
    REQUIRE(cf.source()->stop_reason() == DigitSource::Stop::rational);
    CHECK(convergent(cf, k) == x);
    CHECK(cf.digit(k - 1) >= 2);  // Euclid yields the canonical form
    for (std::size_t i = 0; i < k; ++i) CHECK(cf.digit(i) >= 1);
  }
}

TEST_CASE("rule stream produces the e-2 pattern") {
  ContinuedFraction cf = cf_from_rule(e_minus_2_digit);
  CHECK(cf.digits(9) == ints({1, 2, 1, 1, 4, 1, 1, 6, 1}));
  ContinuedFraction bad = cf_from_rule([](std::size_t) { return Int(0); });
  CHECK_THROWS_AS(bad.digit(0), std::domain_error);
}

TEST_CASE("convergent enclosures at hand-checked depths") {
  ContinuedFraction r2m1 = cf_from_periodic({}, ints({2}));  // sqrt(2) - 1
  CHECK(bounds(r2m1, 0) == RatInterval(Rat(0), Rat(1)));
  CHECK(bounds(r2m1, 1) == RatInterval(Rat(0), make_rat(1, 2)));
  CHECK(bounds(r2m1, 2) == RatInterval(make_rat(2, 5), make_rat(1, 2)));

  ContinuedFraction r2o2 = cf_from_periodic(ints({1}), ints({2}));  // sqrt(2)/2
  CHECK(bounds(r2o2, 3) == RatInterval(make_rat(2, 3), make_rat(5, 7)));
  CHECK(convergent(r2o2, 1) == Rat(1));
  CHECK(convergent(r2o2, 2) == make_rat(2, 3));
}

TEST_CASE("enclosure width is exactly 1/(q_n q_{n-1}) (randomized)") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 100; ++t) {
    std::vector<Int> period;
    std::size_t len = 1 + rng() % 6;
    for (std::size_t i = 0; i < len; ++i) period.push_back(Int(1 + (long)(rng() % 9)));
    ContinuedFraction cf = cf_from_periodic({}, period);
    std::size_t n = 1 + rng() % 12;
    Int qn = convergent(cf, n).get_den();
    Int qn1 = n >= 1 ? convergent(cf, n - 1).get_den() : Int(0);
    CHECK(bounds(cf, n).width() == make_rat(Int(1), qn * qn1));
    // consecutive enclosures nest
    CHECK(bounds(cf, n - 1).contains(bounds(cf, n)));
  }
}

TEST_CASE("periodic streams carry their exact quadratic value") {
  ContinuedFraction r2m1 = cf_from_periodic({}, ints({2}));
  REQUIRE(r2m1.exact_value().has_value());
  CHECK(*r2m1.exact_value() == Quad(Int(-1), Int(1), Int(1), Int(2)));

  ContinuedFraction r2o2 = cf_from_periodic(ints({1}), ints({2}));
  CHECK(*r2o2.exact_value() == Quad(Int(0), Int(1), Int(2), Int(2)));

  ContinuedFraction x = cf_from_periodic(ints({3}), ints({2}));  // 1/(2+sqrt2)
  CHECK(*x.exact_value() == Quad(Int(2), Int(-1), Int(2), Int(2)));

  ContinuedFraction golden = cf_from_periodic({}, ints({1}));
  CHECK(*golden.exact_value() == Quad(Int(-1), Int(1), Int(2), Int(5)));

  CHECK(*cf_from_rational(make_rat(5, 7)).exact_value() == Quad(make_rat(5, 7)));

  CHECK_THROWS_AS(cf_from_periodic({}, {}), std::domain_error);
  CHECK_THROWS_AS(cf_from_periodic(ints({0}), ints({2})), std::domain_error);
}

TEST_CASE("digit shift and head rewrites track the value") {
  ContinuedFraction r2o2 = cf_from_periodic(ints({1}), ints({2}));
  ContinuedFraction tail = gauss(r2o2);
  CHECK(tail.digits(3) == ints({2, 2, 2}));
  CHECK(*tail.exact_value() == Quad(Int(-1), Int(1), Int(1), Int(2)));

  // [1,2,2] = 5/7 with the first two digits replaced by [7]: [7,2] = 2/15.
  ContinuedFraction cf = cf_from_rational(make_rat(5, 7));
  ContinuedFraction patched = cf.with_head(ints({7}), 2);
  CHECK(patched.digits(2) == ints({7, 2}));
  CHECK(patched.exact_value()->as_rational() == make_rat(2, 15));

  // consuming past the end of a terminated stream fails at edit time
  CHECK_THROWS_AS(cf.with_head({}, 4), RationalTerminated);
  CHECK_THROWS_AS(cf.with_head(ints({0}), 1), std::domain_error);
}

TEST_CASE("certified comparison against rationals") {
  ContinuedFraction r2m1 = cf_from_periodic({}, ints({2}));
  CHECK(compare(r2m1, make_rat(2, 5)) > 0);
  CHECK(compare(r2m1, make_rat(1, 2)) < 0);
  CHECK(compare(r2m1, make_rat(41421356, 100000000)) > 0);
  CHECK(compare(r2m1, make_rat(41421357, 100000000)) < 0);
  CHECK(compare(cf_from_rational(make_rat(1, 3)), make_rat(1, 3)) == 0);

  ContinuedFraction em2 = cf_from_rule(e_minus_2_digit);
  CHECK(compare(em2, make_rat(7, 10)) > 0);
  CHECK(compare(em2, make_rat(71828182845904523LL, 100000000000000000LL)) > 0);
  CHECK(compare(em2, make_rat(71828182845904524LL, 100000000000000000LL)) < 0);
}

TEST_CASE("interval streams certify exactly the common digits") {
  ContinuedFraction cf = cf_from_interval(
      RatInterval(make_rat(2, 5), make_rat(21, 50)));
  CHECK(cf.digits(2) == ints({2, 2}));
  CHECK_THROWS_AS(cf.digit(2), BudgetExhausted);
  CHECK(cf.source()->stop_reason() == DigitSource::Stop::budget);

  ContinuedFraction none = cf_from_interval(
      RatInterval(make_rat(32, 100), make_rat(34, 100)));
  CHECK_FALSE(none.has_digit(0));

  CHECK_THROWS_AS(cf_from_interval(RatInterval(make_rat(-1, 2), make_rat(1, 2))),
                  std::domain_error);
}

TEST_CASE("interval round trip recovers the leading digits (randomized)") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 25; ++t) {
    std::vector<Int> pre, period;
    std::size_t plen = rng() % 3, len = 1 + rng() % 5;
    for (std::size_t i = 0; i < plen; ++i) pre.push_back(Int(1 + (long)(rng() % 10)));
    for (std::size_t i = 0; i < len; ++i) period.push_back(Int(1 + (long)(rng() % 10)));
    ContinuedFraction cf = cf_from_periodic(pre, period);
    Quad v = *cf.exact_value();
    RatInterval I = v.enclosure(Rat(1) / Rat(pow_int(10, 150)));
    ContinuedFraction back = cf_from_interval(I);
    CHECK(back.digits(50) == cf.digits(50));
  }
}

TEST_CASE("random draws are reproducible and budgeted") {
  ContinuedFraction a = cf_from_random_bits(12345);
  ContinuedFraction b = cf_from_random_bits(12345);
  CHECK(a.digits(50) == b.digits(50));
  ContinuedFraction c = cf_from_random_bits(12346);
  CHECK(a.digits(50) != c.digits(50));

  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 99ULL, 424242ULL}) {
    ContinuedFraction cf = cf_from_random_bits(seed);
    CHECK(cf.has_digit(700));  // 4096 bits certify well past this depth
  }

  ContinuedFraction small = cf_from_random_bits(7, 64);
  CHECK_FALSE(small.has_digit(100));
  CHECK(small.source()->stop_reason() == DigitSource::Stop::budget);
}

TEST_CASE("frozen snapshots replay digits then stop") {
  ContinuedFraction cf = freeze(cf_from_rule(e_minus_2_digit), 9);
  CHECK(cf.digits(9) == ints({1, 2, 1, 1, 4, 1, 1, 6, 1}));
  CHECK_THROWS_AS(cf.digit(9), BudgetExhausted);
}

TEST_CASE("refined enclosures meet the width request or report exhaustion") {
  ContinuedFraction em2 = cf_from_rule(e_minus_2_digit);
  Rat w = Rat(1) / Rat(pow_int(10, 30));
  bool exhausted = true;
  RatInterval I = refine_enclosure(em2, w, &exhausted);
  CHECK_FALSE(exhausted);
  CHECK(I.width() <= w);
  CHECK(I.lo > parse_rational("0.71828182845904523536028747135266"));
  CHECK(I.hi < parse_rational("0.71828182845904523536028747135267"));

  ContinuedFraction small = cf_from_random_bits(7, 64);
  RatInterval J = refine_enclosure(small, Rat(1) / Rat(pow_int(10, 300)), &exhausted);
  CHECK(exhausted);
  CHECK(J.width() > Rat(1) / Rat(pow_int(10, 300)));
  CHECK(J.width() < make_rat(1, 1000));  // still a useful enclosure

  // exact backings answer directly
  RatInterval K = refine_enclosure(cf_from_periodic({}, ints({2})),
                                   Rat(1) / Rat(pow_int(10, 60)), &exhausted);
  CHECK_FALSE(exhausted);
  CHECK(K.width() <= Rat(1) / Rat(pow_int(10, 60)));
}

TEST_CASE("reciprocal of pi enclosure matches its decimal expansion") {
  RatInterval I = inv_pi_interval();
  CHECK(I.width() < Rat(1) / Rat(pow_int(10, 1200)));
  CHECK(I.lo > parse_rational("0.3183098861837906715377675267450287240689"));
  CHECK(I.hi < parse_rational("0.3183098861837906715377675267450287240690"));
}
