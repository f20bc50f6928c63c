#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "heavyset/quadratic.hpp"

using namespace heavyset;

namespace {

Quad random_quad(std::mt19937_64& rng, const Int& d) {
  long a = (long)(rng() % 201) - 100;
  long b = (long)(rng() % 201) - 100;
  long c = (long)(rng() % 50) + 1;
  return Quad(Int(a), Int(b), Int(c), d);
}

}  // namespace

TEST_CASE("canonical form reduces square factors and signs") {
  CHECK(Quad::sqrt_of(Int(8)) == Quad(Int(0), Int(2), Int(1), Int(2)));
  CHECK(Quad::sqrt_of(Int(4)).is_rational());
  CHECK(Quad::sqrt_of(Int(4)).as_rational() == Rat(2));
  CHECK(Quad(Int(2), Int(4), Int(6), Int(2)) == Quad(Int(1), Int(2), Int(3), Int(2)));
  CHECK(Quad(Int(1), Int(0), Int(-2), Int(2)) == Quad(Rat(-1) / 2));
  CHECK(Quad(Int(0), Int(3), Int(1), Int(50)) == Quad(Int(0), Int(15), Int(1), Int(2)));
}

TEST_CASE("sign handles mixed-sign components exactly") {
  // sqrt(2) - 1.41421356... vs rationals on both sides
  Quad r2 = Quad::sqrt_of(Int(2));
  CHECK(r2.cmp(make_rat(141421356, 100000000)) > 0);
  CHECK(r2.cmp(make_rat(141421357, 100000000)) < 0);
  CHECK((r2 - r2).sign() == 0);
  CHECK((Quad(Int(-3), Int(2), Int(1), Int(2))).sign() < 0);   // 2sqrt2 = 2.828 < 3
  CHECK((Quad(Int(-2), Int(2), Int(1), Int(2))).sign() > 0);
  CHECK((Quad(Int(3), Int(-2), Int(1), Int(2))).sign() > 0);
  CHECK((Quad(Int(2), Int(-2), Int(1), Int(2))).sign() < 0);
}

TEST_CASE("field arithmetic round trips (randomized)") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    Int d(2 + (long)(rng() % 97));
    Quad x = random_quad(rng, d);
    Quad y = random_quad(rng, d);
    CHECK((x + y) - y == x);
    CHECK(x + (-x) == Quad(0L));
    if (y.sign() != 0) {
      CHECK((x * y) / y == x);
      CHECK(y * y.recip() == Quad(1L));
    }
    CHECK(x * (y + Quad(1L)) == x * y + x);
  }
}

TEST_CASE("mixing rationals with any root is allowed, distinct roots rejected") {
  Quad r2 = Quad::sqrt_of(Int(2));
  Quad r3 = Quad::sqrt_of(Int(3));
  CHECK((r2 + Quad(make_rat(1, 2))) - r2 == Quad(make_rat(1, 2)));
  CHECK_THROWS_AS(r2 + r3, std::domain_error);
}

TEST_CASE("floor is exact") {
  Quad r2 = Quad::sqrt_of(Int(2));
  CHECK(r2.floor() == 1);
  CHECK((-r2).floor() == -2);
  CHECK((r2 * Quad(100L)).floor() == 141);
  CHECK(Quad(make_rat(-7, 2)).floor() == -4);
  std::mt19937_64 rng(22);
  for (int i = 0; i < 200; ++i) {
    Int d(2 + (long)(rng() % 997));
    Quad x = random_quad(rng, d);
    Int f = x.floor();
    CHECK(x.cmp(Rat(f)) >= 0);
    CHECK(x.cmp(Rat(f + 1)) < 0);
  }
}

TEST_CASE("enclosure is certified and as tight as requested") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    Int d(2 + (long)(rng() % 997));
    Quad x = random_quad(rng, d);
    Rat w = Rat(1) / Rat(pow_int(10, 1 + (int)(rng() % 25)));
    RatInterval I = x.enclosure(w);
    CHECK(I.width() <= w);
    CHECK(x.cmp(I.lo) >= 0);
    CHECK(x.cmp(I.hi) <= 0);
  }
}

TEST_CASE("to_double tracks the enclosure") {
  Quad r2 = Quad::sqrt_of(Int(2));
  CHECK(std::abs(r2.to_double() - 1.4142135623730951) < 1e-12);
  Quad big = Quad(Int(1), Int(1), Int(1), pow_int(10, 40));  // 1 + 10^20
  CHECK(std::abs(big.to_double() - 1e20) / 1e20 < 1e-9);
}
