#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "heavyset/heavy_set.hpp"

using namespace heavyset;

namespace {

ContinuedFraction sqrt2_minus_1() { return cf_from_periodic({}, {Int(2)}); }
ContinuedFraction sqrt2_over_2() { return cf_from_periodic({Int(1)}, {Int(2)}); }

Int e2_digit(std::size_t i) {
  if (i % 3 == 1) return Int(2 * (i / 3 + 1));
  return Int(1);
}

Quad q2(long a, long b, long c) { return Quad(Int(a), Int(b), Int(c), Int(2)); }

Rat tol10(unsigned k) { return Rat(1, pow_int(10, k)); }

}  // namespace

TEST_CASE("level construction for [2,2,2,...]") {
  auto hc = HeavyCover::build(sqrt2_minus_1(), 3);
  REQUIRE(hc.exact());
  CHECK(!hc.partial());
  CHECK(hc.depth() == 3);
  CHECK(hc.interval_count(0) == 1);
  CHECK(hc.interval_count(1) == 3);
  CHECK(hc.interval_count(2) == 9);
  CHECK(hc.interval_count(3) == 27);
  // even digits never fold, so no isolated points and no parity changes
  CHECK(hc.isolated_count() == 0);

  const auto* d = hc.exact_data();
  REQUIRE(d);
  Quad delta = q2(3, -2, 1);  // 3 - 2 sqrt2
  Quad half(Rat(1, 2));
  const auto& L1 = d->levels[1].intervals;
  CHECK(d->levels[1].parity == 0);
  CHECK(L1[0].first == Quad(0L));
  CHECK(L1[0].second == delta * half);
  CHECK(L1[1].first == delta);
  CHECK(L1[1].second == delta * Quad(Rat(3, 2)));
  CHECK(L1[2].first == delta * Quad(2L));
  CHECK(L1[2].second == delta * Quad(Rat(5, 2)));

  // children of [0, delta/2] sit at j*delta^2, delta^2 = 17 - 12 sqrt2
  Quad d2 = q2(17, -12, 1);
  const auto& L2 = d->levels[2].intervals;
  CHECK(L2[0].first == Quad(0L));
  CHECK(L2[0].second == d2 * half);
  CHECK(L2[1].first == d2);
  CHECK(L2[2].first == d2 * Quad(2L));
  CHECK(L2[2].second == d2 * Quad(Rat(5, 2)));
  CHECK(L2[3].first == delta);  // first child of the second parent
}

TEST_CASE("flip steps copy the level, folds keep one end") {
  auto hc = HeavyCover::build(sqrt2_over_2(), 2);
  REQUIRE(hc.exact());
  const auto* d = hc.exact_data();
  REQUIRE(d);
  CHECK(d->levels[1].intervals == d->levels[0].intervals);
  CHECK(d->levels[1].parity == 1);
  // fold with parity 1 keeps the right end: [(2 - sqrt2)/2, 1/2]
  const auto& L2 = d->levels[2].intervals;
  REQUIRE(L2.size() == 1);
  CHECK(L2[0].first == q2(2, -1, 2));
  CHECK(L2[0].second == Quad(Rat(1, 2)));
}

TEST_CASE("strictly heavy points of the named angles") {
  // theta = sqrt2/2: the strictly heavy point is sqrt2/4
  auto s = strictly_heavy(sqrt2_over_2(), tol10(9));
  CHECK(!s.partial);
  CHECK(s.enclosure.width() <= tol10(9));
  Quad target = q2(0, 1, 4);
  CHECK(target.cmp(s.enclosure.lo) >= 0);
  CHECK(target.cmp(s.enclosure.hi) <= 0);

  // theta = sqrt2 - 1: all odd-position digits even, the point is 0 itself
  auto z = strictly_heavy(sqrt2_minus_1(), tol10(9));
  CHECK(z.enclosure.lo == 0);
  CHECK(z.enclosure.hi <= tol10(9));
  auto crit = odd_even_criterion(sqrt2_minus_1(), 100);
  CHECK(crit.holds);
  CHECK(crit.digits_checked == 100);

  // theta = [3;2,2,...] = (2 - sqrt2)/2: the point is (2 - sqrt2)/4
  auto t = strictly_heavy(cf_from_periodic({Int(3)}, {Int(2)}), tol10(12));
  CHECK(t.enclosure.width() <= tol10(12));
  Quad target3 = q2(2, -1, 4);
  CHECK(target3.cmp(t.enclosure.lo) >= 0);
  CHECK(target3.cmp(t.enclosure.hi) <= 0);
}

TEST_CASE("odd position digits decide whether zero is strictly heavy") {
  auto a = odd_even_criterion(sqrt2_over_2(), 50);
  CHECK(!a.holds);
  CHECK(a.violation_index == 1);  // leading digit 1 is odd

  auto b = odd_even_criterion(cf_from_periodic({}, {Int(2), Int(1)}), 100);
  CHECK(b.holds);  // [2,1,2,1,...]: odd positions all 2

  auto c = odd_even_criterion(
      cf_from_periodic({Int(2), Int(2), Int(1)}, {Int(2)}), 100);
  CHECK(!c.holds);
  CHECK(c.violation_index == 3);

  auto d = odd_even_criterion(cf_from_rule(e2_digit), 50);
  CHECK(!d.holds);
  CHECK(d.violation_index == 1);

  // rational input: runs out of digits, reports how many it saw
  auto e = odd_even_criterion(cf_from_rational(Rat(2, 5)), 100);
  CHECK(e.holds);
  CHECK(e.digits_checked == 2);
}

TEST_CASE("isolated points of [1;2,2,2,...]") {
  auto hc = HeavyCover::build(sqrt2_over_2(), 4, tol10(30));
  REQUIRE(hc.exact());
  CHECK(!hc.partial());
  REQUIRE(hc.isolated_count() == 2);
  const auto* d = hc.exact_data();
  REQUIRE(d);

  // first fold: 1/2 - (strict point + angle) of [3;2,2,...] = (3 sqrt2 - 4)/4
  const auto& i0 = d->isolated[0];
  CHECK(i0.birth == 1);
  Quad p0 = q2(-4, 3, 4);
  CHECK(p0.cmp(Quad(i0.lo)) >= 0);
  CHECK(p0.cmp(Quad(i0.hi)) <= 0);
  CHECK((i0.hi - i0.lo).cmp(tol10(30)) <= 0);

  // second fold lands at (7 sqrt2 - 8)/4, in the gap above level 4
  const auto& i1 = d->isolated[1];
  CHECK(i1.birth == 3);
  Quad p1 = q2(-8, 7, 4);
  CHECK(p1.cmp(Quad(i1.lo)) >= 0);
  CHECK(p1.cmp(Quad(i1.hi)) <= 0);
  const auto& L4 = d->levels[4].intervals;
  REQUIRE(L4.size() == 1);
  CHECK(L4[0].second == q2(5, -3, 2));  // (5 - 3 sqrt2)/2
  CHECK(i1.lo.cmp(L4[0].second) > 0);
  CHECK(i1.hi.cmp(Quad(Rat(1, 2))) < 0);

  // a rational inside the first bracket is flagged, one outside is excluded
  Rat near = p0.enclosure(tol10(45)).lo;
  auto m = hc.membership(near);
  CHECK(m.kind == Membership::Kind::ambiguous);
  CHECK(m.level == 2);
  REQUIRE(m.isolated_birth.has_value());
  CHECK(*m.isolated_birth == 1);

  auto far = hc.membership(near - tol10(10));
  CHECK(far.kind == Membership::Kind::excluded);
  CHECK(far.level == 2);
}

TEST_CASE("membership verdicts for [2,2,2,...]") {
  auto hc = HeavyCover::build(sqrt2_minus_1(), 3);

  auto half = hc.membership(Rat(1, 2));  // above 5 delta / 2
  CHECK(half.kind == Membership::Kind::excluded);
  CHECK(half.level == 1);

  auto third = hc.membership(Rat(1, 3));  // in the first gap of level 1
  CHECK(third.kind == Membership::Kind::excluded);
  CHECK(third.level == 1);

  // 2/5 survives level 1 but falls in a level 2 gap
  auto two5 = hc.membership(Rat(2, 5));
  CHECK(two5.kind == Membership::Kind::excluded);
  CHECK(two5.level == 2);

  auto zero = hc.membership(Rat(0));
  CHECK(zero.kind == Membership::Kind::inside);
  CHECK(zero.level == 3);
}

TEST_CASE("rational angles terminate and flag the cover partial") {
  auto hc = HeavyCover::build(cf_from_rational(Rat(5, 7)), 10);
  CHECK(hc.exact());
  CHECK(hc.partial());
  CHECK(hc.requested_depth() == 10);
  CHECK(hc.depth() == 4);  // the walk dies after flip,fold,flip,fold

  const auto* d = hc.exact_data();
  REQUIRE(d);
  const auto& L4 = d->levels[4].intervals;
  REQUIRE(L4.size() == 1);
  REQUIRE(L4[0].first.is_rational());
  CHECK(L4[0].first.as_rational() == Rat(2, 7));
  CHECK(L4[0].second.as_rational() == Rat(5, 14));

  CHECK(hc.membership(Rat(2, 7)).kind == Membership::Kind::inside);

  // both folds record a bracket, too wide to pin the point after termination
  CHECK(hc.isolated_count() == 2);
  auto m = hc.membership(Rat(1, 2));
  CHECK(m.kind == Membership::Kind::ambiguous);
  REQUIRE(m.isolated_birth.has_value());
  CHECK(*m.isolated_birth == 3);
}

TEST_CASE("covers from digit streams without exact values") {
  auto hc = HeavyCover::build(cf_from_rule(e2_digit), 5, tol10(15));
  REQUIRE(!hc.exact());
  CHECK(!hc.partial());
  const auto* d = hc.enclosed_data();
  REQUIRE(d);

  std::vector<std::size_t> want{1, 1, 1, 1, 2, 4};
  for (std::size_t i = 0; i <= 5; ++i) CHECK(hc.interval_count(i) == want[i]);

  // births: the fold at step 1, and the even step 4 whose third digit is 1
  REQUIRE(hc.isolated_count() == 3);
  CHECK(d->isolated[0].birth == 1);
  CHECK(d->isolated[1].birth == 4);
  CHECK(d->isolated[2].birth == 4);

  for (std::size_t i = 1; i <= 5; ++i) {
    const auto& L = d->levels[i].intervals;
    for (std::size_t k = 0; k + 1 < L.size(); ++k) {
      CHECK(L[k].second.hi < L[k + 1].first.lo);  // certified gaps
    }
    for (const auto& [lo, hi] : L) {
      CHECK(lo.width() <= tol10(10));
      CHECK(hi.width() <= tol10(10));
    }
  }

  auto zero = hc.membership(Rat(0));
  CHECK(zero.kind == Membership::Kind::excluded);
  CHECK(zero.level == 2);  // the fold keeps the right end of [0, 1/2]

  auto half = hc.membership(Rat(1, 2));
  CHECK(half.kind == Membership::Kind::excluded);
  CHECK(half.level == 4);

  auto imgs = hc.strict_images(tol10(20));
  REQUIRE(imgs.size() == 4);
  auto outer = hc.describe(tol10(20));
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(outer.levels[5].intervals[k].lo <= imgs[k].lo);
    CHECK(imgs[k].hi <= outer.levels[5].intervals[k].hi);
  }
}

TEST_CASE("cover description round trip") {
  auto hc = HeavyCover::build(sqrt2_over_2(), 3, tol10(25));
  auto desc = hc.describe(tol10(25), "[1;(2)]");
  CHECK(desc.theta == "[1;(2)]");
  CHECK(desc.depth == 3);
  CHECK(!desc.partial);

  // outer endpoints enclose the true ones: level 2 is [(2 - sqrt2)/2, 1/2]
  const auto& I = desc.levels[2].intervals[0];
  CHECK(q2(2, -1, 2).cmp(I.lo) >= 0);
  CHECK(q2(2, -1, 2).cmp(I.lo + tol10(24)) <= 0);
  CHECK(I.hi >= Rat(1, 2));

  std::string text = cover_to_json(desc, {{"angle", "[1;(2)]"}});
  CHECK(text.find("\"kind\": \"heavy_cover\"") != std::string::npos);
  CHECK(text.find("\"angle\": \"[1;(2)]\"") != std::string::npos);

  auto back = cover_from_json(text);
  CHECK(back.theta == desc.theta);
  CHECK(back.depth == desc.depth);
  CHECK(back.partial == desc.partial);
  CHECK(back.export_width == desc.export_width);
  REQUIRE(back.levels.size() == desc.levels.size());
  for (std::size_t i = 0; i < desc.levels.size(); ++i) {
    CHECK(back.levels[i].index == desc.levels[i].index);
    CHECK(back.levels[i].parity == desc.levels[i].parity);
    REQUIRE(back.levels[i].intervals.size() == desc.levels[i].intervals.size());
    for (std::size_t k = 0; k < desc.levels[i].intervals.size(); ++k) {
      CHECK(back.levels[i].intervals[k] == desc.levels[i].intervals[k]);
    }
  }
  REQUIRE(back.isolated.size() == desc.isolated.size());
  for (std::size_t k = 0; k < desc.isolated.size(); ++k) {
    CHECK(back.isolated[k].enclosure == desc.isolated[k].enclosure);
    CHECK(back.isolated[k].birth == desc.isolated[k].birth);
  }
}

TEST_CASE("oversized splits are rejected") {
  auto cf = cf_from_periodic({}, {Int(2000000)});
  CHECK_THROWS_AS(HeavyCover::build(cf, 1), std::invalid_argument);
}

TEST_CASE("randomized cover laws, exact path") {
  for (unsigned s = 0; s < 120; ++s) {
    INFO("seed " << s);
    std::mt19937_64 rng(9000 + s);
    auto digit = [&] { return Int(1 + rng() % 4); };
    std::vector<Int> pre, per;
    std::size_t pre_len = rng() % 3, per_len = 1 + rng() % 4;
    for (std::size_t i = 0; i < pre_len; ++i) pre.push_back(digit());
    for (std::size_t i = 0; i < per_len; ++i) per.push_back(digit());
    auto cf = cf_from_periodic(pre, per);

    const std::size_t depth = 5;
    auto hc = HeavyCover::build(cf, depth, tol10(12));
    REQUIRE(hc.exact());
    REQUIRE(!hc.partial());
    const auto* d = hc.exact_data();
    REQUIRE(d);
    auto tr = trajectory(cf, depth);
    REQUIRE(tr.depth() == depth);

    for (std::size_t i = 0; i <= depth; ++i) {
      const auto& L = d->levels[i].intervals;
      CHECK(d->levels[i].parity == tr.parity_after(i));
      if (i > 0) {
        std::size_t f2 = tr.steps[i - 1].f2.get_ui();
        CHECK(L.size() == d->levels[i - 1].intervals.size() * f2);
      }
      Quad len = *tr.Delta_ex[i] * Quad(Rat(1, 2));
      for (const auto& [lo, hi] : L) CHECK(hi - lo == len);
      for (std::size_t k = 0; k + 1 < L.size(); ++k) {
        // the gap to the next interval is at least one interval length
        CHECK((L[k + 1].first - L[k].second).cmp(Rat(0)) > 0);
        CHECK(((L[k + 1].first - L[k].second) - len).cmp(Rat(0)) >= 0);
      }
      if (i > 0) {
        const auto& P = d->levels[i - 1].intervals;
        std::size_t p = 0;
        for (const auto& [lo, hi] : L) {
          while (p < P.size() && P[p].second.cmp(lo) < 0) ++p;
          REQUIRE(p < P.size());
          CHECK(P[p].first.cmp(lo) <= 0);
          CHECK(hi.cmp(P[p].second) <= 0);
        }
      }
    }

    // isolated points live inside a parent but in a gap of the next level
    for (const auto& iso : d->isolated) {
      REQUIRE(iso.birth + 1 <= depth);
      CHECK(iso.lo.cmp(iso.hi) <= 0);
      const auto& P = d->levels[iso.birth].intervals;
      bool inside_parent = false;
      for (const auto& [lo, hi] : P) {
        if (lo.cmp(iso.lo) <= 0 && iso.hi.cmp(hi) <= 0) {
          inside_parent = true;
          break;
        }
      }
      CHECK(inside_parent);
      for (const auto& [lo, hi] : d->levels[iso.birth + 1].intervals) {
        CHECK((iso.hi.cmp(lo) < 0 || iso.lo.cmp(hi) > 0));
      }
    }

    // strictly heavy images: one per deepest interval, inside it
    const auto& bottom = d->levels[depth].intervals;
    REQUIRE(d->strict_images.size() == bottom.size());
    for (std::size_t k = 0; k < bottom.size(); ++k) {
      CHECK(bottom[k].first.cmp(d->strict_images[k].first) <= 0);
      CHECK(d->strict_images[k].second.cmp(bottom[k].second) <= 0);
    }

    // a point certified between the first two bottom intervals is never in
    if (bottom.size() >= 2) {
      Rat lo_out = bottom[0].second.enclosure(tol10(20)).hi;
      Rat hi_out = bottom[1].first.enclosure(tol10(20)).lo;
      auto m = hc.membership((lo_out + hi_out) / 2);
      CHECK(m.kind != Membership::Kind::inside);
    }

    // the midpoint of a strict image bracket is a certified member
    auto img = hc.strict_images(tol10(20));
    auto mm = hc.membership(img[0].mid());
    CHECK(mm.kind == Membership::Kind::inside);
    CHECK(mm.level == depth);
  }
}

TEST_CASE("randomized cover laws, enclosure path") {
  for (unsigned s = 0; s < 20; ++s) {
    INFO("seed " << s);
    auto cf = cf_from_random_bits(7000 + s);
    const std::size_t depth = 3;
    auto hc = HeavyCover::build(cf, depth, tol10(10));
    REQUIRE(!hc.exact());
    if (hc.partial()) {
      CHECK(hc.depth() <= depth);
      continue;
    }
    const auto* d = hc.enclosed_data();
    REQUIRE(d);
    auto tr = trajectory(cf, depth);
    REQUIRE(tr.depth() == depth);
    for (std::size_t i = 1; i <= depth; ++i) {
      std::size_t f2 = tr.steps[i - 1].f2.get_ui();
      CHECK(d->levels[i].intervals.size() ==
            d->levels[i - 1].intervals.size() * f2);
      const auto& L = d->levels[i].intervals;
      for (std::size_t k = 0; k + 1 < L.size(); ++k) {
        CHECK(L[k].second.hi < L[k + 1].first.lo);
      }
    }
    auto imgs = hc.strict_images(tol10(15));
    const auto& bottom = d->levels[depth].intervals;
    REQUIRE(imgs.size() == bottom.size());
    for (std::size_t k = 0; k < imgs.size(); ++k) {
      CHECK(bottom[k].first.lo <= imgs[k].lo);
      CHECK(imgs[k].hi <= bottom[k].second.hi);
    }
  }
}

TEST_CASE("short digit budgets flag the cover partial") {
  auto hc = HeavyCover::build(cf_from_random_bits(1, 64), 10, tol10(6));
  CHECK(hc.partial());
  CHECK(hc.depth() <= 10);
}
