#include "heavyset/oracle.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "heavyset/renorm.hpp"

namespace heavyset {

namespace {

using json = nlohmann::ordered_json;
using u128 = unsigned __int128;

constexpr std::size_t kHorizonCap = 100000000;  // default_horizon clamp

Int floor_div(const Int& num, const Int& den) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Int floor_rat(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }

// floor(r * 2^128) for r in [0, 1), packed into a u128.
u128 fixed128(const Rat& r) {
  Int z = floor_div(Int(r.get_num() << 128), r.get_den());
  Int hi = z >> 64;
  Int lo = z - (hi << 64);
  return (u128(hi.get_ui()) << 64) | u128(lo.get_ui());
}

std::string digits_descriptor(const ContinuedFraction& cf) {
  std::string s = "[";
  std::size_t i = 0;
  for (; i < 8 && cf.has_digit(i); ++i) {
    if (i) s += ',';
    s += cf.digit(i).get_str();
  }
  if (i == 8 && cf.has_digit(8)) s += ",...";
  s += ']';
  return s;
}

// Certified signs of f({x + i theta}) for i = 0, 1, 2, ..., where f is +1
// on [0, 1/2] (both ends closed) and -1 on (1/2, 1).
//
// Rational theta walks the exact residue a/D with D = den(x) den(theta).
// Otherwise positions advance in fixed point at scale 2^-128 (wraparound is
// exact mod 1). The rounded angle step is within 1.1 ulp of theta, so after
// i steps the accumulated error stays below 2i + 4 ulps; any position that
// close to 0 or 1/2 is re-decided by an exact quadratic comparison or by
// interval refinement. Boundary hits are certified, never guessed: a stream
// whose digit budget cannot separate a hit throws BudgetExhausted.
class SignStream {
 public:
  SignStream(const Rat& x, const ContinuedFraction& cf, std::size_t horizon)
      : x_(x), cf_(cf) {
    std::optional<Quad> ev = cf.exact_value();
    if (ev && ev->is_rational()) {
      mode_ = Mode::rational;
      Rat th = ev->as_rational();
      den_ = Int(x.get_den() * th.get_den());
      acc_ = Int(x.get_num() * th.get_den());
      step_ = Int(th.get_num() * x.get_den());
      return;
    }
    margin_ = u128(2) * u128(horizon) + 4;
    pos_ = fixed128(x);
    if (ev) {
      mode_ = Mode::quad;
      theta_q_ = std::move(ev);
      t_ = fixed128(theta_q_->enclosure(Rat(1, Int(1) << 133)).mid());
    } else {
      mode_ = Mode::interval;
      theta_b_ = refine_enclosure(cf, Rat(1, Int(1) << width_bits_));
      // a budget-limited stream may stop wider than requested; then the
      // fast path is unsound and every sign goes through the fallback
      coarse_ = theta_b_.width() * (Int(1) << 131) > 1;
      if (!coarse_) t_ = fixed128(theta_b_.mid());
    }
  }

  int next() {
    std::size_t i = i_++;
    if (mode_ == Mode::rational) {
      int s = (acc_ * 2 <= den_) ? +1 : -1;
      acc_ += step_;
      if (acc_ >= den_) acc_ -= den_;
      return s;
    }
    int s = coarse_ ? 0 : classify(pos_);
    if (s == 0) s = (mode_ == Mode::quad) ? quad_sign(i) : interval_sign(i);
    pos_ += t_;
    return s;
  }

 private:
  enum class Mode { rational, quad, interval };

  // +1 / -1 when the whole uncertainty arc lies in [0, 1/2] / [1/2, 1]
  // (the latter cannot contain an exact boundary hit: positions landing on
  // 1/2 or 0 only arise at i = 0, which the margin always defers).
  int classify(u128 p) const {
    constexpr u128 half = u128(1) << 127;
    if (p >= margin_ && p <= half - margin_) return +1;
    if (p >= half + margin_ && p <= u128(0) - margin_) return -1;
    return 0;
  }

  int quad_sign(std::size_t i) const {
    Quad z = Quad(x_) + Quad(Rat(Int(i))) * (*theta_q_);
    Quad frac = z - Quad(Rat(z.floor()));
    return frac.cmp(Rat(1, 2)) <= 0 ? +1 : -1;
  }

  int interval_sign(std::size_t i) {
    for (;;) {
      Rat lo = x_ + Rat(Int(i)) * theta_b_.lo;
      Rat hi = x_ + Rat(Int(i)) * theta_b_.hi;
      Int k = floor_rat(lo);
      lo -= Rat(k);
      hi -= Rat(k);
      if (hi <= Rat(1, 2)) return +1;
      if (lo > Rat(1, 2) && hi < 1) return -1;
      if (!refine_more()) throw BudgetExhausted(cf_.digits_certified_hint());
    }
  }

  bool refine_more() {
    if (width_bits_ >= 1u << 14) return false;
    width_bits_ *= 2;
    RatInterval nb = refine_enclosure(cf_, Rat(1, Int(1) << width_bits_));
    bool improved = nb.width() < theta_b_.width();
    theta_b_ = nb;
    return improved;
  }

  Rat x_;
  ContinuedFraction cf_;
  Mode mode_ = Mode::interval;
  std::size_t i_ = 0;

  Int den_, acc_, step_;  // rational mode

  u128 pos_ = 0, t_ = 0, margin_ = 0;
  std::optional<Quad> theta_q_;
  RatInterval theta_b_;
  bool coarse_ = false;
  unsigned width_bits_ = 160;
};

// Streams S_1..S_N into visit(n, S_n); visit returns false to stop early.
template <typename F>
void walk_sums(const Rat& x, const ContinuedFraction& cf, std::size_t N,
               F&& visit) {
  SignStream stream(x, cf, N);
  long long S = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    S += stream.next();
    if (!visit(n, S)) return;
  }
}

void require_unit_interval(const Rat& x, const char* who) {
  if (x < 0 || x >= 1) {
    throw std::invalid_argument(std::string(who) + ": x must lie in [0, 1)");
  }
}

json rat_json(const Rat& r) {
  return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

// Tallying helper keeping checked == passed + ambiguous + failed and the
// first counterexample.
struct Tally {
  VerificationReport r;

  void pass() {
    ++r.checked;
    ++r.passed;
  }
  void vague() {
    ++r.checked;
    ++r.ambiguous;
  }
  void fail(const Rat& x, std::size_t n, std::string note) {
    ++r.checked;
    ++r.failed;
    if (!r.counterexample) {
      r.counterexample = Counterexample{x, n, std::move(note)};
    }
  }
};

}  // namespace

OrbitSum birkhoff(const Rat& x, const ContinuedFraction& cf, std::size_t N) {
  require_unit_interval(x, "birkhoff");
  if (N == 0) throw std::invalid_argument("birkhoff: N must be >= 1");
  OrbitSum o;
  o.x = x;
  o.theta = digits_descriptor(cf);
  o.N = N;
  o.sums.reserve(N);
  walk_sums(x, cf, N, [&o](std::size_t n, long long S) {
    o.sums.push_back(S);
    if (n == 1 || S < o.min_prefix) o.min_prefix = S;
    return true;
  });
  return o;
}

HeavyVerdict heavy_up_to(const Rat& x, const ContinuedFraction& cf,
                         std::size_t N) {
  require_unit_interval(x, "heavy_up_to");
  HeavyVerdict v;
  walk_sums(x, cf, N, [&v](std::size_t n, long long S) {
    v.checked = n;
    if (n == 1 || S < v.min_prefix) v.min_prefix = S;
    if (S < 0) {
      v.heavy = false;
      v.first_failure_n = n;
      return false;
    }
    return true;
  });
  return v;
}

std::size_t default_horizon(const ContinuedFraction& cf, std::size_t depth) {
  std::size_t k = 2 * depth;
  while (k > 0 && !cf.has_digit(k - 1)) --k;
  Int n = 10 * convergent(cf, k).get_den();
  if (n > Int(static_cast<unsigned long>(kHorizonCap))) return kHorizonCap;
  return n.get_ui();
}

std::string report_to_json(const VerificationReport& r) {
  json root;
  root["claim"] = r.claim;
  root["params"] = r.params;
  root["checked"] = r.checked;
  root["passed"] = r.passed;
  root["ambiguous"] = r.ambiguous;
  root["failed"] = r.failed;
  if (r.counterexample) {
    root["counterexample"] = json{{"x", rat_json(r.counterexample->x)},
                                  {"n", r.counterexample->n},
                                  {"note", r.counterexample->note}};
  } else {
    root["counterexample"] = nullptr;
  }
  return root.dump(1);
}

VerificationReport verify_renormalization(const ContinuedFraction& cf,
                                          std::size_t sample_count,
                                          std::size_t N) {
  if (!cf.has_digit(0) || cf.digit(0) == 1) {
    throw std::invalid_argument("verify_renormalization: needs a1 >= 2");
  }
  if (sample_count == 0) sample_count = 1;
  if (N == 0) N = default_horizon(cf, 1);

  RenormTrajectory tr = trajectory(cf, 1, 200);
  if (tr.steps.empty()) {
    throw std::invalid_argument("verify_renormalization: stream too short");
  }
  const RatInterval& db = tr.steps[0].delta;
  ContinuedFraction gcf = tr.thetas.at(1);

  std::optional<Quad> tq = cf.exact_value();
  std::optional<Quad> dq = tr.steps[0].delta_ex;
  std::optional<Quad> gq = gcf.exact_value();
  const bool exact = tq && dq && gq;

  RatInterval tb, ge;
  if (!exact) {
    tb = refine_enclosure(cf, Rat(1, Int(1) << 200));
    ge = refine_enclosure(gcf, Rat(1, Int(1) << 150));
  }

  Tally t;
  t.r.claim = "first-return-renormalization";
  t.r.params = "theta=" + digits_descriptor(cf) +
               "; samples=" + std::to_string(sample_count) +
               "; horizon=" + std::to_string(N);

  const Rat half(1, 2);
  for (std::size_t j = 0; j < sample_count; ++j) {
    // grid spans [0, delta) through the certified lower endpoint
    Rat x = db.lo * Rat(Int(j)) / Rat(Int(sample_count));
    Rat two_x = x * 2;

    int side = 0;  // +1 left half [0, delta/2], -1 right half (delta/2, delta)
    if (exact) {
      side = (dq->cmp(two_x) >= 0) ? +1 : -1;
    } else if (two_x <= db.lo) {
      side = +1;
    } else if (two_x > db.hi) {
      side = -1;
    } else {
      t.vague();
      continue;
    }
    const long long want = side > 0 ? 1 : -1;

    if (exact) {
      Quad pos{x};
      long long S = 0;
      std::size_t n_ret = 0;
      bool dipped = false;
      std::size_t dip_n = 0;
      for (std::size_t i = 1; i <= N; ++i) {
        S += (pos.cmp(half) <= 0) ? +1 : -1;
        pos = pos + *tq;
        if (pos.cmp(Rat(1)) >= 0) pos = pos - Quad(Rat(1));
        if (pos.cmp(*dq) < 0) {
          n_ret = i;
          break;
        }
        if (S < want) {
          dipped = true;
          dip_n = i;
          break;
        }
      }
      if (dipped) {
        t.fail(x, dip_n, "excursion sum dipped below its side bound");
      } else if (n_ret == 0) {
        t.vague();  // no return within the horizon
      } else if (S != want) {
        t.fail(x, n_ret, "return sum is not the side's +-1");
      } else {
        Quad r_exp = Quad(x) + (*gq) * (*dq);
        if (r_exp.cmp(*dq) >= 0) r_exp = r_exp - *dq;
        if (r_exp.cmp(pos) != 0) {
          t.fail(x, n_ret, "return point differs from the rotation image");
        } else {
          t.pass();
        }
      }
      continue;
    }

    // interval walk: positions carry a certified bracket
    Rat plo = x, phi = x;
    long long S = 0;
    std::size_t n_ret = 0;
    int state = 0;  // 0 walking, 1 returned, 2 ambiguous, 3 dipped
    std::size_t dip_n = 0;
    for (std::size_t i = 1; i <= N && state == 0; ++i) {
      if (phi <= half) {
        S += 1;
      } else if (plo > half) {
        S -= 1;
      } else {
        state = 2;
        break;
      }
      plo += tb.lo;
      phi += tb.hi;
      if (plo >= 1) {
        plo -= 1;
        phi -= 1;
      } else if (phi >= 1) {
        state = 2;
        break;
      }
      if (phi < db.lo) {
        n_ret = i;
        state = 1;
      } else if (plo < db.hi) {
        state = 2;  // cannot certify membership in [0, delta)
      } else if (S < want) {
        state = 3;
        dip_n = i;
      }
    }
    if (state == 3) {
      t.fail(x, dip_n, "excursion sum dipped below its side bound");
    } else if (state != 1) {
      t.vague();
    } else if (S != want) {
      t.fail(x, n_ret, "return sum is not the side's +-1");
    } else {
      Rat rlo = x + ge.lo * db.lo;
      Rat rhi = x + ge.hi * db.hi;
      if (rlo >= db.hi) {  // certainly wrapped once
        Rat nlo = rlo - db.hi, nhi = rhi - db.lo;
        rlo = nlo;
        rhi = nhi;
      } else if (!(rhi < db.lo)) {
        t.vague();  // wrap undecidable at this width
        continue;
      }
      if (rhi < plo || phi < rlo) {
        t.fail(x, n_ret, "return point differs from the rotation image");
      } else {
        t.pass();
      }
    }
  }
  return t.r;
}

VerificationReport verify_levels(const ContinuedFraction& cf,
                                 std::size_t depth, std::size_t N,
                                 std::size_t grid_density) {
  if (depth == 0) {
    throw std::invalid_argument("verify_levels: depth must be >= 1");
  }
  if (grid_density == 0) grid_density = 1;
  if (N == 0) N = default_horizon(cf, depth);

  // Deepen the build until each depth-level interval owns at least
  // grid_density certified members: strict images of its bottom-level
  // descendants plus isolated points born below it. Counts per interval
  // are uniform, so one product suffices.
  RenormTrajectory tr = trajectory(cf, depth + 48);
  if (tr.depth() < depth) {
    throw std::invalid_argument("verify_levels: stream too short for depth");
  }
  std::size_t D = depth;
  {
    Int per(1), iso_per(0);
    while (D < tr.depth()) {
      const RenormStep& st = tr.steps[D];
      bool birth = st.branch == Branch::OddFold;
      if (st.branch == Branch::EvenDrop && tr.thetas[D].has_digit(2) &&
          tr.thetas[D].digit(2) == 1) {
        birth = true;
      }
      if (birth) iso_per += per;
      per *= st.f2;
      ++D;
      if (per + iso_per >= Int(static_cast<unsigned long>(grid_density))) {
        break;
      }
    }
  }

  HeavyCover cov = HeavyCover::build(cf, D);
  D = cov.depth();  // a partial build still carries its complete levels
  if (D < depth) {
    throw std::invalid_argument("verify_levels: budget too small for depth");
  }
  const Rat w(1, pow_int(Int(10), 30));
  CoverDescription desc = cov.describe(w);
  const std::vector<RatInterval>* lv = nullptr;
  for (const RatCoverLevel& level : desc.levels) {
    if (level.index == depth) lv = &level.intervals;
  }
  if (!lv || lv->empty()) {
    throw std::invalid_argument("verify_levels: no intervals at depth");
  }

  // bucket certified member brackets by depth-level interval
  const std::size_t B = lv->size();
  std::vector<std::vector<RatInterval>> members(B);
  {
    std::vector<RatInterval> imgs = cov.strict_images(w);
    std::size_t b = 0;
    for (const RatInterval& im : imgs) {
      Rat m = im.mid();
      while (b + 1 < B && m > (*lv)[b].hi) ++b;
      if ((*lv)[b].contains(m)) members[b].push_back(im);
    }
  }
  std::vector<RatInterval> stray;  // isolated points above the depth cover
  std::vector<Rat> avoid;          // every isolated point, for gap placement
  for (const RatIsolated& iso : desc.isolated) {
    Rat m = iso.enclosure.mid();
    avoid.push_back(m);
    bool placed = false;
    if (iso.birth >= depth) {
      auto it = std::upper_bound(
          lv->begin(), lv->end(), m,
          [](const Rat& v, const RatInterval& I) { return v < I.lo; });
      if (it != lv->begin()) {
        std::size_t b = static_cast<std::size_t>(it - lv->begin()) - 1;
        if ((*lv)[b].contains(m)) {
          members[b].push_back(iso.enclosure);
          placed = true;
        }
      }
    }
    if (!placed) stray.push_back(iso.enclosure);
  }

  Tally t;
  t.r.claim = "level-equivalence";

  // A member bracket certifies only that it contains a heavy point. The
  // orbit of that point may hit 0 or 1/2 exactly (at most once, theta being
  // irrational there), which makes heaviness one-sided at the hit: a proxy
  // on the wrong side fails macroscopically even arbitrarily close by. At
  // most one side is fragile, so some endpoint of the bracket must survive.
  auto expect_heavy_bracket = [&](const RatInterval& br) {
    try {
      HeavyVerdict v = heavy_up_to(br.mid(), cf, N);
      if (!v.heavy && !br.is_point()) {
        std::size_t first = *v.first_failure_n;
        v = heavy_up_to(br.hi, cf, N);
        if (!v.heavy) v = heavy_up_to(br.lo, cf, N);
        if (!v.heavy) v.first_failure_n = first;
      }
      if (v.heavy) {
        t.pass();
      } else {
        t.fail(br.mid(), *v.first_failure_n,
               "no endpoint of the member bracket stayed heavy");
      }
    } catch (const BudgetExhausted&) {
      t.vague();
    }
  };
  auto expect_fail = [&](const Rat& x) {
    try {
      HeavyVerdict v = heavy_up_to(x, cf, N);
      if (!v.heavy) {
        t.pass();
      } else {
        t.fail(x, N, "removed point stayed heavy to the horizon");
      }
    } catch (const BudgetExhausted&) {
      t.vague();
    }
  };

  std::size_t member_checks = 0;
  for (std::vector<RatInterval>& bucket : members) {
    if (bucket.empty()) {
      t.vague();  // no certified member to place here
      continue;
    }
    std::sort(bucket.begin(), bucket.end(),
              [](const RatInterval& a, const RatInterval& b) {
                return a.lo < b.lo;
              });
    std::size_t take = std::min(bucket.size(), grid_density);
    for (std::size_t k = 0; k < take; ++k) {
      expect_heavy_bracket(bucket[k * bucket.size() / take]);
      ++member_checks;
    }
  }
  for (const RatInterval& br : stray) {
    expect_heavy_bracket(br);
    ++member_checks;
  }

  // removed-gap test points, placed away from isolated points
  auto pick_in_gap = [&avoid](const Rat& lo, const Rat& hi) {
    static const int num[5] = {1, 1, 3, 3, 5};
    static const int den[5] = {2, 4, 4, 8, 8};
    std::optional<Rat> out;
    Rat len = hi - lo;
    for (int c = 0; c < 5 && !out; ++c) {
      Rat p = lo + len * make_rat(num[c], den[c]);
      bool clear = true;
      for (const Rat& a : avoid) {
        Rat d = p - a;
        if (d < 0) d = -d;
        if (d * 16 < len) {
          clear = false;
          break;
        }
      }
      if (clear) out = p;
    }
    return out;
  };

  std::size_t gap_checks = 0;
  auto gap_case = [&](const Rat& lo, const Rat& hi) {
    if (!(lo < hi)) return;
    ++gap_checks;
    if (std::optional<Rat> p = pick_in_gap(lo, hi)) {
      expect_fail(*p);
    } else {
      t.vague();  // gap too crowded by isolated points to place a test
    }
  };
  gap_case(Rat(0), lv->front().lo);
  for (std::size_t b = 0; b + 1 < B; ++b) gap_case((*lv)[b].hi, (*lv)[b + 1].lo);
  gap_case(lv->back().hi, Rat(1, 2));

  // the two step-one exclusion zones, certified through the delta and
  // angle brackets
  const RatInterval& db = tr.steps[0].delta;
  RatInterval tbr = refine_enclosure(cf, Rat(1, Int(1) << 80));
  {
    Rat lo1 = db.hi / 2, hi1 = db.lo;
    ++gap_checks;
    if (lo1 < hi1) {
      expect_fail((lo1 + hi1) / 2);
    } else {
      t.vague();
    }
    // the second zone is empty when f1/2 + theta >= 1 (flip streams);
    // an empty region carries no testable claim
    Rat lo2_hi = db.hi / 2 + tbr.hi;
    Rat lo2_lo = db.lo / 2 + tbr.lo;
    if (lo2_lo < 1) {
      ++gap_checks;
      if (lo2_hi < 1) {
        expect_fail((lo2_hi + 1) / 2);
      } else {
        t.vague();  // emptiness straddles the bracket
      }
    }
  }

  t.r.params = "theta=" + digits_descriptor(cf) +
               "; depth=" + std::to_string(depth) +
               "; build_depth=" + std::to_string(D) +
               "; horizon=" + std::to_string(N) +
               "; density=" + std::to_string(grid_density) +
               "; intervals=" + std::to_string(B) +
               "; members=" + std::to_string(member_checks) +
               "; gaps=" + std::to_string(gap_checks);
  return t.r;
}

VerificationReport verify_reversal(const ContinuedFraction& cf, std::size_t N,
                                   std::size_t grid_density) {
  if (!cf.has_digit(0) || cf.digit(0) != 1) {
    throw std::invalid_argument("verify_reversal: needs a1 = 1");
  }
  if (N == 0) N = 1000;
  if (grid_density == 0) grid_density = 1;

  RenormTrajectory tr = trajectory(cf, 1);
  if (tr.steps.empty()) {
    throw std::invalid_argument("verify_reversal: stream too short");
  }
  ContinuedFraction gcf = tr.thetas.at(1);

  Tally t;
  t.r.claim = "orbit-reversal";
  t.r.params = "theta=" + digits_descriptor(cf) +
               "; horizon=" + std::to_string(N) +
               "; grid=" + std::to_string(grid_density);

  const Rat half(1, 2);
  for (std::size_t j = 0; j < grid_density; ++j) {
    Rat x = make_rat(Int(j), Int(2 * grid_density));  // [0, 1/2)
    try {
      OrbitSum a = birkhoff(x, cf, N);
      OrbitSum b = birkhoff(half - x, gcf, N);
      if (a.sums == b.sums) {
        t.pass();
      } else {
        std::size_t n = 0;
        while (a.sums[n] == b.sums[n]) ++n;
        t.fail(x, n + 1, "sums diverge between x and its reflection");
      }
    } catch (const BudgetExhausted&) {
      t.vague();
    }
  }
  return t.r;
}

VerificationReport verify_always_infinite(const ContinuedFraction& cf,
                                          std::size_t count, std::size_t N) {
  if (count == 0) count = 1;
  if (N == 0) N = 10000;

  StrictHeavy sh = strictly_heavy(cf, Rat(1, Int(1) << 140));
  if (sh.partial) throw BudgetExhausted(cf.digits_certified_hint());
  Rat xstar = sh.enclosure.mid();

  Tally t;
  t.r.claim = "always-infinite-heavy";
  t.r.params = "theta=" + digits_descriptor(cf) +
               "; witnesses=" + std::to_string(count) +
               "; window=" + std::to_string(N);

  // one stream covers every witness window: S_{N_i + j} - S_{N_i} >= 0
  std::vector<long long> S;
  S.reserve(2 * N);
  std::vector<std::size_t> wit;
  walk_sums(xstar, cf, 2 * N, [&](std::size_t n, long long v) {
    S.push_back(v);
    if (v == 1 && n <= N && wit.size() < count) wit.push_back(n);
    return true;
  });

  // the proxy point must itself look strictly heavy throughout
  bool strict_ok = true;
  for (std::size_t n = 0; n < S.size(); ++n) {
    if (S[n] < 1) {
      t.fail(xstar, n + 1, "proxy sum fell below 1");
      strict_ok = false;
      break;
    }
  }
  if (strict_ok) t.pass();

  for (std::size_t Ni : wit) {
    long long base = S[Ni - 1];
    bool ok = true;
    for (std::size_t j = 1; j <= N; ++j) {
      if (S[Ni + j - 1] - base < 0) {
        t.fail(xstar, Ni + j,
               "translate window dipped below its starting sum");
        ok = false;
        break;
      }
    }
    if (ok) t.pass();
  }
  for (std::size_t k = wit.size(); k < count; ++k) t.vague();
  return t.r;
}

}  // namespace heavyset
