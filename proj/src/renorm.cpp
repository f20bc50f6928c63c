#include "heavyset/renorm.hpp"

#include <ostream>

namespace heavyset {

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::Flip: return "flip";
    case Branch::OddFold: return "odd_fold";
    case Branch::EvenDrop: return "even_drop";
  }
  return "?";
}

GStepResult g_step(const ContinuedFraction& cf) {
  Int a1 = cf.digit(0);
  if (a1 == 1) {
    Int a2 = cf.digit(1);
    return {cf.with_head({a2 + 1}, 2), Branch::Flip, a1, std::nullopt};
  }
  if (a1 % 2 != 0) {
    return {cf.with_head({Int(1)}, 1), Branch::OddFold, a1, std::nullopt};
  }
  Int a2 = cf.digit(1);
  return {cf.with_head({}, 2), Branch::EvenDrop, a1, a2};
}

std::optional<Quad> delta_exact(const ContinuedFraction& cf) {
  auto v = cf.exact_value();
  if (!v) return std::nullopt;
  Int n = cf.digit(0) / 2;
  return Quad(1L) - Quad(Rat(2 * n)) * (*v);
}

namespace {

// Certified enclosure of an exact positive value with small relative width.
RatInterval enclose_rel(const Quad& v, unsigned rel_bits) {
  if (v.is_rational()) return RatInterval(v.as_rational());
  Rat w(1, 256);
  RatInterval rough = v.enclosure(w);
  while (rough.lo <= 0) {
    w /= 1024;
    rough = v.enclosure(w);
  }
  Rat target = rough.lo / Rat(Int(1) << rel_bits);
  return v.enclosure(target);
}

}  // namespace

RatInterval delta_enclosure(const ContinuedFraction& cf, unsigned rel_bits) {
  Int a1 = cf.digit(0);
  Int n = a1 / 2;
  if (n == 0) return RatInterval(Rat(1));  // Flip branch: delta is exactly 1
  if (auto ex = delta_exact(cf)) return enclose_rel(*ex, rel_bits);

  Rat two_n(2 * n);
  Rat scale(Int(1) << rel_bits);
  std::size_t depth = 2;
  for (;;) {
    // a1 = 2n or 2n+1 puts the value below 1/(2n), so delta = 1 - 2n*theta
    // stays positive; refine until that shows with relative room to spare.
    if (!cf.has_digit(depth)) {
      if (cf.source() && cf.source()->stop_reason() == DigitSource::Stop::rational) {
        throw RationalTerminated(cf.digits_certified_hint());
      }
      throw BudgetExhausted(cf.digits_certified_hint());
    }
    RatInterval I = bounds(cf, depth);
    RatInterval D = Rat(1) - I * two_n;
    if (D.lo > 0 && D.width() * scale <= D.lo) return D;
    depth *= 2;
  }
}

std::pair<RatInterval, Int> weights(const ContinuedFraction& cf,
                                    unsigned rel_bits) {
  Int a1 = cf.digit(0);
  RatInterval f1 = delta_enclosure(cf, rel_bits);
  Int f2(1);
  if (a1 != 1 && a1 % 2 == 0) f2 = cf.digit(1) + 1;
  return {f1, f2};
}

int RenormTrajectory::parity_after(std::size_t i) const {
  if (i == 0) return 0;
  const RenormStep& s = steps.at(i - 1);
  return s.parity ^ (s.branch == Branch::Flip ? 1 : 0);
}

RenormTrajectory trajectory(const ContinuedFraction& cf, std::size_t depth,
                            unsigned rel_bits) {
  RenormTrajectory t;
  t.requested_depth = depth;
  t.thetas.push_back(cf);
  t.Delta.push_back(RatInterval(Rat(1)));

  std::optional<Quad> start_exact = cf.exact_value();
  t.exact = start_exact.has_value();
  t.Delta_ex.push_back(t.exact ? std::optional<Quad>(Quad(1L)) : std::nullopt);

  ContinuedFraction cur = cf;
  int parity = 0;
  for (std::size_t i = 0; i < depth; ++i) {
    try {
      GStepResult gs = g_step(cur);
      std::optional<Quad> dex;
      RatInterval denc;
      if (t.exact) {
        dex = delta_exact(cur);
        if (!dex) throw std::logic_error("exact trajectory lost its backing");
        denc = enclose_rel(*dex, rel_bits);
      } else {
        denc = delta_enclosure(cur, rel_bits);
      }
      Int f2(1);
      if (gs.branch == Branch::EvenDrop) f2 = *gs.a2 + 1;

      t.steps.push_back({i, gs.branch, gs.a1, gs.a2, parity, dex, denc, f2});
      if (gs.branch == Branch::Flip) parity ^= 1;

      t.Delta.push_back(t.Delta.back() * denc);
      if (t.exact) {
        t.Delta_ex.push_back(*t.Delta_ex.back() * *dex);
      } else {
        t.Delta_ex.push_back(std::nullopt);
      }
      cur = gs.next;
      t.thetas.push_back(cur);
    } catch (const RationalTerminated&) {
      t.stop = RenormTrajectory::Stop::terminated;
      break;
    } catch (const BudgetExhausted&) {
      t.stop = RenormTrajectory::Stop::budget;
      break;
    }
  }
  return t;
}

void write_trajectory_csv(std::ostream& os, const RenormTrajectory& traj) {
  os << "i,a1,a2,branch,p,delta_lo,delta_hi,f2,Delta_lo,Delta_hi\n";
  for (const RenormStep& s : traj.steps) {
    os << s.index << ',' << s.a1 << ',';
    if (s.a2) os << *s.a2;
    os << ',' << branch_name(s.branch) << ',' << s.parity << ','
       << decimal_string(s.delta.lo, 40, -1) << ','
       << decimal_string(s.delta.hi, 40, +1) << ',' << s.f2 << ','
       << decimal_string(traj.Delta[s.index].lo, 40, -1) << ','
       << decimal_string(traj.Delta[s.index].hi, 40, +1) << '\n';
  }
}

}  // namespace heavyset
