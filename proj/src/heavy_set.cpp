#include "heavyset/heavy_set.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace heavyset {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kMaxIntervals = std::size_t(1) << 20;

// --- scalar dispatch: Quad on the exact path, RatInterval otherwise -------

template <class S>
S from_rat(const Rat& r);
template <>
Quad from_rat<Quad>(const Rat& r) { return Quad(r); }
template <>
RatInterval from_rat<RatInterval>(const Rat& r) { return RatInterval(r); }

RatInterval outer_of(const Quad& v, const Rat& w) { return v.enclosure(w); }
RatInterval outer_of(const RatInterval& v, const Rat&) { return v; }

std::optional<int> cert_cmp(const Quad& v, const Rat& x) { return v.cmp(x); }
std::optional<int> cert_cmp(const RatInterval& v, const Rat& x) {
  return cmp_interval_point(v, x);
}

bool cert_le(const Quad& v, const Rat& x) { return v.cmp(x) <= 0; }
bool cert_le(const RatInterval& v, const Rat& x) { return v.hi <= x; }

template <class S>
S step_delta(const RenormStep& st);
template <>
Quad step_delta<Quad>(const RenormStep& st) { return *st.delta_ex; }
template <>
RatInterval step_delta<RatInterval>(const RenormStep& st) { return st.delta; }

template <class S>
S traj_Delta(const RenormTrajectory& t, std::size_t i);
template <>
Quad traj_Delta<Quad>(const RenormTrajectory& t, std::size_t i) {
  return *t.Delta_ex[i];
}
template <>
RatInterval traj_Delta<RatInterval>(const RenormTrajectory& t, std::size_t i) {
  return t.Delta[i];
}

template <class S>
S theta_value(const ContinuedFraction& cf, const Rat& tol, bool* short_of_tol);
template <>
Quad theta_value<Quad>(const ContinuedFraction& cf, const Rat&, bool*) {
  return *cf.exact_value();
}
template <>
RatInterval theta_value<RatInterval>(const ContinuedFraction& cf,
                                     const Rat& tol, bool* short_of_tol) {
  bool exhausted = false;
  RatInterval I = refine_enclosure(cf, tol, &exhausted);
  if (exhausted && short_of_tol) *short_of_tol = true;
  return I;
}

// Both nest endpoints live in [0, 1/2]; trimming the enclosure slack back
// into that range keeps affine images inside their parent's own enclosure.
void clamp_unit(Quad&, Quad&) {}
void clamp_unit(RatInterval& a, RatInterval& b) {
  Rat z(0), h(1, 2);
  if (a.lo < z) a.lo = z;
  if (a.hi > h) a.hi = h;
  if (b.lo < z) b.lo = z;
  if (b.hi > h) b.hi = h;
}

// Anchored nest in the local frame [0, 1/2] of step `start`: each step
// shrinks the bracket to the end matching the (rebased) flip parity; the
// bracket closes on the strictly heavy point of theta_start. Stops once the
// ambient length |I| is certified <= stop_len or the walk runs out.
template <class S>
std::pair<S, S> estar_nest(const RenormTrajectory& traj, std::size_t start,
                           const Rat& stop_len, bool* converged,
                           std::size_t* used = nullptr) {
  S a = from_rat<S>(Rat(0));
  S b = from_rat<S>(Rat(1, 2));
  S lenI = from_rat<S>(Rat(1));
  S half = from_rat<S>(Rat(1, 2));
  int base = traj.parity_after(start);
  *converged = false;
  std::size_t j = start;
  for (; j < traj.depth(); ++j) {
    lenI = lenI * step_delta<S>(traj.steps[j]);
    S h = lenI * half;
    if ((traj.steps[j].parity ^ base) == 0) {
      b = a + h;
    } else {
      a = b - h;
    }
    clamp_unit(a, b);
    if (cert_le(lenI, stop_len)) {
      *converged = true;
      ++j;
      break;
    }
  }
  if (used) *used = j - start;
  return {a, b};
}

template <class S>
HeavyCover::Data<S> build_impl(const RenormTrajectory& traj, std::size_t depth,
                               const Rat& tol, bool* partial) {
  HeavyCover::Data<S> d;
  Rat half(1, 2);
  d.levels.push_back({0, 0, {{from_rat<S>(Rat(0)), from_rat<S>(half)}}});

  std::size_t built = std::min(depth, traj.depth());
  if (built < depth) *partial = true;

  for (std::size_t i = 0; i < built; ++i) {
    const RenormStep& st = traj.steps[i];
    const auto& cur = d.levels.back().intervals;
    S Dn = traj_Delta<S>(traj, i + 1);
    S h = Dn * from_rat<S>(half);
    HeavyCover::Level<S> next{i + 1, traj.parity_after(i + 1), {}};

    if (st.branch == Branch::Flip) {
      next.intervals = cur;
    } else if (st.branch == Branch::OddFold) {
      next.intervals.reserve(cur.size());
      for (const auto& [A, B] : cur) {
        if (st.parity == 0) {
          next.intervals.push_back({A, A + h});
        } else {
          next.intervals.push_back({B - h, B});
        }
      }
    } else {
      const Int& m = *st.a2;
      if (!m.fits_ulong_p() || m.get_ui() >= kMaxIntervals ||
          cur.size() > kMaxIntervals / (m.get_ui() + 1)) {
        throw std::invalid_argument("cover too large at level " +
                                    std::to_string(i + 1));
      }
      next.intervals.reserve(cur.size() * (m.get_ui() + 1));
      for (const auto& [A, B] : cur) {
        if (st.parity == 0) {
          for (Int j(0); j <= m; ++j) {
            S off = Dn * from_rat<S>(Rat(j));
            next.intervals.push_back({A + off, A + off + h});
          }
        } else {
          for (Int j = m; j >= 0; --j) {
            S off = Dn * from_rat<S>(Rat(j));
            next.intervals.push_back({B - off - h, B - off});
          }
        }
      }
    }
    d.levels.push_back(std::move(next));
  }

  // Isolated points: born on every fold of an odd digit, and on an even
  // digit exactly when the digit after next is 1. Each interval of the birth
  // level receives the affine image of (strictly heavy point + angle).
  for (std::size_t i = 0; i < built; ++i) {
    const RenormStep& st = traj.steps[i];
    bool birth = false;
    if (st.branch == Branch::OddFold) {
      birth = true;
    } else if (st.branch == Branch::EvenDrop) {
      const ContinuedFraction& th = traj.thetas[i];
      if (th.has_digit(2)) {
        birth = (th.digit(2) == 1);
      } else if (th.source() &&
                 th.source()->stop_reason() == DigitSource::Stop::budget) {
        *partial = true;  // cannot decide the birth at this budget
        continue;
      }
    }
    if (!birth) continue;

    bool conv = false;
    auto [ea, eb] = estar_nest<S>(traj, i, tol, &conv);
    if (!conv) *partial = true;
    S tv = theta_value<S>(traj.thetas[i], tol, partial);
    S xl = ea + tv;
    S xh = eb + tv;

    const auto& parents = d.levels[i].intervals;
    if (d.isolated.size() + parents.size() > kMaxIntervals) {
      throw std::invalid_argument("too many isolated points");
    }
    S Di = traj_Delta<S>(traj, i);
    for (const auto& [A, B] : parents) {
      if (st.parity == 0) {
        d.isolated.push_back({A + Di * xl, A + Di * xh, i});
      } else {
        d.isolated.push_back({B - Di * xh, B - Di * xl, i});
      }
    }
  }

  // Strictly heavy images inside the deepest level.
  {
    bool conv = false;
    auto [ea, eb] = estar_nest<S>(traj, built, tol, &conv);
    if (!conv) *partial = true;
    int pD = traj.parity_after(built);
    S DD = traj_Delta<S>(traj, built);
    for (const auto& [A, B] : d.levels[built].intervals) {
      if (pD == 0) {
        d.strict_images.push_back({A + DD * ea, A + DD * eb});
      } else {
        d.strict_images.push_back({B - DD * eb, B - DD * ea});
      }
    }
  }
  return d;
}

template <class S>
Membership membership_impl(const HeavyCover::Data<S>& d, const Rat& x) {
  for (const auto& lvl : d.levels) {
    bool inside = false, fuzzy = false;
    for (const auto& [lo, hi] : lvl.intervals) {
      auto cl = cert_cmp(lo, x);
      auto ch = cert_cmp(hi, x);
      if (!cl || !ch) {
        fuzzy = true;
        continue;
      }
      if (*cl <= 0 && *ch >= 0) {
        inside = true;
        break;
      }
    }
    if (inside) continue;

    for (const auto& iso : d.isolated) {
      auto cl = cert_cmp(iso.lo, x);
      auto ch = cert_cmp(iso.hi, x);
      if (cl && ch && *cl == 0 && *ch == 0) {
        return {Membership::Kind::isolated, lvl.index, iso.birth};
      }
      if (!cl || !ch || (*cl <= 0 && *ch >= 0)) {
        return {Membership::Kind::ambiguous, lvl.index, iso.birth};
      }
    }
    if (fuzzy) return {Membership::Kind::ambiguous, lvl.index, std::nullopt};
    return {Membership::Kind::excluded, lvl.index, std::nullopt};
  }
  return {Membership::Kind::inside, d.levels.back().index, std::nullopt};
}

template <class S>
CoverDescription describe_impl(const HeavyCover::Data<S>& d, bool partial,
                               const Rat& w, const std::string& theta) {
  CoverDescription out;
  out.theta = theta;
  out.depth = d.levels.back().index;
  out.partial = partial;
  out.export_width = w;
  for (const auto& lvl : d.levels) {
    RatCoverLevel L{lvl.index, lvl.parity, {}};
    L.intervals.reserve(lvl.intervals.size());
    for (const auto& [lo, hi] : lvl.intervals) {
      L.intervals.push_back(
          RatInterval(outer_of(lo, w).lo, outer_of(hi, w).hi));
    }
    out.levels.push_back(std::move(L));
  }
  for (const auto& iso : d.isolated) {
    out.isolated.push_back(
        {RatInterval(outer_of(iso.lo, w).lo, outer_of(iso.hi, w).hi),
         iso.birth});
  }
  return out;
}

json rat_json(const Rat& r) {
  return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

Rat rat_unjson(const json& j) {
  Int num(j.at("num").get<std::string>());
  Int den(j.at("den").get<std::string>());
  return make_rat(num, den);
}

json interval_json(const RatInterval& I) {
  return json{{"lo", rat_json(I.lo)}, {"hi", rat_json(I.hi)}};
}

RatInterval interval_unjson(const json& j) {
  return RatInterval(rat_unjson(j.at("lo")), rat_unjson(j.at("hi")));
}

}  // namespace

HeavyCover HeavyCover::build(const ContinuedFraction& cf, std::size_t depth,
                             const Rat& point_tol) {
  HeavyCover hc;
  hc.requested_depth_ = depth;
  hc.point_tol_ = point_tol;
  std::size_t extra = 2 * recip_bits(point_tol) + 80;
  unsigned rel = static_cast<unsigned>(recip_bits(point_tol)) + 64;
  RenormTrajectory traj = trajectory(cf, depth + extra, rel);
  bool part = false;
  if (traj.exact) {
    hc.data_ = build_impl<Quad>(traj, depth, point_tol, &part);
  } else {
    hc.data_ = build_impl<RatInterval>(traj, depth, point_tol, &part);
  }
  hc.partial_ = part;
  return hc;
}

std::size_t HeavyCover::depth() const {
  return std::visit([](const auto& d) { return d.levels.back().index; },
                    data_);
}

const HeavyCover::Data<Quad>* HeavyCover::exact_data() const {
  return std::get_if<Data<Quad>>(&data_);
}

const HeavyCover::Data<RatInterval>* HeavyCover::enclosed_data() const {
  return std::get_if<Data<RatInterval>>(&data_);
}

std::size_t HeavyCover::interval_count(std::size_t level) const {
  return std::visit(
      [&](const auto& d) { return d.levels.at(level).intervals.size(); },
      data_);
}

std::size_t HeavyCover::isolated_count() const {
  return std::visit([](const auto& d) { return d.isolated.size(); }, data_);
}

Membership HeavyCover::membership(const Rat& x) const {
  return std::visit([&](const auto& d) { return membership_impl(d, x); },
                    data_);
}

CoverDescription HeavyCover::describe(const Rat& export_width,
                                      const std::string& theta) const {
  return std::visit(
      [&](const auto& d) {
        return describe_impl(d, partial_, export_width, theta);
      },
      data_);
}

std::vector<RatInterval> HeavyCover::strict_images(const Rat& width) const {
  return std::visit(
      [&](const auto& d) {
        std::vector<RatInterval> out;
        out.reserve(d.strict_images.size());
        for (const auto& [lo, hi] : d.strict_images) {
          out.push_back(
              RatInterval(outer_of(lo, width).lo, outer_of(hi, width).hi));
        }
        return out;
      },
      data_);
}

StrictHeavy strictly_heavy(const ContinuedFraction& cf, const Rat& tol) {
  std::size_t cap = 2 * recip_bits(tol) + 80;
  unsigned rel = static_cast<unsigned>(recip_bits(tol)) + 64;
  RenormTrajectory traj = trajectory(cf, cap, rel);
  StrictHeavy out;
  bool conv = false;
  if (traj.exact) {
    auto [a, b] = estar_nest<Quad>(traj, 0, tol, &conv, &out.depth_used);
    out.enclosure =
        RatInterval(a.enclosure(tol / 4).lo, b.enclosure(tol / 4).hi);
  } else {
    auto [a, b] =
        estar_nest<RatInterval>(traj, 0, tol, &conv, &out.depth_used);
    out.enclosure = RatInterval(a.lo, b.hi);
  }
  out.partial = !conv;
  return out;
}

OddEvenVerdict odd_even_criterion(const ContinuedFraction& cf,
                                  std::size_t digit_count) {
  OddEvenVerdict v;
  for (std::size_t k = 0; k < digit_count; ++k) {
    if (!cf.has_digit(k)) break;
    v.digits_checked = k + 1;
    if (k % 2 == 0 && cf.digit(k) % 2 != 0) {
      v.holds = false;
      v.violation_index = k + 1;
      break;
    }
  }
  return v;
}

std::string cover_to_json(
    const CoverDescription& d,
    const std::vector<std::pair<std::string, std::string>>& config) {
  json root;
  root["kind"] = "heavy_cover";
  root["theta"] = d.theta;
  root["depth"] = d.depth;
  root["partial"] = d.partial;
  root["export_width"] = rat_json(d.export_width);
  json levels = json::array();
  for (const auto& lvl : d.levels) {
    json intervals = json::array();
    for (const auto& I : lvl.intervals) intervals.push_back(interval_json(I));
    levels.push_back(json{{"i", lvl.index},
                          {"parity", lvl.parity},
                          {"intervals", std::move(intervals)}});
  }
  root["levels"] = std::move(levels);
  json iso = json::array();
  for (const auto& p : d.isolated) {
    iso.push_back(
        json{{"enclosure", interval_json(p.enclosure)}, {"birth", p.birth}});
  }
  root["isolated"] = std::move(iso);
  if (!config.empty()) {
    json cfg;
    for (const auto& [k, v] : config) cfg[k] = v;
    root["config"] = std::move(cfg);
  }
  return root.dump(1);
}

CoverDescription cover_from_json(const std::string& text) {
  json root = json::parse(text);
  if (root.value("kind", "") != "heavy_cover") {
    throw std::invalid_argument("not a heavy_cover document");
  }
  CoverDescription d;
  d.theta = root.value("theta", "");
  d.depth = root.at("depth").get<std::size_t>();
  d.partial = root.value("partial", false);
  d.export_width = rat_unjson(root.at("export_width"));
  for (const auto& lj : root.at("levels")) {
    RatCoverLevel lvl;
    lvl.index = lj.at("i").get<std::size_t>();
    lvl.parity = lj.at("parity").get<int>();
    for (const auto& ij : lj.at("intervals")) {
      lvl.intervals.push_back(interval_unjson(ij));
    }
    d.levels.push_back(std::move(lvl));
  }
  for (const auto& ij : root.at("isolated")) {
    d.isolated.push_back({interval_unjson(ij.at("enclosure")),
                          ij.at("birth").get<std::size_t>()});
  }
  return d;
}

}  // namespace heavyset
