#include "heavyset/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heavyset/dimension.hpp"
#include "heavyset/heavy_set.hpp"
#include "heavyset/oracle.hpp"
#include "heavyset/renorm.hpp"

namespace heavyset {
namespace {

using json = nlohmann::ordered_json;

// Bad command input distinct from library-level invalid_argument only in
// where it is produced; both map to exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string strip_space(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

Int parse_uint(const std::string& tok, const char* what) {
  if (tok.empty()) throw InputError(std::string(what) + ": empty number");
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw InputError(std::string(what) + ": bad number '" + tok + "'");
  return Int(tok);
}

std::vector<Int> parse_digit_list(const std::string& body, const char* what) {
  if (body.empty()) throw InputError(std::string(what) + ": empty digit list");
  std::vector<Int> digits;
  for (const std::string& tok : split(body, ',')) {
    Int d = parse_uint(tok, what);
    if (d < 1)
      throw InputError(std::string(what) + ": partial quotients must be >= 1");
    digits.push_back(std::move(d));
  }
  return digits;
}

ContinuedFraction theta_from_rule(const std::string& rule) {
  if (rule == "factorial_interleaved") return theta_for_dimension(Rat(0));
  if (rule == "e_minus_2")
    return cf_from_rule(
        [](std::size_t i) { return i % 3 == 1 ? Int(2 * (i / 3 + 1)) : Int(1); });
  if (rule == "inv_pi") return cf_from_interval(inv_pi_interval());

  auto args_of = [&](const char* name) -> std::optional<std::string> {
    std::string prefix = std::string(name) + "(";
    if (rule.size() > prefix.size() + 1 && rule.compare(0, prefix.size(), prefix) == 0 &&
        rule.back() == ')')
      return rule.substr(prefix.size(), rule.size() - prefix.size() - 1);
    return std::nullopt;
  };

  if (auto a = args_of("arith")) {
    auto parts = split(*a, ',');
    if (parts.size() != 2) throw InputError("arith takes (start,step)");
    Int start = parse_uint(parts[0], "arith start");
    Int step = parse_uint(parts[1], "arith step");
    if (start < 1) throw InputError("arith: start must be >= 1");
    return cf_from_rule([start, step](std::size_t k) {
      return Int(start + step * Int(static_cast<unsigned long>(k)));
    });
  }
  if (auto a = args_of("target_d")) {
    Rat d;
    try {
      d = parse_rational(*a);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("target_d: ") + e.what());
    }
    if (d < 0 || d > 1) throw InputError("target_d: d must lie in [0, 1]");
    return theta_for_dimension(d);
  }
  if (auto a = args_of("random")) {
    auto parts = split(*a, ',');
    if (parts.size() < 1 || parts.size() > 2)
      throw InputError("random takes (seed) or (seed,bits)");
    Int seed = parse_uint(parts[0], "random seed");
    if (seed >= Int("18446744073709551616"))
      throw InputError("random: seed exceeds 64 bits");
    unsigned bits = 4096;
    if (parts.size() == 2) {
      Int b = parse_uint(parts[1], "random bits");
      if (b < 64 || b > 1048576)
        throw InputError("random: bits must lie in [64, 1048576]");
      bits = static_cast<unsigned>(b.get_ui());
    }
    std::uint64_t s = 0;
    for (int i = 0; i < 64; i += 32)
      s |= static_cast<std::uint64_t>(Int((seed >> i) & Int(0xffffffffL)).get_ui())
           << i;
    return cf_from_random_bits(s, bits);
  }
  throw InputError("unknown rule '" + rule +
                   "' (expected factorial_interleaved, e_minus_2, inv_pi, "
                   "arith(start,step), target_d(d), random(seed[,bits]))");
}

}  // namespace

ContinuedFraction theta_from_descriptor(const std::string& desc) {
  std::string s = strip_space(desc);
  if (s.rfind("rule:", 0) == 0) return theta_from_rule(s.substr(5));
  if (s.size() >= 3 && s.front() == '[' && s.back() == ']') {
    std::string body = s.substr(1, s.size() - 2);
    auto semi = body.find(';');
    if (semi == std::string::npos) {
      std::vector<Int> digits = parse_digit_list(body, "angle digits");
      Rat v(0);
      for (auto it = digits.rbegin(); it != digits.rend(); ++it)
        v = Rat(1) / Rat(Rat(*it) + v);
      if (v >= 1) throw InputError("angle must lie in (0, 1)");
      return cf_from_rational(v);
    }
    std::string pre_txt = body.substr(0, semi);
    std::string per_txt = body.substr(semi + 1);
    if (per_txt.size() < 3 || per_txt.front() != '(' || per_txt.back() != ')')
      throw InputError("period must be parenthesized: \"[a1,...;(p1,...,pk)]\"");
    std::vector<Int> pre;
    if (!pre_txt.empty()) pre = parse_digit_list(pre_txt, "preperiod digits");
    std::vector<Int> per =
        parse_digit_list(per_txt.substr(1, per_txt.size() - 2), "period digits");
    return cf_from_periodic(std::move(pre), std::move(per));
  }
  throw InputError(
      "bad angle descriptor '" + desc +
      "' (expected \"[a1,a2,...]\", \"[a1,...;(p1,...,pk)]\", or \"rule:NAME\")");
}

namespace {

// ---------------------------------------------------------------------------
// artifact plumbing

// Every artifact carries the parameters that determine its content, in
// command-line order. Output destination is deliberately not among them.
using Config = std::vector<std::pair<std::string, std::string>>;

json config_json(const Config& c) {
  json o;
  for (const auto& [k, v] : c) o[k] = v;
  return o;
}

void config_csv(std::ostream& os, const Config& c) {
  for (const auto& [k, v] : c) os << "# " << k << '=' << v << '\n';
}

json rat_json(const Rat& r) {
  return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

json interval_json(const RatInterval& I) {
  return json{{"lo", rat_json(I.lo)}, {"hi", rat_json(I.hi)}};
}

std::string finish_json(json root, const Config& cfg) {
  root["config"] = config_json(cfg);
  return root.dump(1) + "\n";
}

void emit_text(const std::string& text, const std::string& path,
               std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open output file: " + path);
  f << text;
  f.flush();
  if (!f) throw InputError("write failed: " + path);
}

Rat parse_rat_arg(const std::string& tok, const char* what) {
  try {
    return parse_rational(tok);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

const char* stream_stop_name(DigitSource::Stop s) {
  switch (s) {
    case DigitSource::Stop::rational: return "rational";
    case DigitSource::Stop::budget: return "budget";
    default: return "none";
  }
}

const char* trajectory_stop_name(RenormTrajectory::Stop s) {
  switch (s) {
    case RenormTrajectory::Stop::budget: return "budget";
    case RenormTrajectory::Stop::terminated: return "terminated";
    default: return "complete";
  }
}

// ---------------------------------------------------------------------------
// subcommands

struct CommonOpts {
  std::string theta;
  std::string out_path;
  std::string format = "json";
};

int run_cf(const CommonOpts& c, std::size_t count, std::ostream& out) {
  ContinuedFraction cf = theta_from_descriptor(c.theta);
  std::vector<Int> digits;
  for (std::size_t i = 0; i < count && cf.has_digit(i); ++i)
    digits.push_back(cf.digit(i));
  bool short_stream = digits.size() < count;
  DigitSource::Stop stop =
      short_stream ? cf.source()->stop_reason() : DigitSource::Stop::none;

  Config cfg{{"command", "cf"},
             {"theta", c.theta},
             {"digits", std::to_string(count)},
             {"format", c.format}};

  std::size_t m = digits.size();
  if (c.format == "csv") {
    std::ostringstream os;
    config_csv(os, cfg);
    os << "k,digit,conv_num,conv_den\n";
    for (std::size_t k = 1; k <= m; ++k) {
      Rat p = convergent(cf, k);
      os << k << ',' << digits[k - 1] << ',' << p.get_num() << ','
         << p.get_den() << '\n';
    }
    emit_text(os.str(), c.out_path, out);
  } else if (c.format == "json") {
    json root;
    root["kind"] = "cf_digits";
    root["theta"] = c.theta;
    json dj = json::array();
    for (const Int& d : digits) dj.push_back(d.get_str());
    root["digits"] = std::move(dj);
    root["stream_end"] = stream_stop_name(stop);
    json conv = json::array();
    for (std::size_t k = 1; k <= m; ++k) conv.push_back(rat_json(convergent(cf, k)));
    root["convergents"] = std::move(conv);
    if (m >= 1) {
      RatInterval b = bounds(cf, m);
      root["bounds"] = interval_json(b);
      Rat w = b.hi - b.lo;
      root["width"] = rat_json(w);
      root["width_decimal"] = decimal_string(w, 40, +1);
    }
    emit_text(finish_json(std::move(root), cfg), c.out_path, out);
  } else {
    throw InputError("cf: format must be json or csv");
  }
  return short_stream && stop == DigitSource::Stop::budget ? 3 : 0;
}

int run_renorm(const CommonOpts& c, std::size_t depth, unsigned bits,
               std::ostream& out) {
  ContinuedFraction cf = theta_from_descriptor(c.theta);
  RenormTrajectory traj = trajectory(cf, depth, bits);

  Config cfg{{"command", "renorm"},
             {"theta", c.theta},
             {"depth", std::to_string(depth)},
             {"bits", std::to_string(bits)},
             {"format", c.format}};

  if (c.format == "csv") {
    std::ostringstream os;
    config_csv(os, cfg);
    write_trajectory_csv(os, traj);
    emit_text(os.str(), c.out_path, out);
  } else if (c.format == "json") {
    json root;
    root["kind"] = "renorm_trajectory";
    root["theta"] = c.theta;
    root["depth_requested"] = traj.requested_depth;
    root["depth"] = traj.depth();
    root["exact"] = traj.exact;
    root["stop"] = trajectory_stop_name(traj.stop);
    json steps = json::array();
    for (std::size_t i = 0; i < traj.steps.size(); ++i) {
      const RenormStep& s = traj.steps[i];
      json row;
      row["i"] = s.index;
      row["a1"] = s.a1.get_str();
      row["a2"] = s.a2 ? json(s.a2->get_str()) : json(nullptr);
      row["branch"] = branch_name(s.branch);
      row["parity"] = s.parity;
      row["delta"] = interval_json(s.delta);
      row["f2"] = s.f2.get_str();
      if (i + 1 < traj.Delta.size()) row["Delta"] = interval_json(traj.Delta[i + 1]);
      steps.push_back(std::move(row));
    }
    root["steps"] = std::move(steps);
    emit_text(finish_json(std::move(root), cfg), c.out_path, out);
  } else {
    throw InputError("renorm: format must be json or csv");
  }
  return traj.stop == RenormTrajectory::Stop::budget ? 3 : 0;
}

int run_heavy(const CommonOpts& c, std::size_t depth, const std::string& width_tok,
              std::ostream& out) {
  if (c.format != "json") throw InputError("heavy emits json only");
  Rat width = parse_rat_arg(width_tok, "width");
  if (width <= 0) throw InputError("width must be positive");
  ContinuedFraction cf = theta_from_descriptor(c.theta);
  HeavyCover cover = HeavyCover::build(cf, depth);
  CoverDescription desc = cover.describe(width, c.theta);
  Config cfg{{"command", "heavy"},
             {"theta", c.theta},
             {"depth", std::to_string(depth)},
             {"width", width_tok},
             {"format", "json"}};
  emit_text(cover_to_json(desc, cfg) + "\n", c.out_path, out);
  return cover.partial() ? 3 : 0;
}

int run_strict(const CommonOpts& c, const std::string& tol_tok, std::ostream& out) {
  if (c.format != "json") throw InputError("strict emits json only");
  Rat tol = parse_rat_arg(tol_tok, "tol");
  if (tol <= 0) throw InputError("tol must be positive");
  ContinuedFraction cf = theta_from_descriptor(c.theta);
  StrictHeavy sh = strictly_heavy(cf, tol);
  Config cfg{{"command", "strict"}, {"theta", c.theta}, {"tol", tol_tok}};
  json root;
  root["kind"] = "strict_heavy";
  root["theta"] = c.theta;
  root["enclosure"] = interval_json(sh.enclosure);
  root["enclosure_decimal"] =
      json::array({decimal_string(sh.enclosure.lo, 40, -1),
                   decimal_string(sh.enclosure.hi, 40, +1)});
  Rat w = sh.enclosure.hi - sh.enclosure.lo;
  root["width"] = rat_json(w);
  root["width_decimal"] = decimal_string(w, 40, +1);
  root["depth_used"] = sh.depth_used;
  root["partial"] = sh.partial;
  emit_text(finish_json(std::move(root), cfg), c.out_path, out);
  return sh.partial ? 3 : 0;
}

int run_dim(const CommonOpts& c, std::size_t depth, std::ostream& out) {
  ContinuedFraction cf = theta_from_descriptor(c.theta);
  DimEstimate e = dim_estimate(cf, depth);
  Config cfg{{"command", "dim"},
             {"theta", c.theta},
             {"depth", std::to_string(depth)},
             {"format", c.format}};
  if (c.format == "csv") {
    std::ostringstream os;
    config_csv(os, cfg);
    write_dim_csv(os, e);
    emit_text(os.str(), c.out_path, out);
  } else if (c.format == "json") {
    json root;
    root["kind"] = "dim_estimate";
    root["theta"] = c.theta;
    root["depth_requested"] = depth;
    root["depth"] = e.depth;
    root["burn_in"] = e.burn_in;
    root["ratio"] = e.ratio;
    root["lower"] = e.lower;
    root["upper"] = e.upper;
    root["running_inf"] = e.running_inf;
    root["closed_form"] = e.closed_form ? json(*e.closed_form) : json(nullptr);
    root["growth_check"] =
        json{{"holds", e.irregular.holds},
             {"violation_k",
              e.irregular.violation_k ? json(*e.irregular.violation_k) : json(nullptr)},
             {"checked", e.irregular.checked}};
    root["partial"] = e.partial;
    emit_text(finish_json(std::move(root), cfg), c.out_path, out);
  } else {
    throw InputError("dim: format must be json or csv");
  }
  return e.partial ? 3 : 0;
}

int run_cconst(std::size_t samples, std::size_t burnin, std::size_t length,
               unsigned bits, std::uint64_t seed, std::size_t check,
               const std::string& out_path, std::ostream& out) {
  CEstimate ce = estimate_c(samples, burnin, length, bits, seed);
  Config cfg{{"command", "cconst"},       {"samples", std::to_string(samples)},
             {"burnin", std::to_string(burnin)}, {"length", std::to_string(length)},
             {"bits", std::to_string(bits)},     {"seed", std::to_string(seed)},
             {"check", std::to_string(check)}};
  json root;
  root["kind"] = "c_estimate";
  root["mean"] = ce.mean;
  root["half_width"] = ce.half_width;
  root["ci"] = json::array({ce.mean - ce.half_width, ce.mean + ce.half_width});
  root["samples"] = ce.samples;
  root["used"] = ce.used;
  root["dropped"] = ce.dropped;
  if (check > 0) {
    PointwiseReport pr = pointwise_inequality_check(check, seed);
    root["pointwise"] =
        json{{"checked", pr.checked},
             {"failures", pr.failures},
             {"holds", pr.holds},
             {"first_failure_sample",
              pr.first_failure_sample ? json(*pr.first_failure_sample) : json(nullptr)}};
  } else {
    root["pointwise"] = nullptr;
  }
  emit_text(finish_json(std::move(root), cfg), out_path, out);
  return ce.used == 0 ? 3 : 0;
}

int run_target_d(const std::string& d_tok, std::size_t count,
                 const std::string& out_path, std::ostream& out) {
  Rat d = parse_rat_arg(d_tok, "d");
  if (d < 0 || d > 1) throw InputError("d must lie in [0, 1]");
  ContinuedFraction cf = theta_for_dimension(d);
  Config cfg{{"command", "target-d"},
             {"d", d_tok},
             {"digits", std::to_string(count)}};
  json root;
  root["kind"] = "target_digits";
  root["d"] = rat_json(d);
  json dj = json::array();
  for (std::size_t i = 0; i < count; ++i) dj.push_back(cf.digit(i).get_str());
  root["digits"] = std::move(dj);
  if (count >= 1) {
    RatInterval b = bounds(cf, count);
    root["bounds"] = interval_json(b);
    root["width_decimal"] = decimal_string(b.hi - b.lo, 40, +1);
  }
  emit_text(finish_json(std::move(root), cfg), out_path, out);
  return 0;
}

// ---------------------------------------------------------------------------
// oracle subcommands

std::string report_artifact(const VerificationReport& r, const Config& cfg) {
  json root;
  root["kind"] = "verification";
  root["report"] = json::parse(report_to_json(r));
  root["config"] = config_json(cfg);
  return root.dump(1) + "\n";
}

int run_oracle_birkhoff(const CommonOpts& c, const std::string& x_tok,
                        std::size_t n, std::ostream& out) {
  Rat x = parse_rat_arg(x_tok, "x");
  if (x < 0 || x >= 1) throw InputError("x must lie in [0, 1)");
  ContinuedFraction cf = theta_from_descriptor(c.theta);
  OrbitSum o = birkhoff(x, cf, n);
  Config cfg{{"command", "oracle birkhoff"},
             {"theta", c.theta},
             {"x", x_tok},
             {"n", std::to_string(n)},
             {"format", c.format}};
  if (c.format == "csv") {
    std::ostringstream os;
    config_csv(os, cfg);
    os << "n,S_n\n";
    for (std::size_t i = 0; i < o.sums.size(); ++i)
      os << i + 1 << ',' << o.sums[i] << '\n';
    emit_text(os.str(), c.out_path, out);
  } else if (c.format == "json") {
    json root;
    root["kind"] = "birkhoff_sums";
    root["theta"] = c.theta;
    root["x"] = rat_json(x);
    root["n"] = o.N;
    root["min_prefix"] = o.min_prefix;
    root["sums"] = o.sums;
    emit_text(finish_json(std::move(root), cfg), c.out_path, out);
  } else {
    throw InputError("oracle birkhoff: format must be json or csv");
  }
  return 0;
}

int run_oracle_check(const CommonOpts& c, const std::string& x_tok, std::size_t n,
                     std::ostream& out) {
  Rat x = parse_rat_arg(x_tok, "x");
  if (x < 0 || x >= 1) throw InputError("x must lie in [0, 1)");
  ContinuedFraction cf = theta_from_descriptor(c.theta);
  HeavyVerdict v = heavy_up_to(x, cf, n);
  Config cfg{{"command", "oracle check"},
             {"theta", c.theta},
             {"x", x_tok},
             {"n", std::to_string(n)}};
  json root;
  root["kind"] = "heavy_check";
  root["theta"] = c.theta;
  root["x"] = rat_json(x);
  root["heavy"] = v.heavy;
  root["first_failure_n"] =
      v.first_failure_n ? json(*v.first_failure_n) : json(nullptr);
  root["min_prefix"] = v.min_prefix;
  root["checked"] = v.checked;
  emit_text(finish_json(std::move(root), cfg), c.out_path, out);
  return 0;
}

struct CoverInput {
  ContinuedFraction cf;
  std::size_t depth = 0;
};

// Reloads a cover artifact: re-parses the angle from the embedded header,
// rebuilds the cover at the recorded depth and export width, and demands
// the rebuild reproduce the file byte for byte. Anything this build cannot
// regenerate from the header is rejected rather than trusted.
CoverInput load_cover(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read cover file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  std::string text = buf.str();

  CoverDescription desc;
  try {
    desc = cover_from_json(text);
  } catch (const std::exception& e) {
    throw InputError("bad cover file " + path + ": " + e.what());
  }
  if (desc.theta.empty())
    throw InputError("cover file carries no angle descriptor: " + path);

  Config cfg;
  json root = json::parse(text, nullptr, false);
  if (!root.is_discarded() && root.contains("config"))
    for (const auto& [k, v] : root.at("config").items())
      cfg.emplace_back(k, v.get<std::string>());

  CoverInput in{theta_from_descriptor(desc.theta), desc.depth};
  HeavyCover cover = HeavyCover::build(in.cf, in.depth);
  std::string rebuilt =
      cover_to_json(cover.describe(desc.export_width, desc.theta), cfg);
  auto trim = [](std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
  };
  if (trim(text) != trim(rebuilt))
    throw InputError("cover file does not match a rebuild from its own header: " +
                     path);
  return in;
}

int run_oracle_verify_levels(const CommonOpts& c, const std::string& cover_path,
                             std::size_t depth, std::size_t n,
                             std::size_t density, std::ostream& out) {
  Config cfg{{"command", "oracle verify-levels"}};
  ContinuedFraction cf;
  std::size_t use_depth = depth;
  if (!cover_path.empty()) {
    CoverInput in = load_cover(cover_path);
    cf = in.cf;
    use_depth = in.depth;
    cfg.emplace_back("cover", cover_path);
  } else {
    if (c.theta.empty())
      throw InputError("oracle verify-levels needs --theta or --cover");
    cf = theta_from_descriptor(c.theta);
    cfg.emplace_back("theta", c.theta);
    cfg.emplace_back("depth", std::to_string(depth));
  }
  cfg.emplace_back("n", std::to_string(n));
  cfg.emplace_back("density", std::to_string(density));
  VerificationReport r = verify_levels(cf, use_depth, n, density);
  emit_text(report_artifact(r, cfg), c.out_path, out);
  return 0;
}

int run_oracle_verify_renorm(const CommonOpts& c, std::size_t samples,
                             std::size_t n, std::ostream& out) {
  ContinuedFraction cf = theta_from_descriptor(c.theta);
  VerificationReport r = verify_renormalization(cf, samples, n);
  Config cfg{{"command", "oracle verify-renorm"},
             {"theta", c.theta},
             {"samples", std::to_string(samples)},
             {"n", std::to_string(n)}};
  emit_text(report_artifact(r, cfg), c.out_path, out);
  return 0;
}

int run_oracle_verify_reversal(const CommonOpts& c, std::size_t n,
                               std::size_t grid, std::ostream& out) {
  ContinuedFraction cf = theta_from_descriptor(c.theta);
  VerificationReport r = verify_reversal(cf, n, grid);
  Config cfg{{"command", "oracle verify-reversal"},
             {"theta", c.theta},
             {"n", std::to_string(n)},
             {"grid", std::to_string(grid)}};
  emit_text(report_artifact(r, cfg), c.out_path, out);
  return 0;
}

int run_oracle_verify_infinite(const CommonOpts& c, std::size_t count,
                               std::size_t n, std::ostream& out) {
  ContinuedFraction cf = theta_from_descriptor(c.theta);
  VerificationReport r = verify_always_infinite(cf, count, n);
  Config cfg{{"command", "oracle verify-infinite"},
             {"theta", c.theta},
             {"count", std::to_string(count)},
             {"n", std::to_string(n)}};
  emit_text(report_artifact(r, cfg), c.out_path, out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  return run_cli(argc, argv, std::cout, std::cerr);
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "Heavy sets of circle rotations: exact construction, dimension "
      "estimation, and brute-force verification.\n"
      "Angles are continued-fraction descriptors: \"[a1,a2,...]\" (finite),\n"
      "\"[a1,...;(p1,...,pk)]\" (preperiod;period, preperiod may be empty),\n"
      "or rule:NAME with NAME in {factorial_interleaved, e_minus_2, inv_pi,\n"
      "arith(start,step), target_d(d), random(seed[,bits])}."};
  app.failure_message(CLI::FailureMessage::help);
  app.require_subcommand(1);

  CommonOpts cf_o, renorm_o, heavy_o, strict_o, dim_o, ob_o, oc_o, ovl_o, ovr_o,
      orev_o, oinf_o;

  auto add_theta = [](CLI::App* cmd, CommonOpts& o, bool required = true) {
    auto* opt = cmd->add_option("--theta", o.theta, "angle descriptor");
    if (required) opt->required();
  };
  auto add_out = [](CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out_path, "write the artifact here (default stdout)");
  };

  // cf
  std::size_t cf_digits = 20;
  auto* c_cf = app.add_subcommand(
      "cf", "partial quotients, convergents, and certified bounds of an angle");
  add_theta(c_cf, cf_o);
  c_cf->add_option("--digits", cf_digits, "digits to extract")->capture_default_str();
  c_cf->add_option("--format", cf_o.format, "json or csv")->capture_default_str();
  add_out(c_cf, cf_o);

  // renorm
  std::size_t renorm_depth = 10;
  unsigned renorm_bits = 64;
  auto* c_renorm = app.add_subcommand(
      "renorm", "renormalization trajectory: branches, parities, scale factors");
  add_theta(c_renorm, renorm_o);
  c_renorm->add_option("--depth", renorm_depth, "steps to walk")->capture_default_str();
  c_renorm->add_option("--bits", renorm_bits, "relative precision of enclosures")
      ->capture_default_str();
  renorm_o.format = "csv";
  c_renorm->add_option("--format", renorm_o.format, "csv or json")
      ->capture_default_str();
  add_out(c_renorm, renorm_o);

  // heavy
  std::size_t heavy_depth = 3;
  std::string heavy_width = "1e-30";
  auto* c_heavy = app.add_subcommand(
      "heavy", "nested interval cover of the heavy set, with isolated points");
  add_theta(c_heavy, heavy_o);
  c_heavy->add_option("--depth", heavy_depth, "cover depth")->capture_default_str();
  c_heavy->add_option("--width", heavy_width,
                      "export width for certified endpoint enclosures")
      ->capture_default_str();
  c_heavy->add_option("--format", heavy_o.format, "json")->capture_default_str();
  add_out(c_heavy, heavy_o);

  // strict
  std::string strict_tol = "1e-9";
  auto* c_strict = app.add_subcommand(
      "strict", "certified enclosure of the strictly heavy point");
  add_theta(c_strict, strict_o);
  c_strict->add_option("--tol", strict_tol, "target enclosure width")
      ->capture_default_str();
  add_out(c_strict, strict_o);

  // dim
  std::size_t dim_depth = 200;
  auto* c_dim = app.add_subcommand(
      "dim", "dimension estimate: per-prefix ratios with certified brackets");
  add_theta(c_dim, dim_o);
  c_dim->add_option("--depth", dim_depth, "renormalization steps")
      ->capture_default_str();
  dim_o.format = "csv";
  c_dim->add_option("--format", dim_o.format, "csv or json")->capture_default_str();
  add_out(c_dim, dim_o);

  // cconst
  std::size_t cc_samples = 200, cc_burnin = 50, cc_length = 300, cc_check = 0;
  unsigned cc_bits = 4096;
  std::uint64_t cc_seed = 1;
  std::string cc_out;
  auto* c_cc = app.add_subcommand(
      "cconst", "Monte Carlo estimate of the almost-sure dimension constant");
  c_cc->add_option("--samples", cc_samples, "angles to draw")->capture_default_str();
  c_cc->add_option("--burnin", cc_burnin, "steps discarded per sample")
      ->capture_default_str();
  c_cc->add_option("--length", cc_length, "steps averaged per sample")
      ->capture_default_str();
  c_cc->add_option("--bits", cc_bits, "precision of each draw")->capture_default_str();
  c_cc->add_option("--seed", cc_seed, "RNG seed")->capture_default_str();
  c_cc->add_option("--check", cc_check,
                   "also certify the pointwise inequality on this many draws")
      ->capture_default_str();
  c_cc->add_option("--out", cc_out, "write the artifact here (default stdout)");

  // target-d
  std::string td_d;
  std::size_t td_digits = 40;
  std::string td_out;
  auto* c_td = app.add_subcommand(
      "target-d", "digit stream of an angle whose heavy set has dimension d");
  c_td->add_option("--d", td_d, "target dimension, rational or decimal")->required();
  c_td->add_option("--digits", td_digits, "digits to emit")->capture_default_str();
  c_td->add_option("--out", td_out, "write the artifact here (default stdout)");

  // oracle
  auto* c_or = app.add_subcommand(
      "oracle", "brute-force orbit sums and cross-checks of the construction");
  c_or->require_subcommand(1);

  std::string ob_x, oc_x;
  std::size_t ob_n = 1000, oc_n = 100000;
  auto* c_ob = c_or->add_subcommand("birkhoff", "orbit sums S_1..S_N of a point");
  add_theta(c_ob, ob_o);
  c_ob->add_option("--x", ob_x, "starting point in [0, 1)")->required();
  c_ob->add_option("--n", ob_n, "horizon")->capture_default_str();
  c_ob->add_option("--format", ob_o.format, "json or csv")->capture_default_str();
  add_out(c_ob, ob_o);

  auto* c_oc = c_or->add_subcommand("check", "is a point heavy up to a horizon");
  add_theta(c_oc, oc_o);
  c_oc->add_option("--x", oc_x, "point in [0, 1)")->required();
  c_oc->add_option("--n", oc_n, "horizon")->capture_default_str();
  add_out(c_oc, oc_o);

  std::string ovl_cover;
  std::size_t ovl_depth = 4, ovl_n = 0, ovl_density = 10;
  auto* c_ovl = c_or->add_subcommand(
      "verify-levels",
      "members of the cover stay heavy, gap and exclusion points fail");
  add_theta(c_ovl, ovl_o, false);
  c_ovl->add_option("--cover", ovl_cover,
                    "verify a cover artifact (rebuilt and byte-checked from "
                    "its own header)")
      ->excludes("--theta");
  c_ovl->add_option("--depth", ovl_depth, "cover depth (with --theta)")
      ->capture_default_str();
  c_ovl->add_option("--n", ovl_n, "horizon, 0 = heuristic default")
      ->capture_default_str();
  c_ovl->add_option("--density", ovl_density, "member samples per interval")
      ->capture_default_str();
  add_out(c_ovl, ovl_o);

  std::size_t ovr_samples = 100, ovr_n = 1000;
  auto* c_ovr = c_or->add_subcommand(
      "verify-renorm", "first-return structure of the rotation on [0, f1)");
  add_theta(c_ovr, ovr_o);
  c_ovr->add_option("--samples", ovr_samples, "grid points")->capture_default_str();
  c_ovr->add_option("--n", ovr_n, "horizon")->capture_default_str();
  add_out(c_ovr, ovr_o);

  std::size_t orev_n = 1000, orev_grid = 200;
  auto* c_orev = c_or->add_subcommand(
      "verify-reversal", "S_n(x; theta) = S_n(1/2 - x; g(theta)) for a1 = 1");
  add_theta(c_orev, orev_o);
  c_orev->add_option("--n", orev_n, "horizon")->capture_default_str();
  c_orev->add_option("--grid", orev_grid, "grid points")->capture_default_str();
  add_out(c_orev, orev_o);

  std::size_t oinf_count = 6, oinf_n = 100;
  auto* c_oinf = c_or->add_subcommand(
      "verify-infinite", "the strictly heavy orbit returns to sum 1 repeatedly");
  add_theta(c_oinf, oinf_o);
  c_oinf->add_option("--count", oinf_count, "witnesses required")
      ->capture_default_str();
  c_oinf->add_option("--n", oinf_n, "horizon per window")->capture_default_str();
  add_out(c_oinf, oinf_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_cf->parsed()) return run_cf(cf_o, cf_digits, out);
    if (c_renorm->parsed()) return run_renorm(renorm_o, renorm_depth, renorm_bits, out);
    if (c_heavy->parsed()) return run_heavy(heavy_o, heavy_depth, heavy_width, out);
    if (c_strict->parsed()) return run_strict(strict_o, strict_tol, out);
    if (c_dim->parsed()) return run_dim(dim_o, dim_depth, out);
    if (c_cc->parsed())
      return run_cconst(cc_samples, cc_burnin, cc_length, cc_bits, cc_seed,
                        cc_check, cc_out, out);
    if (c_td->parsed()) return run_target_d(td_d, td_digits, td_out, out);
    if (c_or->parsed()) {
      if (c_ob->parsed()) return run_oracle_birkhoff(ob_o, ob_x, ob_n, out);
      if (c_oc->parsed()) return run_oracle_check(oc_o, oc_x, oc_n, out);
      if (c_ovl->parsed())
        return run_oracle_verify_levels(ovl_o, ovl_cover, ovl_depth, ovl_n,
                                        ovl_density, out);
      if (c_ovr->parsed())
        return run_oracle_verify_renorm(ovr_o, ovr_samples, ovr_n, out);
      if (c_orev->parsed())
        return run_oracle_verify_reversal(orev_o, orev_n, orev_grid, out);
      if (c_oinf->parsed())
        return run_oracle_verify_infinite(oinf_o, oinf_count, oinf_n, out);
    }
    err << "error: no subcommand\n";
    return 2;
  } catch (const BudgetExhausted& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const RationalTerminated& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace heavyset
