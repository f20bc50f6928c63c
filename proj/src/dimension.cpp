#include "heavyset/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace heavyset {

namespace {

// Directed slack for a sum of n nearest-rounded doubles: each add is off by
// at most half an ulp, so (n+1) * 2^-50 * (|s|+1) safely covers the drift.
double sum_slack(double s, std::size_t n) {
  return std::ldexp((std::fabs(s) + 1.0) * double(n + 1), -50);
}

double mid_log_inv(const RenormStep& st) {
  double d = st.delta_ex ? st.delta_ex->to_double()
                         : to_double(st.delta.mid());
  return -std::log(d);
}

}  // namespace

IrregularityVerdict irregularity_check(const std::vector<Int>& f2_sequence,
                                       const Rat& epsilon, std::size_t N) {
  if (f2_sequence.empty()) throw std::invalid_argument("empty sequence");
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  Int p = epsilon.get_num(), q = epsilon.get_den();
  if (!p.fits_ulong_p() || !q.fits_ulong_p()) {
    throw std::invalid_argument("epsilon numerator or denominator too large");
  }
  for (const Int& m : f2_sequence) {
    if (m < 1) throw std::invalid_argument("sequence entries must be >= 1");
  }
  IrregularityVerdict v;
  Int prod(1);
  for (std::size_t k = 1; k <= f2_sequence.size(); ++k) {
    const Int& m = f2_sequence[k - 1];
    if (k >= N) {
      ++v.checked;
      // m_k < prod^(p/q)  <=>  m_k^q < prod^p, exactly
      if (pow_int(m, q.get_ui()) >= pow_int(prod, p.get_ui())) {
        v.holds = false;
        v.violation_k = k;
        break;
      }
    }
    prod *= m;
  }
  return v;
}

DimEstimate dim_estimate(const ContinuedFraction& cf, std::size_t depth) {
  DimEstimate e;
  RenormTrajectory traj = trajectory(cf, depth);
  e.depth = traj.depth();
  e.partial = traj.partial();

  std::vector<Int> f2s;
  f2s.reserve(e.depth);

  double num_mid = 0, num_lo = 0, num_hi = 0;
  double den_mid = 0, den_lo = 0, den_hi = 0;  // bounds on sum of -log f1
  for (std::size_t i = 0; i < e.depth; ++i) {
    const RenormStep& st = traj.steps[i];
    f2s.push_back(st.f2);

    if (st.branch == Branch::EvenDrop) {
      Int n = st.a1 / 2;
      const Int& m = *st.a2;
      num_mid += log_int_estimate(st.f2);
      num_lo += log_int_lower(st.f2);
      num_hi += log_int_upper(st.f2);
      den_lo += log_int_lower(2 * n * m);
      den_hi += log_int_upper((2 * n + 1) * (m + 1));
      den_mid += mid_log_inv(st);
    } else if (st.branch == Branch::OddFold) {
      Int n = st.a1 / 2;
      den_lo += log_int_lower(n + 1);
      den_hi += log_int_upper(st.a1);
      den_mid += mid_log_inv(st);
    }  // flips contribute nothing to either sum

    std::size_t terms = i + 1;
    if (num_mid == 0) {
      e.ratio.push_back(0);
      e.lower.push_back(0);
      e.upper.push_back(0);
      continue;
    }
    e.ratio.push_back(num_mid / den_mid);
    double lo = (num_lo - sum_slack(num_lo, terms)) /
                (den_hi + sum_slack(den_hi, terms));
    double hi = (num_hi + sum_slack(num_hi, terms)) /
                (den_lo - sum_slack(den_lo, terms));
    // one more downward/upward step absorbs the division rounding
    lo -= sum_slack(lo, 1);
    hi += sum_slack(hi, 1);
    e.lower.push_back(std::max(0.0, lo));
    e.upper.push_back(std::min(1.0, hi));
  }

  e.running_inf = 0;
  if (!e.ratio.empty()) {
    std::size_t first = std::min(e.burn_in, e.ratio.size()) - 1;
    e.running_inf = *std::min_element(e.ratio.begin() + first, e.ratio.end());
  }

  if (!f2s.empty()) {
    e.irregular = irregularity_check(f2s, Rat(1, 2), 10);
  }

  // exact trajectories that revisit an angle have a closed-form limit
  if (traj.exact) {
    std::size_t scan = std::min<std::size_t>(traj.thetas.size(), 200);
    for (std::size_t j = 1; j < scan && !e.closed_form; ++j) {
      auto vj = traj.thetas[j].exact_value();
      if (!vj) break;
      for (std::size_t i = 0; i < j; ++i) {
        auto vi = traj.thetas[i].exact_value();
        if (!vi || !(*vi == *vj)) continue;
        double cn = 0, cd = 0;
        for (std::size_t k = i; k < j; ++k) {
          cn += log_int_estimate(traj.steps[k].f2);
          cd += mid_log_inv(traj.steps[k]);
        }
        e.closed_form = cd > 0 ? cn / cd : 0.0;
        break;
      }
    }
  }
  return e;
}

void write_dim_csv(std::ostream& os, const DimEstimate& e) {
  os << "n,lower,ratio,upper\n";
  os.precision(17);
  for (std::size_t n = 1; n <= e.ratio.size(); ++n) {
    os << n << ',' << e.lower[n - 1] << ',' << e.ratio[n - 1] << ','
       << e.upper[n - 1] << '\n';
  }
}

CEstimate estimate_c(std::size_t samples, std::size_t burnin,
                     std::size_t length, unsigned bits, std::uint64_t seed) {
  if (length == 0) throw std::invalid_argument("length must be >= 1");
  CEstimate c;
  c.samples = samples;
  c.burnin = burnin;
  c.length = length;
  c.bits = bits;
  c.seed = seed;

  std::vector<double> A, B;  // per-sample sums over the kept window
  A.reserve(samples);
  B.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    auto cf = cf_from_random_bits(mix_seed(seed, k), bits);
    RenormTrajectory traj = trajectory(cf, burnin + length);
    if (traj.depth() < burnin + length) {
      ++c.dropped;
      continue;
    }
    double a = 0, b = 0;
    for (std::size_t i = burnin; i < burnin + length; ++i) {
      a += log_int_estimate(traj.steps[i].f2);
      b += mid_log_inv(traj.steps[i]);
    }
    A.push_back(a);
    B.push_back(b);
  }
  c.used = A.size();
  if (c.used == 0) return c;

  double sa = 0, sb = 0;
  for (double a : A) sa += a;
  for (double b : B) sb += b;
  c.mean = sa / sb;

  if (c.used >= 2) {
    // delta method on the ratio of means
    double n = double(c.used), ma = sa / n, mb = sb / n;
    double vaa = 0, vbb = 0, vab = 0;
    for (std::size_t i = 0; i < c.used; ++i) {
      vaa += (A[i] - ma) * (A[i] - ma);
      vbb += (B[i] - mb) * (B[i] - mb);
      vab += (A[i] - ma) * (B[i] - mb);
    }
    vaa /= n - 1;
    vbb /= n - 1;
    vab /= n - 1;
    double var = (vaa - 2 * c.mean * vab + c.mean * c.mean * vbb) /
                 (n * mb * mb);
    c.half_width = 1.96 * std::sqrt(std::max(0.0, var));
  }
  return c;
}

PointwiseReport pointwise_inequality_check(std::size_t samples,
                                           std::uint64_t seed) {
  PointwiseReport r;
  std::uint64_t attempt = 0;
  std::uint64_t cap = samples * 20 + 64;
  while (r.checked < samples && attempt < cap) {
    std::uint64_t k = attempt++;
    auto cf = cf_from_random_bits(mix_seed(seed, k), 512);
    if (!cf.has_digit(1)) continue;
    Int a1 = cf.digit(0);
    if (a1 == 1) continue;  // angle above 1/2
    ++r.checked;

    bool ok = false;
    if (a1 % 2 != 0) {
      ok = true;  // f2 = 1 and -log f1 >= log(n+1) > 0
    } else {
      Int n = a1 / 2, m = cf.digit(1);
      if (2 * n * m > m + 1) {
        ok = true;  // -log f1 > log(2nm) > log(m+1)
      } else {
        // a1 = 2, a2 = 1: settle with the certified enclosure
        RatInterval d = delta_enclosure(cf);
        ok = d.hi * Rat(Int(m + 1)) < 1;
      }
    }
    if (!ok) {
      ++r.failures;
      if (!r.first_failure_sample) r.first_failure_sample = k;
    }
  }
  r.holds = r.failures == 0;
  return r;
}

ContinuedFraction theta_for_dimension(const Rat& d) {
  if (d < 0 || d > 1) throw std::invalid_argument("d must lie in [0, 1]");
  if (d == 0) {
    return cf_from_rule([](std::size_t k) {
      if (k % 2 == 1) return Int(1);
      Int f(1);
      for (Int j(2); j <= Int(k / 2 + 2); ++j) f *= j;
      return f;
    });
  }
  unsigned long p = d.get_num().get_ui(), q = d.get_den().get_ui();
  return cf_from_rule([p, q](std::size_t k) {
    Int m = pow_int(Int(2), k / 2);  // m_i with i = k/2
    if (k % 2 == 1) return m;
    Int root = kth_root_floor(pow_int(m + 1, q - p), p);
    return Int(2 * (1 + root / 2));
  });
}

double digit_pair_ratio(const ContinuedFraction& cf, std::size_t i) {
  double lm1 = log_int_estimate(cf.digit(2 * i + 1) + 1);
  double l2n = log_int_estimate(cf.digit(2 * i));
  return lm1 / (l2n + lm1);
}

}  // namespace heavyset
