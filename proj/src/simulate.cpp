#include "altserve/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "altserve/errors.hpp"

namespace altserve {

namespace {

constexpr int kBatches = 30;
// t quantile, 0.975, 29 degrees of freedom (kBatches - 1).
constexpr double kT975Df29 = 2.0452296421327034;

void check_run_args(std::uint64_t customers) {
  if (customers == 0) {
    throw std::invalid_argument("simulation needs at least one customer");
  }
}

void require_erlang(const PrepLaw& b) {
  if (!b.erlang_phases()) {
    throw std::invalid_argument(
        "non-alternating simulation supports pure Erlang preparation only");
  }
}

}  // namespace

std::vector<double> alternating_waits(const ServiceLaw& a, const PrepLaw& b,
                                      std::uint64_t customers,
                                      std::uint64_t seed) {
  check_run_args(customers);
  SplitMix64 rng = SplitMix64::stream(seed, 0);
  std::vector<double> waits(customers);
  double w = 0.0;
  for (std::uint64_t i = 0; i < customers; ++i) {
    const double prep = b.sample(rng);
    const double service = a.sample(rng);
    w = std::max(0.0, prep - service - w);
    waits[i] = w;
  }
  return waits;
}

std::vector<double> nonalternating_waits(const ServiceLaw& a, const PrepLaw& b,
                                         std::uint64_t customers,
                                         std::uint64_t seed) {
  check_run_args(customers);
  require_erlang(b);
  SplitMix64 rng = SplitMix64::stream(seed, 0);
  std::vector<double> waits(customers);
  // r = remaining preparation at the other service point just after a
  // departure. The next wait races it against the fresh preparation; the
  // loser keeps running while the winner's customer is served.
  double prep = b.sample(rng);
  double service = a.sample(rng);
  double r = std::max(0.0, prep - service);
  for (std::uint64_t i = 0; i < customers; ++i) {
    prep = b.sample(rng);
    service = a.sample(rng);
    const double w = std::min(r, prep);
    waits[i] = w;
    r = std::max(0.0, std::max(r, prep) - w - service);
  }
  return waits;
}

CycleStats cycle_stats(std::span<const double> waits) {
  std::uint64_t cycles = 0;
  std::uint64_t last_zero = 0;
  for (std::size_t i = 0; i < waits.size(); ++i) {
    if (waits[i] == 0.0) {
      ++cycles;
      last_zero = i + 1;
    }
  }
  if (cycles == 0) {
    throw insufficient_run_error(
        "no regeneration (zero wait) observed in the trace");
  }
  CycleStats st;
  st.cycles = cycles;
  st.counted = last_zero;
  st.mean_cycle_length = static_cast<double>(last_zero) / cycles;
  st.zero_wait_freq = static_cast<double>(cycles) / last_zero;
  return st;
}

namespace {

double batch_se(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= v.size();
  double s2 = 0.0;
  for (double x : v) s2 += (x - m) * (x - m);
  return std::sqrt(s2 / (v.size() - 1.0) / v.size());
}

}  // namespace

SimReport report_from_waits(const std::vector<double>& waits,
                            std::uint64_t customers, std::uint64_t seed) {
  if (waits.empty()) {
    throw std::invalid_argument("empty waiting-time trace");
  }

  // Cycle boundaries: cycle c covers (ends[c-1], ends[c]] in 1-based trace
  // positions, ends[c] being a zero-wait index.
  std::vector<std::uint64_t> ends;
  for (std::size_t i = 0; i < waits.size(); ++i) {
    if (waits[i] == 0.0) ends.push_back(i + 1);
  }

  SimReport rep;
  rep.customers = customers;
  rep.seed = seed;
  rep.cycles = ends.size();

  std::vector<double> batch_mean(kBatches), batch_zero(kBatches);

  if (rep.cycles >= static_cast<std::uint64_t>(kBatches)) {
    rep.counted = ends.back();
    rep.mean_cycle_length = static_cast<double>(rep.counted) / rep.cycles;
    rep.zero_wait_freq = static_cast<double>(rep.cycles) / rep.counted;

    // Batch means over whole cycles; the first (cycles % 30) batches get
    // one extra cycle.
    const std::uint64_t base = rep.cycles / kBatches;
    const std::uint64_t extra = rep.cycles % kBatches;
    std::uint64_t cycle_at = 0;
    std::uint64_t pos = 0;  // trace position at batch start
    for (int bidx = 0; bidx < kBatches; ++bidx) {
      const std::uint64_t take =
          base + (static_cast<std::uint64_t>(bidx) < extra ? 1 : 0);
      const std::uint64_t stop = ends[cycle_at + take - 1];
      double wsum = 0.0;
      for (std::uint64_t i = pos; i < stop; ++i) wsum += waits[i];
      const double len = static_cast<double>(stop - pos);
      batch_mean[bidx] = wsum / len;
      batch_zero[bidx] = static_cast<double>(take) / len;
      cycle_at += take;
      pos = stop;
    }
  } else {
    // Too few regenerations for cycle batches (the zero-wait probability
    // may be exactly zero). Estimate over the whole trace and batch by
    // customer count instead.
    rep.counted = waits.size();
    rep.mean_cycle_length =
        rep.cycles == 0
            ? std::numeric_limits<double>::infinity()
            : static_cast<double>(rep.counted) / rep.cycles;
    rep.zero_wait_freq = static_cast<double>(rep.cycles) / rep.counted;

    std::uint64_t pos = 0;
    for (int bidx = 0; bidx < kBatches; ++bidx) {
      const std::uint64_t stop =
          waits.size() * static_cast<std::uint64_t>(bidx + 1) / kBatches;
      const std::uint64_t len = stop > pos ? stop - pos : 1;
      double wsum = 0.0;
      std::uint64_t zeros = 0;
      for (std::uint64_t i = pos; i < stop; ++i) {
        wsum += waits[i];
        if (waits[i] == 0.0) ++zeros;
      }
      batch_mean[bidx] = wsum / static_cast<double>(len);
      batch_zero[bidx] = static_cast<double>(zeros) / len;
      pos = stop;
    }
  }

  double total_wait = 0.0;
  for (std::uint64_t i = 0; i < rep.counted; ++i) total_wait += waits[i];
  rep.mean_wait = total_wait / static_cast<double>(rep.counted);

  rep.mean_wait_se = batch_se(batch_mean);
  rep.zero_wait_se = batch_se(batch_zero);
  rep.half_width_95 = kT975Df29 * rep.mean_wait_se;
  rep.zero_wait_half_width_95 = kT975Df29 * rep.zero_wait_se;
  return rep;
}

SimReport simulate_alternating(const ServiceLaw& a, const PrepLaw& b,
                               std::uint64_t customers, std::uint64_t seed) {
  return report_from_waits(alternating_waits(a, b, customers, seed), customers,
                           seed);
}

SimReport simulate_nonalternating(const ServiceLaw& a, const PrepLaw& b,
                                  std::uint64_t customers, std::uint64_t seed) {
  return report_from_waits(nonalternating_waits(a, b, customers, seed),
                           customers, seed);
}

CoupledTrace coupled_run(const ServiceLaw& a, const PrepLaw& b,
                         std::uint64_t customers, std::uint64_t seed) {
  check_run_args(customers);
  require_erlang(b);
  const std::size_t m = static_cast<std::size_t>(customers);

  CoupledTrace tr;
  tr.wait_alt.resize(m);
  tr.wait_na.resize(m);
  tr.depart_alt.resize(m);
  tr.depart_na.resize(m);
  tr.handoff_alt.resize(m);
  tr.handoff_na.resize(m);

  SplitMix64 rng = SplitMix64::stream(seed, 0);

  // Epoch recursions for both policies on the same draws. With D_0 = H_0 = 0:
  //   alternating:      D_i = H_{i-1} + A_i,
  //                     H_i = max(D_i, D_{i-1} + B_i)
  //   non-alternating:  S_i = min(H_{i-1}, D_{i-1} + B_i),  D_i = S_i + A_i,
  //                     H_i = max(D_i, H_{i-1}, D_{i-1} + B_i)
  // The wait before serving customer i is H_{i-1} - D_{i-1} for the
  // alternating server and S_i - D_{i-1} for the non-alternating one (zero
  // for i = 1). Every operation is monotone in the previous epochs, so the
  // pathwise dominance of the alternating epochs survives the rounding of
  // each step exactly, not just approximately.
  double da_prev = 0.0, ha_prev = 0.0;
  double dn_prev = 0.0, hn_prev = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    const double prep = b.sample(rng);
    const double service = a.sample(rng);

    tr.wait_alt[i - 1] = ha_prev - da_prev;
    const double da = ha_prev + service;
    const double ha = std::max(da, da_prev + prep);

    const double fresh = dn_prev + prep;
    const double start = std::min(hn_prev, fresh);
    tr.wait_na[i - 1] = start - dn_prev;
    const double dn = start + service;
    const double hn = std::max(dn, std::max(hn_prev, fresh));

    tr.depart_alt[i - 1] = da;
    tr.handoff_alt[i - 1] = ha;
    tr.depart_na[i - 1] = dn;
    tr.handoff_na[i - 1] = hn;

    da_prev = da;
    ha_prev = ha;
    dn_prev = dn;
    hn_prev = hn;
  }
  return tr;
}

}  // namespace altserve
