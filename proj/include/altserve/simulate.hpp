#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "altserve/laws.hpp"

namespace altserve {

// Summary of one simulation run. Estimates come from the regenerative
// structure of the waiting-time sequence: the process restarts whenever a
// wait is exactly zero, so everything is computed over completed cycles and
// the trailing incomplete cycle is discarded. Confidence intervals use
// batch means over cycles (30 batches, t quantile with 29 degrees of
// freedom). When a run produces fewer than 30 cycles (the zero-wait
// probability can be genuinely zero), estimates switch to the full trace
// and the intervals to 30 equal customer batches; with no zero wait at all
// mean_cycle_length is reported as infinity.
struct SimReport {
  double mean_wait = 0.0;
  double zero_wait_freq = 0.0;
  double mean_cycle_length = 0.0;
  double half_width_95 = 0.0;       // 95% half width for mean_wait
  double mean_wait_se = 0.0;        // batch-means standard error of mean_wait
  double zero_wait_se = 0.0;        // batch-means standard error of zero_wait_freq
  double zero_wait_half_width_95 = 0.0;
  std::uint64_t customers = 0;      // requested run length
  std::uint64_t counted = 0;        // customers inside completed cycles
  std::uint64_t cycles = 0;
  std::uint64_t seed = 0;
};

// Cycle decomposition of a waiting-time trace. A cycle ends at each index
// with a zero wait; the customer count starts from the beginning of the
// trace (the initial state is itself a regeneration point).
struct CycleStats {
  double mean_cycle_length = 0.0;
  double zero_wait_freq = 0.0;
  std::uint64_t cycles = 0;
  std::uint64_t counted = 0;  // trace length through the last completed cycle
};

// One coupled realization: both policies driven by the same service draws
// {A_i} and preparation draws {B_i}, consumed positionally. depart[i] is
// the i-th service completion epoch and handoff[i] the first moment after
// it at which the server could start the next service (other point ready
// and server free). wait[i] is the server idle time before serving
// customer i+1 (0-based), so wait[0] = 0 for both policies and the
// departure epochs satisfy the bookkeeping identity
//   depart[i] = (wait[0] + a_1) + ... + (wait[i] + a_{i+1}).
// This is the stationary wait sequence shifted by one position relative to
// the standalone simulators.
struct CoupledTrace {
  std::vector<double> wait_alt, wait_na;
  std::vector<double> depart_alt, depart_na;
  std::vector<double> handoff_alt, handoff_na;
};

// Waiting-time recursions. Both start from the same initial condition:
// service of customer 1 begins at time zero while the other service point
// has just started preparation B_1.
std::vector<double> alternating_waits(const ServiceLaw& a, const PrepLaw& b,
                                      std::uint64_t customers,
                                      std::uint64_t seed);
// Event-based non-alternating run. Requires pure Erlang preparation (the
// analytic side only covers that case, and the comparisons must match).
std::vector<double> nonalternating_waits(const ServiceLaw& a, const PrepLaw& b,
                                         std::uint64_t customers,
                                         std::uint64_t seed);

SimReport simulate_alternating(const ServiceLaw& a, const PrepLaw& b,
                               std::uint64_t customers, std::uint64_t seed);
SimReport simulate_nonalternating(const ServiceLaw& a, const PrepLaw& b,
                                  std::uint64_t customers, std::uint64_t seed);

SimReport report_from_waits(const std::vector<double>& waits,
                            std::uint64_t customers, std::uint64_t seed);

CycleStats cycle_stats(std::span<const double> waits);

CoupledTrace coupled_run(const ServiceLaw& a, const PrepLaw& b,
                         std::uint64_t customers, std::uint64_t seed);

}  // namespace altserve
