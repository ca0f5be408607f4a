#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "altserve/laws.hpp"
#include "altserve/simulate.hpp"

namespace altserve {

enum class Policy { alternating, nonalternating, both };

std::string to_string(Policy p);

struct SimSettings {
  std::uint64_t customers = 100000;
  std::uint64_t seed = 1;
  std::uint32_t replications = 1;
  // Optional explicit per-replication master seeds; when nonempty it fixes
  // the replication count and overrides `seed`.
  std::vector<std::uint64_t> explicit_seeds;
};

// One sweep point with both laws fully resolved.
struct GridPoint {
  ServiceLaw service;
  PrepLaw prep;
  std::optional<double> sweep_value;
};

// A declarative experiment: laws (explicit or fitted from moments), an
// optional one-parameter sweep, and optional simulation settings. Parsed
// from JSON; all validation problems surface as spec_error.
//
// Sweep parameters: "mean_A" (rescale A), "scv_A" (refit A), "mean_B" and
// "mu_B" (rescale B), "n_B" (Erlang phase count, mean held fixed), "r"
// (service/preparation mean ratio, adjusted through B's rate).
struct ExperimentSpec {
  Policy policy = Policy::both;
  ServiceLaw service;
  PrepLaw prep;
  std::string sweep_parameter;  // empty = single point
  std::vector<double> sweep_grid;
  std::optional<SimSettings> sim;
  std::string output;  // optional path from the spec file; CLI may override

  static ExperimentSpec from_json_text(const std::string& text);

  // Resolves the sweep to concrete law pairs, validating every point.
  std::vector<GridPoint> grid_points() const;
};

// One output row: a (grid point, policy) pair. Analytic and simulated
// blocks are optional so the same CSV shape serves solve-only and
// simulate-only runs.
struct ResultRow {
  std::string policy;
  double mean_a = 0.0, scv_a = 0.0;
  double mean_b = 0.0, scv_b = 0.0;
  std::optional<int> n_b;  // set when B is pure Erlang
  double mu_b = 0.0;
  double r = 0.0;  // mean_a / mean_b
  std::optional<double> p0, ew, ew_norm, throughput;
  std::optional<SimReport> sim;
  std::uint32_t replications = 0;
};

struct RunMode {
  bool analytic = true;
  bool simulate = false;
};

// Runs every (grid point, policy) row, dispatching to a worker pool sized
// by ALTSERVE_THREADS (default: hardware concurrency). Rows come back in
// grid order regardless of scheduling, and simulation streams depend only
// on (master seed, row index, replication), so output is reproducible.
// Analytic rows are re-verified (mixture mass, rewritten-system residual,
// the two throughput routes) before being returned; violations raise
// numeric_error.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec,
                                      const RunMode& mode);

std::string csv_header();
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);

// Figure presets. Parameters mirror the JSON files under presets/ (a unit
// test keeps the two in sync).

// Waiting-time cdfs for both policies with instant service and Erlang-5
// preparation at rate 5, tabulated on x = 0, 0.01, ..., 2.50, next to
// empirical cdfs from one simulation run per policy.
struct Fig2Row {
  double x = 0.0;
  double cdf_alt = 0.0, cdf_na = 0.0;
  double ecdf_alt = 0.0, ecdf_na = 0.0;
};
std::vector<Fig2Row> run_fig2(std::uint64_t customers, std::uint64_t seed);
void write_fig2_csv(std::ostream& os, const std::vector<Fig2Row>& rows);

// Normalized mean waits against the preparation-time shape: E[A] = 1,
// c2_A = 0.2, three rate ratios r, Erlang phase count n = 1..10 with E[B]
// fixed per series at 1/r.
ExperimentSpec fig3_spec(double r);
std::vector<ResultRow> run_fig3();

// Normalized mean waits against the mean preparation time: E[A] = 1,
// c2_A = 0.8, Erlang-5 preparation, E[B] swept over 0.2..3.0.
ExperimentSpec fig4_spec();
std::vector<ResultRow> run_fig4();

}  // namespace altserve
