#include "altserve/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "altserve/errors.hpp"
#include "altserve/experiment.hpp"
#include "altserve/laws.hpp"
#include "altserve/simulate.hpp"

namespace altserve {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spec_error("cannot open spec file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& content, const std::string& path,
          std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  f << content;
  f.flush();
  if (!f) throw std::runtime_error("failed writing " + path);
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct CommonOpts {
  std::string spec_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> customers;
  std::optional<std::uint32_t> replications;
};

ExperimentSpec load_spec(const CommonOpts& o) {
  ExperimentSpec spec = ExperimentSpec::from_json_text(slurp(o.spec_path));
  if (o.seed || o.customers || o.replications) {
    SimSettings sim = spec.sim.value_or(SimSettings{});
    if (o.seed || o.replications) sim.explicit_seeds.clear();
    if (o.seed) sim.seed = *o.seed;
    if (o.customers) sim.customers = *o.customers;
    if (o.replications) {
      if (*o.replications == 0) throw spec_error("--replications must be >= 1");
      sim.replications = *o.replications;
    }
    spec.sim = sim;
  }
  return spec;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream ss;
  write_csv(ss, rows);
  return ss.str();
}

// --out beats the path named inside the spec file.
std::string output_path(const CommonOpts& o, const ExperimentSpec& spec) {
  return o.out_path.empty() ? spec.output : o.out_path;
}

void run_solve(const CommonOpts& o, Policy policy, std::ostream& out) {
  ExperimentSpec spec = load_spec(o);
  spec.policy = policy;
  const bool with_sim = spec.sim.has_value();
  const std::vector<ResultRow> rows =
      run_experiment(spec, RunMode{true, with_sim});
  emit(rows_to_csv(rows), output_path(o, spec), out);
}

void run_simulate(const CommonOpts& o, std::ostream& out) {
  const ExperimentSpec spec = load_spec(o);
  const std::vector<ResultRow> rows =
      run_experiment(spec, RunMode{false, true});
  emit(rows_to_csv(rows), output_path(o, spec), out);
}

void run_compare(const CommonOpts& o, const std::string& trace_out,
                 std::ostream& out) {
  ExperimentSpec spec = load_spec(o);
  spec.policy = Policy::both;
  const std::vector<GridPoint> points = spec.grid_points();
  if (!trace_out.empty() && points.size() != 1) {
    throw spec_error("--trace-out needs a single-point spec (no sweep)");
  }
  const std::vector<ResultRow> rows =
      run_experiment(spec, RunMode{true, true});
  emit(rows_to_csv(rows), output_path(o, spec), out);

  if (!trace_out.empty()) {
    const SimSettings sim = spec.sim.value_or(SimSettings{});
    const CoupledTrace tr = coupled_run(points[0].service, points[0].prep,
                                        sim.customers, sim.seed);
    std::ostringstream ss;
    ss << "i,W_A,W_NA,D_A,D_NA,H_A,H_NA\n";
    for (std::size_t i = 0; i < tr.wait_alt.size(); ++i) {
      ss << (i + 1) << ',' << fmt12(tr.wait_alt[i]) << ','
         << fmt12(tr.wait_na[i]) << ',' << fmt12(tr.depart_alt[i]) << ','
         << fmt12(tr.depart_na[i]) << ',' << fmt12(tr.handoff_alt[i]) << ','
         << fmt12(tr.handoff_na[i]) << '\n';
    }
    emit(ss.str(), trace_out, out);
  }
}

void run_fit(double mean, double scv, std::ostream& out) {
  const ServiceLaw law = fit_service({mean, scv});
  nlohmann::json j;
  j["law"] = law.to_json();
  j["mean"] = law.mean();
  j["scv"] = law.scv();
  out << j.dump() << '\n';
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Waiting times of a single server attending two service "
               "points: exact solvers, simulators, and figure sweeps"};
  app.require_subcommand(1);

  CommonOpts o;
  auto add_spec_opts = [&o](CLI::App* cmd, bool with_sim_flags) {
    cmd->add_option("--spec", o.spec_path, "experiment spec (JSON)")
        ->required();
    cmd->add_option("--out", o.out_path,
                    "output CSV path (default: stdout, or the spec's "
                    "\"output\" field)");
    if (with_sim_flags) {
      cmd->add_option("--seed", o.seed, "master seed override");
      cmd->add_option("--customers", o.customers,
                      "customers per replication override");
      cmd->add_option("--replications", o.replications,
                      "replication count override");
    }
  };

  CLI::App* solve_alt = app.add_subcommand(
      "solve-alt", "analytic waiting-time law, alternating policy");
  add_spec_opts(solve_alt, true);

  CLI::App* solve_na = app.add_subcommand(
      "solve-na", "analytic waiting-time law, non-alternating policy");
  add_spec_opts(solve_na, true);

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte-Carlo estimates only");
  add_spec_opts(simulate, true);

  std::string trace_out;
  CLI::App* compare = app.add_subcommand(
      "compare", "both policies, analytic next to simulated");
  add_spec_opts(compare, true);
  compare->add_option("--trace-out", trace_out,
                      "also dump one coupled trace CSV (single-point specs)");

  double fit_mean = 0.0, fit_scv = 0.0;
  CLI::App* fit =
      app.add_subcommand("fit", "two-moment service-law fit, JSON on stdout");
  fit->add_option("--mean", fit_mean, "target mean")->required();
  fit->add_option("--scv", fit_scv, "target squared coefficient of variation")
      ->required();

  std::string fig_out;
  std::uint64_t fig2_customers = 1000000;
  std::uint64_t fig2_seed = 1;
  CLI::App* fig2 = app.add_subcommand(
      "fig2", "waiting-time cdfs, instant service, Erlang-5 preparation");
  fig2->add_option("--out", fig_out, "output CSV path (default: stdout)");
  fig2->add_option("--customers", fig2_customers,
                   "simulated customers per policy");
  fig2->add_option("--seed", fig2_seed, "master seed");

  CLI::App* fig3 = app.add_subcommand(
      "fig3", "normalized mean wait vs preparation shape (three rate ratios)");
  fig3->add_option("--out", fig_out, "output CSV path (default: stdout)");

  CLI::App* fig4 = app.add_subcommand(
      "fig4", "normalized mean wait vs mean preparation time");
  fig4->add_option("--out", fig_out, "output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (solve_alt->parsed()) {
      run_solve(o, Policy::alternating, out);
    } else if (solve_na->parsed()) {
      run_solve(o, Policy::nonalternating, out);
    } else if (simulate->parsed()) {
      run_simulate(o, out);
    } else if (compare->parsed()) {
      run_compare(o, trace_out, out);
    } else if (fit->parsed()) {
      run_fit(fit_mean, fit_scv, out);
    } else if (fig2->parsed()) {
      if (fig2_customers == 0) throw spec_error("--customers must be >= 1");
      std::ostringstream ss;
      write_fig2_csv(ss, run_fig2(fig2_customers, fig2_seed));
      emit(ss.str(), fig_out, out);
    } else if (fig3->parsed()) {
      err << "note: phase-count grid n = 1..10 is reconstructed, not stated "
             "in the source figures\n";
      emit(rows_to_csv(run_fig3()), fig_out, out);
    } else if (fig4->parsed()) {
      err << "note: mean-preparation grid 0.2..3.0 is reconstructed, not "
             "stated in the source figures\n";
      emit(rows_to_csv(run_fig4()), fig_out, out);
    }
    return 0;
  } catch (const spec_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const numeric_error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const insufficient_run_error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace altserve
