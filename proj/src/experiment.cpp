#include "altserve/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "altserve/alternating.hpp"
#include "altserve/errors.hpp"
#include "altserve/repair.hpp"

namespace altserve {

namespace {

using nlohmann::json;

constexpr double kMassTol = 1e-10;
constexpr double kRewrittenTol = 1e-9;
constexpr double kThroughputTol = 1e-10;
// t quantile, 0.975, 29 degrees of freedom; matches the per-run batch
// intervals, slightly conservative for pooled replications.
constexpr double kT975Df29 = 2.0452296421327034;

[[noreturn]] void bad_spec(const std::string& what) { throw spec_error(what); }

double require_finite_number(const json& j, const char* where) {
  if (!j.is_number()) bad_spec(std::string(where) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad_spec(std::string(where) + " must be finite");
  return v;
}

double require_positive(const json& j, const char* where) {
  const double v = require_finite_number(j, where);
  if (v <= 0.0) bad_spec(std::string(where) + " must be positive");
  return v;
}

std::uint64_t require_count(const json& j, const char* where) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) {
    return static_cast<std::uint64_t>(j.get<long long>());
  }
  bad_spec(std::string(where) + " must be a nonnegative integer");
}

// Law objects are checked for stray keys so that a typo cannot silently
// fall back to a default. `reference` holds the canonical field set.
void reject_unknown_keys(const json& j, const json& reference,
                         const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!reference.contains(it.key())) {
      bad_spec(std::string("unknown ") + where + " key \"" + it.key() + "\"");
    }
  }
}

Moments parse_fit(const json& j, const char* where) {
  if (!j.is_object()) bad_spec(std::string(where) + " must be an object");
  reject_unknown_keys(j, {{"mean", 0}, {"scv", 0}}, where);
  Moments m;
  m.mean = require_positive(j.at("mean"), (std::string(where) + ".mean").c_str());
  m.scv = require_positive(j.at("scv"), (std::string(where) + ".scv").c_str());
  return m;
}

ServiceLaw parse_service(const json& j) {
  if (!j.is_object()) bad_spec("A must be an object");
  const bool has_fit = j.contains("fit");
  const bool has_type = j.contains("type");
  if (has_fit == has_type) {
    bad_spec("A needs exactly one of an explicit law (\"type\") or a "
             "moment fit (\"fit\")");
  }
  try {
    if (has_fit) {
      reject_unknown_keys(j, {{"fit", 0}}, "A");
      return fit_service(parse_fit(j.at("fit"), "A.fit"));
    }
    const ServiceLaw law = ServiceLaw::from_json(j);
    reject_unknown_keys(j, law.to_json(), "A");
    return law;
  } catch (const json::exception& e) {
    bad_spec(std::string("bad service law: ") + e.what());
  } catch (const std::invalid_argument& e) {
    bad_spec(std::string("bad service law: ") + e.what());
  }
}

PrepLaw parse_prep(const json& j) {
  if (!j.is_object()) bad_spec("B must be an object");
  const int forms = int(j.contains("fit")) + int(j.contains("type")) +
                    int(j.contains("n"));
  if (forms != 1) {
    bad_spec("B needs exactly one of \"type\", \"fit\", or \"n\" with a "
             "rate or mean");
  }
  try {
    if (j.contains("fit")) {
      reject_unknown_keys(j, {{"fit", 0}}, "B");
      const Moments m = parse_fit(j.at("fit"), "B.fit");
      if (m.scv > 1.0) {
        bad_spec("B.fit.scv must lie in (0, 1]: preparation times are "
                 "mixtures of Erlangs");
      }
      return PrepLaw::from_moments(m);
    }
    if (j.contains("type")) {
      const PrepLaw law = PrepLaw::from_json(j);
      reject_unknown_keys(j, law.to_json(), "B");
      return law;
    }
    reject_unknown_keys(j, {{"n", 0}, {"mu", 0}, {"mean", 0}}, "B");
    if (!j.at("n").is_number_integer()) bad_spec("B.n must be an integer");
    const long long n = j.at("n").get<long long>();
    if (n < 1) bad_spec("B.n must be at least 1");
    const bool has_mu = j.contains("mu");
    const bool has_mean = j.contains("mean");
    if (has_mu == has_mean) {
      bad_spec("B needs exactly one of \"mu\" or \"mean\" next to \"n\"");
    }
    const double mu = has_mu
                          ? require_positive(j.at("mu"), "B.mu")
                          : static_cast<double>(n) /
                                require_positive(j.at("mean"), "B.mean");
    return PrepLaw::erlang(static_cast<int>(n), mu);
  } catch (const json::exception& e) {
    bad_spec(std::string("bad preparation law: ") + e.what());
  } catch (const std::invalid_argument& e) {
    bad_spec(std::string("bad preparation law: ") + e.what());
  }
}

Policy parse_policy(const json& j) {
  if (!j.is_string()) bad_spec("policy must be a string");
  const std::string s = j.get<std::string>();
  if (s == "alternating") return Policy::alternating;
  if (s == "nonalternating") return Policy::nonalternating;
  if (s == "both") return Policy::both;
  bad_spec("policy must be \"alternating\", \"nonalternating\", or \"both\"");
}

SimSettings parse_sim(const json& j) {
  if (!j.is_object()) bad_spec("sim must be an object");
  SimSettings s;
  for (const auto& [key, value] : j.items()) {
    if (key == "customers") {
      s.customers = require_count(value, "sim.customers");
      if (s.customers == 0) bad_spec("sim.customers must be at least 1");
    } else if (key == "seed") {
      s.seed = require_count(value, "sim.seed");
    } else if (key == "seeds") {
      if (!value.is_array() || value.empty()) {
        bad_spec("sim.seeds must be a nonempty array");
      }
      for (const auto& e : value) {
        s.explicit_seeds.push_back(require_count(e, "sim.seeds entry"));
      }
    } else if (key == "replications") {
      const std::uint64_t r = require_count(value, "sim.replications");
      if (r < 1 || r > 100000) bad_spec("sim.replications out of range");
      s.replications = static_cast<std::uint32_t>(r);
    } else {
      bad_spec("unknown sim key \"" + key + "\"");
    }
  }
  if (!s.explicit_seeds.empty()) {
    if (j.contains("seed") || j.contains("replications")) {
      bad_spec("sim.seeds already fixes the replications; drop \"seed\" and "
               "\"replications\"");
    }
    s.replications = static_cast<std::uint32_t>(s.explicit_seeds.size());
    s.seed = s.explicit_seeds.front();
  }
  return s;
}

const char* const kSweepNames[] = {"mean_A", "scv_A", "mean_B",
                                   "mu_B",   "n_B",   "r"};

ServiceLaw service_with_mean(const ServiceLaw& a, double target) {
  struct Scale {
    double target;
    double factor;  // old mean / target, for rate rescaling
    ServiceLaw operator()(const Deterministic&) const {
      return ServiceLaw::deterministic(target);
    }
    ServiceLaw operator()(const Exponential& e) const {
      return ServiceLaw::exponential(e.rate * factor);
    }
    ServiceLaw operator()(const MixedErlang& m) const {
      return ServiceLaw::mixed_erlang(m.p, m.phases, m.rate * factor);
    }
    ServiceLaw operator()(const HyperExponential& h) const {
      return ServiceLaw::hyper_exponential(h.p1, h.p2, h.rate1 * factor,
                                           h.rate2 * factor);
    }
  };
  const double mean = a.mean();
  return std::visit(Scale{target, mean > 0.0 ? mean / target : 1.0}, a.law());
}

PrepLaw prep_with_mean(const PrepLaw& b, double target) {
  return PrepLaw(b.mu() * b.mean() / target, b.kappa());
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g = SplitMix64::stream(master, index);
  return g.next_u64();
}

unsigned worker_count(std::size_t tasks) {
  unsigned n = 0;
  if (const char* env = std::getenv("ALTSERVE_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) {
      n = static_cast<unsigned>(v);
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(
      std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

SimReport pool_reports(const std::vector<SimReport>& reps,
                       std::uint64_t master_seed) {
  if (reps.size() == 1) {
    SimReport out = reps.front();
    out.seed = master_seed;  // streams derive from (master, row, replication)
    return out;
  }
  SimReport out;
  out.seed = master_seed;
  double counted = 0.0;
  double wait_sum = 0.0;
  for (const SimReport& r : reps) {
    out.customers += r.customers;
    out.counted += r.counted;
    out.cycles += r.cycles;
    counted += static_cast<double>(r.counted);
    wait_sum += r.mean_wait * static_cast<double>(r.counted);
  }
  out.mean_wait = wait_sum / counted;
  out.zero_wait_freq = static_cast<double>(out.cycles) / counted;
  out.mean_cycle_length =
      out.cycles == 0 ? std::numeric_limits<double>::infinity()
                      : counted / static_cast<double>(out.cycles);
  double var_mean = 0.0, var_zero = 0.0;
  for (const SimReport& r : reps) {
    const double w = static_cast<double>(r.counted) / counted;
    var_mean += (w * r.mean_wait_se) * (w * r.mean_wait_se);
    var_zero += (w * r.zero_wait_se) * (w * r.zero_wait_se);
  }
  out.mean_wait_se = std::sqrt(var_mean);
  out.zero_wait_se = std::sqrt(var_zero);
  out.half_width_95 = kT975Df29 * out.mean_wait_se;
  out.zero_wait_half_width_95 = kT975Df29 * out.zero_wait_se;
  return out;
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void append_cell(std::string& line, const std::optional<double>& v) {
  line.push_back(',');
  if (v) line += fmt12(*v);
}

}  // namespace

std::string to_string(Policy p) {
  switch (p) {
    case Policy::alternating:
      return "alternating";
    case Policy::nonalternating:
      return "nonalternating";
    case Policy::both:
      return "both";
  }
  return "?";
}

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad_spec(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad_spec("spec must be a JSON object");

  bool saw_policy = false, saw_a = false, saw_b = false;
  ExperimentSpec spec;
  std::optional<ServiceLaw> a;
  std::optional<PrepLaw> b;
  for (const auto& [key, value] : j.items()) {
    if (key == "policy") {
      spec.policy = parse_policy(value);
      saw_policy = true;
    } else if (key == "A") {
      a = parse_service(value);
      saw_a = true;
    } else if (key == "B") {
      b = parse_prep(value);
      saw_b = true;
    } else if (key == "sweep") {
      if (!value.is_object()) bad_spec("sweep must be an object");
      if (!value.contains("parameter") || !value.at("parameter").is_string()) {
        bad_spec("sweep.parameter must be a string");
      }
      spec.sweep_parameter = value.at("parameter").get<std::string>();
      const bool known =
          std::find_if(std::begin(kSweepNames), std::end(kSweepNames),
                       [&](const char* n) { return spec.sweep_parameter == n; }) !=
          std::end(kSweepNames);
      if (!known) {
        bad_spec("unknown sweep parameter \"" + spec.sweep_parameter + "\"");
      }
      if (!value.contains("grid") || !value.at("grid").is_array() ||
          value.at("grid").empty()) {
        bad_spec("sweep.grid must be a nonempty array");
      }
      for (const auto& e : value.at("grid")) {
        spec.sweep_grid.push_back(require_finite_number(e, "sweep.grid entry"));
      }
      for (const auto& extra : value.items()) {
        if (extra.key() != "parameter" && extra.key() != "grid") {
          bad_spec("unknown sweep key \"" + extra.key() + "\"");
        }
      }
    } else if (key == "sim") {
      spec.sim = parse_sim(value);
    } else if (key == "output") {
      if (!value.is_string()) bad_spec("output must be a string");
      spec.output = value.get<std::string>();
    } else if (key == "note") {
      if (!value.is_string()) bad_spec("note must be a string");
    } else {
      bad_spec("unknown spec key \"" + key + "\"");
    }
  }
  if (!saw_policy) bad_spec("spec needs a \"policy\"");
  if (!saw_a) bad_spec("spec needs a service law \"A\"");
  if (!saw_b) bad_spec("spec needs a preparation law \"B\"");
  spec.service = *a;
  spec.prep = *b;
  return spec;
}

std::vector<GridPoint> ExperimentSpec::grid_points() const {
  std::vector<GridPoint> points;
  const bool needs_erlang = policy != Policy::alternating;

  auto resolved = [&](double v) -> GridPoint {
    try {
      if (sweep_parameter == "mean_A") {
        if (v <= 0.0) bad_spec("mean_A sweep values must be positive");
        return {service_with_mean(service, v), prep, v};
      }
      if (sweep_parameter == "scv_A") {
        if (service.mean() <= 0.0) {
          bad_spec("scv_A sweep needs a service law with positive mean");
        }
        return {fit_service({service.mean(), v}), prep, v};
      }
      if (sweep_parameter == "mean_B") {
        if (v <= 0.0) bad_spec("mean_B sweep values must be positive");
        return {service, prep_with_mean(prep, v), v};
      }
      if (sweep_parameter == "mu_B") {
        if (v <= 0.0) bad_spec("mu_B sweep values must be positive");
        return {service, PrepLaw(v, prep.kappa()), v};
      }
      if (sweep_parameter == "n_B") {
        const double rounded = std::round(v);
        if (std::abs(v - rounded) > 1e-9 || rounded < 1.0 || rounded > 170.0) {
          bad_spec("n_B sweep values must be integers in [1, 170]");
        }
        const int k = static_cast<int>(rounded);
        return {service, PrepLaw::erlang(k, k / prep.mean()), v};
      }
      if (sweep_parameter == "r") {
        if (v <= 0.0) bad_spec("r sweep values must be positive");
        if (service.mean() <= 0.0) {
          bad_spec("r sweep needs a service law with positive mean");
        }
        return {service, prep_with_mean(prep, service.mean() / v), v};
      }
      bad_spec("unknown sweep parameter \"" + sweep_parameter + "\"");
    } catch (const std::invalid_argument& e) {
      bad_spec("sweep value " + fmt12(v) + ": " + e.what());
    }
  };

  if (sweep_parameter.empty()) {
    points.push_back({service, prep, std::nullopt});
  } else {
    if (sweep_grid.empty()) bad_spec("sweep.grid must be nonempty");
    points.reserve(sweep_grid.size());
    for (double v : sweep_grid) points.push_back(resolved(v));
  }

  if (needs_erlang) {
    for (const GridPoint& p : points) {
      if (!p.prep.erlang_phases()) {
        bad_spec("the non-alternating policy needs pure Erlang preparation; "
                 "got " + p.prep.describe());
      }
    }
  }
  return points;
}

namespace {

ResultRow compute_row(const GridPoint& point, Policy policy,
                      const RunMode& mode, const SimSettings& sim,
                      std::uint64_t row_index) {
  ResultRow row;
  row.policy = to_string(policy);
  const ServiceLaw& a = point.service;
  const PrepLaw& b = point.prep;
  row.mean_a = a.mean();
  try {
    row.scv_a = a.scv();
  } catch (const std::domain_error&) {
    row.scv_a = std::numeric_limits<double>::quiet_NaN();
  }
  row.mean_b = b.mean();
  row.scv_b = b.scv();
  row.n_b = b.erlang_phases();
  row.mu_b = b.mu();
  row.r = row.mean_a / row.mean_b;

  if (mode.analytic) {
    if (policy == Policy::alternating) {
      const AlternatingSolution sol = solve_phase_type(b, a);
      double mass = sol.law.p0;
      for (double w : sol.law.weights) mass += w;
      if (std::abs(mass - 1.0) > kMassTol) {
        throw numeric_error("wait-law mass drifted from 1 by " +
                            fmt12(mass - 1.0));
      }
      const double residual = verify_rewritten_system(sol.law, sol.transforms);
      if (!(residual <= kRewrittenTol)) {
        throw numeric_error("rewritten-system residual " + fmt12(residual) +
                            " exceeds " + fmt12(kRewrittenTol));
      }
      const double th = throughput_from_law(sol.law, a);
      if (row.n_b) {
        const double th2 = throughput_from_transforms(*row.n_b, sol.transforms, a);
        if (std::abs(th - th2) > kThroughputTol * std::max(1.0, std::abs(th))) {
          throw numeric_error("throughput routes disagree: " + fmt12(th) +
                              " vs " + fmt12(th2));
        }
      }
      row.p0 = sol.law.p0;
      row.ew = wait_mean(sol.law);
      row.ew_norm = *row.ew / row.mean_a;
      row.throughput = th;
    } else {
      const PhaseChain chain = build_chain(*row.n_b, row.mu_b, a);
      const ResidualLaw res = residual_law(chain);
      double mass = 0.0;
      for (double p : res.pi) mass += p;
      if (std::abs(mass - 1.0) > kMassTol) {
        throw numeric_error("equilibrium mass drifted from 1 by " +
                            fmt12(mass - 1.0));
      }
      row.p0 = na_zero_wait_prob(res);
      row.ew = na_wait_mean(res, *row.n_b);
      row.ew_norm = *row.ew / row.mean_a;
      row.throughput = 1.0 / (*row.ew + row.mean_a);
    }
  }

  if (mode.simulate) {
    const std::uint32_t reps = sim.replications;
    std::vector<SimReport> parts;
    parts.reserve(reps);
    for (std::uint32_t k = 0; k < reps; ++k) {
      const std::uint64_t s =
          sim.explicit_seeds.empty()
              ? derive_seed(sim.seed, row_index * reps + k)
              : derive_seed(sim.explicit_seeds[k], row_index);
      const std::vector<double> waits =
          policy == Policy::alternating
              ? alternating_waits(a, b, sim.customers, s)
              : nonalternating_waits(a, b, sim.customers, s);
      parts.push_back(report_from_waits(waits, sim.customers, s));
    }
    row.sim = pool_reports(parts, sim.seed);
    row.replications = reps;
  }
  return row;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec,
                                      const RunMode& mode) {
  const std::vector<GridPoint> points = spec.grid_points();

  std::vector<Policy> policies;
  if (spec.policy == Policy::both) {
    policies = {Policy::alternating, Policy::nonalternating};
  } else {
    policies = {spec.policy};
  }

  const SimSettings sim = spec.sim.value_or(SimSettings{});

  const std::size_t total = points.size() * policies.size();
  std::vector<ResultRow> rows(total);
  std::vector<std::exception_ptr> failures(total);
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= total) return;
      try {
        rows[t] = compute_row(points[t / policies.size()],
                              policies[t % policies.size()], mode, sim,
                              static_cast<std::uint64_t>(t));
      } catch (...) {
        failures[t] = std::current_exception();
      }
    }
  };

  const unsigned workers = worker_count(total);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  for (const std::exception_ptr& e : failures) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string csv_header() {
  return "policy,mean_A,scv_A,mean_B,scv_B,n_B,mu_B,r,p0,ew,ew_norm,"
         "throughput,sim_ew,sim_ew_hw95,sim_p0,sim_p0_hw95,sim_customers,"
         "sim_replications,sim_seed";
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << csv_header() << '\n';
  for (const ResultRow& row : rows) {
    std::string line = row.policy;
    line += ',';
    line += fmt12(row.mean_a);
    line += ',';
    line += fmt12(row.scv_a);
    line += ',';
    line += fmt12(row.mean_b);
    line += ',';
    line += fmt12(row.scv_b);
    line += ',';
    if (row.n_b) line += std::to_string(*row.n_b);
    line += ',';
    line += fmt12(row.mu_b);
    line += ',';
    line += fmt12(row.r);
    append_cell(line, row.p0);
    append_cell(line, row.ew);
    append_cell(line, row.ew_norm);
    append_cell(line, row.throughput);
    if (row.sim) {
      line += ',';
      line += fmt12(row.sim->mean_wait);
      line += ',';
      line += fmt12(row.sim->half_width_95);
      line += ',';
      line += fmt12(row.sim->zero_wait_freq);
      line += ',';
      line += fmt12(row.sim->zero_wait_half_width_95);
      line += ',';
      line += std::to_string(row.sim->customers);
      line += ',';
      line += std::to_string(row.replications);
      line += ',';
      line += std::to_string(row.sim->seed);
    } else {
      line += ",,,,,,,";
    }
    os << line << '\n';
  }
}

std::vector<Fig2Row> run_fig2(std::uint64_t customers, std::uint64_t seed) {
  const ServiceLaw a = ServiceLaw::deterministic(0.0);
  const PrepLaw b = PrepLaw::erlang(5, 5.0);

  const AlternatingSolution alt = solve_erlang(5, 5.0, a);
  const PhaseChain chain = build_chain(5, 5.0, a);
  const ResidualLaw res = residual_law(chain);

  std::vector<double> walt =
      alternating_waits(a, b, customers, derive_seed(seed, 0));
  std::vector<double> wna =
      nonalternating_waits(a, b, customers, derive_seed(seed, 1));
  std::sort(walt.begin(), walt.end());
  std::sort(wna.begin(), wna.end());

  auto ecdf = [](const std::vector<double>& sorted, double x) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) /
           static_cast<double>(sorted.size());
  };

  std::vector<Fig2Row> rows;
  rows.reserve(251);
  for (int i = 0; i <= 250; ++i) {
    Fig2Row r;
    r.x = static_cast<double>(i) / 100.0;
    r.cdf_alt = wait_cdf(alt.law, r.x);
    r.cdf_na = na_wait_cdf(res, 5, r.x);
    r.ecdf_alt = ecdf(walt, r.x);
    r.ecdf_na = ecdf(wna, r.x);
    rows.push_back(r);
  }
  return rows;
}

void write_fig2_csv(std::ostream& os, const std::vector<Fig2Row>& rows) {
  os << "x,cdf_alt,cdf_na,ecdf_alt,ecdf_na\n";
  for (const Fig2Row& r : rows) {
    os << fmt12(r.x) << ',' << fmt12(r.cdf_alt) << ',' << fmt12(r.cdf_na)
       << ',' << fmt12(r.ecdf_alt) << ',' << fmt12(r.ecdf_na) << '\n';
  }
}

ExperimentSpec fig3_spec(double r) {
  ExperimentSpec spec;
  spec.policy = Policy::both;
  spec.service = fit_service({1.0, 0.2});
  spec.prep = PrepLaw::erlang(1, r);  // mean 1/r; the sweep keeps it fixed
  spec.sweep_parameter = "n_B";
  spec.sweep_grid = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  return spec;
}

std::vector<ResultRow> run_fig3() {
  std::vector<ResultRow> all;
  for (double r : {0.4, 0.8, 1.2}) {
    std::vector<ResultRow> rows =
        run_experiment(fig3_spec(r), RunMode{true, false});
    all.insert(all.end(), rows.begin(), rows.end());
  }
  return all;
}

ExperimentSpec fig4_spec() {
  ExperimentSpec spec;
  spec.policy = Policy::both;
  spec.service = fit_service({1.0, 0.8});
  spec.prep = PrepLaw::erlang(5, 5.0);
  spec.sweep_parameter = "mean_B";
  spec.sweep_grid = {0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6,
                     1.8, 2.0, 2.2, 2.4, 2.6, 2.8, 3.0};
  return spec;
}

std::vector<ResultRow> run_fig4() {
  return run_experiment(fig4_spec(), RunMode{true, false});
}

}  // namespace altserve
