#include "altserve/laws.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "altserve/detail/math.hpp"

namespace altserve {

namespace {

// Phase counts and mixture sizes are capped so that factorial-style
// recurrences stay inside double range (170! is the last finite factorial).
constexpr int kMaxPhases = 170;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool finite(double x) { return std::isfinite(x); }

// d^i/ds^i (nu/(nu+s))^m  =  (-1)^i m(m+1)...(m+i-1) nu^m / (nu+s)^(m+i),
// built as a running product so no factorial is formed.
double erlang_lt_deriv(int m, double nu, int i, double s) {
  double v = std::pow(nu / (nu + s), m);
  for (int j = 0; j < i; ++j) v *= -(m + j) / (nu + s);
  return v;
}

double sample_erlang(SplitMix64& rng, int phases, double rate) {
  // Product of uniforms; re-normalize through log space if the running
  // product ever gets close to underflow (only relevant for huge phase
  // counts in deep tails).
  double log_acc = 0.0;
  double prod = 1.0;
  for (int j = 0; j < phases; ++j) {
    prod *= rng.next_unit();
    if (prod < 1e-280) {
      log_acc += std::log(prod);
      prod = 1.0;
    }
  }
  return -(log_acc + std::log(prod)) / rate;
}

// Accumulate p * (negative binomial over k phases for an Erlang(m, nu)
// component) into q[0..kmax].
void add_erlang_phase_counts(std::vector<double>& q, double p, int m,
                             double nu, double mu, int kmax) {
  if (p == 0.0) return;
  const double a = nu / (nu + mu);
  const double b = mu / (nu + mu);
  double t = std::pow(a, m);  // k = 0 term
  for (int k = 0; k <= kmax; ++k) {
    q[static_cast<std::size_t>(k)] += p * t;
    t *= (static_cast<double>(m + k) / (k + 1)) * b;
  }
}

}  // namespace

ServiceLaw ServiceLaw::deterministic(double value) {
  require(finite(value) && value >= 0.0,
          "deterministic service time must be finite and >= 0");
  return ServiceLaw(Deterministic{value});
}

ServiceLaw ServiceLaw::exponential(double rate) {
  require(finite(rate) && rate > 0.0, "exponential rate must be > 0");
  return ServiceLaw(Exponential{rate});
}

ServiceLaw ServiceLaw::mixed_erlang(double p, int phases, double rate) {
  require(finite(p) && p >= 0.0 && p <= 1.0,
          "mixed-Erlang weight p must lie in [0, 1]");
  require(phases >= 2 && phases <= kMaxPhases,
          "mixed-Erlang phase count must lie in [2, 170]");
  require(finite(rate) && rate > 0.0, "mixed-Erlang rate must be > 0");
  return ServiceLaw(MixedErlang{p, phases, rate});
}

ServiceLaw ServiceLaw::hyper_exponential(double p1, double p2, double rate1,
                                         double rate2) {
  require(finite(p1) && finite(p2) && p1 >= 0.0 && p2 >= 0.0,
          "hyperexponential branch probabilities must be >= 0");
  require(std::abs(p1 + p2 - 1.0) <= 1e-12,
          "hyperexponential branch probabilities must sum to 1");
  require(finite(rate1) && rate1 > 0.0 && finite(rate2) && rate2 > 0.0,
          "hyperexponential rates must be > 0");
  return ServiceLaw(HyperExponential{p1, p2, rate1, rate2});
}

double ServiceLaw::mean() const {
  return std::visit(
      [](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, Deterministic>) return l.value;
        if constexpr (std::is_same_v<T, Exponential>) return 1.0 / l.rate;
        if constexpr (std::is_same_v<T, MixedErlang>)
          return (l.phases - l.p) / l.rate;
        if constexpr (std::is_same_v<T, HyperExponential>)
          return l.p1 / l.rate1 + l.p2 / l.rate2;
      },
      law_);
}

double ServiceLaw::variance() const {
  return std::visit(
      [this](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        const double m = mean();
        if constexpr (std::is_same_v<T, Deterministic>) {
          (void)l;
          return 0.0;
        }
        if constexpr (std::is_same_v<T, Exponential>)
          return 1.0 / (l.rate * l.rate);
        if constexpr (std::is_same_v<T, MixedErlang>) {
          const double n = l.phases;
          const double m2 =
              (l.p * (n - 1.0) * n + (1.0 - l.p) * n * (n + 1.0)) /
              (l.rate * l.rate);
          return m2 - m * m;
        }
        if constexpr (std::is_same_v<T, HyperExponential>) {
          const double m2 = 2.0 * l.p1 / (l.rate1 * l.rate1) +
                            2.0 * l.p2 / (l.rate2 * l.rate2);
          return m2 - m * m;
        }
      },
      law_);
}

double ServiceLaw::scv() const {
  const double m = mean();
  if (m <= 0.0) {
    throw std::domain_error("scv undefined for a zero-mean service law");
  }
  return variance() / (m * m);
}

double ServiceLaw::lt_deriv(int order, double s) const {
  require(order >= 0, "lt_deriv order must be >= 0");
  require(finite(s) && s > 0.0, "lt_deriv requires s > 0");
  return std::visit(
      [&](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, Deterministic>) {
          if (l.value == 0.0) return order == 0 ? 1.0 : 0.0;
          return std::pow(-l.value, order) * std::exp(-s * l.value);
        }
        if constexpr (std::is_same_v<T, Exponential>) {
          return erlang_lt_deriv(1, l.rate, order, s);
        }
        if constexpr (std::is_same_v<T, MixedErlang>) {
          return l.p * erlang_lt_deriv(l.phases - 1, l.rate, order, s) +
                 (1.0 - l.p) * erlang_lt_deriv(l.phases, l.rate, order, s);
        }
        if constexpr (std::is_same_v<T, HyperExponential>) {
          return l.p1 * erlang_lt_deriv(1, l.rate1, order, s) +
                 l.p2 * erlang_lt_deriv(1, l.rate2, order, s);
        }
      },
      law_);
}

double ServiceLaw::phase_count_pmf(double mu, int k) const {
  require(finite(mu) && mu > 0.0, "phase_count_pmf requires mu > 0");
  require(k >= 0, "phase_count_pmf requires k >= 0");
  return detail::phase_table(*this, mu, k).q[static_cast<std::size_t>(k)];
}

double ServiceLaw::sample(SplitMix64& rng) const {
  return std::visit(
      [&rng](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, Deterministic>) return l.value;
        if constexpr (std::is_same_v<T, Exponential>)
          return rng.exponential(l.rate);
        if constexpr (std::is_same_v<T, MixedErlang>) {
          const int m = rng.next_unit() <= l.p ? l.phases - 1 : l.phases;
          return sample_erlang(rng, m, l.rate);
        }
        if constexpr (std::is_same_v<T, HyperExponential>) {
          const double r = rng.next_unit() <= l.p1 ? l.rate1 : l.rate2;
          return rng.exponential(r);
        }
      },
      law_);
}

nlohmann::json ServiceLaw::to_json() const {
  return std::visit(
      [](const auto& l) -> nlohmann::json {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, Deterministic>)
          return {{"type", "det"}, {"d", l.value}};
        if constexpr (std::is_same_v<T, Exponential>)
          return {{"type", "exp"}, {"lambda", l.rate}};
        if constexpr (std::is_same_v<T, MixedErlang>)
          return {{"type", "mixed_erlang"},
                  {"p", l.p},
                  {"n", l.phases},
                  {"mu", l.rate}};
        if constexpr (std::is_same_v<T, HyperExponential>)
          return {{"type", "hyperexp"},
                  {"p1", l.p1},
                  {"p2", l.p2},
                  {"mu1", l.rate1},
                  {"mu2", l.rate2}};
      },
      law_);
}

ServiceLaw ServiceLaw::from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "det") return deterministic(j.at("d").get<double>());
  if (type == "exp") return exponential(j.at("lambda").get<double>());
  if (type == "mixed_erlang") {
    return mixed_erlang(j.at("p").get<double>(), j.at("n").get<int>(),
                        j.at("mu").get<double>());
  }
  if (type == "hyperexp") {
    return hyper_exponential(j.at("p1").get<double>(), j.at("p2").get<double>(),
                             j.at("mu1").get<double>(),
                             j.at("mu2").get<double>());
  }
  throw std::invalid_argument("unknown service law type: " + type);
}

std::string ServiceLaw::describe() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, Deterministic>)
          os << "Deterministic(" << l.value << ")";
        if constexpr (std::is_same_v<T, Exponential>)
          os << "Exponential(rate=" << l.rate << ")";
        if constexpr (std::is_same_v<T, MixedErlang>)
          os << "MixedErlang(p=" << l.p << ", n=" << l.phases
             << ", mu=" << l.rate << ")";
        if constexpr (std::is_same_v<T, HyperExponential>)
          os << "HyperExponential(p1=" << l.p1 << ", mu1=" << l.rate1
             << ", p2=" << l.p2 << ", mu2=" << l.rate2 << ")";
      },
      law_);
  return os.str();
}

PrepLaw::PrepLaw(double mu, std::vector<double> kappa)
    : mu_(mu), kappa_(std::move(kappa)) {
  require(finite(mu_) && mu_ > 0.0, "preparation rate mu must be > 0");
  require(!kappa_.empty(), "preparation mixture needs at least one weight");
  require(static_cast<int>(kappa_.size()) <= kMaxPhases,
          "preparation mixture capped at 170 phases");
  double sum = 0.0;
  for (double w : kappa_) {
    require(finite(w) && w >= 0.0, "mixture weights must be >= 0");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "mixture weights must sum to 1");
}

PrepLaw PrepLaw::erlang(int phases, double mu) {
  require(phases >= 1 && phases <= kMaxPhases,
          "Erlang phase count must lie in [1, 170]");
  std::vector<double> kappa(static_cast<std::size_t>(phases), 0.0);
  kappa.back() = 1.0;
  return PrepLaw(mu, std::move(kappa));
}

PrepLaw PrepLaw::from_moments(const Moments& m) {
  const ServiceLaw fitted = fit_mixed_erlang(m);
  if (const auto* exp = std::get_if<Exponential>(&fitted.law())) {
    return PrepLaw(exp->rate, {1.0});
  }
  const auto& me = std::get<MixedErlang>(fitted.law());
  std::vector<double> kappa(static_cast<std::size_t>(me.phases), 0.0);
  kappa[static_cast<std::size_t>(me.phases - 2)] = me.p;
  kappa[static_cast<std::size_t>(me.phases - 1)] = 1.0 - me.p;
  while (kappa.size() > 1 && kappa.back() == 0.0) kappa.pop_back();
  return PrepLaw(me.rate, std::move(kappa));
}

std::optional<int> PrepLaw::erlang_phases() const {
  int best = -1;
  for (std::size_t j = 0; j < kappa_.size(); ++j) {
    if (kappa_[j] > 0.5) best = static_cast<int>(j);
  }
  if (best < 0 || std::abs(kappa_[static_cast<std::size_t>(best)] - 1.0) > 1e-12)
    return std::nullopt;
  return best + 1;
}

double PrepLaw::mean() const {
  double m = 0.0;
  for (std::size_t j = 0; j < kappa_.size(); ++j) m += kappa_[j] * (j + 1.0);
  return m / mu_;
}

double PrepLaw::variance() const {
  double m2 = 0.0;
  for (std::size_t j = 0; j < kappa_.size(); ++j)
    m2 += kappa_[j] * (j + 1.0) * (j + 2.0);
  m2 /= mu_ * mu_;
  const double m = mean();
  return m2 - m * m;
}

double PrepLaw::scv() const {
  const double m = mean();
  return variance() / (m * m);
}

double PrepLaw::cdf(double x) const {
  if (x < 0.0) throw std::domain_error("PrepLaw::cdf requires x >= 0");
  if (x == 0.0) return 0.0;
  const int n = max_phases();
  // sum_i kappa_i ErlangCdf(i+1) = 1 - sum_j t_j * (kappa_j + ... + kappa_N)
  std::vector<double> suffix(kappa_.size() + 1, 0.0);
  for (int j = n - 1; j >= 0; --j) {
    suffix[static_cast<std::size_t>(j)] =
        suffix[static_cast<std::size_t>(j + 1)] +
        kappa_[static_cast<std::size_t>(j)];
  }
  const std::vector<double> t = detail::poisson_prefix(mu_ * x, n);
  double acc = 0.0;
  for (int j = 0; j < n; ++j)
    acc += t[static_cast<std::size_t>(j)] * suffix[static_cast<std::size_t>(j)];
  double f = 1.0 - acc;
  return std::clamp(f, 0.0, 1.0);
}

double PrepLaw::sample(SplitMix64& rng) const {
  const double u = rng.next_unit();
  double acc = 0.0;
  std::size_t pick = kappa_.size() - 1;
  for (std::size_t j = 0; j < kappa_.size(); ++j) {
    acc += kappa_[j];
    if (u <= acc) {
      pick = j;
      break;
    }
  }
  return sample_erlang(rng, static_cast<int>(pick) + 1, mu_);
}

nlohmann::json PrepLaw::to_json() const {
  return {{"type", "prep"}, {"mu", mu_}, {"kappa", kappa_}};
}

PrepLaw PrepLaw::from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type != "prep")
    throw std::invalid_argument("expected preparation law of type 'prep'");
  return PrepLaw(j.at("mu").get<double>(),
                 j.at("kappa").get<std::vector<double>>());
}

std::string PrepLaw::describe() const {
  std::ostringstream os;
  if (auto n = erlang_phases()) {
    os << "Erlang(n=" << *n << ", mu=" << mu_ << ")";
  } else {
    os << "ErlangMixture(mu=" << mu_ << ", N=" << max_phases() << ")";
  }
  return os.str();
}

ServiceLaw fit_mixed_erlang(const Moments& m) {
  require(finite(m.mean) && m.mean > 0.0, "fit requires mean > 0");
  require(finite(m.scv) && m.scv > 0.0 && m.scv <= 1.0,
          "mixed-Erlang fit requires 0 < scv <= 1");
  // Smallest n >= 2 with 1/n <= scv <= 1/(n-1). The 1e-9 nudge keeps
  // exact boundary values (scv = 1/k) on the smaller-n branch.
  const int n = std::max(2, static_cast<int>(std::ceil(1.0 / m.scv - 1e-9)));
  require(n <= kMaxPhases, "mixed-Erlang fit needs more than 170 phases");
  const double c2 = m.scv;
  const double inner = n * (1.0 + c2) - n * n * c2;
  const double p =
      std::clamp((n * c2 - std::sqrt(std::max(0.0, inner))) / (1.0 + c2), 0.0,
                 1.0);
  const double rate = (n - p) / m.mean;
  if (n == 2 && p == 1.0) {
    return ServiceLaw::exponential(rate);  // scv = 1 boundary
  }
  return ServiceLaw::mixed_erlang(p, n, rate);
}

ServiceLaw fit_hyper_exponential(const Moments& m) {
  require(finite(m.mean) && m.mean > 0.0, "fit requires mean > 0");
  require(finite(m.scv) && m.scv > 1.0,
          "hyperexponential fit requires scv > 1");
  const double p1 =
      0.5 * (1.0 + std::sqrt((m.scv - 1.0) / (m.scv + 1.0)));
  const double p2 = 1.0 - p1;
  // Balanced means: each branch contributes mean/2.
  const double rate1 = 2.0 * p1 / m.mean;
  const double rate2 = 2.0 * p2 / m.mean;
  return ServiceLaw::hyper_exponential(p1, p2, rate1, rate2);
}

ServiceLaw fit_service(const Moments& m) {
  require(finite(m.scv) && m.scv > 0.0, "fit requires scv > 0");
  return m.scv <= 1.0 ? fit_mixed_erlang(m) : fit_hyper_exponential(m);
}

namespace detail {

PhaseTable phase_table(const ServiceLaw& law, double mu, int kmax) {
  PhaseTable table;
  auto& q = table.q;
  q.assign(static_cast<std::size_t>(kmax) + 1, 0.0);

  std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, Deterministic>) {
          q = poisson_prefix(mu * l.value, kmax + 1);
        }
        if constexpr (std::is_same_v<T, Exponential>) {
          add_erlang_phase_counts(q, 1.0, 1, l.rate, mu, kmax);
        }
        if constexpr (std::is_same_v<T, MixedErlang>) {
          add_erlang_phase_counts(q, l.p, l.phases - 1, l.rate, mu, kmax);
          add_erlang_phase_counts(q, 1.0 - l.p, l.phases, l.rate, mu, kmax);
        }
        if constexpr (std::is_same_v<T, HyperExponential>) {
          add_erlang_phase_counts(q, l.p1, 1, l.rate1, mu, kmax);
          add_erlang_phase_counts(q, l.p2, 1, l.rate2, mu, kmax);
        }
      },
      law.law());

  table.cum.assign(q.size() + 1, 0.0);
  for (std::size_t k = 0; k < q.size(); ++k) table.cum[k + 1] = table.cum[k] + q[k];
  return table;
}

}  // namespace detail

}  // namespace altserve
