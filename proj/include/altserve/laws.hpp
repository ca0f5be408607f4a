#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "altserve/rng.hpp"

namespace altserve {

// First two moments in (mean, squared coefficient of variation) form.
struct Moments {
  double mean = 0.0;
  double scv = 0.0;
};

struct Deterministic {
  double value = 0.0;  // point mass; value = 0 (no service) is legal
};

struct Exponential {
  double rate = 0.0;
};

// Erlang(phases-1, rate) with probability p, Erlang(phases, rate) with
// probability 1-p. phases >= 2. Covers every scv in (0, 1].
struct MixedErlang {
  double p = 0.0;
  int phases = 2;
  double rate = 0.0;
};

// Exp(rate1) with probability p1, Exp(rate2) with probability p2.
// Covers every scv > 1.
struct HyperExponential {
  double p1 = 0.0;
  double p2 = 0.0;
  double rate1 = 0.0;
  double rate2 = 0.0;
};

// Service-time distribution. Closed under everything the solvers need:
// closed-form Laplace transform derivatives and the distribution of the
// number of rate-mu exponential phases that elapse during one service.
class ServiceLaw {
 public:
  using Variant =
      std::variant<Deterministic, Exponential, MixedErlang, HyperExponential>;

  // Instant service. Handy as a placeholder; also a legal law of its own.
  ServiceLaw() : law_(Deterministic{0.0}) {}

  static ServiceLaw deterministic(double value);
  static ServiceLaw exponential(double rate);
  static ServiceLaw mixed_erlang(double p, int phases, double rate);
  static ServiceLaw hyper_exponential(double p1, double p2, double rate1,
                                      double rate2);

  const Variant& law() const { return law_; }

  double mean() const;
  double variance() const;
  // Squared coefficient of variation. Undefined (throws std::domain_error)
  // when the mean is zero.
  double scv() const;

  // i-th derivative of the Laplace transform a(s) = E[exp(-s A)] at s > 0,
  // by closed-form differentiation per variant. Order 0 is a(s) itself.
  double lt_deriv(int order, double s) const;
  double lt(double s) const { return lt_deriv(0, s); }

  // P[exactly k exponential phases of rate mu elapse during one service]
  //   = (-mu)^k a^(k)(mu) / k!.
  double phase_count_pmf(double mu, int k) const;

  double sample(SplitMix64& rng) const;

  nlohmann::json to_json() const;
  static ServiceLaw from_json(const nlohmann::json& j);
  std::string describe() const;

 private:
  explicit ServiceLaw(Variant v) : law_(std::move(v)) {}
  Variant law_;
};

// Preparation-time distribution: a finite mixture of Erlangs with a common
// rate. kappa[j] is the weight of Erlang(j+1, mu); weights sum to one.
class PrepLaw {
 public:
  // Defaults to Exp(1) so the type is usable in aggregates.
  PrepLaw() : mu_(1.0), kappa_{1.0} {}
  PrepLaw(double mu, std::vector<double> kappa);

  static PrepLaw erlang(int phases, double mu);
  // Two-moment fit (scv must lie in (0, 1]); thin wrapper over
  // fit_mixed_erlang with the result translated to mixture weights.
  static PrepLaw from_moments(const Moments& m);

  double mu() const { return mu_; }
  const std::vector<double>& kappa() const { return kappa_; }
  int max_phases() const { return static_cast<int>(kappa_.size()); }

  // The phase count when the law is a pure Erlang (a unit weight vector),
  // std::nullopt otherwise.
  std::optional<int> erlang_phases() const;

  double mean() const;
  double variance() const;
  double scv() const;
  double cdf(double x) const;
  double sample(SplitMix64& rng) const;

  nlohmann::json to_json() const;
  static PrepLaw from_json(const nlohmann::json& j);
  std::string describe() const;

 private:
  double mu_;
  std::vector<double> kappa_;
};

// Two-moment fits. fit_mixed_erlang requires 0 < scv <= 1, fit_hyper
// requires scv > 1; fit_service dispatches on scv. All reproduce the given
// moments exactly (up to roundoff).
ServiceLaw fit_mixed_erlang(const Moments& m);
ServiceLaw fit_hyper_exponential(const Moments& m);
ServiceLaw fit_service(const Moments& m);

namespace detail {

// q[k] = P[exactly k rate-mu phases elapse during one service], k <= kmax,
// with the running partial sums cum[k] = q[0] + ... + q[k-1]. tail(k) is
// computed as the exact complement 1 - cum[k] so that splitting a row of
// probabilities into "pmf values + tail" always sums to one.
struct PhaseTable {
  std::vector<double> q;
  std::vector<double> cum;  // cum[k] = sum_{j<k} q[j]; size q.size()+1

  double tail(int k) const {
    double t = 1.0 - cum[static_cast<std::size_t>(k)];
    return t > 0.0 ? t : 0.0;
  }
};

PhaseTable phase_table(const ServiceLaw& law, double mu, int kmax);

}  // namespace detail

}  // namespace altserve
