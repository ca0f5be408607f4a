#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "altserve/detail/math.hpp"
#include "altserve/errors.hpp"
#include "altserve/laws.hpp"
#include "altserve/repair.hpp"
#include "altserve/rng.hpp"
#include "support/oracles.hpp"

using namespace altserve;

namespace {

const ServiceLaw kInstant = ServiceLaw::deterministic(0.0);

// Brute-force transition row by simulating the actual race: sequential
// Exp(mu) phase completions on both sides, then the loser keeps preparing
// through the winner's service. Shares no formulas with transition_prob.
std::vector<double> empirical_row(int from_state, int n, double mu,
                                  const ServiceLaw& service, int trials,
                                  SplitMix64& rng) {
  std::vector<double> counts(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> done;  // phase completion times of the running prep
  for (int t = 0; t < trials; ++t) {
    double horizon = 0.0;  // time from departure to the end of next service
    int running = 0;       // phases of the prep still running at next service
    if (from_state == 0) {
      horizon = service.sample(rng);
      running = n;
      done.assign(static_cast<std::size_t>(n), 0.0);
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        acc += rng.exponential(mu);
        done[static_cast<std::size_t>(j)] = acc;
      }
    } else {
      double other_total = 0.0;
      std::vector<double> other(static_cast<std::size_t>(from_state), 0.0);
      for (int j = 0; j < from_state; ++j) {
        other_total += rng.exponential(mu);
        other[static_cast<std::size_t>(j)] = other_total;
      }
      double fresh_total = 0.0;
      std::vector<double> fresh(static_cast<std::size_t>(n), 0.0);
      for (int j = 0; j < n; ++j) {
        fresh_total += rng.exponential(mu);
        fresh[static_cast<std::size_t>(j)] = fresh_total;
      }
      const double wait = std::min(other_total, fresh_total);
      done = other_total <= fresh_total ? fresh : other;
      running = static_cast<int>(done.size());
      horizon = wait + service.sample(rng);
    }
    int remaining = 0;
    for (int j = 0; j < running; ++j) {
      remaining += done[static_cast<std::size_t>(j)] > horizon;
    }
    counts[static_cast<std::size_t>(remaining)] += 1.0;
  }
  for (double& c : counts) c /= trials;
  return counts;
}

}  // namespace

TEST_CASE("one-phase chain closed forms") {
  // Exponential service at rate 1 against rate-1 phases: every entry 1/2.
  const auto exp1 = ServiceLaw::exponential(1.0);
  for (int i : {0, 1}) {
    for (int j : {0, 1}) {
      CHECK(transition_prob(i, j, 1, 1.0, exp1) ==
            doctest::Approx(0.5).epsilon(1e-14));
    }
  }
  // Instant service: the fresh preparation always survives untouched.
  CHECK(transition_prob(0, 1, 1, 1.0, kInstant) == doctest::Approx(1.0));
  CHECK(transition_prob(1, 1, 1, 1.0, kInstant) == doctest::Approx(1.0));
  CHECK(transition_prob(0, 0, 1, 1.0, kInstant) == doctest::Approx(0.0));
}

TEST_CASE("instant service exposes the race weights") {
  // With A = 0 the transition row from i >= 1 is exactly the distribution
  // of phases the loser holds when the race ends.
  CHECK(transition_prob(1, 1, 2, 1.0, kInstant) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(transition_prob(1, 2, 2, 1.0, kInstant) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(transition_prob(1, 0, 2, 1.0, kInstant) == doctest::Approx(0.0));
  CHECK(transition_prob(2, 1, 2, 1.0, kInstant) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(transition_prob(2, 2, 2, 1.0, kInstant) == doctest::Approx(0.5).epsilon(1e-14));

  // The race-end distribution sums to one for every start state.
  for (int n : {1, 2, 3, 7, 15, 40}) {
    for (int i = 1; i <= n; ++i) {
      double sum = 0.0;
      for (int k = 1; k <= n; ++k) sum += transition_prob(i, k, n, 2.0, kInstant);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("transition rows match a brute-force race simulation") {
  const int trials = 200000;
  SplitMix64 rng(90210);
  const std::vector<ServiceLaw> services = {
      ServiceLaw::mixed_erlang(0.4, 2, 1.7),
      ServiceLaw::hyper_exponential(0.6, 0.4, 2.0, 0.8)};
  const int n = 3;
  const double mu = 1.3;
  for (const auto& service : services) {
    for (int i = 0; i <= n; ++i) {
      const auto emp = empirical_row(i, n, mu, service, trials, rng);
      for (int j = 0; j <= n; ++j) {
        const double want = transition_prob(i, j, n, mu, service);
        CHECK(std::abs(emp[static_cast<std::size_t>(j)] - want) < 0.006);
      }
    }
  }
}

TEST_CASE("argument validation") {
  const auto exp1 = ServiceLaw::exponential(1.0);
  CHECK_THROWS_AS(transition_prob(-1, 0, 2, 1.0, exp1), std::invalid_argument);
  CHECK_THROWS_AS(transition_prob(0, 3, 2, 1.0, exp1), std::invalid_argument);
  CHECK_THROWS_AS(transition_prob(0, 0, 0, 1.0, exp1), std::invalid_argument);
  CHECK_THROWS_AS(transition_prob(0, 0, 2, 0.0, exp1), std::invalid_argument);
  CHECK_THROWS_AS(build_chain(171, 1.0, exp1), std::invalid_argument);
}

TEST_CASE("chain rows are stochastic and the equilibrium balances") {
  struct Case {
    int n;
    double mu;
    ServiceLaw a;
  };
  const std::vector<Case> cases = {{1, 1.0, ServiceLaw::exponential(1.0)},
                                   {5, 5.0, fit_service({1.0, 0.8})},
                                   {10, 2.0, fit_service({1.0, 3.0})},
                                   {40, 11.0, ServiceLaw::deterministic(0.4)}};
  for (const auto& c : cases) {
    const auto chain = build_chain(c.n, c.mu, c.a);
    REQUIRE(chain.transition.rows() == c.n + 1);
    for (int i = 0; i <= c.n; ++i) {
      CHECK(std::abs(chain.transition.row(i).sum() - 1.0) <= 1e-12);
      for (int j = 0; j <= c.n; ++j) CHECK(chain.transition(i, j) >= 0.0);
    }
    double total = 0.0;
    Eigen::VectorXd pi(c.n + 1);
    for (int i = 0; i <= c.n; ++i) {
      CHECK(chain.equilibrium[static_cast<std::size_t>(i)] >= 0.0);
      total += chain.equilibrium[static_cast<std::size_t>(i)];
      pi(i) = chain.equilibrium[static_cast<std::size_t>(i)];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    const double residual =
        (chain.transition.transpose() * pi - pi).cwiseAbs().maxCoeff();
    CHECK(residual <= 1e-10);
  }
}

TEST_CASE("equilibrium closed forms") {
  const auto balanced = build_chain(1, 1.0, ServiceLaw::exponential(1.0));
  CHECK(balanced.equilibrium.at(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(balanced.equilibrium.at(1) == doctest::Approx(0.5).epsilon(1e-12));

  // Instant service never leaves a finished preparation waiting.
  const auto instant = build_chain(1, 2.0, kInstant);
  CHECK(instant.equilibrium.at(0) <= 1e-12);
  CHECK(instant.equilibrium.at(1) == doctest::Approx(1.0).epsilon(1e-12));

  const auto instant5 = build_chain(5, 5.0, kInstant);
  CHECK(instant5.equilibrium.at(0) <= 1e-12);
}

TEST_CASE("residual law evaluation") {
  const ResidualLaw pure{1.3, {0.0, 1.0}};
  for (double x : {0.2, 1.0, 3.4}) {
    CHECK(pure.cdf(x) == doctest::Approx(1.0 - std::exp(-1.3 * x)).epsilon(1e-13));
  }
  CHECK(pure.cdf(0.0) == 0.0);
  CHECK(pure.atom() == 0.0);

  const ResidualLaw half{1.0, {0.5, 0.5}};
  CHECK(half.cdf(0.0) == 0.5);
  for (double x : {0.3, 1.7}) {
    CHECK(half.cdf(x) ==
          doctest::Approx(0.5 + 0.5 * (1.0 - std::exp(-x))).epsilon(1e-13));
  }
  double prev = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double f = half.cdf(0.02 * i);
    CHECK(f >= prev);
    prev = f;
  }
  CHECK_THROWS_AS(half.cdf(-1.0), std::domain_error);
}

TEST_CASE("residual_law copies the chain equilibrium") {
  const auto chain = build_chain(3, 2.0, ServiceLaw::exponential(1.0));
  const auto res = residual_law(chain);
  CHECK(res.mu == chain.mu);
  CHECK(res.pi == chain.equilibrium);
}

TEST_CASE("non-alternating wait closed forms") {
  // Residual Exp(mu) against fresh Exp(mu): the minimum is Exp(2 mu).
  const ResidualLaw pure{1.3, {0.0, 1.0}};
  for (double x : {0.0, 0.4, 2.0}) {
    const double want = x == 0.0 ? 0.0 : 1.0 - std::exp(-2.0 * 1.3 * x);
    CHECK(na_wait_cdf(pure, 1, x) == doctest::Approx(want).epsilon(1e-13));
  }
  CHECK(na_wait_mean(pure, 1) == doctest::Approx(0.5 / 1.3).epsilon(1e-13));

  const ResidualLaw half{1.0, {0.5, 0.5}};
  CHECK(na_wait_cdf(half, 1, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(na_wait_mean(half, 1) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(na_zero_wait_prob(half) == 0.5);

  CHECK_THROWS_AS(na_wait_mean(half, 3), std::invalid_argument);
  CHECK_THROWS_AS(na_wait_cdf(half, 1, -0.2), std::domain_error);
}

TEST_CASE("non-alternating wait mean matches survival quadrature") {
  struct Case {
    int n;
    double mu;
    ServiceLaw a;
  };
  const std::vector<Case> cases = {{5, 5.0, fit_service({1.0, 0.8})},
                                   {2, 0.8, fit_service({1.0, 3.0})},
                                   {1, 1.0, ServiceLaw::exponential(1.0)}};
  for (const auto& c : cases) {
    const auto res = residual_law(build_chain(c.n, c.mu, c.a));
    const double direct = na_wait_mean(res, c.n);
    const double upper = 300.0 / c.mu;
    const double integral = oracles::integrate(
        [&](double x) {
          return (1.0 - res.cdf(x)) * (1.0 - detail::erlang_cdf(c.n, c.mu, x));
        },
        0.0, upper, 1e-11);
    CHECK(direct == doctest::Approx(integral).epsilon(1e-8));

    // The cdf route has to agree with the survival product as well.
    for (double x : {0.1, 0.7, 2.3}) {
      const double via_cdf = na_wait_cdf(res, c.n, x);
      const double product = (1.0 - res.cdf(x)) *
                             (1.0 - detail::erlang_cdf(c.n, c.mu, x));
      CHECK(via_cdf == doctest::Approx(1.0 - product).epsilon(1e-12));
    }
  }
}

TEST_CASE("chain json shape") {
  const auto chain = build_chain(2, 1.0, ServiceLaw::exponential(1.0));
  const auto j = chain.to_json();
  REQUIRE(j.contains("P"));
  CHECK(j["P"].size() == 3);
  CHECK(j["P"][0].size() == 3);

  const auto res = residual_law(chain);
  const auto back = ResidualLaw::from_json(res.to_json());
  CHECK(back.mu == res.mu);
  CHECK(back.pi == res.pi);
}
