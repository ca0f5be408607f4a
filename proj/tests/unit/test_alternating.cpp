#include <doctest.h>

#include <cmath>
#include <vector>

#include "altserve/alternating.hpp"
#include "altserve/laws.hpp"
#include "altserve/linalg.hpp"
#include "support/oracles.hpp"

using namespace altserve;

namespace {

const ServiceLaw kInstant = ServiceLaw::deterministic(0.0);

}  // namespace

TEST_CASE("raw balance system for one phase") {
  // With instant service the transform balance collapses to 1.5 w = 1.
  auto [a0, b0] = build_system(1, 1.0, kInstant);
  REQUIRE(a0.rows() == 1);
  CHECK(a0(0, 0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(b0(0) == doctest::Approx(1.0).epsilon(1e-15));

  // Exponential service: coefficient 1 + a(mu)/2 with a(mu) = l/(l+mu).
  for (double lambda : {0.5, 1.0, 2.0}) {
    auto [a1, b1] = build_system(1, 1.0, ServiceLaw::exponential(lambda));
    CHECK(a1(0, 0) ==
          doctest::Approx(1.0 + 0.5 * lambda / (lambda + 1.0)).epsilon(1e-14));
    CHECK(b1(0) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("raw and rescaled assemblies agree on the transform values") {
  const std::vector<ServiceLaw> services = {
      kInstant, ServiceLaw::deterministic(0.5), ServiceLaw::exponential(1.3),
      ServiceLaw::mixed_erlang(0.4, 3, 2.0), fit_hyper_exponential({1.0, 3.0})};
  for (int n : {2, 3, 5}) {
    for (double mu : {0.7, 2.0}) {
      for (const auto& a : services) {
        const auto [m, rhs] = build_system(n, mu, a);
        const auto raw = solve_dense(m, rhs);
        const auto scaled = solve_erlang(n, mu, a);
        REQUIRE(scaled.transforms.omega.size() == static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
          CHECK(raw.x(k) ==
                doctest::Approx(scaled.transforms.omega[static_cast<std::size_t>(k)])
                    .epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("one-phase closed forms") {
  for (double mu : {1.0, 0.25, 7.5}) {
    const auto sol = solve_erlang(1, mu, kInstant);
    CHECK(sol.law.p0 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(sol.law.weights.at(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(sol.transforms.omega.at(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(wait_mean(sol.law) == doctest::Approx(2.0 / (3.0 * mu)).epsilon(1e-12));
  }

  const auto sol = solve_erlang(1, 1.0, ServiceLaw::exponential(1.0));
  CHECK(sol.transforms.omega.at(0) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(sol.law.weights.at(0) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(sol.law.p0 == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(wait_mean(sol.law) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("two-phase closed forms with instant service") {
  // Hand-solved: w(mu) = 12/23, -mu w'(mu) = 4/23, so the Erlang weights
  // are (4/23, 12/23) and p0 = 7/23.
  for (double mu : {1.0, 3.7}) {
    const auto sol = solve_erlang(2, mu, kInstant);
    CHECK(sol.law.p0 == doctest::Approx(7.0 / 23.0).epsilon(1e-12));
    CHECK(sol.law.weights.at(0) == doctest::Approx(4.0 / 23.0).epsilon(1e-12));
    CHECK(sol.law.weights.at(1) == doctest::Approx(12.0 / 23.0).epsilon(1e-12));
    CHECK(wait_mean(sol.law) == doctest::Approx(28.0 / (23.0 * mu)).epsilon(1e-12));
  }
}

TEST_CASE("mixture preparation closed forms with instant service") {
  // kappa = (1/2, 1/2): w(mu) = 56/95, weights (36/95, 28/95), p0 = 31/95.
  const double mu = 1.6;
  const auto sol = solve_phase_type(PrepLaw(mu, {0.5, 0.5}), kInstant);
  CHECK(sol.law.p0 == doctest::Approx(31.0 / 95.0).epsilon(1e-12));
  CHECK(sol.law.weights.at(0) == doctest::Approx(36.0 / 95.0).epsilon(1e-12));
  CHECK(sol.law.weights.at(1) == doctest::Approx(28.0 / 95.0).epsilon(1e-12));
  CHECK(wait_mean(sol.law) == doctest::Approx(92.0 / (95.0 * mu)).epsilon(1e-12));
}

TEST_CASE("unit mixture weights reduce to the pure Erlang solver") {
  const auto a = ServiceLaw::exponential(1.1);
  for (int n : {1, 2, 5}) {
    const auto direct = solve_erlang(n, 1.4, a);
    const auto mixed = solve_phase_type(PrepLaw::erlang(n, 1.4), a);
    CHECK(mixed.law.p0 == doctest::Approx(direct.law.p0).epsilon(1e-12));
    REQUIRE(mixed.law.weights.size() == direct.law.weights.size());
    for (std::size_t i = 0; i < direct.law.weights.size(); ++i) {
      CHECK(mixed.law.weights[i] ==
            doctest::Approx(direct.law.weights[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("transform values behave like a completely monotone function") {
  const auto sol = solve_erlang(4, 1.3, fit_hyper_exponential({1.0, 3.0}));
  const auto& t = sol.transforms;
  CHECK(t.omega.at(0) > 0.0);
  CHECK(t.omega.at(0) <= 1.0);
  double sign = 1.0;
  for (std::size_t k = 0; k < t.omega.size(); ++k) {
    CHECK(sign * t.omega[k] > 0.0);  // derivatives alternate in sign
    sign = -sign;
  }
  double mass = 0.0;
  for (double w : t.phase_weights) {
    CHECK(w >= 0.0);
    mass += w;
  }
  CHECK(mass <= 1.0 + 1e-12);
}

TEST_CASE("phi derivatives satisfy the product rule") {
  const auto a = fit_hyper_exponential({1.0, 3.0});
  const double mu = 1.3;
  const auto t = solve_erlang(4, mu, a).transforms;
  // f = w * alpha, so f^(i)(mu) = sum_k C(i,k) w^(k)(mu) alpha^(i-k)(mu).
  for (std::size_t i = 0; i < t.phi.size(); ++i) {
    double acc = 0.0;
    double choose = 1.0;
    for (std::size_t k = 0; k <= i; ++k) {
      if (k > 0) choose *= static_cast<double>(i - k + 1) / static_cast<double>(k);
      acc += choose * t.omega[k] * a.lt_deriv(static_cast<int>(i - k), mu);
    }
    CHECK(t.phi[i] == doctest::Approx(acc).epsilon(1e-10));
  }
}

TEST_CASE("wait law evaluation") {
  const auto sol = solve_erlang(1, 1.0, kInstant);
  CHECK(wait_cdf(sol.law, 0.0) == doctest::Approx(sol.law.p0).epsilon(1e-15));
  // F(ln 2) = 1/3 + 2/3 (1 - 1/2) = 2/3.
  CHECK(wait_cdf(sol.law, std::log(2.0)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const auto big = solve_erlang(5, 5.0, fit_service({1.0, 0.2}));
  double prev = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = 0.002 * i;
    const double f = wait_cdf(big.law, x);
    const double d = wait_pdf(big.law, x);
    CHECK(f >= prev);
    CHECK(d >= 0.0);
    prev = f;
  }
  CHECK(wait_cdf(big.law, 60.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("wait density integrates to the continuous mass") {
  struct Case {
    int n;
    double mu;
    ServiceLaw a;
  };
  const std::vector<Case> cases = {{1, 1.0, kInstant},
                                   {5, 5.0, fit_service({1.0, 0.2})},
                                   {2, 0.8, fit_service({1.0, 3.0})}};
  for (const auto& c : cases) {
    const auto sol = solve_erlang(c.n, c.mu, c.a);
    const double upper = 200.0 / c.mu;
    const double integral = oracles::integrate(
        [&](double x) { return wait_pdf(sol.law, x); }, 0.0, upper, 1e-11);
    CHECK(integral == doctest::Approx(1.0 - sol.law.p0).epsilon(1e-8));
  }
}

TEST_CASE("wait law json round trip") {
  const auto sol = solve_erlang(3, 2.0, ServiceLaw::exponential(0.9));
  const auto j = sol.law.to_json();
  const auto back = WaitLaw::from_json(j);
  CHECK(back.mu == sol.law.mu);
  CHECK(back.p0 == sol.law.p0);
  CHECK(back.weights == sol.law.weights);
}

TEST_CASE("rewritten-system residual is tiny and detects corruption") {
  struct Case {
    int n;
    double mu;
    ServiceLaw a;
  };
  const std::vector<Case> cases = {{1, 1.0, ServiceLaw::exponential(1.0)},
                                   {2, 1.6, fit_service({1.0, 0.2})},
                                   {5, 5.0, fit_service({1.0, 3.0})},
                                   {10, 4.0, ServiceLaw::deterministic(0.7)}};
  for (const auto& c : cases) {
    auto sol = solve_erlang(c.n, c.mu, c.a);
    CHECK(verify_rewritten_system(sol.law, sol.transforms) <= 1e-9);
    sol.law.weights[0] += 1e-3;
    CHECK(verify_rewritten_system(sol.law, sol.transforms) >= 1e-4);
  }
}

TEST_CASE("throughput routes agree") {
  const std::vector<ServiceLaw> services = {
      kInstant, ServiceLaw::exponential(0.9), fit_service({1.0, 0.2}),
      fit_service({1.0, 3.0})};
  for (int n : {1, 2, 5}) {
    for (const auto& a : services) {
      const double mu = 0.8 * n;
      const auto sol = solve_erlang(n, mu, a);
      const double via_law = throughput_from_law(sol.law, a);
      const double via_transforms = throughput_from_transforms(n, sol.transforms, a);
      CHECK(std::abs(via_law - via_transforms) <= 1e-10);
      CHECK(via_law ==
            doctest::Approx(1.0 / (wait_mean(sol.law) + a.mean())).epsilon(1e-12));
    }
  }
}

TEST_CASE("solver reports a usable condition estimate") {
  const auto sol = solve_erlang(5, 5.0, fit_service({1.0, 0.2}));
  CHECK(sol.condition >= 1.0);
  CHECK(sol.condition < kConditionLimit);
}

TEST_CASE("large phase counts stay numerically sound") {
  const auto sol = solve_erlang(100, 80.0, fit_service({1.0, 0.2}));
  double mass = sol.law.p0;
  for (double w : sol.law.weights) {
    CHECK(w >= 0.0);
    mass += w;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(verify_rewritten_system(sol.law, sol.transforms) <= 1e-9);
}

TEST_CASE("long services push the wait atom towards one") {
  const auto sol = solve_erlang(1, 1.0, ServiceLaw::deterministic(50.0));
  CHECK(sol.law.p0 > 0.95);
  CHECK(wait_mean(sol.law) < 0.05);
}
