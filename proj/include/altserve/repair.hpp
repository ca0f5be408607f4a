#pragma once

#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "altserve/laws.hpp"

namespace altserve {

// Embedded Markov chain of the non-alternating policy, observed just after
// each service completion. The state is the number of preparation phases
// the other customer still needs: 0 (already waiting) through n.
struct PhaseChain {
  int phases = 0;  // n; states run 0..n
  double mu = 0.0;
  Eigen::MatrixXd transition;       // (n+1) x (n+1), row-stochastic
  std::vector<double> equilibrium;  // pi, pi P = pi, sums to 1

  nlohmann::json to_json() const;  // {"P": [[...]]}
};

// Stationary law of the preparation time remaining at the service point the
// server turns to: an atom pi[0] at zero plus Erlang(i, mu) with weight
// pi[i].
struct ResidualLaw {
  double mu = 0.0;
  std::vector<double> pi;  // size n+1; pi[0] is the atom at zero

  double atom() const { return pi.empty() ? 0.0 : pi.front(); }
  double cdf(double x) const;
  nlohmann::json to_json() const;
  static ResidualLaw from_json(const nlohmann::json& j);
};

// One-step transition probability of the embedded chain for Erlang(n, mu)
// preparation and the given service law. States 0..n.
double transition_prob(int from_state, int to_state, int n, double mu,
                       const ServiceLaw& service);

// Full chain: transition matrix plus equilibrium distribution (direct dense
// solve of pi P = pi with the normalizing equation replacing one row).
PhaseChain build_chain(int n, double mu, const ServiceLaw& service);

ResidualLaw residual_law(const PhaseChain& chain);

// Waiting time of the non-alternating server is W = min(B, R) with B the
// fresh Erlang(n, mu) preparation at the just-vacated point and R the
// residual law, independent: F_W = F_R + F_B - F_R F_B.
double na_wait_cdf(const ResidualLaw& residual, int n, double x);

// E[min(B, R)] in closed form: the survival product is a polynomial times
// exp(-2 mu x), integrated term by term.
double na_wait_mean(const ResidualLaw& residual, int n);

// P[W = 0] under the non-alternating policy.
double na_zero_wait_prob(const ResidualLaw& residual);

}  // namespace altserve
