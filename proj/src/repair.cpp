#include "altserve/repair.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "altserve/detail/math.hpp"
#include "altserve/errors.hpp"
#include "altserve/linalg.hpp"

namespace altserve {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kEquilibriumTol = 1e-10;
constexpr double kClampTol = 1e-12;

void check_args(int n, double mu) {
  if (n < 1 || n > 170) {
    throw std::invalid_argument("preparation phase count must lie in [1, 170]");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("preparation rate mu must be > 0");
  }
}

// Probability that, racing a fresh n-phase preparation against a resumed
// i-phase one (all phases Exp(mu)), the first to finish leaves the loser
// with exactly k phases outstanding. Each elementary step is a fair coin:
// whichever side wins it burns one phase.
double race_weight(int n, int i, int k) {
  const int m = n + i - k;
  return detail::binom_half_power(m, n - 1) + detail::binom_half_power(m, n - k);
}

}  // namespace

double ResidualLaw::cdf(double x) const {
  if (x < 0.0) throw std::domain_error("ResidualLaw::cdf requires x >= 0");
  const int n = static_cast<int>(pi.size()) - 1;
  if (x == 0.0 || n == 0) return atom();
  // pi0 + sum_i pi_i ErlangCdf(i) via suffix sums of the weights.
  std::vector<double> suffix(pi.size() + 1, 0.0);
  for (int j = n; j >= 1; --j) {
    suffix[static_cast<std::size_t>(j)] =
        suffix[static_cast<std::size_t>(j + 1)] + pi[static_cast<std::size_t>(j)];
  }
  const std::vector<double> t = detail::poisson_prefix(mu * x, n);
  double f = 1.0;
  for (int j = 0; j < n; ++j) {
    f -= t[static_cast<std::size_t>(j)] * suffix[static_cast<std::size_t>(j + 1)];
  }
  return std::clamp(f, 0.0, 1.0);
}

nlohmann::json ResidualLaw::to_json() const {
  return {{"mu", mu}, {"pi", pi}};
}

ResidualLaw ResidualLaw::from_json(const nlohmann::json& j) {
  return ResidualLaw{j.at("mu").get<double>(),
                     j.at("pi").get<std::vector<double>>()};
}

nlohmann::json PhaseChain::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i <= phases; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j <= phases; ++j) row.push_back(transition(i, j));
    rows.push_back(std::move(row));
  }
  return {{"P", std::move(rows)}};
}

double transition_prob(int from_state, int to_state, int n, double mu,
                       const ServiceLaw& service) {
  check_args(n, mu);
  if (from_state < 0 || from_state > n || to_state < 0 || to_state > n) {
    throw std::invalid_argument("chain states must lie in [0, n]");
  }
  const detail::PhaseTable q = detail::phase_table(service, mu, n);

  if (from_state == 0) {
    // The other customer was already waiting; a fresh n-phase preparation
    // runs during the whole service.
    if (to_state == 0) return q.tail(n);
    return q.q[static_cast<std::size_t>(n - to_state)];
  }

  double acc = 0.0;
  if (to_state == 0) {
    for (int k = 1; k <= n; ++k) {
      acc += race_weight(n, from_state, k) * q.tail(k);
    }
    return acc;
  }
  for (int k = to_state; k <= n; ++k) {
    acc += race_weight(n, from_state, k) *
           q.q[static_cast<std::size_t>(k - to_state)];
  }
  return acc;
}

PhaseChain build_chain(int n, double mu, const ServiceLaw& service) {
  check_args(n, mu);
  const detail::PhaseTable q = detail::phase_table(service, mu, n);

  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n + 1, n + 1);
  p(0, 0) = q.tail(n);
  for (int j = 1; j <= n; ++j) p(0, j) = q.q[static_cast<std::size_t>(n - j)];

  std::vector<double> rho(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= n; ++k) rho[static_cast<std::size_t>(k)] = race_weight(n, i, k);
    double to_zero = 0.0;
    for (int k = 1; k <= n; ++k) to_zero += rho[static_cast<std::size_t>(k)] * q.tail(k);
    p(i, 0) = to_zero;
    for (int j = 1; j <= n; ++j) {
      double acc = 0.0;
      for (int k = j; k <= n; ++k) {
        acc += rho[static_cast<std::size_t>(k)] * q.q[static_cast<std::size_t>(k - j)];
      }
      p(i, j) = acc;
    }
  }

  for (int i = 0; i <= n; ++i) {
    const double row = p.row(i).sum();
    if (std::abs(row - 1.0) > kRowSumTol) {
      std::ostringstream os;
      os << "build_chain: row " << i << " sums to " << row
         << ", expected 1 within " << kRowSumTol;
      throw numeric_error(os.str());
    }
  }

  // pi P = pi, sum pi = 1: transpose-minus-identity with the last row
  // replaced by the normalizing equation.
  Eigen::MatrixXd a = p.transpose() - Eigen::MatrixXd::Identity(n + 1, n + 1);
  a.row(n).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  const LinearSolution sol = solve_dense(a, rhs);

  std::vector<double> pi(static_cast<std::size_t>(n) + 1, 0.0);
  double total = 0.0;
  for (int i = 0; i <= n; ++i) {
    double v = sol.x(i);
    if (v < -kClampTol) {
      std::ostringstream os;
      os << "build_chain: equilibrium weight " << v << " at state " << i;
      throw numeric_error(os.str());
    }
    if (v < 0.0) v = 0.0;
    pi[static_cast<std::size_t>(i)] = v;
    total += v;
  }
  for (double& v : pi) v /= total;

  Eigen::Map<const Eigen::VectorXd> piv(pi.data(), n + 1);
  const double residual = (p.transpose() * piv - piv).cwiseAbs().maxCoeff();
  if (residual > kEquilibriumTol) {
    std::ostringstream os;
    os << "build_chain: equilibrium residual " << residual << " exceeds "
       << kEquilibriumTol;
    throw numeric_error(os.str());
  }

  return PhaseChain{n, mu, std::move(p), std::move(pi)};
}

ResidualLaw residual_law(const PhaseChain& chain) {
  return ResidualLaw{chain.mu, chain.equilibrium};
}

double na_wait_cdf(const ResidualLaw& residual, int n, double x) {
  if (x < 0.0) throw std::domain_error("na_wait_cdf requires x >= 0");
  check_args(n, residual.mu);
  const double fr = residual.cdf(x);
  const double fb = x == 0.0 ? 0.0 : detail::erlang_cdf(n, residual.mu, x);
  return fr + fb - fr * fb;
}

double na_wait_mean(const ResidualLaw& residual, int n) {
  check_args(n, residual.mu);
  if (static_cast<int>(residual.pi.size()) != n + 1) {
    throw std::invalid_argument("residual law size does not match n");
  }
  // E[min(B, R)] = integral of S_B(x) S_R(x); both survivals are
  // exp(-mu x) polynomials, so each cross term integrates to a scaled
  // binomial probability: int x^(j+l) e^(-2 mu x) = (j+l)!/(2 mu)^(j+l+1).
  const std::vector<double> table = detail::pascal_half_table(n, n);
  std::vector<double> g(static_cast<std::size_t>(n), 0.0);  // g[l] = P[R phases > l]
  for (int l = 0; l < n; ++l) {
    double acc = 0.0;
    for (int i = l + 1; i <= n; ++i) acc += residual.pi[static_cast<std::size_t>(i)];
    g[static_cast<std::size_t>(l)] = acc;
  }
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      sum += g[static_cast<std::size_t>(l)] *
             table[static_cast<std::size_t>(j) * n + l];
    }
  }
  return sum / (2.0 * residual.mu);
}

double na_zero_wait_prob(const ResidualLaw& residual) { return residual.atom(); }

}  // namespace altserve
