#include "altserve/alternating.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "altserve/detail/math.hpp"
#include "altserve/errors.hpp"
#include "altserve/linalg.hpp"

namespace altserve {

namespace {

// Weights below this in magnitude may be clamped to zero; anything more
// negative is treated as a solver inconsistency rather than roundoff.
constexpr double kClampTol = 1e-12;
constexpr double kWeightCeiling = 1.0 + 1e-9;
constexpr double kRouteTol = 1e-10;

void check_prep_args(int n, double mu) {
  if (n < 1 || n > 170) {
    throw std::invalid_argument("preparation phase count must lie in [1, 170]");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("preparation rate mu must be > 0");
  }
}

// Assembles the system in probability scale. Unknowns are
// y_k = (-mu)^k w^(k)(mu) / k!, i.e. the chance that exactly k preparation
// phases elapse during one wait. Row 0 comes from the balance equation,
// row l from the l-th transform derivative; every coefficient is a
// (negative-)binomial probability, which keeps the matrix well conditioned
// at any phase count.
struct ScaledSystem {
  Eigen::MatrixXd s;
  Eigen::VectorXd rhs;
};

ScaledSystem build_scaled(const std::vector<double>& kappa,
                          const detail::PhaseTable& table) {
  const int n = static_cast<int>(kappa.size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(0) = 1.0;

  // w[l][i]: weight multiplying the i-th phase-count of W+A in row l.
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int m = i + 1; m <= n; ++m) {
        const double km = kappa[static_cast<std::size_t>(m - 1)];
        if (km == 0.0) continue;
        if (l == 0) {
          acc += km * (1.0 - std::exp2(-(m - i)));
        } else {
          acc += km * detail::neg_binom_half(m - i, l);
        }
      }
      w[static_cast<std::size_t>(i)] = acc;
    }
    const double sign = l == 0 ? 1.0 : -1.0;
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = k; i < n; ++i) {
        acc += w[static_cast<std::size_t>(i)] *
               table.q[static_cast<std::size_t>(i - k)];
      }
      s(l, k) = (l == k ? 1.0 : 0.0) + sign * acc;
    }
  }
  return {std::move(s), std::move(rhs)};
}

AlternatingSolution solve_mixture(const std::vector<double>& kappa, double mu,
                                  const ServiceLaw& a) {
  const int n = static_cast<int>(kappa.size());
  const detail::PhaseTable table = detail::phase_table(a, mu, n - 1);
  const ScaledSystem sys = build_scaled(kappa, table);
  const LinearSolution sol = solve_dense(sys.s, sys.rhs);

  // c_i = P[exactly i phases elapse during W + A] = (y * q)_i.
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = 0; k <= i; ++k) {
      acc += sol.x(k) * table.q[static_cast<std::size_t>(i - k)];
    }
    c[static_cast<std::size_t>(i)] = acc;
  }

  // Mixture weights: Erlang-j receives kappa_m c_{m-j} for every m >= j.
  std::vector<double> weights(static_cast<std::size_t>(n), 0.0);
  for (int j = 1; j <= n; ++j) {
    double acc = 0.0;
    for (int m = j; m <= n; ++m) {
      acc += kappa[static_cast<std::size_t>(m - 1)] *
             c[static_cast<std::size_t>(m - j)];
    }
    weights[static_cast<std::size_t>(j - 1)] = acc;
  }

  // Two independent routes to the atom at zero.
  double weight_sum = 0.0;
  for (double v : weights) weight_sum += v;
  const double p0_from_weights = 1.0 - weight_sum;
  double p0_direct = 1.0;
  for (int m = 1; m <= n; ++m) {
    const double km = kappa[static_cast<std::size_t>(m - 1)];
    if (km == 0.0) continue;
    for (int i = 0; i < m; ++i) p0_direct -= km * c[static_cast<std::size_t>(i)];
  }
  if (std::abs(p0_from_weights - p0_direct) > kRouteTol) {
    std::ostringstream os;
    os << "alternating solve: the two routes to P[W=0] disagree ("
       << p0_from_weights << " vs " << p0_direct << ")";
    throw numeric_error(os.str());
  }

  // Clamp roundoff-level negatives; anything larger is an inconsistency.
  double p0 = p0_from_weights;
  double total = 0.0;
  auto clamp_weight = [](double& v, const char* what) {
    if (v < -kClampTol || v > kWeightCeiling) {
      std::ostringstream os;
      os << "alternating solve: " << what << " = " << v
         << " outside tolerated range";
      throw numeric_error(os.str());
    }
    if (v < 0.0) v = 0.0;
  };
  clamp_weight(p0, "P[W=0]");
  for (double& v : weights) clamp_weight(v, "mixture weight");
  total = p0;
  for (double v : weights) total += v;
  if (std::abs(total - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "alternating solve: mixture mass " << total << " differs from 1";
    throw numeric_error(os.str());
  }
  p0 /= total;
  for (double& v : weights) v /= total;

  // Back to raw transform values: w^(k)(mu) = y_k k! / (-mu)^k and
  // f^(i)(mu) = c_i i! / (-mu)^i, via a running ratio factor.
  TransformSolution t;
  t.mu = mu;
  t.omega.resize(static_cast<std::size_t>(n));
  t.phi.resize(static_cast<std::size_t>(n));
  t.phase_weights.assign(c.begin(), c.end());
  double factor = 1.0;  // k! / (-mu)^k
  for (int k = 0; k < n; ++k) {
    if (k > 0) factor *= k / -mu;
    t.omega[static_cast<std::size_t>(k)] = sol.x(k) * factor;
    t.phi[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] * factor;
  }

  AlternatingSolution out;
  out.law = WaitLaw{mu, p0, std::move(weights)};
  out.transforms = std::move(t);
  out.condition = sol.condition;
  return out;
}

}  // namespace

double WaitLaw::mean() const {
  double acc = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    acc += weights[j] * (static_cast<double>(j) + 1.0);
  }
  return acc / mu;
}

double WaitLaw::cdf(double x) const {
  if (x < 0.0) throw std::domain_error("WaitLaw::cdf requires x >= 0");
  const int n = static_cast<int>(weights.size());
  if (x == 0.0 || n == 0) return p0;
  std::vector<double> suffix(weights.size() + 1, 0.0);
  for (int j = n - 1; j >= 0; --j) {
    suffix[static_cast<std::size_t>(j)] =
        suffix[static_cast<std::size_t>(j + 1)] +
        weights[static_cast<std::size_t>(j)];
  }
  const std::vector<double> t = detail::poisson_prefix(mu * x, n);
  double f = p0 + suffix[0];
  for (int j = 0; j < n; ++j) {
    f -= t[static_cast<std::size_t>(j)] * suffix[static_cast<std::size_t>(j)];
  }
  return std::clamp(f, 0.0, 1.0);
}

double WaitLaw::pdf(double x) const {
  if (x < 0.0) throw std::domain_error("WaitLaw::pdf requires x >= 0");
  const int n = static_cast<int>(weights.size());
  if (n == 0) return 0.0;
  const std::vector<double> t = detail::poisson_prefix(mu * x, n);
  double f = 0.0;
  for (int j = 1; j <= n; ++j) {
    f += weights[static_cast<std::size_t>(j - 1)] *
         t[static_cast<std::size_t>(j - 1)];
  }
  return mu * f;
}

nlohmann::json WaitLaw::to_json() const {
  return {{"mu", mu}, {"p0", p0}, {"p", weights}};
}

WaitLaw WaitLaw::from_json(const nlohmann::json& j) {
  return WaitLaw{j.at("mu").get<double>(), j.at("p0").get<double>(),
                 j.at("p").get<std::vector<double>>()};
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> build_system(int n, double mu,
                                                         const ServiceLaw& a) {
  check_prep_args(n, mu);
  std::vector<double> kappa(static_cast<std::size_t>(n), 0.0);
  kappa.back() = 1.0;
  const detail::PhaseTable table = detail::phase_table(a, mu, n - 1);
  ScaledSystem sys = build_scaled(kappa, table);
  // Undo the probability rescaling: raw(l,k) = s(l,k) (l!/k!) (-mu)^(k-l).
  Eigen::MatrixXd raw(n, n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      raw(l, k) = sys.s(l, k) * detail::signed_factorial_ratio(l, k, mu);
    }
  }
  return {std::move(raw), std::move(sys.rhs)};
}

AlternatingSolution solve_erlang(int n, double mu, const ServiceLaw& a) {
  check_prep_args(n, mu);
  std::vector<double> kappa(static_cast<std::size_t>(n), 0.0);
  kappa.back() = 1.0;
  return solve_mixture(kappa, mu, a);
}

AlternatingSolution solve_phase_type(const PrepLaw& b, const ServiceLaw& a) {
  return solve_mixture(b.kappa(), b.mu(), a);
}

double wait_mean(const WaitLaw& w) { return w.mean(); }
double wait_cdf(const WaitLaw& w, double x) { return w.cdf(x); }
double wait_pdf(const WaitLaw& w, double x) { return w.pdf(x); }

double verify_rewritten_system(const WaitLaw& w, const TransformSolution& t) {
  const int n = static_cast<int>(w.weights.size());
  double worst = 0.0;

  double at_mu = w.p0;
  for (int i = 1; i <= n; ++i) {
    at_mu += w.weights[static_cast<std::size_t>(i - 1)] * std::exp2(-i);
  }
  worst = std::abs(t.omega[0] - at_mu);

  for (int l = 1; l < static_cast<int>(t.omega.size()); ++l) {
    double acc = 0.0;
    for (int i = 1; i <= n; ++i) {
      acc += w.weights[static_cast<std::size_t>(i - 1)] *
             detail::neg_binom_half(i, l);
    }
    const double sign = l % 2 == 0 ? 1.0 : -1.0;
    const double rhs = sign * detail::factorial_over_power(l, w.mu) * acc;
    worst = std::max(worst, std::abs(t.omega[static_cast<std::size_t>(l)] - rhs));
  }
  return worst;
}

double throughput_from_transforms(int n, const TransformSolution& t,
                                  const ServiceLaw& a) {
  if (n != static_cast<int>(t.phase_weights.size())) {
    throw std::invalid_argument(
        "throughput_from_transforms requires pure Erlang preparation with "
        "matching phase count");
  }
  double ew = 0.0;
  for (int i = 0; i < n; ++i) {
    ew += t.phase_weights[static_cast<std::size_t>(i)] * (n - i) / t.mu;
  }
  return 1.0 / (ew + a.mean());
}

double throughput_from_law(const WaitLaw& w, const ServiceLaw& a) {
  return 1.0 / (w.mean() + a.mean());
}

}  // namespace altserve
