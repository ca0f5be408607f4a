#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "altserve/laws.hpp"

namespace altserve {

// Stationary law of the server's waiting time under the alternating policy:
// an atom p0 at zero plus a mixture of Erlang(i, mu) densities. weights[i-1]
// is the probability attached to the Erlang-i component, so
// p0 + sum(weights) = 1.
struct WaitLaw {
  double mu = 0.0;
  double p0 = 0.0;
  std::vector<double> weights;

  double mean() const;
  double cdf(double x) const;   // cdf(0) returns the atom p0
  double pdf(double x) const;   // density of the continuous part
  nlohmann::json to_json() const;
  static WaitLaw from_json(const nlohmann::json& j);
};

// Values of the waiting-time transform w(s) = E[exp(-s W)] and of
// f(s) = w(s) a(s) at the preparation rate: omega[k] = w^(k)(mu),
// phi[i] = f^(i)(mu). phase_weights[i] = (-mu)^i phi[i] / i! is the same
// information in probability scale (the chance that exactly i preparation
// phases elapse during one wait-plus-service).
struct TransformSolution {
  double mu = 0.0;
  std::vector<double> omega;
  std::vector<double> phi;
  std::vector<double> phase_weights;
};

struct AlternatingSolution {
  WaitLaw law;
  TransformSolution transforms;
  double condition = 0.0;  // condition estimate of the solved system
};

// Linear system satisfied by (w(mu), w'(mu), ..., w^(n-1)(mu)) when the
// preparation time is Erlang(n, mu): row 0 is the balance equation for
// w(mu), row l the expression for the l-th derivative. Returned in the raw
// (unscaled) variables; solve_erlang works on a rescaled but equivalent
// form, so this is mainly a diagnostic / verification surface.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> build_system(int n, double mu,
                                                         const ServiceLaw& a);

// Waiting-time law for Erlang(n, mu) preparation and service law a.
AlternatingSolution solve_erlang(int n, double mu, const ServiceLaw& a);

// Waiting-time law for a mixture-of-Erlangs preparation law. With a unit
// weight vector this reduces exactly to solve_erlang.
AlternatingSolution solve_phase_type(const PrepLaw& b, const ServiceLaw& a);

double wait_mean(const WaitLaw& w);
double wait_cdf(const WaitLaw& w, double x);
double wait_pdf(const WaitLaw& w, double x);

// Largest absolute residual of the transform identities
//   w(mu)    = p0 + sum_i p_i / 2^i
//   w^(l)(mu) = sum_i p_i (-mu)^-l 2^-(i+l) (i+l-1)!/(i-1)!,  l >= 1,
// which tie the solved transform values to the mixture weights.
double verify_rewritten_system(const WaitLaw& w, const TransformSolution& t);

// Throughput 1 / (E[W] + E[A]) by two routes. The transform route uses the
// phi derivatives directly and is defined for pure Erlang preparation only;
// the law route sums the mixture weights.
double throughput_from_transforms(int n, const TransformSolution& t,
                                  const ServiceLaw& a);
double throughput_from_law(const WaitLaw& w, const ServiceLaw& a);

}  // namespace altserve
