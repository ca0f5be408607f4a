#include "altserve/detail/math.hpp"

#include <cmath>
#include <stdexcept>

namespace altserve::detail {

double lchoose(int a, int b) {
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

double binom_half_power(int m, int b) {
  if (b < 0 || b > m - 1) return 0.0;
  if (m <= 60) {
    // Interleave binomial ratio terms with halvings; intermediates stay
    // far away from overflow at this size.
    double v = std::exp2(-(m - b));
    for (int j = 1; j <= b; ++j) v *= (m - 1 - b + j) / (2.0 * j);
    return v;
  }
  return std::exp(lchoose(m - 1, b) - m * std::log(2.0));
}

double neg_binom_half(int m, int l) { return binom_half_power(m + l, l); }

double signed_factorial_ratio(int l, int k, double mu) {
  double v = 1.0;
  if (k > l) {
    for (int j = l + 1; j <= k; ++j) v *= -mu / j;
  } else {
    for (int j = k + 1; j <= l; ++j) v *= j / -mu;
  }
  return v;
}

double factorial_over_power(int l, double mu) {
  double v = 1.0;
  for (int j = 1; j <= l; ++j) v *= j / mu;
  return v;
}

std::vector<double> poisson_prefix(double z, int count) {
  if (z < 0.0 || !std::isfinite(z)) {
    throw std::invalid_argument("poisson_prefix: z must be finite and >= 0");
  }
  std::vector<double> t(static_cast<std::size_t>(count), 0.0);
  if (count <= 0) return t;
  if (z == 0.0) {
    t[0] = 1.0;
    return t;
  }
  if (z <= 700.0) {
    t[0] = std::exp(-z);
    for (int j = 1; j < count; ++j) t[j] = t[j - 1] * z / j;
  } else {
    // e^-z underflows; evaluate each term in log space (underflow to zero
    // is then the correct answer for the far tail).
    const double lz = std::log(z);
    for (int j = 0; j < count; ++j) {
      t[j] = std::exp(-z + j * lz - std::lgamma(j + 1.0));
    }
  }
  return t;
}

double erlang_cdf(int k, double mu, double x) {
  if (k < 1) throw std::invalid_argument("erlang_cdf: k must be >= 1");
  if (mu <= 0.0) throw std::invalid_argument("erlang_cdf: mu must be > 0");
  if (x <= 0.0) return 0.0;
  const std::vector<double> t = poisson_prefix(mu * x, k);
  double s = 0.0;
  for (double v : t) s += v;
  if (s > 1.0) s = 1.0;
  return 1.0 - s;
}

std::vector<double> pascal_half_table(int rows, int cols) {
  std::vector<double> t(static_cast<std::size_t>(rows) * cols, 0.0);
  auto at = [&](int j, int l) -> double& {
    return t[static_cast<std::size_t>(j) * cols + l];
  };
  at(0, 0) = 1.0;
  for (int l = 1; l < cols; ++l) at(0, l) = at(0, l - 1) / 2.0;
  for (int j = 1; j < rows; ++j) {
    at(j, 0) = at(j - 1, 0) / 2.0;
    for (int l = 1; l < cols; ++l) at(j, l) = (at(j - 1, l) + at(j, l - 1)) / 2.0;
  }
  return t;
}

}  // namespace altserve::detail
