#pragma once

#include <vector>

namespace altserve::detail {

// ln C(a, b) for 0 <= b <= a, via lgamma.
double lchoose(int a, int b);

// C(m-1, b) / 2^m. Zero when b > m-1 or b < 0. Direct multiplicative
// product for m <= 60, log-space evaluation above that.
double binom_half_power(int m, int b);

// C(m+l-1, l) / 2^(m+l) for m >= 1, l >= 0. Always in [0, 1].
double neg_binom_half(int m, int l);

// (l!/k!) * (-mu)^(k-l), evaluated as a running product of ratio terms so
// that neither factorial is formed on its own.
double signed_factorial_ratio(int l, int k, double mu);

// l! / mu^l, again as a running product.
double factorial_over_power(int l, double mu);

// Poisson(z) probabilities t_j = e^-z z^j / j! for j = 0..count-1.
// Switches to per-term log-space evaluation when e^-z would underflow.
std::vector<double> poisson_prefix(double z, int count);

// P[Erlang(k, mu) <= x], i.e. P[Poisson(mu x) >= k].
double erlang_cdf(int k, double mu, double x);

// T(j, l) = C(j+l, l) / 2^(j+l), row-major rows x cols, built from the
// Pascal-style recurrence T(j,l) = (T(j-1,l) + T(j,l-1)) / 2.
std::vector<double> pascal_half_table(int rows, int cols);

}  // namespace altserve::detail
