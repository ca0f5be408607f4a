#include <doctest.h>

#include <cmath>
#include <vector>

#include "altserve/detail/math.hpp"
#include "support/oracles.hpp"

using namespace altserve::detail;

namespace {

// Independent long-double route for C(a, b) / 2^m.
long double choose_over_pow2(int a, int b, int m) {
  return expl(lgammal(a + 1.0L) - lgammal(b + 1.0L) - lgammal(a - b + 1.0L) -
              m * logl(2.0L));
}

}  // namespace

TEST_CASE("lchoose matches small exact values") {
  CHECK(lchoose(0, 0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::exp(lchoose(10, 3)) == doctest::Approx(120.0).epsilon(1e-12));
  CHECK(std::exp(lchoose(12, 12)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::exp(lchoose(52, 5)) == doctest::Approx(2598960.0).epsilon(1e-11));
}

TEST_CASE("binom_half_power hand values and support") {
  CHECK(binom_half_power(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(binom_half_power(3, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(binom_half_power(4, 2) == doctest::Approx(0.1875).epsilon(1e-14));
  CHECK(binom_half_power(3, 3) == 0.0);
  CHECK(binom_half_power(3, -1) == 0.0);
  CHECK(binom_half_power(5, 7) == 0.0);
}

TEST_CASE("binom_half_power sums to one half over its support") {
  for (int m : {1, 2, 5, 17, 59, 60, 61, 100, 170}) {
    double sum = 0.0;
    for (int b = 0; b < m; ++b) sum += binom_half_power(m, b);
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-13));
  }
}

TEST_CASE("binom_half_power agrees with lgamma route across the branch") {
  // The implementation switches from a direct product to log space at m=60.
  for (int m : {59, 60, 61, 62, 90}) {
    for (int b = 0; b < m; b += 7) {
      const double got = binom_half_power(m, b);
      const double want = static_cast<double>(choose_over_pow2(m - 1, b, m));
      CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("neg_binom_half hand values") {
  CHECK(neg_binom_half(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(neg_binom_half(1, 4) == doctest::Approx(1.0 / 32.0).epsilon(1e-14));
  CHECK(neg_binom_half(2, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(neg_binom_half(3, 2) == doctest::Approx(0.1875).epsilon(1e-14));
}

TEST_CASE("neg_binom_half is a pmf in l for each m") {
  for (int m = 1; m <= 6; ++m) {
    double sum = 0.0;
    for (int l = 0; l <= 400; ++l) sum += neg_binom_half(m, l);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("signed_factorial_ratio hand values") {
  CHECK(signed_factorial_ratio(3, 1, 2.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(signed_factorial_ratio(1, 3, 2.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(signed_factorial_ratio(0, 2, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(signed_factorial_ratio(2, 2, 5.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(signed_factorial_ratio(2, 3, 1.0) ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("factorial_over_power hand values") {
  CHECK(factorial_over_power(0, 3.7) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(factorial_over_power(4, 2.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(factorial_over_power(1, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("poisson_prefix matches direct evaluation and normalizes") {
  const auto t = poisson_prefix(3.0, 40);
  REQUIRE(t.size() == 40);
  CHECK(t[0] == doctest::Approx(std::exp(-3.0)).epsilon(1e-13));
  CHECK(t[1] == doctest::Approx(3.0 * std::exp(-3.0)).epsilon(1e-13));
  CHECK(t[4] ==
        doctest::Approx(std::exp(-3.0) * 81.0 / 24.0).epsilon(1e-13));
  double sum = 0.0;
  for (double v : t) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("poisson_prefix survives means that underflow exp(-z)") {
  const auto t = poisson_prefix(800.0, 2000);
  double sum = 0.0;
  for (double v : t) {
    CHECK(v >= 0.0);
    sum += v;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  // Mode near z.
  CHECK(t[800] > t[700]);
  CHECK(t[800] > t[900]);
}

TEST_CASE("erlang_cdf closed forms and quadrature") {
  CHECK(erlang_cdf(1, 2.0, 0.7) ==
        doctest::Approx(1.0 - std::exp(-1.4)).epsilon(1e-13));
  CHECK(erlang_cdf(2, 1.0, 1.0) ==
        doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-13));
  CHECK(erlang_cdf(3, 2.0, 0.0) == 0.0);
  CHECK(erlang_cdf(4, 1.0, 200.0) == doctest::Approx(1.0).epsilon(1e-12));

  auto density = [](int k, double mu, double x) {
    return std::pow(mu, k) * std::pow(x, k - 1) * std::exp(-mu * x) /
           std::tgamma(static_cast<double>(k));
  };
  for (auto [k, mu, x] : {std::tuple<int, double, double>{3, 2.0, 1.3},
                          std::tuple<int, double, double>{5, 5.0, 0.9}}) {
    const double want = oracles::integrate(
        [&, k = k, mu = mu](double t) { return density(k, mu, t); }, 0.0, x,
        1e-12);
    CHECK(erlang_cdf(k, mu, x) == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("erlang_cdf is monotone in x") {
  double prev = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.05 * i;
    const double f = erlang_cdf(4, 1.5, x);
    CHECK(f >= prev);
    prev = f;
  }
}

TEST_CASE("pascal_half_table matches binomials over halves") {
  const int rows = 30, cols = 30;
  const auto t = pascal_half_table(rows, cols);
  REQUIRE(t.size() == static_cast<std::size_t>(rows * cols));
  CHECK(t[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t[1 * cols + 1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(t[2 * cols + 1] == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(t[2 * cols + 2] == doctest::Approx(0.375).epsilon(1e-14));
  for (int j = 0; j < rows; ++j) {
    for (int l = 0; l < cols; ++l) {
      const double want =
          static_cast<double>(choose_over_pow2(j + l, l, j + l));
      CHECK(t[j * cols + l] == doctest::Approx(want).epsilon(1e-12));
      CHECK(t[j * cols + l] == doctest::Approx(t[l * cols + j]).epsilon(1e-14));
    }
  }
}

TEST_CASE("pascal_half_table rows sum towards two") {
  const int cols = 120;
  const auto t = pascal_half_table(6, cols);
  for (int j = 0; j < 6; ++j) {
    double sum = 0.0;
    for (int l = 0; l < cols; ++l) sum += t[j * cols + l];
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-9));
  }
}
