#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "freecorr/rational_function.hpp"
#include "freecorr/series.hpp"

using namespace freecorr;

namespace {

Series poly(std::vector<double> c, double center = 0) { return Series(center, std::move(c)); }

void check_coeffs(const Series& s, const std::vector<double>& want, double tol = 1e-14) {
  REQUIRE(s.order() + 1 >= static_cast<int>(want.size()));
  for (std::size_t j = 0; j < want.size(); ++j) CHECK(s[j] == doctest::Approx(want[j]).epsilon(tol));
  for (int j = static_cast<int>(want.size()); j <= s.order(); ++j) CHECK(std::abs(s[j]) < tol);
}

Series random_series(std::mt19937_64& rng, int T, double c0 = 0) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> c(T + 1);
  for (auto& v : c) v = u(rng);
  c[0] = c0;
  return Series(0.0, c);
}

}  // namespace

TEST_CASE("add") {
  check_coeffs(poly({1, 1}) + poly({1, -1}), {2, 0});
  auto a = poly({0.3, -1, 2});
  check_coeffs(a + Series::zero(2), {0.3, -1, 2});
  check_coeffs(poly({0, 0, 0.5}) + poly({0, 0, 0.5}), {0, 0, 1});
  CHECK_THROWS_AS(poly({1}, 0) + poly({1}, 1), DomainError);
}

TEST_CASE("mul") {
  check_coeffs(poly({1, 1, 0}) * poly({1, -1, 0}), {1, 0, -1});
  auto a = poly({0.3, -1, 2});
  check_coeffs(a * Series::constant(1, 2), {0.3, -1, 2});
  auto x = Series::local_variable(4);
  check_coeffs(x * x, {0, 0, 1, 0, 0});
}

TEST_CASE("pow_int") {
  check_coeffs(pow_int(poly({1, 1, 0}), 2), {1, 2, 1});
  check_coeffs(pow_int(poly({0.3, -1, 2}), 0), {1, 0, 0});
  check_coeffs(pow_int(Series::local_variable(5), 3), {0, 0, 0, 1, 0, 0});
  CHECK_THROWS_AS(pow_int(poly({1, 1}), -1), DomainError);
}

TEST_CASE("div") {
  check_coeffs(div(Series::constant(1, 3), poly({1, -1, 0, 0})), {1, 1, 1, 1});
  auto a = poly({0.3, -1, 2});
  check_coeffs(a / a, {1, 0, 0});
  check_coeffs(poly({1, 0, -1}) / poly({1, -1, 0}), {1, 1, 0});
  CHECK_THROWS_AS(div(Series::constant(1, 2), poly({0, 1, 0})), DomainError);
}

TEST_CASE("exp and log") {
  check_coeffs(exp_series(Series::local_variable(4)), {1, 1, 0.5, 1.0 / 6, 1.0 / 24});
  auto h = poly({0, 0, 0.5, 0, 0, 0});
  check_coeffs(log_series(exp_series(h)), {0, 0, 0.5, 0, 0, 0});
  check_coeffs(log_series(poly({1, 1, 0, 0})), {0, 1, -0.5, 1.0 / 3});
  CHECK_THROWS_AS(log_series(poly({-1, 1})), DomainError);
}

TEST_CASE("compose") {
  // Psi(1 + t) = t about 1, inner e^u about 0.
  auto psi = Series(1.0, {0, 1, 0, 0, 0});
  auto e = exp_series(Series::local_variable(4));
  check_coeffs(compose(psi, e), {0, 1, 0.5, 1.0 / 6, 1.0 / 24});
  check_coeffs(compose(Series::constant(2.5, 4, 1.0), e), {2.5, 0, 0, 0, 0});
  auto log_at_1 = log_series(poly({1, 1, 0, 0, 0}));
  auto outer = Series(1.0, log_at_1.coeffs());
  check_coeffs(compose(outer, e), {0, 1, 0, 0, 0}, 1e-13);
  CHECK_THROWS_AS(compose(outer, Series::local_variable(3)), DomainError);
}

TEST_CASE("deriv_at_center") {
  CHECK(deriv_at_center(poly({0, 0, 0.5}), 2) == doctest::Approx(1));
  auto a = poly({0.7, 3, 1});
  CHECK(deriv_at_center(a, 0) == 0.7);
  // theta/(1 - theta x) = sum theta^{n+1} x^n; first derivative at 0 is theta^2.
  double theta = 2;
  auto g = series_from_rational(RationalFunction<double>(Polynomial<double>{theta}, Polynomial<double>{1.0, -theta}), 0.0, 4);
  double h = 1e-5;
  double fd = (theta / (1 - theta * h) - theta / (1 + theta * h)) / (2 * h);
  CHECK(deriv_at_center(g, 1) == doctest::Approx(fd).epsilon(1e-8));
  CHECK(deriv_at_center(g, 1) == doctest::Approx(4.0));
  CHECK_THROWS_AS(deriv_at_center(a, 3), DomainError);
}

TEST_CASE("derivative") {
  check_coeffs(derivative(poly({0, 0, 0.5})), {0, 1});
  check_coeffs(derivative(poly({3, 0, 0})), {0, 0});
  auto d = derivative(log_series(poly({1, 1, 0, 0, 0, 0})));
  check_coeffs(d, {1, -1, 1, -1, 1});
}

TEST_CASE("divided_difference_limit") {
  CHECK(divided_difference_limit(poly({0, 0, 1}), 3) == 1);
  CHECK(divided_difference_limit(poly({4.5}), 1) == 4.5);
  auto e = exp_series(Series::local_variable(6));
  CHECK(divided_difference_limit(e, 4) == doctest::Approx(1.0 / 6));
  CHECK_THROWS_AS(divided_difference_limit(poly({1, 1}), 3), DomainError);
}

TEST_CASE("divided difference matches the symmetrized sum") {
  auto e = exp_series(Series::local_variable(8));
  for (int n = 1; n <= 4; ++n) {
    // Extended precision: the sum cancels like eps^{1-n}.
    auto sum_at = [&](long double eps) {
      long double s = 0;
      for (int i = 0; i < n; ++i) {
        long double xi = (i + 1) * eps, den = 1;
        for (int j = 0; j < n; ++j)
          if (j != i) den *= xi - (j + 1) * eps;
        s += std::exp(xi) / den;
      }
      return static_cast<double>(s);
    };
    double a = sum_at(1e-3L), b = sum_at(1e-4L);
    double extrap = (10 * b - a) / 9;  // error linear in eps
    CHECK(std::abs(extrap - divided_difference_limit(e, n)) < 1e-6);
  }
}

TEST_CASE("ring axioms on random series") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_series(rng, 7, 0.4), b = random_series(rng, 7, -0.2), c = random_series(rng, 7, 0.9);
    auto l = (a + b) + c, r = a + (b + c);
    auto l2 = a * (b + c), r2 = a * b + a * c;
    for (int j = 0; j <= 7; ++j) {
      CHECK(std::abs(l[j] - r[j]) <= 1e-13 * std::max(1.0, std::abs(r[j])));
      CHECK(std::abs(l2[j] - r2[j]) <= 1e-13 * std::max(1.0, std::abs(r2[j])));
    }
  }
}

TEST_CASE("exp and log are inverse on random inputs") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_series(rng, 8, 0.0);
    auto back = log_series(exp_series(a));
    for (int j = 0; j <= 8; ++j) CHECK(std::abs(back[j] - a[j]) < 1e-12);
  }
}

TEST_CASE("deriv_at_center agrees with finite differences") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_series(rng, 4, 0.5);
    auto f = [&](double x) { return a.evaluate(x); };
    double h = 0.1;
    // These stencils are exact on quartics, so only rounding remains.
    double fd[5];
    fd[0] = f(0);
    fd[1] = (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
    fd[2] = (-f(2 * h) + 16 * f(h) - 30 * f(0) + 16 * f(-h) - f(-2 * h)) / (12 * h * h);
    fd[3] = (-f(3 * h) + 8 * f(2 * h) - 13 * f(h) + 13 * f(-h) - 8 * f(-2 * h) + f(-3 * h)) / (8 * h * h * h);
    fd[4] = (-f(3 * h) + 12 * f(2 * h) - 39 * f(h) + 56 * f(0) - 39 * f(-h) + 12 * f(-2 * h) - f(-3 * h)) /
            (6 * h * h * h * h);
    for (int m = 0; m <= 4; ++m) {
      double d = deriv_at_center(a, m);
      CHECK(std::abs(fd[m] - d) <= 1e-8 * std::max(1.0, std::abs(d)));
    }
  }
}

TEST_CASE("monomial about a shifted center") {
  auto m = Series::monomial(3, 4, 2.0);  // x^3 about 2
  check_coeffs(m, {8, 12, 6, 1, 0});
  CHECK(m.evaluate(2.5) == doctest::Approx(15.625));
}
