#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "freecorr/errors.hpp"
#include "freecorr/measures.hpp"
#include "freecorr/momentengine.hpp"

using namespace freecorr;

namespace {

Series quad(double a, int T) {
  auto s = Series::zero(T);
  s[2] = a;
  return s;
}

Series random_series(std::mt19937_64& rng, int T, double center = 0) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> c(T + 1);
  for (auto& v : c) v = u(rng);
  c[0] = 0;
  return Series(center, c);
}

// kappa_n = f^{(n)}(0)/(n-1)! = n c_n.
std::vector<double> kappa_of(const Series& f, int K, double factor = 1) {
  std::vector<double> k(K);
  for (int n = 1; n <= K; ++n) k[n - 1] = factor * n * f[n];
  return k;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("law of large numbers moments") {
  auto mu = lln_moments_hc(quad(0.5, 10), 8);
  std::vector<double> cat{0, 1, 0, 2, 0, 5, 0, 14};
  for (int k = 0; k < 8; ++k) CHECK(mu[k] == doctest::Approx(cat[k]));
  for (double v : lln_moments_hc(Series::zero(6), 4)) CHECK(v == 0);
  // Psi' = 1/(1 - x): Psi = -log(1 - x).
  auto fp = finite_rank_phi({1.0}, 6);
  auto mp = lln_moments_hc(fp, 3);
  CHECK(mp[0] == doctest::Approx(1));
  CHECK(mp[1] == doctest::Approx(2));
  CHECK(mp[2] == doctest::Approx(5));
  CHECK_THROWS_AS(lln_moments_hc(quad(0.5, 4), 8), DomainError);
}

TEST_CASE("first correction") {
  auto mu1 = correction1_hc(quad(0.5, 8), quad(0.5, 8), 4);
  CHECK(mu1[1] == doctest::Approx(1));
  for (double v : correction1_hc(quad(0.5, 8), Series::zero(8), 4)) CHECK(v == 0);
  auto b = correction1_hc(quad(0.5, 8), finite_rank_phi({2.0}, 8), 3);
  CHECK(b[0] == doctest::Approx(2));
}

TEST_CASE("second correction") {
  auto p = correction2_hc(quad(0.5, 8), Series::zero(8), Series::zero(8), 4);
  CHECK(p.nu2[3] == doctest::Approx(1));
  CHECK(std::abs(p.mu2[3]) < 1e-15);
  double c = 0.7;
  auto t = Series::zero(8);
  t[1] = c;
  auto q = correction2_hc(quad(0.5, 8), Series::zero(8), t, 3);
  CHECK(q.mu2[0] == doctest::Approx(c));
  auto z = correction2_hc(Series::zero(8), Series::zero(8), Series::zero(8), 4);
  for (int k = 0; k < 4; ++k) CHECK(z.mu2[k] == 0);
  for (int k = 0; k < 4; ++k) CHECK(z.nu2[k] == 0);
}

TEST_CASE("second correction of GUE is the genus term") {
  // E N^{-1} Tr G^k = Catalan + genus/N^2: 1, 10 at k = 4, 6.
  auto p = correction2_hc(quad(0.5, 12), Series::zero(12), Series::zero(12), 8);
  CHECK(p.nu2[5] == doctest::Approx(10));
  CHECK(p.nu2[7] == doctest::Approx(70));
  CHECK(std::abs(p.nu2[1]) < 1e-14);
}

TEST_CASE("higher corrections") {
  double th = 2;
  AsymptoticInput in{Side::hc, {quad(0.5, 10), finite_rank_phi({th}, 10)}, 1.0};
  auto r = higher_corrections_hc(in, 6);
  auto c1 = correction1_hc(in.series[0], in.series[1], 6);
  for (int k = 0; k < 6; ++k) CHECK(r.orders[1][k] == doctest::Approx(c1[k]));

  double th2 = 3;
  auto psi2 = Series::zero(10);
  psi2[1] = th2;
  AsymptoticInput in2{Side::hc, {quad(0.5, 10), Series::zero(10), psi2}, 0.25};
  CHECK(higher_corrections_hc(in2, 4).orders[2][0] == doctest::Approx(th2));

  AsymptoticInput zero{Side::hc, {quad(0.5, 12), Series::zero(12), Series::zero(12), Series::zero(12)}, 0.25};
  auto rz = higher_corrections_hc(zero, 6);
  for (int j = 1; j <= 3; ++j)
    for (double v : rz.orders[j]) CHECK(v == 0);
  AsymptoticInput too_many{Side::hc, std::vector<Series>(6, quad(0.5, 12)), 0.5};
  CHECK_THROWS_AS(higher_corrections_hc(too_many, 2), DomainError);
}

TEST_CASE("regimes") {
  auto e = regime_moments(quad(0.5, 6), Regime::ergodic, 4);
  CHECK(e[0] == 0);
  CHECK(e[1] == doctest::Approx(1));
  CHECK(e[2] == 0);
  CHECK(e[3] == 0);
  double c = 1.5;
  auto lin = Series::zero(6);
  lin[1] = c;
  auto d = regime_moments(lin, Regime::degenerate, 4);
  for (int k = 1; k <= 4; ++k) CHECK(d[k - 1] == doctest::Approx(std::pow(c, k)));
  auto ex = exp_series(Series::local_variable(8));
  ex[0] = 0;
  auto im = regime_moments(ex, Regime::intermediate, 6);
  double f = 1;
  for (int k = 1; k <= 6; ++k) {
    if (k > 1) f *= k - 1;
    CHECK(im[k - 1] == doctest::Approx(1 / f));
  }
}

TEST_CASE("Schur side") {
  auto z = Series(1.0, std::vector<double>(10, 0.0));
  auto m = schur_lln_moments(z, 6);
  for (int k = 1; k <= 6; ++k) CHECK(m[k - 1] == doctest::Approx(1.0 / (k + 1)));
  double g = 9;
  auto lin = Series(1.0, std::vector<double>(10, 0.0));
  lin[1] = g;
  CHECK(schur_lln_moments(lin, 2)[0] == doctest::Approx(g + 0.5));
  auto c = schur_correction1(z, z, 6);
  for (double v : c) CHECK(v == doctest::Approx(-0.5));
  // Phi' = 1/(2x) cancels the -1/(2x) term.
  auto half_log = Series(1.0, log_series(Series(0.0, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0})).coeffs());
  auto c0 = schur_correction1(z, scale(half_log, 0.5), 6);
  for (double v : c0) CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("Schur correction of the uniform case matches Euler-Maclaurin") {
  auto z = Series(1.0, std::vector<double>(8, 0.0));
  auto c = schur_correction1(z, z, 5);
  for (int k = 1; k <= 5; ++k) {
    // N (riemann - 1/(k+1)) -> -1/2
    auto corr = [&](int N) {
      double s = 0;
      for (int i = 0; i < N; ++i) s += std::pow(double(i) / N, k);
      return N * (s / N - 1.0 / (k + 1));
    };
    double extrap = 2 * corr(4000) - corr(2000);
    CHECK(std::abs(extrap - c[k - 1]) < 1e-6);
  }
}

TEST_CASE("quantized cumulants") {
  auto z = Series(1.0, std::vector<double>(10, 0.0));
  auto t = quantized_cumulants(z, z, 6);
  auto u = uniform_cumulants(6);
  for (int n = 0; n < 6; ++n) CHECK(std::abs(t.rows[0][n] - u[n]) < 1e-14);
  CHECK(t.rows[1][0] == doctest::Approx(-0.5));
  for (int n = 1; n < 6; ++n) CHECK(std::abs(t.rows[1][n]) < 1e-14);
  auto lin = z;
  lin[1] = 9;
  CHECK(quantized_cumulants(lin, z, 4).rows[0][0] == doctest::Approx(9.5));
}

TEST_CASE("finite-rank Phi and Voiculescu Psi") {
  auto d = derivative(finite_rank_phi({2.0}, 6));
  for (int j = 0; j < 5; ++j) CHECK(d[j] == doctest::Approx(std::pow(2.0, j + 1)));
  auto e = finite_rank_phi({}, 4);
  for (double v : e.coeffs()) CHECK(v == 0);
  auto pm = derivative(finite_rank_phi({1.0, -1.0}, 8));
  std::vector<double> want{0, 2, 0, 2, 0, 2, 0};
  for (int j = 0; j < 7; ++j) CHECK(pm[j] == doctest::Approx(want[j]));

  auto g = voiculescu_psi(0, 1, {}, 4);
  CHECK(g[2] == doctest::Approx(0.5));
  CHECK(std::abs(g[1]) + std::abs(g[3]) == 0);
  int M = 3;
  auto w = derivative(voiculescu_psi(0, 0, std::vector<double>(M, 1.0), 6));
  CHECK(w[0] == 0);
  for (int j = 1; j < 6; ++j) CHECK(w[j] == doctest::Approx(M));  // M x/(1 - x)
  auto l = voiculescu_psi(1.25, 0, {}, 3);
  CHECK(l[1] == 1.25);
}

TEST_CASE("cumulant consistency on random inputs") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto psi = random_series(rng, 12);
    auto mu = lln_moments_hc(psi, 10);
    auto ref = cumulants_to_moments(kappa_of(psi, 10), 10);
    for (int k = 0; k < 10; ++k) CHECK(close(mu[k], ref[k], 1e-9));
  }
}

TEST_CASE("first and second order consistency with infinitesimal moments") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    int K = 8, T = default_truncation(K, 2);
    auto psi = random_series(rng, T), phi = random_series(rng, T), t = random_series(rng, T);
    CumulantTable tab{2, {kappa_of(psi, K), kappa_of(phi, K), kappa_of(t, K, 2)}};
    auto inf = infinitesimal_moments(tab, K);
    auto c1 = correction1_hc(psi, phi, K);
    auto c2 = correction2_hc(psi, phi, t, K);
    for (int k = 0; k < K; ++k) {
      CHECK(close(c1[k], inf.orders[1][k], 1e-9));
      CHECK(close(c2.mu2[k], 0.5 * inf.orders[2][k], 1e-9));
    }
  }
}

TEST_CASE("order-n consistency") {
  std::mt19937_64 rng(23);
  for (int n = 1; n <= 4; ++n) {
    int K = 8, T = default_truncation(K, n);
    AsymptoticInput in;
    in.epsilon = 1.0 / (n + 1);
    for (int i = 0; i <= n; ++i) in.series.push_back(random_series(rng, T));
    auto r = higher_corrections_hc(in, K);
    auto inf = infinitesimal_moments(hc_cumulant_table(in.series, K), K);
    double jf = 1;
    for (int j = 0; j <= n; ++j) {
      if (j > 0) jf *= j;
      for (int k = 0; k < K; ++k) CHECK(close(r.orders[j][k], inf.orders[j][k] / jf, 1e-9));
    }
  }
}

TEST_CASE("Schur and quantized cumulants agree") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    int K = 7, T = default_truncation(K, 1);
    auto psi = random_series(rng, T, 1.0), phi = random_series(rng, T, 1.0);
    for (int j = 1; j <= T; ++j) {
      psi[j] *= 0.5;
      phi[j] *= 0.5;
    }
    auto m = schur_lln_moments(psi, K);
    auto c = schur_correction1(psi, phi, K);
    auto inf = infinitesimal_moments(quantized_cumulants(psi, phi, K), K);
    for (int k = 0; k < K; ++k) {
      CHECK(close(m[k], inf.orders[0][k], 1e-9));
      CHECK(close(c[k], inf.orders[1][k], 1e-9));
    }
  }
}

TEST_CASE("first correction of GUE matches the signed density") {
  auto c1 = correction1_hc(quad(0.5, 12), quad(0.5, 12), 8);
  auto q = quadrature_moments(catalog("gue_correction", {}, 4000), 8);
  CHECK(std::abs(q[0]) < 1e-6);
  for (int k = 1; k <= 8; ++k) CHECK(std::abs(q[k] - c1[k - 1]) < 1e-6);
}

TEST_CASE("expand dispatch and validation") {
  AsymptoticInput in{Side::hc, {quad(0.5, 10), quad(0.5, 10), quad(0.5, 10)}, 1.0};
  auto r = expand(in, 4);
  REQUIRE(r.orders.size() == 3);
  auto c2 = correction2_hc(in.series[0], in.series[1], in.series[2], 4);
  for (int k = 0; k < 4; ++k) CHECK(r.orders[2][k] == doctest::Approx(c2.mu2[k] + c2.nu2[k]));
  CHECK(r.parts.size() == 2);
  AsymptoticInput bad{Side::schur, {quad(0.5, 10)}, 1.0};  // wrong center
  CHECK_THROWS_AS(bad.validate(), DomainError);
  AsymptoticInput neg_eps{Side::hc, {quad(0.5, 10)}, -1.0};
  CHECK_THROWS_AS(neg_eps.validate(), DomainError);
}
