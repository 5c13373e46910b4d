#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "freecorr/errors.hpp"
#include "freecorr/random.hpp"
#include "freecorr/rmtmc.hpp"

using namespace freecorr;

namespace {

Eigen::VectorXd eigenvalues(const CMatrix& A) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

TEST_CASE("sampling is reproducible and Hermitian") {
  auto spec = EnsembleSpec::gue_spike(2);
  auto a = sample_matrix(spec, 40, 123), b = sample_matrix(spec, 40, 123), c = sample_matrix(spec, 40, 124);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK((a - a.adjoint()).norm() == 0);
  auto ta = sample_tridiagonal_spectrum(spec, 40, 5), tb = sample_tridiagonal_spectrum(spec, 40, 5);
  CHECK(ta == tb);
}

TEST_CASE("component shapes") {
  EnsembleSpec spikes;
  Component c;
  c.kind = ComponentKind::diag_spikes;
  c.thetas = {2};
  spikes.components = {c};
  auto ev = eigenvalues(sample_matrix(spikes, 16, 1));
  int twos = 0, zeros = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i] - 2) < 1e-12) ++twos;
    if (std::abs(ev[i]) < 1e-12) ++zeros;
  }
  CHECK(twos == 1);
  CHECK(zeros == 15);

  EnsembleSpec w;
  Component wc;
  wc.kind = ComponentKind::wishart;
  wc.ratio = 1;
  w.components = {wc};
  CHECK(eigenvalues(sample_matrix(w, 64, 2)).minCoeff() > -1e-10);

  CHECK_THROWS_AS(sample_matrix(EnsembleSpec::gue(), 4096, 1), DomainError);
  CHECK_THROWS_AS(EnsembleSpec{}.validate(), DomainError);
  CHECK_THROWS_AS(parse_component_kind("goe"), DomainError);
}

TEST_CASE("empirical moments") {
  auto I = CMatrix::Identity(2, 2);
  CHECK(empirical_moments(I, 3)[2] == doctest::Approx(1));
  CMatrix D = CMatrix::Zero(10, 10);
  D(0, 0) = 2;
  CHECK(empirical_moments(D, 2)[1] == doctest::Approx(0.4));
  auto A = sample_matrix(EnsembleSpec::gue_spike(1.5), 64, 9);
  auto m = empirical_moments(A, 6);
  CMatrix P = CMatrix::Identity(64, 64);
  for (int k = 1; k <= 6; ++k) {
    P = P * A;
    double tr = P.trace().real() / 64;
    CHECK(std::abs(m[k - 1] - tr) <= 1e-8 * std::max(1.0, std::abs(tr)));
  }
  CHECK_THROWS_AS(empirical_moments(I, 13), DomainError);
}

TEST_CASE("GUE second moment has unit mean") {
  const int N = 256, S = 2000;
  double sum = 0, sq = 0;
  for (int s = 0; s < S; ++s) {
    auto A = sample_matrix(EnsembleSpec::gue(), N, splitmix64(77 + s));
    double v = A.squaredNorm() / N;  // N^{-1} Tr A^2
    sum += v;
    sq += v * v;
  }
  double mean = sum / S, var = (sq - S * mean * mean) / (S - 1);
  CHECK(std::abs(mean - 1) < 3 * std::sqrt(var / S));
}

TEST_CASE("Haar conjugation preserves the fixed spectrum") {
  EnsembleSpec spec;
  Component c;
  c.kind = ComponentKind::haar_fixed_spectrum;
  c.spectrum.kind = "two_point";
  c.spectrum.a = -1;
  c.spectrum.b = 2;
  c.spectrum.p = 0.25;
  c.conjugate = true;
  spec.components = {c};
  const int N = 32;
  Eigen::VectorXd fixed(N);
  auto vals = c.spectrum.eigenvalues(N);
  for (int i = 0; i < N; ++i) fixed[i] = vals[i];
  auto want = power_sums(fixed, 6);
  auto got = empirical_moments(sample_matrix(spec, N, 11), 6);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-9 * std::max(1.0, std::abs(want[k])));
  std::mt19937_64 rng(4);
  auto U = haar_unitary(N, rng);
  CHECK((U.adjoint() * U - CMatrix::Identity(N, N)).norm() < 1e-12);
}

TEST_CASE("tridiagonal and dense samplers agree in law") {
  auto spec = EnsembleSpec::gue_spike(2);
  CHECK(tridiagonal_eligible(spec));
  FitOptions fast, dense;
  fast.n_grid = dense.n_grid = {24};
  fast.samples = dense.samples = 1500;
  dense.fast_path = false;
  dense.seed = 99;
  auto a = estimate_moments(spec, 4, fast), b = estimate_moments(spec, 4, dense);
  for (int k = 0; k < 4; ++k) {
    double se = std::hypot(a.stderr_[0][k], b.stderr_[0][k]);
    CHECK(std::abs(a.mean[0][k] - b.mean[0][k]) < 4 * se);
  }
  // A rotated spike has the same law next to GUE; two spikes do not reduce to one entry.
  EnsembleSpec rotated = spec;
  rotated.components[1].conjugate = true;
  CHECK(tridiagonal_eligible(rotated));
  EnsembleSpec two = spec;
  two.components[1].thetas = {2, 3};
  CHECK_FALSE(tridiagonal_eligible(two));
}

TEST_CASE("weighted least squares recovers exact data") {
  std::vector<int> n{10, 20, 40, 80};
  std::vector<double> y, se(4, 0.01);
  for (int N : n) y.push_back(3 - 2.0 / N + 5.0 / (double(N) * N));
  auto fit = weighted_fit(n, y, se, 3);
  CHECK(fit.coef[0] == doctest::Approx(3).epsilon(1e-10));
  CHECK(fit.coef[1] == doctest::Approx(-2).epsilon(1e-8));
  CHECK(fit.coef[2] == doctest::Approx(5).epsilon(1e-7));
  CHECK(fit.chi2 < 1e-12);
  CHECK(fit.dof == 1);
  // Unweighted variance check for a two-parameter fit at equal weights.
  auto f2 = weighted_fit_powers(n, y, se, {0, 2});
  CHECK(f2.cov[0][0] > 0);
  CHECK_THROWS_AS(weighted_fit({10, 10, 10}, {1, 1, 1}, {1, 1, 1}, 2), DomainError);
  CHECK_THROWS_AS(weighted_fit({10, 20}, {1, 1}, {1, 1}, 2), DomainError);
}

TEST_CASE("all-zero ensemble gives exact zeros") {
  FitOptions opt;
  opt.n_grid = {8, 16, 32};
  opt.samples = 10;
  for (const auto& r : fit_expansion(EnsembleSpec::gue(0), 3, opt)) {
    for (double v : r.mean) CHECK(v == 0);
    for (double v : r.coef) CHECK(v == 0);
  }
}

TEST_CASE("spiked GUE first-order fit is consistent with the engine") {
  // k <= 2 has no N^{-2} term: E = theta/N and 1 + theta^2/N exactly.
  FitOptions opt;
  opt.n_grid = {32, 64, 128};
  opt.samples = 1500;
  auto rs = fit_expansion(EnsembleSpec::gue_spike(2), 2, opt);
  REQUIRE(rs.size() == 2);
  CHECK(*rs[0].prediction[1] == doctest::Approx(2));
  CHECK(*rs[1].prediction[1] == doctest::Approx(4));
  for (const auto& r : rs) CHECK(r.consistent(3.0));
  CHECK_THROWS_AS(fit_expansion(EnsembleSpec::gue(), 2, [] {
                    FitOptions o;
                    o.orders = 2;
                    return o;
                  }()),
                  DomainError);
}

TEST_CASE("predictions") {
  auto p = predict_coefficients(EnsembleSpec::gue(), 4, 2);
  CHECK(*p[3][0] == doctest::Approx(2));
  CHECK(*p[3][1] == doctest::Approx(0));
  CHECK(*p[3][2] == doctest::Approx(1));
  auto s = predict_coefficients(EnsembleSpec::gue_spike(2), 2, 2);
  CHECK(*s[0][1] == doctest::Approx(2));
  CHECK_FALSE(s[0][2].has_value());
  EnsembleSpec h;
  Component c;
  c.kind = ComponentKind::haar_fixed_spectrum;
  h.components = {c};
  CHECK_FALSE(predict_coefficients(h, 2, 1)[0][0].has_value());
}

TEST_CASE("Harer-Zagier coefficients") {
  auto c4 = harer_zagier(4), c6 = harer_zagier(6), c8 = harer_zagier(8);
  CHECK(c4 == std::vector<double>{2, 1});
  CHECK(c6 == std::vector<double>{5, 10});
  CHECK(c8 == std::vector<double>{14, 70, 21});
  CHECK(harer_zagier(3) == std::vector<double>{0});
}

TEST_CASE("genus check on a small grid") {
  FitOptions opt = genus_defaults();
  opt.n_grid = {8, 12, 16, 24};
  opt.samples = 3000;
  auto rows = genus_check(4, opt);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].exact_c == 0);
  CHECK(rows[1].engine_c == doctest::Approx(1));
  CHECK(rows[1].exact_c == 1);
  for (const auto& r : rows) CHECK(r.pass);
  CHECK_THROWS_AS(genus_check(10, opt), DomainError);
}
