#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "freecorr/errors.hpp"
#include "freecorr/measures.hpp"
#include "freecorr/models.hpp"
#include "freecorr/momentengine.hpp"

using namespace freecorr;

namespace {

const double kPi = std::acos(-1.0);
const Rational kX = Rational::polynomial(Poly{0.0, 1.0});

KFunction gue_k(KMode mode, Rational phi_prime = Rational::constant(0), std::vector<double> poles = {}) {
  KFunction kf;
  kf.psi_prime = kX;
  kf.phi_prime = std::move(phi_prime);
  kf.poles = std::move(poles);
  kf.mode = mode;
  return kf;
}

KFunction spiked(double theta) {
  return gue_k(KMode::correction, Rational(Poly{theta}, Poly{1.0, -theta}), {1 / theta});
}

double density_at(const SpectralMeasure& m, double t) {
  for (std::size_t i = 0; i + 1 < m.grid.size(); ++i)
    if (m.grid[i] <= t && t <= m.grid[i + 1]) {
      double s = (t - m.grid[i]) / (m.grid[i + 1] - m.grid[i]);
      return (1 - s) * m.density[i] + s * m.density[i + 1];
    }
  FAIL("point outside grid");
  return 0;
}

}  // namespace

TEST_CASE("semicircle by reconstruction") {
  auto m = reconstruct_density(gue_k(KMode::lln), std::vector<double>{-1.5, -0.5, 0.0, 0.7, 1.9});
  for (std::size_t i = 0; i < m.grid.size(); ++i) {
    double t = m.grid[i];
    CHECK(m.density[i] == doctest::Approx(std::sqrt(4 - t * t) / (2 * kPi)).epsilon(5e-3));
  }
  CHECK(m.density[2] == doctest::Approx(1 / kPi).epsilon(1e-3));
  auto s = find_support(gue_k(KMode::lln));
  CHECK(s.lo == doctest::Approx(-2).epsilon(1e-9));
  CHECK(s.hi == doctest::Approx(2).epsilon(1e-9));
}

TEST_CASE("GUE correction by reconstruction") {
  auto kf = gue_k(KMode::correction, kX);
  auto m = reconstruct_density(kf, std::vector<double>{-1.2, 0.0, 0.5, 1.5});
  for (std::size_t i = 0; i < m.grid.size(); ++i) {
    double t = m.grid[i];
    double want = (t * t - 2) / (2 * kPi * std::sqrt(4 - t * t));
    CHECK(std::abs(m.density[i] - want) < 5e-3);
  }
  // (t^2 - 2)/(2 pi sqrt(4 - t^2)) at t = 0.
  CHECK(m.density[1] == doctest::Approx(-1 / (2 * kPi)).epsilon(1e-3));
  CHECK(std::abs(contour_mass(kf)) < 1e-6);
}

TEST_CASE("outliers of the spiked GUE") {
  auto big = detect_outliers(spiked(2));
  REQUIRE(big.size() == 1);
  CHECK(big[0].x == doctest::Approx(2.5).epsilon(1e-9));
  CHECK(big[0].w == doctest::Approx(1).epsilon(1e-9));
  CHECK(detect_outliers(spiked(0.5)).empty());
  auto neg = detect_outliers(spiked(-3));
  REQUIRE(neg.size() == 1);
  CHECK(neg[0].x == doctest::Approx(-3 - 1.0 / 3).epsilon(1e-9));
}

TEST_CASE("Aztec outlier") {
  auto m = build_model("aztec", {{"alpha", 0.9}, {"A", 3.0}}, 6);
  auto atoms = detect_outliers(*m.kfunction);
  bool found = false;
  for (const auto& a : atoms)
    if (std::abs(a.x - (-1 + 5.4 - 3) / (0.9 * 8)) < 1e-9) {
      found = true;
      CHECK(a.w == doctest::Approx(-1).epsilon(1e-9));
    }
  CHECK(found);
}

TEST_CASE("catalog entries") {
  auto gc = catalog("gue_correction", {});
  CHECK(density_at(gc, 0.0) == doctest::Approx(-1 / (2 * kPi)).epsilon(1e-4));
  auto d4 = catalog("dbbp", {{"gamma", 9}, {"alpha", 4}});
  REQUIRE(d4.atoms.size() >= 1);
  bool full = false, half = false;
  for (auto& a : d4.atoms)
    if (std::abs(a.x - 16.25) < 1e-12 && std::abs(a.w - 1) < 1e-12) full = true;
  auto d3 = catalog("dbbp", {{"gamma", 9}, {"alpha", 3}});
  double loc3 = 3 + 1 + 9 + 3;
  for (auto& a : d3.atoms)
    if (std::abs(a.x - loc3) < 1e-12 && std::abs(a.w - 0.5) < 1e-12) half = true;
  CHECK(full);
  CHECK(half);
  CHECK_THROWS_AS(catalog("dbbp", {{"gamma", 0.5}, {"alpha", 3}}), DomainError);
  CHECK_THROWS_AS(catalog("aztec", {{"alpha", 0.4}, {"A", 3}}), DomainError);
  CHECK_THROWS_AS(catalog("wishart_correction", {{"lambda", 0.5}}), DomainError);
  CHECK_THROWS_AS(catalog("nope", {}), DomainError);
  CHECK_FALSE(catalog_names().empty());
}

TEST_CASE("quadrature moments") {
  auto sc = catalog("semicircle", {});
  auto q = quadrature_moments(sc, 4);
  CHECK(q[0] == doctest::Approx(1).epsilon(1e-4));
  CHECK(q[2] == doctest::Approx(1).epsilon(1e-4));
  CHECK(q[4] == doctest::Approx(2).epsilon(1e-4));

  SpectralMeasure atoms_only;
  atoms_only.atoms = {{2.5, 1}};
  CHECK(quadrature_moments(atoms_only, 3)[3] == doctest::Approx(15.625));

  CHECK(std::abs(quadrature_moments(catalog("gue_correction", {}), 0)[0]) < 1e-6);

  // Plain trapezoid when no weights are given.
  SpectralMeasure box;
  for (int i = 0; i <= 1000; ++i) {
    box.grid.push_back(i / 1000.0);
    box.density.push_back(1.0);
  }
  CHECK(quadrature_moments(box, 1)[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("probability measures are nonnegative with unit mass") {
  for (auto [name, p] : std::vector<std::pair<std::string, Params>>{{"semicircle", {}},
                                                                   {"marchenko_pastur", {{"lambda", 2}}},
                                                                   {"dbbp_lln", {{"gamma", 9}}},
                                                                   {"aztec_lln", {{"alpha", 0.9}}}}) {
    auto m = catalog(name, p);
    CHECK(m.kind == MeasureKind::probability);
    for (double d : m.density) CHECK(d >= -1e-9);
    CHECK(std::abs(m.total_mass() - 1) < 1e-3);
  }
}

TEST_CASE("catalog moments match the engine") {
  struct Case {
    std::string model;
    Params params;
  };
  for (const auto& c : std::vector<Case>{{"gue-bbp", {{"theta", 2}}},
                                        {"gue-bbp", {{"theta", 0.5}}},
                                        {"wishart", {{"lambda", 2}}},
                                        {"plancherel-dbbp", {{"gamma", 9}, {"alpha", 4}}},
                                        {"aztec", {{"alpha", 0.9}, {"A", 3}}}}) {
    CAPTURE(c.model);
    auto m = build_model(c.model, c.params, 6);
    auto r = expand(m.input, 6);
    auto lln = quadrature_moments(catalog(m.catalog_lln, m.catalog_params), 6);
    auto cor = quadrature_moments(catalog(m.catalog_correction, m.catalog_params), 6);
    for (int k = 1; k <= 6; ++k) {
      CAPTURE(k);
      CHECK(std::abs(lln[k] - r.orders[0][k - 1]) <= 2e-4 * std::max(1.0, std::abs(r.orders[0][k - 1])));
      CHECK(std::abs(cor[k] - r.orders[1][k - 1]) <= 2e-4 * std::max(1.0, std::abs(r.orders[1][k - 1])));
    }
  }
}

TEST_CASE("dBBP first correction equals the catalog measure") {
  auto m = build_model("plancherel-dbbp", {{"gamma", 9}, {"alpha", 4}}, 3);
  auto c = schur_correction1(m.input.series[0], m.input.series[1], 1);
  auto q = quadrature_moments(catalog("dbbp", {{"gamma", 9}, {"alpha", 4}}), 1);
  CHECK(q[1] == doctest::Approx(c[0]).epsilon(2e-4));
}

TEST_CASE("reconstruction agrees with the closed forms") {
  auto kf = spiked(2);
  auto rec = reconstruct_density(kf, 400);
  auto cat = catalog("bbp", {{"theta", 2}});
  double lo = rec.lo, hi = rec.hi, w = hi - lo;
  int checked = 0;
  for (std::size_t i = 0; i < rec.grid.size(); ++i) {
    double t = rec.grid[i];
    if (t < lo + 0.05 * w || t > hi - 0.05 * w) continue;
    CHECK(std::abs(rec.density[i] - density_at(cat, t)) < 5e-3);
    ++checked;
  }
  CHECK(checked > 100);
  REQUIRE(rec.atoms.size() == 1);
  CHECK(rec.atoms[0].x == doctest::Approx(2.5));
  REQUIRE(rec.contour_mass.has_value());
  CHECK(std::abs(*rec.contour_mass) < 1e-6);
}

TEST_CASE("uniform Schur correction is atoms only") {
  auto m = build_model("uniform-schur", {}, 4);
  auto rec = reconstruct_density(*m.kfunction, 200);
  auto q = quadrature_moments(rec, 4);
  for (int k = 1; k <= 4; ++k) CHECK(q[k] == doctest::Approx(-0.5).epsilon(1e-6));
  for (double d : rec.density) CHECK(std::abs(d) < 1e-9);
}

TEST_CASE("reconstruction preconditions") {
  CHECK_THROWS_AS(reconstruct_density(gue_k(KMode::lln), std::vector<double>{0.0}, {1e-7}), DomainError);
  CHECK_THROWS_AS(reconstruct_density(gue_k(KMode::lln), std::vector<double>{1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(solve_branch(gue_k(KMode::lln), cplx(0, -1)), DomainError);
}

TEST_CASE("second-order functionals") {
  CHECK(eval_second_order_functional("gue_pure", {0, 0, 0, 0, 1}) == doctest::Approx(1).epsilon(1e-6));
  CHECK(std::abs(eval_second_order_functional("gue_pure", {1})) < 1e-12);
  CHECK(std::abs(eval_second_order_functional("gue_full", {1})) < 1e-12);
  auto q = Series::zero(10);
  q[2] = 0.5;
  auto c2 = correction2_hc(q, q, q, 4);
  CHECK(eval_second_order_functional("gue_full", {0, 0, 1}) == doctest::Approx(c2.mu2[1] + c2.nu2[1]).epsilon(1e-6));
  CHECK(eval_second_order_functional("gue_full", {0, 0, 0, 0, 1}) ==
        doctest::Approx(c2.mu2[3] + c2.nu2[3]).epsilon(1e-6));
  for (double th1 : {0.5, 2.0}) {
    auto psi = q, phi = finite_rank_phi({th1}, 10), t = Series::zero(10);
    t[1] = 0.5;
    auto s = correction2_hc(psi, phi, t, 4);
    for (int k = 1; k <= 4; ++k) {
      std::vector<double> P(k + 1, 0.0);
      P[k] = 1;
      CHECK(eval_second_order_functional("spiked", P, {{"theta1", th1}, {"theta2", 0.5}}) ==
            doctest::Approx(s.mu2[k - 1] + s.nu2[k - 1]).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(eval_second_order_functional("spiked", {0, 1}, {{"theta1", 1}, {"theta2", 0.5}}), DomainError);
  CHECK_THROWS_AS(eval_second_order_functional("gue_pure", std::vector<double>(14, 1.0)), DomainError);
}
