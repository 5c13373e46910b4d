#include "freecorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "freecorr/errors.hpp"
#include "freecorr/momentengine.hpp"

namespace freecorr {

namespace {

constexpr double kPi = std::numbers::pi;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double window_scale(const KFunction& kf) {
  return 1.0 + std::max(std::abs(kf.scan_lo), std::abs(kf.scan_hi));
}

// Newton for F(x) = y from x0; returns false without convergence.
bool newton(const KFunction& kf, cplx y, cplx& x) {
  for (int it = 0; it < 60; ++it) {
    cplx f = kf.F(x) - y;
    cplx d = kf.dF(x);
    if (!finite(f) || !finite(d) || d == cplx(0)) return false;
    cplx step = f / d;
    x -= step;
    if (!finite(x)) return false;
    if (std::abs(step) <= 1e-14 * (1.0 + std::abs(x))) return true;
  }
  return std::abs(kf.F(x) - y) <= 1e-10 * (1.0 + std::abs(y));
}

}  // namespace

double SpectralMeasure::continuous_mass() const {
  double s = 0;
  if (!weights.empty()) {
    for (std::size_t i = 0; i < grid.size(); ++i) s += weights[i] * density[i];
  } else {
    for (std::size_t i = 1; i < grid.size(); ++i) s += 0.5 * (grid[i] - grid[i - 1]) * (density[i] + density[i - 1]);
  }
  return s;
}

double SpectralMeasure::total_mass() const {
  double s = continuous_mass();
  for (const auto& a : atoms) s += a.w;
  return s;
}

Rational KFunction::numerator() const {
  if (side == Side::hc) return phi_prime;
  return phi_prime + Rational(Poly{-0.5}, Poly{0.0, 1.0});
}

std::vector<double> KFunction::numerator_poles() const {
  auto p = poles;
  if (side == Side::schur) p.push_back(0.0);
  return p;
}

cplx KFunction::F(cplx x) const {
  if (side == Side::hc) return psi_prime(x) + 1.0 / x;
  return x * psi_prime(x) + x / (x - 1.0);
}

cplx KFunction::dF(cplx x) const {
  if (side == Side::hc) return psi_prime.derivative_at(x) - 1.0 / (x * x);
  cplx xm = x - 1.0;
  return psi_prime(x) + x * psi_prime.derivative_at(x) - 1.0 / (xm * xm);
}

std::optional<double> KFunction::F_infinity() const {
  if (side == Side::hc) {
    if (!psi_prime.bounded_at_infinity()) return std::nullopt;
    return psi_prime.value_at_infinity();
  }
  if (!psi_prime.decays_at_infinity()) return std::nullopt;
  return 1.0 + psi_prime.infinity_coefficient();
}

Grid Support::grid(int n) const {
  Grid g;
  double total = hi - lo;
  for (const auto& [a, b, frozen] : intervals) {
    int m = std::max(16, static_cast<int>(std::lround(n * (b - a) / total)));
    Grid piece = chebyshev_grid(a, b, m);
    g.t.insert(g.t.end(), piece.t.begin(), piece.t.end());
    g.w.insert(g.w.end(), piece.w.begin(), piece.w.end());
  }
  return g;
}

bool Support::contains_open(double y, double tol) const {
  for (const auto& [a, b, frozen] : intervals)
    if (!frozen && y > a + tol && y < b - tol) return true;
  return false;
}

Grid chebyshev_grid(double lo, double hi, int n) {
  if (n < 2) throw DomainError("chebyshev_grid: need at least 2 points");
  if (!(hi > lo)) throw DomainError("chebyshev_grid: empty interval");
  Grid g;
  g.t.resize(n);
  g.w.resize(n);
  double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
  for (int i = 0; i < n; ++i) {
    double phi = kPi * (n - i - 0.5) / n;
    g.t[i] = c + r * std::cos(phi);
    g.w[i] = r * std::sin(phi) * kPi / n;
  }
  return g;
}

cplx solve_branch(const KFunction& kf, cplx y) {
  if (!(y.imag() > 0)) throw DomainError("solve_branch: Im y must be positive");
  double Y0 = 50.0 * (window_scale(kf) + std::abs(y.real()));
  double Y = std::max(Y0, y.imag());
  cplx start(y.real(), Y);
  cplx x = kf.side == Side::hc ? 1.0 / start : 1.0 + 1.0 / start;
  if (!newton(kf, start, x)) throw NumericError("solve_branch: no convergence at the seed");
  double h = 0.3;  // log-step in Im y
  while (Y > y.imag()) {
    double Ynext = std::max(y.imag(), Y * std::exp(-h));
    cplx target(y.real(), Ynext);
    // Euler predictor, Newton corrector; reject steps where the corrector moves far.
    cplx pred = x + (target - cplx(y.real(), Y)) / kf.dF(x);
    cplx xn = pred;
    bool ok = finite(pred) && newton(kf, target, xn) &&
              std::abs(xn - pred) <= 0.1 * std::abs(pred - x) + 1e-12 * (1.0 + std::abs(x));
    if (ok) {
      x = xn;
      Y = Ynext;
      h = std::min(h * 1.5, 0.5);
    } else {
      h *= 0.5;
      if (h < 1e-8) throw NumericError("solve_branch: continuation stalled");
    }
  }
  return x;
}

cplx cauchy_transform(const KFunction& kf, cplx y) {
  if (y.imag() < 0) return std::conj(cauchy_transform(kf, std::conj(y)));
  cplx x = solve_branch(kf, y);
  if (kf.mode == KMode::lln) return kf.side == Side::hc ? x : std::log(x);
  return -kf.numerator()(x) / kf.dF(x);
}

Support find_support(const KFunction& kf) {
  if (!(kf.scan_hi > kf.scan_lo)) throw DomainError("find_support: empty scan window");
  Support s;
  const int n = 20000;
  auto dFr = [&](double x) { return kf.dF(cplx(x, 0)).real(); };
  double step = (kf.scan_hi - kf.scan_lo) / n;
  double prev_x = kf.scan_lo + 0.5 * step, prev_d = dFr(prev_x);
  for (int i = 1; i < n; ++i) {
    double x = kf.scan_lo + (i + 0.5) * step;
    double d = dFr(x);
    if (std::isfinite(d) && std::isfinite(prev_d) && ((d < 0) != (prev_d < 0)) && d != 0 && prev_d != 0) {
      double a = prev_x, b = x, da = prev_d;
      for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        double m = 0.5 * (a + b), dm = dFr(m);
        if ((dm < 0) == (da < 0)) {
          a = m;
          da = dm;
        } else {
          b = m;
        }
      }
      double c = 0.5 * (a + b);
      cplx Fc = kf.F(cplx(c, 0));
      if (finite(Fc) && std::abs(Fc) < 1e8) s.critical_points.push_back(c);
    }
    prev_x = x;
    prev_d = d;
  }

  std::vector<double> cand;
  for (double c : s.critical_points) cand.push_back(kf.F(cplx(c, 0)).real());
  if (kf.side == Side::schur) cand.push_back(0.0);  // F(0)
  if (auto fi = kf.F_infinity()) cand.push_back(*fi);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); }),
             cand.end());

  double eps = 1e-9 * window_scale(kf);
  // 0 outside, 1 band, 2 frozen.
  auto classify = [&](double y) {
    cplx x;
    try {
      x = solve_branch(kf, cplx(y, eps));
    } catch (const NumericError&) {
      return 0;
    }
    if (std::abs(x.imag()) > 1e-6 * (1.0 + std::abs(x))) return 1;
    return kf.side == Side::schur && x.real() < 0 ? 2 : 0;
  };
  for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
    // Pieces stay separate so that interior edges remain visible.
    int c = classify(0.5 * (cand[i] + cand[i + 1]));
    if (c) s.intervals.push_back({cand[i], cand[i + 1], c == 2});
  }
  if (!s.intervals.empty()) {
    s.lo = s.intervals.front().a;
    s.hi = s.intervals.back().b;
  } else if (!cand.empty()) {
    s.lo = s.hi = cand.front();
  }
  return s;
}

std::vector<Atom> detect_outliers(const KFunction& kf) {
  Support sup = find_support(kf);
  Rational N = kf.numerator();
  std::vector<Atom> atoms;
  double h = 1e-12 * window_scale(kf);
  for (double p : kf.numerator_poles()) {
    cplx Fp = kf.F(cplx(p, 0));
    if (!finite(Fp) || std::abs(Fp) > 1e12) continue;  // pole shared with F, cancels in N/F'
    double y = Fp.real();
    if (sup.contains_open(y)) continue;
    cplx x;
    try {
      x = solve_branch(kf, cplx(y, h));
    } catch (const NumericError&) {
      continue;
    }
    if (std::abs(x - p) > 1e-4 * (1.0 + std::abs(p))) continue;  // other sheet
    double w = -N.residue(p);
    bool critical = std::any_of(sup.critical_points.begin(), sup.critical_points.end(),
                                [&](double c) { return std::abs(c - p) <= 1e-6 * (1.0 + std::abs(p)); });
    if (critical) w *= 0.5;
    if (std::abs(w) > 1e-14) atoms.push_back({y, w});
  }
  auto Finf = kf.F_infinity();
  if (Finf && N.decays_at_infinity()) {
    double w = N.infinity_coefficient();
    double y = *Finf;
    if (std::abs(w) > 1e-14 && !sup.contains_open(y)) {
      try {
        cplx x = solve_branch(kf, cplx(y, h));
        if (std::abs(x) > 1e6) atoms.push_back({y, w});
      } catch (const NumericError&) {
      }
    }
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  return atoms;
}

double contour_mass(const KFunction& kf, int points) {
  if (points < 8) throw DomainError("contour_mass: need at least 8 points");
  Support sup = find_support(kf);
  double lo = sup.lo, hi = sup.hi;
  for (const auto& a : (kf.mode == KMode::correction ? detect_outliers(kf) : std::vector<Atom>{})) {
    lo = std::min(lo, a.x);
    hi = std::max(hi, a.x);
  }
  if (kf.side == Side::schur) {
    lo = std::min(lo, 0.0);
    if (auto fi = kf.F_infinity()) hi = std::max(hi, *fi);
  }
  double c = 0.5 * (lo + hi);
  double R = 0.5 * (hi - lo) + 0.5 + 0.25 * (hi - lo);
  // Trapezoid on the circle; lower half by conjugate symmetry.
  double sum = 0;
  int half = points / 2;
  for (int j = 0; j < half; ++j) {
    double th = kPi * (j + 0.5) / half;
    cplx e = std::polar(1.0, th);
    cplx C = cauchy_transform(kf, c + R * e);
    sum += 2.0 * (C * e).real();
  }
  return R * sum / (2.0 * half);
}

std::vector<double> engine_reference_moments(const KFunction& kf, int K) {
  int T = K + 3;
  double c = kf.center();
  auto psi = integral(series_from_rational(kf.psi_prime, c, T - 1));
  if (kf.mode == KMode::lln) return kf.side == Side::hc ? lln_moments_hc(psi, K) : schur_lln_moments(psi, K);
  auto phi = integral(series_from_rational(kf.phi_prime, c, T - 1));
  return kf.side == Side::hc ? correction1_hc(psi, phi, K) : schur_correction1(psi, phi, K);
}

std::vector<double> quadrature_moments(const SpectralMeasure& m, int K) {
  if (K < 0) throw DomainError("quadrature_moments: K must be >= 0");
  if (m.grid.size() != m.density.size()) throw DomainError("quadrature_moments: grid/density size mismatch");
  if (!m.weights.empty() && m.weights.size() != m.grid.size())
    throw DomainError("quadrature_moments: weight size mismatch");
  std::vector<double> out(K + 1, 0.0);
  auto f = [&](std::size_t i, int k) { return std::pow(m.grid[i], k) * m.density[i]; };
  for (int k = 0; k <= K; ++k) {
    double s = 0;
    if (!m.weights.empty()) {
      for (std::size_t i = 0; i < m.grid.size(); ++i) s += m.weights[i] * f(i, k);
    } else {
      for (std::size_t i = 1; i < m.grid.size(); ++i) s += 0.5 * (m.grid[i] - m.grid[i - 1]) * (f(i, k) + f(i - 1, k));
    }
    for (const auto& a : m.atoms) s += a.w * std::pow(a.x, k);
    out[k] = s;
  }
  return out;
}

namespace {

// Continuous part only: the pole terms w/(y - x_a) of the atoms are removed so
// that atoms at support edges do not leak into the grid as Lorentzians.
double density_at(const KFunction& kf, const std::vector<Atom>& atoms, double t, double eta) {
  cplx y(t, eta);
  cplx C = cauchy_transform(kf, y);
  for (const auto& a : atoms) C -= a.w / (y - a.x);
  return -C.imag() / kPi;
}

void fill_density(const KFunction& kf, SpectralMeasure& m, const ReconstructOptions& opt) {
  m.density.assign(m.grid.size(), 0.0);
  m.valid.assign(m.grid.size(), 1);
  for (std::size_t i = 0; i < m.grid.size(); ++i) {
    try {
      double d = density_at(kf, m.atoms, m.grid[i], opt.eta);
      if (opt.richardson) d = 2.0 * density_at(kf, m.atoms, m.grid[i], 0.5 * opt.eta) - d;
      m.density[i] = d;
    } catch (const NumericError&) {
      m.valid[i] = 0;
    }
  }
}

SpectralMeasure base_measure(const KFunction& kf, const Support& sup) {
  SpectralMeasure m;
  m.lo = sup.lo;
  m.hi = sup.hi;
  m.kind = kf.mode == KMode::lln ? MeasureKind::probability : MeasureKind::signed_correction;
  if (kf.mode == KMode::correction) m.atoms = detect_outliers(kf);
  return m;
}

// +1 or -1, whichever makes the first two moments agree with the engine.
double calibration_sign(const KFunction& kf, const Support& sup, const ReconstructOptions& opt) {
  if (!(sup.hi > sup.lo)) return 1.0;
  SpectralMeasure m = base_measure(kf, sup);
  Grid g = sup.grid(1500);
  m.grid = g.t;
  m.weights = g.w;
  fill_density(kf, m, opt);
  auto q = quadrature_moments(m, 2);
  auto ref = engine_reference_moments(kf, 2);
  double ep = std::abs(q[1] - ref[0]) + std::abs(q[2] - ref[1]);
  double em = std::abs(-q[1] - ref[0]) + std::abs(-q[2] - ref[1]);
  double tol = 5e-2 * (1.0 + std::abs(ref[0]) + std::abs(ref[1]));
  if (std::min(ep, em) > tol)
    throw NumericError("reconstruct_density: sign calibration failed (moment mismatch " +
                       std::to_string(std::min(ep, em)) + ")");
  return ep <= em ? 1.0 : -1.0;
}

SpectralMeasure finish(const KFunction& kf, const Support& sup, SpectralMeasure m, const ReconstructOptions& opt) {
  fill_density(kf, m, opt);
  double s = opt.calibrate ? calibration_sign(kf, sup, opt) : 1.0;
  if (s < 0) {
    for (auto& d : m.density) d = -d;
    for (auto& a : m.atoms) a.w = -a.w;
  }
  m.contour_mass = s * contour_mass(kf, opt.contour_points);
  return m;
}

void check_options(const ReconstructOptions& opt) {
  if (!(opt.eta >= 1e-5 && opt.eta <= 1e-1)) throw DomainError("reconstruct_density: eta must lie in [1e-5, 1e-1]");
}

}  // namespace

SpectralMeasure reconstruct_density(const KFunction& kf, const std::vector<double>& grid,
                                    const ReconstructOptions& opt) {
  check_options(opt);
  if (!std::is_sorted(grid.begin(), grid.end())) throw DomainError("reconstruct_density: grid must be increasing");
  Support sup = find_support(kf);
  SpectralMeasure m = base_measure(kf, sup);
  m.grid = grid;
  return finish(kf, sup, std::move(m), opt);
}

SpectralMeasure reconstruct_density(const KFunction& kf, int n, const ReconstructOptions& opt) {
  check_options(opt);
  Support sup = find_support(kf);
  SpectralMeasure m = base_measure(kf, sup);
  if (sup.hi > sup.lo) {
    Grid g = sup.grid(n);
    m.grid = g.t;
    m.weights = g.w;
  }
  return finish(kf, sup, std::move(m), opt);
}

}  // namespace freecorr
