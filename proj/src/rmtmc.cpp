#include "freecorr/rmtmc.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

#include "freecorr/errors.hpp"
#include "freecorr/momentengine.hpp"
#include "freecorr/random.hpp"

namespace freecorr {

namespace {

using cd = std::complex<double>;

double component_scale(const Component& c, int N) { return std::pow(static_cast<double>(N), -c.scale_exponent); }

CMatrix gue_matrix(int N, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double sd = sigma / std::sqrt(static_cast<double>(N));
  const double half = sd / std::sqrt(2.0);
  CMatrix h(N, N);
  for (int i = 0; i < N; ++i) {
    h(i, i) = sd * g(rng);
    for (int j = i + 1; j < N; ++j) {
      double re = g(rng), im = g(rng);
      h(i, j) = cd(half * re, half * im);
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

CMatrix wishart_matrix(int N, double ratio, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const int M = std::max(1, static_cast<int>(std::lround(ratio * N)));
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix x(N, M);
  for (int j = 0; j < M; ++j)
    for (int i = 0; i < N; ++i) {
      double re = g(rng), im = g(rng);
      x(i, j) = cd(s * re, s * im);
    }
  CMatrix a = x * x.adjoint() / static_cast<double>(N);
  return a;
}

CMatrix diagonal(const std::vector<double>& d, int N) {
  CMatrix m = CMatrix::Zero(N, N);
  for (int i = 0; i < N && i < static_cast<int>(d.size()); ++i) m(i, i) = d[i];
  return m;
}

const Component* find_kind(const EnsembleSpec& spec, ComponentKind kind, int* count) {
  const Component* found = nullptr;
  *count = 0;
  for (const auto& c : spec.components)
    if (c.kind == kind) {
      found = &c;
      ++*count;
    }
  return found;
}

struct Welford {
  long n = 0;
  double mean = 0, m2 = 0;
  void add(double v) {
    ++n;
    double d = v - mean;
    mean += d / n;
    m2 += d * (v - mean);
  }
  double stderr_() const { return n > 1 ? std::sqrt(m2 / (n - 1) / n) : 0.0; }
};

}  // namespace

const char* component_kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::gue: return "gue";
    case ComponentKind::wishart: return "wishart";
    case ComponentKind::diag_spikes: return "diag_spikes";
    case ComponentKind::haar_fixed_spectrum: return "haar_fixed_spectrum";
  }
  return "?";
}

ComponentKind parse_component_kind(const std::string& name) {
  if (name == "gue") return ComponentKind::gue;
  if (name == "wishart") return ComponentKind::wishart;
  if (name == "diag_spikes") return ComponentKind::diag_spikes;
  if (name == "haar_fixed_spectrum") return ComponentKind::haar_fixed_spectrum;
  throw DomainError("ensemble: unknown component kind '" + name + "'");
}

std::vector<double> SpectrumDescriptor::eigenvalues(int N) const {
  std::vector<double> d(N);
  if (kind == "uniform") {
    for (int i = 0; i < N; ++i) d[i] = a + (b - a) * (i + 0.5) / N;
  } else if (kind == "two_point") {
    if (!(p >= 0 && p <= 1)) throw DomainError("spectrum: two_point needs 0 <= p <= 1");
    int na = static_cast<int>(std::lround(p * N));
    for (int i = 0; i < N; ++i) d[i] = i < na ? a : b;
  } else if (kind == "values") {
    if (values.empty()) throw DomainError("spectrum: empty value list");
    for (int i = 0; i < N; ++i) d[i] = values[i % values.size()];
  } else {
    throw DomainError("spectrum: unknown kind '" + kind + "'");
  }
  return d;
}

void EnsembleSpec::validate() const {
  if (components.empty()) throw DomainError("ensemble: component list is empty");
  for (const auto& c : components) {
    if (c.kind == ComponentKind::wishart && !(c.ratio > 0)) throw DomainError("ensemble: wishart ratio must be > 0");
    if (c.kind == ComponentKind::gue && !(c.sigma >= 0)) throw DomainError("ensemble: gue sigma must be >= 0");
    if (c.kind == ComponentKind::diag_spikes && c.thetas.empty()) throw DomainError("ensemble: empty spike list");
    if (!std::isfinite(c.scale_exponent)) throw DomainError("ensemble: scale exponent must be finite");
    for (double t : c.thetas)
      if (!std::isfinite(t)) throw DomainError("ensemble: spikes must be finite");
  }
}

EnsembleSpec EnsembleSpec::gue(double sigma) {
  EnsembleSpec s;
  Component c;
  c.sigma = sigma;
  s.components.push_back(c);
  return s;
}

EnsembleSpec EnsembleSpec::gue_spike(double theta) {
  EnsembleSpec s = gue(1.0);
  Component c;
  c.kind = ComponentKind::diag_spikes;
  c.thetas = {theta};
  s.components.push_back(c);
  return s;
}

CMatrix haar_unitary(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix z(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      double re = g(rng), im = g(rng);
      z(i, j) = cd(s * re, s * im);
    }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (int j = 0; j < N; ++j) {
    cd d = r(j, j);
    double m = std::abs(d);
    q.col(j) *= m > 0 ? d / m : cd(1.0);
  }
  return q;
}

CMatrix sample_matrix(const EnsembleSpec& spec, int N, std::uint64_t seed) {
  spec.validate();
  if (N < 1 || N > 2048) throw DomainError("sample_matrix: N must be in [1, 2048]");
  std::mt19937_64 rng(splitmix64(seed));
  CMatrix a = CMatrix::Zero(N, N);
  for (const auto& c : spec.components) {
    CMatrix m;
    switch (c.kind) {
      case ComponentKind::gue: m = gue_matrix(N, c.sigma, rng); break;
      case ComponentKind::wishart: m = wishart_matrix(N, c.ratio, rng); break;
      case ComponentKind::diag_spikes: m = diagonal(c.thetas, N); break;
      case ComponentKind::haar_fixed_spectrum: m = diagonal(c.spectrum.eigenvalues(N), N); break;
    }
    if (c.conjugate) {
      CMatrix u = haar_unitary(N, rng);
      m = u * m * u.adjoint();
    }
    a += component_scale(c, N) * m;
  }
  // Exact Hermitian symmetry after rounding.
  CMatrix h = (a + a.adjoint()) * 0.5;
  return h;
}

std::vector<double> power_sums(const Eigen::VectorXd& ev, int K) {
  if (K < 1 || K > 12) throw DomainError("empirical_moments: K must be in [1, 12]");
  std::vector<double> m(K, 0.0);
  const double n = static_cast<double>(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double p = 1;
    for (int k = 0; k < K; ++k) {
      p *= ev[i];
      m[k] += p;
    }
  }
  for (auto& v : m) v /= n;
  return m;
}

std::vector<double> empirical_moments(const CMatrix& A, int K) {
  if (A.rows() != A.cols() || A.rows() == 0) throw DomainError("empirical_moments: need a square matrix");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("empirical_moments: eigen solver failed");
  return power_sums(es.eigenvalues(), K);
}

bool tridiagonal_eligible(const EnsembleSpec& spec) {
  int n_gue = 0, n_spike = 0;
  find_kind(spec, ComponentKind::gue, &n_gue);
  const Component* spike = find_kind(spec, ComponentKind::diag_spikes, &n_spike);
  if (n_gue != 1 || n_spike > 1 || n_gue + n_spike != static_cast<int>(spec.components.size())) return false;
  if (spike) {
    int nonzero = 0;
    for (double t : spike->thetas) nonzero += t != 0.0;
    if (nonzero > 1) return false;
  }
  return true;
}

Eigen::VectorXd sample_tridiagonal_spectrum(const EnsembleSpec& spec, int N, std::uint64_t seed) {
  spec.validate();
  if (!tridiagonal_eligible(spec)) throw DomainError("tridiagonal sampler: spec is not GUE plus one spike");
  if (N < 1) throw DomainError("tridiagonal sampler: N must be >= 1");
  int count = 0;
  const Component* gue = find_kind(spec, ComponentKind::gue, &count);
  const Component* spike = find_kind(spec, ComponentKind::diag_spikes, &count);
  std::mt19937_64 rng(splitmix64(seed));
  std::normal_distribution<double> g(0.0, 1.0);
  // Householder reduction of GUE fixing e_1: diagonal N(0, 1), off-diagonal sqrt(Gamma(N - i, 1)).
  const double s = gue->sigma * component_scale(*gue, N) / std::sqrt(static_cast<double>(N));
  Eigen::VectorXd diag(N), sub(std::max(0, N - 1));
  for (int i = 0; i < N; ++i) diag[i] = s * g(rng);
  for (int i = 0; i + 1 < N; ++i) {
    std::gamma_distribution<double> gam(static_cast<double>(N - 1 - i), 1.0);
    sub[i] = s * std::sqrt(gam(rng));
  }
  if (spike) {
    double theta = 0;
    for (double t : spike->thetas)
      if (t != 0.0) theta = t;
    diag[0] += component_scale(*spike, N) * theta;
  }
  if (N == 1) return diag;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("tridiagonal sampler: eigen solver failed");
  return es.eigenvalues();
}

MomentEstimates estimate_moments(const EnsembleSpec& spec, int K, const FitOptions& opt) {
  spec.validate();
  if (opt.samples < 2) throw DomainError("monte carlo: need at least 2 samples");
  if (K < 1 || K > 12) throw DomainError("monte carlo: K must be in [1, 12]");
  const bool fast = opt.fast_path && tridiagonal_eligible(spec);
  MomentEstimates est;
  est.n_grid = opt.n_grid;
  for (int N : opt.n_grid) {
    if (N < 1 || N > 2048) throw DomainError("monte carlo: N must be in [1, 2048]");
    std::vector<Welford> acc(K);
    // Independent stream per (N, sample).
    const std::uint64_t base = splitmix64(opt.seed ^ splitmix64(static_cast<std::uint64_t>(N)));
    for (int s = 0; s < opt.samples; ++s) {
      const std::uint64_t seed = splitmix64(base + static_cast<std::uint64_t>(s));
      std::vector<double> m =
          fast ? power_sums(sample_tridiagonal_spectrum(spec, N, seed), K) : empirical_moments(sample_matrix(spec, N, seed), K);
      for (int k = 0; k < K; ++k) acc[k].add(m[k]);
    }
    std::vector<double> mean(K), se(K);
    for (int k = 0; k < K; ++k) {
      mean[k] = acc[k].mean;
      se[k] = acc[k].stderr_();
    }
    est.mean.push_back(std::move(mean));
    est.stderr_.push_back(std::move(se));
  }
  return est;
}

WlsFit weighted_fit_powers(const std::vector<int>& n_grid, const std::vector<double>& y, const std::vector<double>& se,
                           const std::vector<int>& powers) {
  const int m = static_cast<int>(n_grid.size()), p = static_cast<int>(powers.size());
  if (static_cast<int>(y.size()) != m || static_cast<int>(se.size()) != m)
    throw DomainError("fit: size mismatch");
  if (m < p + 1) throw DomainError("fit: need at least one residual degree of freedom");
  Eigen::MatrixXd X(m, p);
  Eigen::VectorXd w(m), Y(m);
  double floor = 0;
  for (double s : se) floor = std::max(floor, s);
  floor = floor > 0 ? floor * 1e-9 : 1e-15;
  for (int i = 0; i < m; ++i) {
    const double u = 1.0 / n_grid[i];
    for (int j = 0; j < p; ++j) X(i, j) = std::pow(u, powers[j]);
    const double s = std::max(se[i], floor);
    w[i] = 1.0 / (s * s);
    Y[i] = y[i];
  }
  Eigen::MatrixXd XtW = X.transpose() * w.asDiagonal();
  Eigen::MatrixXd normal = XtW * X;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  if (lu.rank() < p) throw DomainError("fit: singular design, N grid too degenerate");
  Eigen::MatrixXd cov = lu.inverse();
  Eigen::VectorXd beta = cov * (XtW * Y);
  WlsFit fit;
  fit.coef.assign(beta.data(), beta.data() + p);
  fit.cov.assign(p, std::vector<double>(p));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) fit.cov[i][j] = cov(i, j);
  Eigen::VectorXd r = Y - X * beta;
  fit.chi2 = r.dot(w.asDiagonal() * r);
  fit.dof = m - p;
  return fit;
}

WlsFit weighted_fit(const std::vector<int>& n_grid, const std::vector<double>& y, const std::vector<double>& se, int p) {
  std::vector<int> powers(p);
  for (int j = 0; j < p; ++j) powers[j] = j;
  return weighted_fit_powers(n_grid, y, se, powers);
}

std::vector<std::vector<std::optional<double>>> predict_coefficients(const EnsembleSpec& spec, int K, int orders) {
  spec.validate();
  std::vector<std::vector<std::optional<double>>> out(K, std::vector<std::optional<double>>(orders + 1));
  // Exponents of N in the log-transform: GUE at s = 0, 1/2, 1 feeds Psi, Phi, T;
  // Wishart and deterministic spikes at s = 0 feed Psi and Phi.
  bool first = true, second = true;
  const int order = default_truncation(K, 2);
  Series psi = Series::zero(order), phi = Series::zero(order), t = Series::zero(order);
  for (const auto& c : spec.components) {
    const double s = c.scale_exponent;
    if (c.kind == ComponentKind::gue && (s == 0 || s == 0.5 || s == 1)) {
      Series& target = s == 0 ? psi : (s == 0.5 ? phi : t);
      target[2] += c.sigma * c.sigma / 2.0;
    } else if (c.kind == ComponentKind::wishart && s == 0) {
      for (int n = 1; n <= order; ++n) psi[n] += c.ratio / n;
      // The finite-N transform of X X^* is exact only when M = ratio N.
      second = false;
    } else if (c.kind == ComponentKind::diag_spikes && s == 0) {
      phi = phi + finite_rank_phi(c.thetas, order);
      // Deterministic spikes carry 1/N corrections of the rank-one transform.
      second = false;
    } else if (c.kind == ComponentKind::diag_spikes && s == 1) {
      second = false;
    } else {
      first = second = false;
    }
  }
  if (!first) return out;
  auto mu = lln_moments_hc(psi, K);
  auto mu1 = correction1_hc(psi, phi, K);
  std::vector<double> two;
  if (orders >= 2 && second) {
    auto parts = correction2_hc(psi, phi, t, K);
    for (int k = 0; k < K; ++k) two.push_back(parts.mu2[k] + parts.nu2[k]);
  }
  for (int k = 0; k < K; ++k) {
    out[k][0] = mu[k];
    if (orders >= 1) out[k][1] = mu1[k];
    if (orders >= 2 && !two.empty()) out[k][2] = two[k];
  }
  return out;
}

double MCReport::coef_se(int j) const { return std::sqrt(std::max(0.0, cov.at(j).at(j))); }

bool MCReport::consistent(double max_z) const {
  for (const auto& v : z)
    if (v && !(std::abs(*v) <= max_z)) return false;
  return true;
}

std::vector<MCReport> fit_expansion(const EnsembleSpec& spec, int K, const FitOptions& opt) {
  if (opt.orders < 1 || opt.orders > 2) throw DomainError("fit_expansion: orders must be 1 or 2");
  if (opt.orders == 2 && !opt.expensive) throw DomainError("fit_expansion: order-2 fits require the expensive flag");
  const int p = opt.orders + 1;
  const int need = opt.orders == 2 ? 5 : p + 1;
  if (static_cast<int>(opt.n_grid.size()) < need)
    throw DomainError("fit_expansion: N grid needs at least " + std::to_string(need) + " points");
  auto est = estimate_moments(spec, K, opt);
  auto pred = predict_coefficients(spec, K, opt.orders);
  std::vector<MCReport> out;
  for (int k = 1; k <= K; ++k) {
    MCReport r;
    r.k = k;
    r.n_grid = opt.n_grid;
    for (size_t i = 0; i < opt.n_grid.size(); ++i) {
      r.mean.push_back(est.mean[i][k - 1]);
      r.stderr_.push_back(est.stderr_[i][k - 1]);
    }
    auto fit = weighted_fit(opt.n_grid, r.mean, r.stderr_, p);
    r.coef = fit.coef;
    r.cov = fit.cov;
    r.chi2 = fit.chi2;
    r.dof = fit.dof;
    r.prediction = pred[k - 1];
    r.z.resize(p);
    for (int j = 0; j < p; ++j) {
      if (!r.prediction[j]) continue;
      const double se = r.coef_se(j);
      const double diff = r.coef[j] - *r.prediction[j];
      r.z[j] = se > 0 ? diff / se : (diff == 0 ? 0.0 : std::copysign(INFINITY, diff));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> harer_zagier(int k) {
  if (k < 0) throw DomainError("harer_zagier: k must be >= 0");
  if (k % 2) return {0.0};
  // (j+2) t_{j+1} = (4j+2) t_j + j(4j^2-1) N^{-2} t_{j-1}, coefficients in N^{-2}.
  const int half = k / 2;
  std::vector<std::vector<double>> t(half + 1);
  t[0] = {1.0};
  if (half >= 1) t[1] = {1.0};
  for (int j = 1; j < half; ++j) {
    std::vector<double> next(j / 2 + 2, 0.0);
    for (size_t g = 0; g < t[j].size(); ++g) next[g] += (4.0 * j + 2) * t[j][g];
    for (size_t g = 0; g < t[j - 1].size(); ++g) next[g + 1] += j * (4.0 * j * j - 1) * t[j - 1][g];
    for (auto& v : next) v /= (j + 2);
    while (next.size() > 1 && next.back() == 0.0) next.pop_back();
    t[j + 1] = next;
  }
  return t[half];
}

FitOptions genus_defaults() {
  FitOptions o;
  o.n_grid = {12, 16, 24, 32, 48};
  o.samples = 20000;
  o.orders = 2;
  o.expensive = true;
  return o;
}

std::vector<GenusRow> genus_check(int K, const FitOptions& opt) {
  if (K < 2 || K > 8 || K % 2) throw DomainError("genus_check: K must be even and in [2, 8]");
  if (opt.n_grid.size() < 3) throw DomainError("genus_check: N grid needs at least 3 points");
  auto est = estimate_moments(EnsembleSpec::gue(), K, opt);
  const int order = default_truncation(K, 2);
  Series psi = Series::zero(order);
  psi[2] = 0.5;
  auto parts = correction2_hc(psi, Series::zero(order), Series::zero(order), K);
  auto mu = lln_moments_hc(psi, K);
  std::vector<GenusRow> rows;
  for (int k = 2; k <= K; k += 2) {
    std::vector<double> y, se;
    for (size_t i = 0; i < opt.n_grid.size(); ++i) {
      y.push_back(est.mean[i][k - 1]);
      se.push_back(est.stderr_[i][k - 1]);
    }
    auto fit = weighted_fit_powers(opt.n_grid, y, se, {0, 2});
    GenusRow r;
    r.k = k;
    r.a = fit.coef[0];
    r.c = fit.coef[1];
    r.a_se = std::sqrt(fit.cov[0][0]);
    r.c_se = std::sqrt(fit.cov[1][1]);
    r.catalan = mu[k - 1];
    r.engine_c = parts.mu2[k - 1] + parts.nu2[k - 1];
    auto hz = harer_zagier(k);
    r.exact_c = hz.size() > 1 ? hz[1] : 0.0;
    auto within = [](double v, double target, double s) {
      return s > 0 ? std::abs(v - target) <= 3 * s : std::abs(v - target) <= 1e-12 * (1 + std::abs(target));
    };
    r.pass = within(r.a, r.catalan, r.a_se) && within(r.c, r.engine_c, r.c_se);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace freecorr
