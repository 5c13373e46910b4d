#include "freecorr/models.hpp"

#include <cmath>

#include "freecorr/errors.hpp"

namespace freecorr {

namespace {

// sum_i -log(1 - theta_i (x - center)) about center.
Series log_series(const std::vector<double>& thetas, int order, double center) {
  Series s = finite_rank_phi(thetas, order);
  return Series(center, s.coeffs());
}

Series quadratic(double a, int order) {
  Series s = Series::zero(order);
  if (order >= 2) s[2] = a;
  return s;
}

Series linear(double a, int order, double center = 0.0) {
  std::vector<double> c(order + 1, 0.0);
  if (order >= 1) c[1] = a;
  return Series(center, std::move(c));
}

const Rational kIdentity = Rational::polynomial(Poly{0.0, 1.0});

// theta/(1 - theta x)
Rational spike_prime(double theta) { return Rational(Poly{theta}, Poly{1.0, -theta}); }

std::vector<double> spike_poles(double theta) {
  if (theta == 0) return {};
  return {1.0 / theta};
}

KFunction hc_kfunction(Rational psi_prime, Rational phi_prime, std::vector<double> poles) {
  KFunction kf;
  kf.side = Side::hc;
  kf.psi_prime = std::move(psi_prime);
  kf.phi_prime = std::move(phi_prime);
  kf.poles = std::move(poles);
  return kf;
}

Component gue_component(double scale_exponent) {
  Component c;
  c.scale_exponent = scale_exponent;
  return c;
}

Component spike_component(double theta, double scale_exponent) {
  Component c;
  c.kind = ComponentKind::diag_spikes;
  c.thetas = {theta};
  c.scale_exponent = scale_exponent;
  return c;
}

Component wishart_component(double ratio) {
  Component c;
  c.kind = ComponentKind::wishart;
  c.ratio = ratio;
  return c;
}

Params with_defaults(const ModelInfo& info, const Params& given) {
  Params p = info.defaults;
  for (const auto& [k, v] : given) {
    if (!info.defaults.count(k)) throw DomainError("model '" + info.name + "': unknown parameter '" + k + "'");
    if (!std::isfinite(v)) throw DomainError("model '" + info.name + "': parameter '" + k + "' must be finite");
    p[k] = v;
  }
  return p;
}

}  // namespace

std::vector<ModelInfo> model_catalog() {
  return {
      {"gue", Side::hc, {}, "GUE; second order is the genus term"},
      {"gue-bbp", Side::hc, {{"theta", 2.0}}, "GUE plus a rank-one spike theta"},
      {"wishart", Side::hc, {{"lambda", 2.0}}, "Wishart X X^*/N with M = lambda N plus GUE at scale N^{-1/2}"},
      {"wishart-bbp", Side::hc, {{"lambda", 1.0}, {"theta", 2.5}}, "Wishart plus a rank-one spike theta"},
      {"plancherel-dbbp", Side::schur, {{"gamma", 9.0}, {"alpha", 4.0}}, "Plancherel growth with a discrete spike"},
      {"aztec", Side::schur, {{"alpha", 0.9}, {"A", 3.0}}, "Aztec diamond section with a weight-A perturbation"},
      {"gue-three-scale", Side::hc, {}, "GUE at scales 1, N^{-1/2}, N^{-1}"},
      {"spiked-three-scale", Side::hc, {{"theta1", 2.0}, {"theta2", 0.5}}, "GUE + theta1 X X^* + (theta2/N) Y Y^*"},
      {"higher-bbp", Side::hc, {{"theta1", 2.0}, {"theta2", 3.0}, {"epsilon", 0.25}},
       "GUE + spikes on scales N^{1-epsilon} and N^{1-2 epsilon}"},
      {"uniform-schur", Side::schur, {}, "Deterministic zero signature"},
  };
}

Model build_model(const std::string& name, const Params& given, int K) {
  if (K < 1) throw DomainError("model: K must be >= 1");
  const ModelInfo* info = nullptr;
  auto all = model_catalog();
  for (const auto& m : all)
    if (m.name == name) info = &m;
  if (!info) throw DomainError("unknown model '" + name + "'");
  Model m;
  m.name = name;
  m.params = with_defaults(*info, given);
  const Params& p = m.params;
  m.input.side = info->side;
  const int ord = default_truncation(K, 2);

  if (name == "gue") {
    m.input.series = {quadratic(0.5, ord), Series::zero(ord), Series::zero(ord)};
    m.kfunction = hc_kfunction(kIdentity, Rational::constant(0.0), {});
    m.catalog_lln = "semicircle";
    m.functional = "gue_pure";
    m.ensemble = EnsembleSpec::gue();
  } else if (name == "gue-bbp") {
    double th = p.at("theta");
    m.input.series = {quadratic(0.5, ord), finite_rank_phi({th}, ord)};
    m.kfunction = hc_kfunction(kIdentity, spike_prime(th), spike_poles(th));
    m.catalog_lln = "semicircle";
    m.catalog_correction = "bbp";
    m.catalog_params = {{"theta", th}};
    m.ensemble = EnsembleSpec::gue_spike(th);
  } else if (name == "wishart") {
    double l = p.at("lambda");
    if (!(l > 0)) throw DomainError("wishart: lambda must be > 0");
    Series psi = Series::zero(ord);
    for (int n = 1; n <= ord; ++n) psi[n] = l / n;
    m.input.series = {psi, quadratic(0.5, ord)};
    m.kfunction = hc_kfunction(Rational(Poly{l}, Poly{1.0, -1.0}), kIdentity, {});
    m.catalog_lln = "marchenko_pastur";
    if (l > 1) m.catalog_correction = "wishart_correction";
    m.catalog_params = {{"lambda", l}};
    EnsembleSpec e;
    e.components = {wishart_component(l), gue_component(0.5)};
    m.ensemble = e;
  } else if (name == "wishart-bbp") {
    double l = p.at("lambda"), th = p.at("theta");
    if (!(l > 0)) throw DomainError("wishart-bbp: lambda must be > 0");
    Series psi = Series::zero(ord);
    for (int n = 1; n <= ord; ++n) psi[n] = l / n;
    m.input.series = {psi, finite_rank_phi({th}, ord)};
    m.kfunction = hc_kfunction(Rational(Poly{l}, Poly{1.0, -1.0}), spike_prime(th), spike_poles(th));
    m.catalog_lln = "marchenko_pastur";
    if (std::abs(l - 1) < 1e-12) m.catalog_correction = "wishart_bbp";
    m.catalog_params = {{"lambda", l}, {"theta", th}};
    EnsembleSpec e;
    e.components = {wishart_component(l), spike_component(th, 0)};
    m.ensemble = e;
  } else if (name == "plancherel-dbbp") {
    double g = p.at("gamma"), al = p.at("alpha");
    if (!(g > 0) || !(al > 0)) throw DomainError("plancherel-dbbp: gamma and alpha must be > 0");
    m.input.series = {linear(g, ord, 1.0), log_series({al}, ord, 1.0)};
    KFunction kf;
    kf.side = Side::schur;
    kf.psi_prime = Rational::constant(g);
    kf.phi_prime = Rational(Poly{al}, Poly{1 + al, -al});
    kf.poles = {1 + 1 / al};
    m.kfunction = kf;
    m.catalog_lln = "dbbp_lln";
    m.catalog_correction = "dbbp";
    m.catalog_params = {{"gamma", g}, {"alpha", al}};
  } else if (name == "aztec") {
    double al = p.at("alpha"), A = p.at("A");
    if (!(al > 0.5 && al < 1) || !(A > 1)) throw DomainError("aztec: requires 1/2 < alpha < 1 and A > 1");
    // Psi = (1/alpha - 1) log((1 + x)/2), Phi = log((1 + A x)/(1 + A)) - log((1 + x)/2).
    Series half = log_series({-0.5}, ord, 1.0);
    Series psi = scale(half, -(1 / al - 1));
    Series phi = half - log_series({-A / (1 + A)}, ord, 1.0);
    m.input.series = {psi, phi};
    KFunction kf;
    kf.side = Side::schur;
    kf.psi_prime = Rational(Poly{1 / al - 1}, Poly{1.0, 1.0});
    kf.phi_prime = Rational(Poly{A}, Poly{1.0, A}) - Rational(Poly{1.0}, Poly{1.0, 1.0});
    kf.poles = {-1 / A, -1.0};
    m.kfunction = kf;
    m.catalog_lln = "aztec_lln";
    m.catalog_correction = "aztec";
    m.catalog_params = {{"alpha", al}, {"A", A}};
  } else if (name == "gue-three-scale") {
    m.input.series = {quadratic(0.5, ord), quadratic(0.5, ord), quadratic(0.5, ord)};
    m.kfunction = hc_kfunction(kIdentity, kIdentity, {});
    m.catalog_lln = "semicircle";
    m.catalog_correction = "gue_correction";
    m.functional = "gue_full";
    EnsembleSpec e;
    e.components = {gue_component(0), gue_component(0.5), gue_component(1)};
    m.ensemble = e;
  } else if (name == "spiked-three-scale") {
    double t1 = p.at("theta1"), t2 = p.at("theta2");
    m.input.series = {quadratic(0.5, ord), finite_rank_phi({t1}, ord), linear(t2, ord)};
    m.kfunction = hc_kfunction(kIdentity, spike_prime(t1), spike_poles(t1));
    m.catalog_lln = "semicircle";
    m.catalog_correction = "bbp";
    m.catalog_params = {{"theta", t1}};
    m.functional = "spiked";
    EnsembleSpec e;
    e.components = {gue_component(0), spike_component(t1, 0), spike_component(t2, 1)};
    m.ensemble = e;
  } else if (name == "higher-bbp") {
    double t1 = p.at("theta1"), t2 = p.at("theta2"), eps = p.at("epsilon");
    if (!(eps > 0 && eps < 0.5)) throw DomainError("higher-bbp: epsilon must be in (0, 1/2)");
    m.input.series = {quadratic(0.5, ord), finite_rank_phi({t1}, ord), finite_rank_phi({t2}, ord)};
    m.input.epsilon = eps;
    m.kfunction = hc_kfunction(kIdentity, spike_prime(t1), spike_poles(t1));
    m.catalog_lln = "semicircle";
    m.catalog_correction = "bbp";
    m.catalog_params = {{"theta", t1}};
    m.functional = "higher_bbp";
  } else if (name == "uniform-schur") {
    m.input.series = {Series(1.0, std::vector<double>(ord + 1, 0.0)), Series(1.0, std::vector<double>(ord + 1, 0.0))};
    KFunction kf;
    kf.side = Side::schur;
    kf.psi_prime = Rational::constant(0.0);
    kf.phi_prime = Rational::constant(0.0);
    m.kfunction = kf;
  }
  m.input.validate();
  return m;
}

}  // namespace freecorr
