#include <cmath>
#include <functional>
#include <numbers>

#include "freecorr/errors.hpp"
#include "freecorr/measures.hpp"

namespace freecorr {

namespace {

constexpr double kPi = std::numbers::pi;

double param(const Params& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw DomainError("catalog: missing parameter '" + name + "'");
  return it->second;
}

bool equal_at(double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)); }

// Appends a cos-substitution segment with the given density.
void add_segment(SpectralMeasure& m, double lo, double hi, int n, const std::function<double(double)>& f) {
  Grid g = chebyshev_grid(lo, hi, n);
  for (int i = 0; i < n; ++i) {
    m.grid.push_back(g.t[i]);
    m.weights.push_back(g.w[i]);
    m.density.push_back(f(g.t[i]));
  }
}

SpectralMeasure make(MeasureKind kind, double lo, double hi) {
  SpectralMeasure m;
  m.kind = kind;
  m.lo = lo;
  m.hi = hi;
  return m;
}

SpectralMeasure semicircle(int n) {
  auto m = make(MeasureKind::probability, -2, 2);
  add_segment(m, -2, 2, n, [](double t) { return std::sqrt(std::max(0.0, 4 - t * t)) / (2 * kPi); });
  return m;
}

SpectralMeasure marchenko_pastur(const Params& p, int n) {
  double l = param(p, "lambda");
  if (!(l > 0)) throw DomainError("marchenko_pastur: requires lambda > 0");
  double a = std::pow(1 - std::sqrt(l), 2), b = std::pow(1 + std::sqrt(l), 2);
  auto m = make(MeasureKind::probability, std::min(a, 0.0), b);
  add_segment(m, a, b, n, [=](double t) { return std::sqrt(std::max(0.0, (b - t) * (t - a))) / (2 * kPi * t); });
  if (l < 1) m.atoms.push_back({0.0, 1 - l});
  if (l >= 1) m.lo = a;
  return m;
}

SpectralMeasure gue_correction(int n) {
  auto m = make(MeasureKind::signed_correction, -2, 2);
  add_segment(m, -2, 2, n, [](double t) { return (t * t - 2) / (2 * kPi * std::sqrt(4 - t * t)); });
  return m;
}

SpectralMeasure wishart_correction(const Params& p, int n) {
  double l = param(p, "lambda");
  if (!(l > 1)) throw DomainError("wishart_correction: closed form requires lambda > 1");
  double a = l + 1 - 2 * std::sqrt(l), b = l + 1 + 2 * std::sqrt(l);
  auto m = make(MeasureKind::signed_correction, a, b);
  add_segment(m, a, b, n, [=](double u) {
    double num = l * u * u - 2 * l * l * u + (l + 1) * u + std::pow(l - 1, 3);
    return num / (2 * kPi * u * u * u * std::sqrt((b - u) * (u - a)));
  });
  return m;
}

SpectralMeasure bbp(const Params& p, int n) {
  double th = param(p, "theta");
  auto m = make(MeasureKind::signed_correction, -2, 2);
  add_segment(m, -2, 2, n, [=](double t) {
    return -th * (t - 2 * th) / (2 * kPi * (th * (t - th) - 1) * std::sqrt(4 - t * t));
  });
  if (std::abs(th) > 1) m.atoms.push_back({th + 1 / th, 1.0});
  if (equal_at(std::abs(th), 1)) m.atoms.push_back({th + 1 / th, 0.5});
  return m;
}

SpectralMeasure wishart_bbp(const Params& p, int n) {
  double th = param(p, "theta");
  if (p.count("lambda") && !equal_at(param(p, "lambda"), 1))
    throw DomainError("wishart_bbp: closed form only for lambda = 1");
  auto m = make(MeasureKind::signed_correction, 0, 4);
  add_segment(m, 0, 4, n, [=](double t) {
    return th * (2 - th) / ((1 - th) * t + th * th) / (2 * kPi * std::sqrt((4 - t) * t));
  });
  double d = std::abs(th - 1);
  if (d > 1) m.atoms.push_back({th + 1 + 1 / (th - 1), 1.0});
  if (equal_at(d, 1)) m.atoms.push_back({th + 1 + 1 / (th - 1), 0.5});
  return m;
}

SpectralMeasure dbbp(const Params& p, int n) {
  double g = param(p, "gamma"), al = param(p, "alpha");
  if (!(g > 1)) throw DomainError("dbbp: requires gamma > 1");
  if (!(al > 0)) throw DomainError("dbbp: requires alpha > 0");
  double sg = std::sqrt(g);
  double a = (sg - 1) * (sg - 1), b = (sg + 1) * (sg + 1);
  auto m = make(MeasureKind::signed_correction, a, b);
  add_segment(m, a, b, n, [=](double t) {
    double f = al * (t - 2 * al - g - 1) / (g + al * al + al * g + al - al * t) - (t + 1 - g) / (2 * t);
    return f / (2 * kPi * std::sqrt((g + 1 + 2 * sg - t) * (t - g - 1 + 2 * sg)));
  });
  double loc = al + 1 + g + g / al;
  if (al > sg && !equal_at(al, sg)) m.atoms.push_back({loc, 1.0});
  if (equal_at(al, sg)) m.atoms.push_back({loc, 0.5});
  return m;
}

SpectralMeasure dbbp_lln(const Params& p, int n) {
  double g = param(p, "gamma");
  if (!(g > 1)) throw DomainError("dbbp_lln: requires gamma > 1");
  double sg = std::sqrt(g);
  double a = (sg - 1) * (sg - 1), b = (sg + 1) * (sg + 1);
  auto m = make(MeasureKind::probability, a, b);
  add_segment(m, a, b, n, [=](double t) {
    return std::acos(std::clamp((t - 1 + g) / (2 * std::sqrt(g * t)), -1.0, 1.0)) / kPi;
  });
  return m;
}

void aztec_checks(double al, double A, bool need_A) {
  if (!(al > 0.5 && al < 1)) throw DomainError("aztec: requires 1/2 < alpha < 1");
  if (need_A && !(A > 1)) throw DomainError("aztec: requires A > 1");
}

SpectralMeasure aztec(const Params& p, int n) {
  double al = param(p, "alpha"), A = param(p, "A");
  aztec_checks(al, A, true);
  double r = std::sqrt(al * (1 - al));
  double a = (1 - 2 * r) / (2 * al), b = (1 + 2 * r) / (2 * al);
  auto m = make(MeasureKind::signed_correction, 0, 1 / al);
  add_segment(m, a, b, n, [=](double t) {
    double f = al + (-2 * al + 1) / (4 * t) - al * (2 * al - 1) / (4 * (al * t - 1)) +
               al * (2 * A * A * al - A * A - 2 * A + 2 * al - 1) / (2 * (-al * t + A * A * al * t - 2 * al * A + 1 + A));
    double q = 1 - (2 * al - 1) * (2 * al - 1) - (2 * al * t - 1) * (2 * al * t - 1);
    return f / (kPi * std::sqrt(std::max(q, 1e-300)));
  });
  double thr = (A + 1) * (A + 1) / (2 * (A * A + 1));
  double loc = (-1 + 2 * al * A - A) / (al * (A * A - 1));
  // Edges of the frozen regions carry the boundary half atoms.
  m.atoms.push_back({0.0, 0.5});
  if (equal_at(al, thr)) {
    m.atoms.push_back({loc, -0.5});
  } else if (al > thr) {
    m.atoms.push_back({loc, -1.0});
  }
  m.atoms.push_back({1 / al, -0.5});
  return m;
}

SpectralMeasure aztec_lln(const Params& p, int n) {
  double al = param(p, "alpha");
  aztec_checks(al, 2, false);
  double r = std::sqrt(al * (1 - al));
  double a = (1 - 2 * r) / (2 * al), b = (1 + 2 * r) / (2 * al), e = 1 / al;
  auto m = make(MeasureKind::probability, 0, e);
  int nf = std::max(2, n / 4);
  add_segment(m, 0, a, nf, [](double) { return 1.0; });
  add_segment(m, a, b, n, [=](double t) {
    double q = 1 - (2 * al * t - 1) * (2 * al * t - 1);
    return std::acos(std::clamp((1 - 2 * al) / std::sqrt(std::max(q, 1e-300)), -1.0, 1.0)) / kPi;
  });
  add_segment(m, b, e, nf, [](double) { return 1.0; });
  return m;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"semicircle", "marchenko_pastur", "gue_correction", "wishart_correction", "bbp",
          "wishart_bbp", "dbbp",            "dbbp_lln",       "aztec",              "aztec_lln"};
}

SpectralMeasure catalog(const std::string& name, const Params& params, int n) {
  if (n < 16) throw DomainError("catalog: grid must have at least 16 points");
  if (name == "semicircle") return semicircle(n);
  if (name == "marchenko_pastur") return marchenko_pastur(params, n);
  if (name == "gue_correction") return gue_correction(n);
  if (name == "wishart_correction") return wishart_correction(params, n);
  if (name == "bbp") return bbp(params, n);
  if (name == "wishart_bbp") return wishart_bbp(params, n);
  if (name == "dbbp") return dbbp(params, n);
  if (name == "dbbp_lln") return dbbp_lln(params, n);
  if (name == "aztec") return aztec(params, n);
  if (name == "aztec_lln") return aztec_lln(params, n);
  throw DomainError("catalog: unknown measure '" + name + "'");
}

}  // namespace freecorr
