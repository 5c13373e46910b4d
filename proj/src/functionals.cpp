#include <cmath>
#include <numbers>

#include "freecorr/errors.hpp"
#include "freecorr/measures.hpp"

namespace freecorr {

namespace {

constexpr double kPi = std::numbers::pi;

// int_{-2}^{2} g(t)/sqrt(4-t^2) dt, exact for polynomial g of degree < 2n.
double arcsine_integral(const Poly& g) {
  const int n = 64;
  double s = 0;
  for (int i = 0; i < n; ++i) s += g(2.0 * std::cos(kPi * (i + 0.5) / n));
  return kPi * s / n;
}

// int_{-2}^{2} dt / ((t - c) sqrt(4 - t^2)) for |c| > 2.
double pole_integral(double c) { return -(c > 0 ? 1.0 : -1.0) * kPi / std::sqrt(c * c - 4.0); }

const Poly kT{0.0, 1.0};

double param(const Params& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw DomainError("functional: missing parameter '" + name + "'");
  return it->second;
}

double spike_location(double theta) {
  if (std::abs(std::abs(theta) - 1.0) < 1e-12) throw DomainError("functional: singular parameter |theta| = 1");
  return theta + 1.0 / theta;
}

double gue_pure(const Poly& P) {
  return arcsine_integral(P.derivative().derivative() * Poly{-2.0, 0.0, 1.0}) / (24.0 * kPi);
}

double gue_full(const Poly& P) {
  Poly P1 = P.derivative(), P2 = P1.derivative();
  Poly g = P2 * Poly{-2.0 / 12.0, 0.0, 1.0 / 12.0} + P1 * Poly{0.0, -1.5, 0.0, 0.5} + P * Poly{-2.0, 0.0, 1.0};
  return arcsine_integral(g) / (2.0 * kPi);
}

// Terms driven by a spike of strength theta entering at order N^{-1}.
double spike_terms(const Poly& P, double theta) {
  if (theta == 0.0) return 0.0;
  double c = spike_location(theta);
  Poly P1 = P.derivative();
  double P2c = P1.derivative()(c);
  Poly dq = P1.divide_linear(c);  // (P'(t) - P'(c))/(t - c)
  Poly r = (dq - Poly{P2c}).divide_linear(c);
  double t2 = theta * theta * arcsine_integral(dq) / (2.0 * kPi);
  double t3 = -(theta * theta - 1.0) * arcsine_integral((kT - Poly{2.0 * theta}) * r) / (4.0 * kPi);
  return t2 + t3;
}

double spiked(const Poly& P, const Params& p) {
  double th1 = param(p, "theta1"), th2 = param(p, "theta2");
  double drift = th2 * arcsine_integral(Poly{4.0, 0.0, -1.0} * P.derivative()) / (2.0 * kPi);
  return drift + spike_terms(P, th1) + gue_pure(P);
}

double higher_bbp(const Poly& P, const Params& p) {
  double th1 = param(p, "theta1"), th2 = param(p, "theta2");
  double second = 0.0;
  if (th2 != 0.0) {
    double c = spike_location(th2);
    Poly g = (kT - Poly{2.0 * th2}) * P;
    double R = g(c);
    double integral = arcsine_integral(g.divide_linear(c)) + R * pole_integral(c);
    second = (std::abs(th2) > 1.0 ? P(c) : 0.0) - integral / (2.0 * kPi);
  }
  return second + spike_terms(P, th1);
}

}  // namespace

double eval_second_order_functional(const std::string& name, const std::vector<double>& coeffs, const Params& params) {
  if (coeffs.empty()) throw DomainError("functional: empty polynomial");
  if (coeffs.size() > 13) throw DomainError("functional: polynomial degree must be <= 12");
  Poly P(coeffs);
  if (name == "gue_pure") return gue_pure(P);
  if (name == "gue_full") return gue_full(P);
  if (name == "spiked") return spiked(P, params);
  if (name == "higher_bbp") return higher_bbp(P, params);
  throw DomainError("functional: unknown name '" + name + "'");
}

}  // namespace freecorr
