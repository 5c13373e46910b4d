#pragma once

// Limit and correction measures: Stieltjes-transform reconstruction, outlier
// detection, closed-form catalog and quadrature.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freecorr/expansion.hpp"
#include "freecorr/rational_function.hpp"

namespace freecorr {

using Rational = RationalFunction<double>;
using Poly = Polynomial<double>;
using cplx = std::complex<double>;

enum class MeasureKind { probability, signed_correction };
inline const char* measure_kind_name(MeasureKind k) {
  return k == MeasureKind::probability ? "probability" : "signed-correction";
}

struct Atom {
  double x = 0;
  double w = 0;
};

struct SpectralMeasure {
  std::vector<double> grid;     // increasing
  std::vector<double> density;  // same length as grid
  std::vector<double> weights;  // optional quadrature weights, empty means trapezoid
  std::vector<char> valid;      // optional per-point solver status
  std::vector<Atom> atoms;
  double lo = 0, hi = 0;
  MeasureKind kind = MeasureKind::probability;
  std::optional<double> contour_mass;

  double continuous_mass() const;
  double total_mass() const;
};

enum class KMode { lln, correction };

// Data for the functional inverse of the Cauchy transform:
//   HC:    K(x) = Psi'(x) + 1/x
//   Schur: F(x) = x Psi'(x) + x/(x-1)
// and the correction numerator N = Phi' (HC) or Phi' - 1/(2x) (Schur).
struct KFunction {
  Side side = Side::hc;
  Rational psi_prime;
  Rational phi_prime;
  std::vector<double> poles;  // real poles of phi_prime
  KMode mode = KMode::correction;
  double scan_lo = -10, scan_hi = 10;

  double center() const { return side == Side::hc ? 0.0 : 1.0; }
  Rational numerator() const;
  std::vector<double> numerator_poles() const;
  cplx F(cplx x) const;
  cplx dF(cplx x) const;
  // F at infinity when finite.
  std::optional<double> F_infinity() const;
};

// Midpoint cos-substitution grid t = c + r cos(phi) on [lo, hi] with quadrature weights.
struct Grid {
  std::vector<double> t, w;
};
Grid chebyshev_grid(double lo, double hi, int n);

struct SupportPiece {
  double a = 0, b = 0;
  bool frozen = false;  // Schur side: x_+ real negative, LLN density 1, no correction density
};

struct Support {
  // Adjacent pieces between consecutive edge candidates, not merged.
  std::vector<SupportPiece> intervals;
  std::vector<double> critical_points;  // real zeros of F' in the scan window
  double lo = 0, hi = 0;
  // Strictly inside a non-frozen piece.
  bool contains_open(double y, double tol = 1e-9) const;
  // Piecewise cos-substitution grid, about n points in total.
  Grid grid(int n) const;
};

// Physical branch x_+(y) for Im y > 0 by vertical continuation from y + iY.
cplx solve_branch(const KFunction& kf, cplx y);
// Cauchy transform of the reconstructed measure at Im y > 0.
cplx cauchy_transform(const KFunction& kf, cplx y);

Support find_support(const KFunction& kf);
std::vector<Atom> detect_outliers(const KFunction& kf);

struct ReconstructOptions {
  double eta = 1e-3;
  bool richardson = true;
  bool calibrate = true;
  int contour_points = 512;
};
SpectralMeasure reconstruct_density(const KFunction& kf, const std::vector<double>& grid,
                                    const ReconstructOptions& opt = {});
// Piecewise grid on the support.
SpectralMeasure reconstruct_density(const KFunction& kf, int n, const ReconstructOptions& opt = {});

// (1/2 pi i) times the contour integral of the Cauchy transform around the support.
double contour_mass(const KFunction& kf, int points = 512);

// Moments of the measure kf describes, from the series engine (k = 1..K).
std::vector<double> engine_reference_moments(const KFunction& kf, int K);

// int t^k dm for k = 0..K.
std::vector<double> quadrature_moments(const SpectralMeasure& m, int K);

using Params = std::map<std::string, double>;

// Closed-form measures: semicircle, marchenko_pastur(lambda), gue_correction,
// wishart_correction(lambda > 1), bbp(theta), wishart_bbp(theta), dbbp(gamma, alpha),
// dbbp_lln(gamma), aztec(alpha, A), aztec_lln(alpha).
SpectralMeasure catalog(const std::string& name, const Params& params, int n = 4000);
std::vector<std::string> catalog_names();

// Second-order functionals: gue_pure, gue_full, spiked(theta1, theta2), higher_bbp(theta1, theta2).
// P holds coefficients of t^j.
double eval_second_order_functional(const std::string& name, const std::vector<double>& P,
                                    const Params& params = {});

}  // namespace freecorr
