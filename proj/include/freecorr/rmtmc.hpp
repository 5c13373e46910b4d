#pragma once

// Monte Carlo estimates of normalized power traces and their 1/N fits.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace freecorr {

enum class ComponentKind { gue, wishart, diag_spikes, haar_fixed_spectrum };
const char* component_kind_name(ComponentKind k);
ComponentKind parse_component_kind(const std::string& name);

// Deterministic N-point spectrum: "uniform" (midpoints of [a, b]), "two_point"
// (value a on a fraction p, b elsewhere) or "values" (cycled explicit list).
struct SpectrumDescriptor {
  std::string kind = "uniform";
  double a = 0, b = 1, p = 0.5;
  std::vector<double> values;
  std::vector<double> eigenvalues(int N) const;
};

// One summand of the normalized matrix, entering as N^{-scale_exponent} times the unit component.
struct Component {
  ComponentKind kind = ComponentKind::gue;
  double sigma = 1;             // gue: off-diagonal E|h|^2 = sigma^2/N
  double ratio = 1;             // wishart: M = round(ratio N), A = X X^*/N
  std::vector<double> thetas;   // diag_spikes
  SpectrumDescriptor spectrum;  // haar_fixed_spectrum
  double scale_exponent = 0;
  bool conjugate = false;  // independent Haar rotation
};

struct EnsembleSpec {
  std::vector<Component> components;
  void validate() const;
  static EnsembleSpec gue(double sigma = 1);
  // GUE plus an unrotated diagonal spike.
  static EnsembleSpec gue_spike(double theta);
};

using CMatrix = Eigen::MatrixXcd;

CMatrix haar_unitary(int N, std::mt19937_64& rng);
CMatrix sample_matrix(const EnsembleSpec& spec, int N, std::uint64_t seed);
// N^{-1} Tr A^k for k = 1..K.
std::vector<double> empirical_moments(const CMatrix& A, int K);
std::vector<double> power_sums(const Eigen::VectorXd& eigenvalues, int K);

// Qualifies for the tridiagonal sampler: one GUE plus at most one single-entry spike.
bool tridiagonal_eligible(const EnsembleSpec& spec);
// Eigenvalues of a tridiagonal model equal in law to the ensemble's matrix.
Eigen::VectorXd sample_tridiagonal_spectrum(const EnsembleSpec& spec, int N, std::uint64_t seed);

struct FitOptions {
  std::vector<int> n_grid{64, 128, 256, 512};
  int samples = 2000;
  std::uint64_t seed = 20240501;
  int orders = 1;          // fit (1, 1/N) or (1, 1/N, 1/N^2)
  bool expensive = false;  // required for orders = 2
  bool fast_path = true;   // tridiagonal sampler when eligible
};

struct MCReport {
  int k = 0;
  std::vector<int> n_grid;
  std::vector<double> mean, stderr_;    // per N
  std::vector<double> coef;             // fitted a, b[, c]
  std::vector<std::vector<double>> cov;
  std::vector<std::optional<double>> prediction;  // mu_k, mu'_k[, second order]
  std::vector<std::optional<double>> z;
  double chi2 = 0;
  int dof = 0;
  double coef_se(int j) const;
  // Every available z-score within max_z.
  bool consistent(double max_z = 3.0) const;
};

// Per-N means and standard errors of N^{-1} Tr A^k, k = 1..K.
struct MomentEstimates {
  std::vector<int> n_grid;
  std::vector<std::vector<double>> mean, stderr_;  // [n index][k-1]
};
MomentEstimates estimate_moments(const EnsembleSpec& spec, int K, const FitOptions& opt);

struct WlsFit {
  std::vector<double> coef;
  std::vector<std::vector<double>> cov;
  double chi2 = 0;
  int dof = 0;
};
// Inverse-variance weighted least squares of y on the powers 0..p-1 of 1/N.
WlsFit weighted_fit(const std::vector<int>& n_grid, const std::vector<double>& y, const std::vector<double>& se,
                    int p);
// Same with an explicit list of powers of 1/N.
WlsFit weighted_fit_powers(const std::vector<int>& n_grid, const std::vector<double>& y,
                           const std::vector<double>& se, const std::vector<int>& powers);

// Engine predictions of the coefficients of N^0, N^-1[, N^-2]; empty entries when unavailable.
std::vector<std::vector<std::optional<double>>> predict_coefficients(const EnsembleSpec& spec, int K, int orders);

std::vector<MCReport> fit_expansion(const EnsembleSpec& spec, int K, const FitOptions& opt = {});

// Exact E N^{-1} Tr A^k for GUE (sigma = 1) as coefficients of N^{-2g}.
std::vector<double> harer_zagier(int k);

struct GenusRow {
  int k = 0;
  double a = 0, a_se = 0, c = 0, c_se = 0;
  double catalan = 0, engine_c = 0, exact_c = 0;
  bool pass = false;
};
// Pure GUE, fit a + c/N^2 for even k <= K.
std::vector<GenusRow> genus_check(int K, const FitOptions& opt);
FitOptions genus_defaults();

}  // namespace freecorr
