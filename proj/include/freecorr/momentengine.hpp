#pragma once

// Closed-form LLN and correction moments from jets of Psi, Phi, T, Psi_j.

#include <vector>

#include "freecorr/expansion.hpp"
#include "freecorr/ncpart.hpp"
#include "freecorr/series.hpp"

namespace freecorr {

struct AsymptoticInput {
  Side side = Side::hc;
  std::vector<Series> series;  // Psi_0 .. Psi_n
  double epsilon = 1.0;        // scale exponent, metadata only

  int n() const { return static_cast<int>(series.size()) - 1; }
  double center() const { return side == Side::hc ? 0.0 : 1.0; }
  void validate() const;
};

// Series order that every formula below accepts for moments up to K and corrections up to n.
int default_truncation(int K, int n);

// mu_k = sum_m k!/(m!(m+1)!(k-m)!) d^m (Psi')^{k-m} at 0.
std::vector<double> lln_moments_hc(const Series& psi, int K);
// First correction driven by Phi.
std::vector<double> correction1_hc(const Series& psi, const Series& phi, int K);

struct SecondOrderParts {
  std::vector<double> mu2;  // infinitesimal order-2 part
  std::vector<double> nu2;  // part coming from the third derivative of Psi and (Psi'')^2
};
SecondOrderParts correction2_hc(const Series& psi, const Series& phi, const Series& t, int K);

// mu^{(j)}_k for j = 0..n from Psi_0..Psi_n. n <= 4.
ExpansionResult higher_corrections_hc(const AsymptoticInput& input, int K);

enum class Regime { degenerate, ergodic, intermediate };
std::vector<double> regime_moments(const Series& psi, Regime regime, int K);

// Schur side, series centered at 1.
std::vector<double> schur_lln_moments(const Series& psi, int K);
std::vector<double> schur_correction1(const Series& psi, const Series& phi, int K);
CumulantTable quantized_cumulants(const Series& psi, const Series& phi, int K);

// Phi(x) = sum_i -log(1 - theta_i x) at 0.
Series finite_rank_phi(const std::vector<double>& thetas, int order);
// Psi(b) = g1 b + g2 b^2/2 + sum_n (-x_n b - log(1 - x_n b)) at 0.
Series voiculescu_psi(double gamma1, double gamma2, const std::vector<double>& xs, int order);

// kappa^{(i)}_m = i! Psi_i^{(m)}(0)/(m-1)!, m = 1..K.
CumulantTable hc_cumulant_table(const std::vector<Series>& psis, int K);

// Dispatch on side and n. For HC with n = 2 and epsilon = 1 the order-2 row is
// mu'' + nu'' and both parts are attached.
ExpansionResult expand(const AsymptoticInput& input, int K);

}  // namespace freecorr
