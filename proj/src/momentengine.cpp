#include "freecorr/momentengine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "freecorr/errors.hpp"

namespace freecorr {

namespace {

double fact(int n) { return detail::factorial<double>(n); }

void require_order(const Series& s, int need, const char* what) {
  if (s.order() < need)
    throw DomainError(std::string(what) + ": series order " + std::to_string(s.order()) + " below required " +
                      std::to_string(need));
}

void require_center(const Series& s, double c, const char* what) {
  if (!detail::same_center(s.center(), c))
    throw DomainError(std::string(what) + ": series must be centered at " + std::to_string(c));
}

void require_k(int K, const char* what) {
  if (K < 1) throw DomainError(std::string(what) + ": K must be >= 1");
}

// Powers (Psi')^p for p = 0..pmax at the derivative's order.
std::vector<Series> powers(const Series& base, int pmax) {
  std::vector<Series> p;
  p.push_back(Series::constant(1.0, base.order(), base.center()));
  for (int j = 1; j <= pmax; ++j) p.push_back(mul(p.back(), base));
  return p;
}

std::string scale_label(int j, double eps) {
  if (j == 0) return "1";
  char buf[64];
  std::snprintf(buf, sizeof buf, "N^-%g", j * eps);
  return buf;
}

}  // namespace

void AsymptoticInput::validate() const {
  if (series.empty()) throw DomainError("asymptotic input: need at least Psi_0");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("asymptotic input: epsilon must lie in (0, 1]");
  // epsilon = 1 with n = 2 is the second-order regime (scales 1, 1/N, 1/N^2).
  const bool second_order = epsilon == 1.0 && n() == 2;
  if (n() * epsilon > 1.0 + 1e-12 && !second_order)
    throw DomainError("asymptotic input: n * epsilon must be <= 1 (or n = 2 with epsilon = 1)");
  for (const auto& s : series) require_center(s, center(), "asymptotic input");
}

int default_truncation(int K, int n) { return K + n + 2; }

std::vector<double> lln_moments_hc(const Series& psi, int K) {
  require_k(K, "lln_moments_hc");
  require_center(psi, 0.0, "lln_moments_hc");
  require_order(psi, K + 1, "lln_moments_hc");
  auto pw = powers(derivative(psi), K);
  std::vector<double> mu(K);
  for (int k = 1; k <= K; ++k) {
    double s = 0;
    for (int m = 0; m <= k; ++m) s += fact(k) / (fact(m + 1) * fact(k - m)) * pw[k - m][m];
    mu[k - 1] = s;
  }
  return mu;
}

std::vector<double> correction1_hc(const Series& psi, const Series& phi, int K) {
  require_k(K, "correction1_hc");
  require_center(psi, 0.0, "correction1_hc");
  require_center(phi, 0.0, "correction1_hc");
  require_order(psi, K + 1, "correction1_hc");
  require_order(phi, K + 1, "correction1_hc");
  auto pw = powers(derivative(psi), K);
  auto dphi = derivative(phi);
  std::vector<double> out(K);
  for (int k = 1; k <= K; ++k) {
    double s = 0;
    for (int m = 0; m <= k - 1; ++m) {
      auto term = mul(pw[k - m - 1], dphi);
      s += fact(k) / (fact(m + 1) * fact(k - m - 1)) * term[m];
    }
    out[k - 1] = s;
  }
  return out;
}

SecondOrderParts correction2_hc(const Series& psi, const Series& phi, const Series& t, int K) {
  require_k(K, "correction2_hc");
  for (const Series* s : {&psi, &phi, &t}) {
    require_center(*s, 0.0, "correction2_hc");
    require_order(*s, K + 2, "correction2_hc");
  }
  auto d1 = derivative(psi);
  auto d2 = derivative(d1);
  auto d3 = derivative(d2);
  auto pw = powers(d1, K);
  auto dphi = derivative(phi);
  auto dphi2 = mul(dphi, dphi);
  auto dt = derivative(t);
  auto d2sq = mul(d2, d2);
  SecondOrderParts r{std::vector<double>(K, 0.0), std::vector<double>(K, 0.0)};
  for (int k = 1; k <= K; ++k) {
    double mu = 0, nu = 0;
    for (int m = 0; m <= k - 1; ++m)
      mu += fact(k) / (fact(m + 1) * fact(k - m - 1)) * mul(pw[k - m - 1], dt)[m];
    for (int m = 0; m <= k - 2; ++m)
      mu += 0.5 * fact(k) / (fact(m + 1) * fact(k - m - 2)) * mul(pw[k - m - 2], dphi2)[m];
    for (int m = 0; m <= k - 3; ++m) {
      double c = mul(pw[k - m - 3], d3)[m];
      nu += fact(k) / (24.0 * fact(m + 1) * fact(k - m - 3)) * c;
      nu += fact(k) / (12.0 * fact(m + 2) * fact(k - m - 3)) * c;
    }
    for (int m = 0; m <= k - 4; ++m)
      nu += fact(k) / (12.0 * fact(m + 2) * fact(k - m - 4)) * mul(pw[k - m - 4], d2sq)[m];
    r.mu2[k - 1] = mu;
    r.nu2[k - 1] = nu;
  }
  return r;
}

namespace {

// Integer solutions of b_1 + 2 b_2 + ... + j b_j = j.
void weighted_compositions(int j, int i, int left, std::vector<int>& b, std::vector<std::vector<int>>& out) {
  if (i > j) {
    if (left == 0) out.push_back(b);
    return;
  }
  for (int v = 0; v * i <= left; ++v) {
    b[i - 1] = v;
    weighted_compositions(j, i + 1, left - v * i, b, out);
  }
  b[i - 1] = 0;
}

}  // namespace

ExpansionResult higher_corrections_hc(const AsymptoticInput& input, int K) {
  require_k(K, "higher_corrections_hc");
  input.validate();
  if (input.side != Side::hc) throw DomainError("higher_corrections_hc: input must be on the HC side");
  int n = input.n();
  if (n > 4) throw DomainError("higher_corrections_hc: n must be <= 4");
  for (const auto& s : input.series) require_order(s, K + n + 1, "higher_corrections_hc");

  std::vector<Series> d;
  for (const auto& s : input.series) d.push_back(derivative(s));
  auto pw0 = powers(d[0], K);

  ExpansionResult r;
  r.side = Side::hc;
  for (int j = 0; j <= n; ++j) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> b(std::max(j, 1), 0);
    if (j == 0) {
      tuples.push_back({});
    } else {
      weighted_compositions(j, 1, j, b, tuples);
    }
    std::vector<double> row(K, 0.0);
    for (const auto& tup : tuples) {
      int total = 0;
      double bfact = 1;
      auto prod = Series::constant(1.0, d[0].order(), 0.0);
      for (std::size_t i = 0; i < tup.size(); ++i) {
        total += tup[i];
        bfact *= fact(tup[i]);
        if (tup[i] > 0) prod = mul(prod, pow_int(d[i + 1], tup[i]));
      }
      for (int k = total; k <= K; ++k) {
        if (k == 0) continue;
        double s = 0;
        for (int m = 0; m <= k - total; ++m) {
          auto term = mul(pw0[k - m - total], prod);
          s += fact(k) / (fact(m + 1) * fact(k - m - total) * bfact) * term[m];
        }
        row[k - 1] += s;
      }
    }
    r.orders.push_back(std::move(row));
    r.scales.push_back(scale_label(j, input.epsilon));
  }
  return r;
}

std::vector<double> regime_moments(const Series& psi, Regime regime, int K) {
  require_k(K, "regime_moments");
  require_center(psi, 0.0, "regime_moments");
  std::vector<double> out(K);
  if (regime == Regime::degenerate) {
    require_order(psi, 1, "regime_moments");
    double c = psi[1];
    double p = 1;
    for (int k = 1; k <= K; ++k) out[k - 1] = (p *= c);
  } else {
    require_order(psi, K, "regime_moments");
    for (int k = 1; k <= K; ++k) out[k - 1] = k * psi[k];  // Psi^{(k)}(0)/(k-1)!
  }
  return out;
}

std::vector<double> schur_lln_moments(const Series& psi, int K) {
  require_k(K, "schur_lln_moments");
  require_center(psi, 1.0, "schur_lln_moments");
  require_order(psi, K + 1, "schur_lln_moments");
  auto dpsi = derivative(psi);
  auto pw = powers(dpsi, K);
  std::vector<double> out(K);
  for (int k = 1; k <= K; ++k) {
    auto xk = Series::monomial(k, dpsi.order(), 1.0);
    double s = 0;
    for (int m = 0; m <= k; ++m) s += fact(k) / (fact(m + 1) * fact(k - m)) * mul(xk, pw[k - m])[m];
    out[k - 1] = s;
  }
  return out;
}

std::vector<double> schur_correction1(const Series& psi, const Series& phi, int K) {
  require_k(K, "schur_correction1");
  require_center(psi, 1.0, "schur_correction1");
  require_center(phi, 1.0, "schur_correction1");
  require_order(psi, K + 1, "schur_correction1");
  require_order(phi, K + 1, "schur_correction1");
  auto dpsi = derivative(psi);
  auto dphi = derivative(phi);
  int T = std::min(dpsi.order(), dphi.order());
  auto pw = powers(dpsi.truncated(T), K);
  auto x = Series::identity(T, 1.0);
  auto half_over_x = div(Series::constant(0.5, T, 1.0), x);
  auto factor = sub(dphi.truncated(T), half_over_x);
  std::vector<double> out(K);
  for (int k = 1; k <= K; ++k) {
    auto xk = mul(Series::monomial(k, T, 1.0), factor);
    double s = 0;
    for (int m = 0; m <= k - 1; ++m)
      s += fact(k) / (fact(m + 1) * fact(k - m - 1)) * mul(xk, pw[k - m - 1])[m];
    out[k - 1] = s;
  }
  return out;
}

CumulantTable quantized_cumulants(const Series& psi, const Series& phi, int K) {
  require_k(K, "quantized_cumulants");
  require_center(psi, 1.0, "quantized_cumulants");
  require_center(phi, 1.0, "quantized_cumulants");
  require_order(psi, K, "quantized_cumulants");
  require_order(phi, K, "quantized_cumulants");
  auto eu = exp_series(Series::local_variable(K, 0.0));
  auto a = compose(psi.truncated(K), eu);
  auto g = compose(phi.truncated(K), eu);
  // (e^u - 1)/u = sum_j u^j/(j+1)!
  std::vector<double> q(K + 1);
  for (int j = 0; j <= K; ++j) q[j] = 1.0 / fact(j + 1);
  auto b = log_series(Series(0.0, q));
  auto row0 = add(a, b);
  auto row1 = sub(g, scale(Series::local_variable(K, 0.0), 0.5));
  CumulantTable t;
  t.order = 1;
  t.rows.assign(2, std::vector<double>(K));
  for (int n = 1; n <= K; ++n) {
    t.rows[0][n - 1] = n * row0[n];
    t.rows[1][n - 1] = n * row1[n];
  }
  return t;
}

Series finite_rank_phi(const std::vector<double>& thetas, int order) {
  if (order < 1) throw DomainError("finite_rank_phi: order must be >= 1");
  auto dphi = Series::zero(order - 1, 0.0);
  for (double th : thetas) {
    auto den = Series(0.0, std::vector<double>(order, 0.0));
    den[0] = 1.0;
    if (order > 1) den[1] = -th;
    dphi = add(dphi, div(Series::constant(th, order - 1, 0.0), den));
  }
  return integral(dphi);
}

Series voiculescu_psi(double gamma1, double gamma2, const std::vector<double>& xs, int order) {
  if (order < 2) throw DomainError("voiculescu_psi: order must be >= 2");
  std::vector<double> c(order + 1, 0.0);
  c[1] = gamma1;
  c[2] = gamma2 / 2.0;
  // -x b - log(1 - x b) = sum_{j>=2} (x b)^j / j
  for (double x : xs) {
    double p = x;
    for (int j = 2; j <= order; ++j) {
      p *= x;
      c[j] += p / j;
    }
  }
  return Series(0.0, c);
}

CumulantTable hc_cumulant_table(const std::vector<Series>& psis, int K) {
  require_k(K, "hc_cumulant_table");
  CumulantTable t;
  t.order = static_cast<int>(psis.size()) - 1;
  for (std::size_t i = 0; i < psis.size(); ++i) {
    require_order(psis[i], K, "hc_cumulant_table");
    std::vector<double> row(K);
    for (int m = 1; m <= K; ++m) row[m - 1] = fact(static_cast<int>(i)) * m * psis[i][m];
    t.rows.push_back(std::move(row));
  }
  t.validate();
  return t;
}

ExpansionResult expand(const AsymptoticInput& input, int K) {
  require_k(K, "expand");
  input.validate();
  int n = input.n();
  ExpansionResult r;
  r.side = input.side;
  if (input.side == Side::schur) {
    if (n > 1) throw DomainError("expand: Schur inputs support n <= 1");
    r.orders.push_back(schur_lln_moments(input.series[0], K));
    r.scales.push_back(scale_label(0, input.epsilon));
    if (n == 1) {
      r.orders.push_back(schur_correction1(input.series[0], input.series[1], K));
      r.scales.push_back(scale_label(1, input.epsilon));
    }
    return r;
  }
  if (n == 2 && input.epsilon == 1.0) {
    r.orders.push_back(lln_moments_hc(input.series[0], K));
    r.orders.push_back(correction1_hc(input.series[0], input.series[1], K));
    auto two = correction2_hc(input.series[0], input.series[1], input.series[2], K);
    std::vector<double> sum(K);
    for (int k = 0; k < K; ++k) sum[k] = two.mu2[k] + two.nu2[k];
    r.orders.push_back(sum);
    for (int j = 0; j <= 2; ++j) r.scales.push_back(scale_label(j, 1.0));
    r.parts.emplace_back("mu2", two.mu2);
    r.parts.emplace_back("nu2", two.nu2);
    return r;
  }
  if (n <= 1) {
    r.orders.push_back(lln_moments_hc(input.series[0], K));
    r.scales.push_back(scale_label(0, input.epsilon));
    if (n == 1) {
      r.orders.push_back(correction1_hc(input.series[0], input.series[1], K));
      r.scales.push_back(scale_label(1, input.epsilon));
    }
    return r;
  }
  return higher_corrections_hc(input, K);
}

}  // namespace freecorr
