#include "freecorr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "freecorr/errors.hpp"
#include "freecorr/random.hpp"
#include "freecorr/series.hpp"

namespace freecorr {

namespace {

using Real = long double;
using Jet = TruncatedSeries<Real>;
using ExactJet = TruncatedSeries<BigRational>;

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Leibniz expansion; the callers keep the size at most 6.
template <class T>
T leibniz_det(const Matrix<T>& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return T(1);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  T total(0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    T term(1);
    for (int i = 0; i < n; ++i) term *= a[i][p[i]];
    if (inversions % 2) total -= term;
    else total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Signed cofactors of column col.
template <class T>
std::vector<T> column_cofactors(const Matrix<T>& a, int col) {
  const int n = static_cast<int>(a.size());
  std::vector<T> cof(n);
  for (int r = 0; r < n; ++r) {
    Matrix<T> minor;
    for (int i = 0; i < n; ++i) {
      if (i == r) continue;
      std::vector<T> row;
      for (int j = 0; j < n; ++j)
        if (j != col) row.push_back(a[i][j]);
      minor.push_back(std::move(row));
    }
    T d = leibniz_det(minor);
    cof[r] = ((r + col) % 2) ? T(-d) : d;
  }
  return cof;
}

template <class T>
T vandermonde(const std::vector<T>& z) {
  T v(1);
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = i + 1; j < z.size(); ++j) v *= z[i] - z[j];
  return v;
}

// V(z + t e_i) as a jet in t.
template <class T>
TruncatedSeries<T> vandermonde_jet(const std::vector<T>& z, int i, int order) {
  auto jet = TruncatedSeries<T>::constant(T(1), order);
  for (size_t a = 0; a < z.size(); ++a)
    for (size_t b = a + 1; b < z.size(); ++b) {
      std::vector<T> c(order + 1, T(0));
      c[0] = z[a] - z[b];
      if (order >= 1) {
        if (static_cast<int>(a) == i) c[1] = T(1);
        if (static_cast<int>(b) == i) c[1] = T(-1);
      }
      jet = jet * TruncatedSeries<T>(T(0), std::move(c));
    }
  return jet;
}

Real hn_constant(int N) {
  Real c = 1;
  for (int i = 1; i < N; ++i) c *= detail::factorial<Real>(i);
  return c;
}

void require_distinct(const std::vector<double>& z, const char* what) {
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = i + 1; j < z.size(); ++j)
      if (z[i] == z[j]) throw DomainError(std::string(what) + ": coincident entries");
}

bool all_equal(const std::vector<double>& z) {
  return std::all_of(z.begin(), z.end(), [&](double v) { return v == z.front(); });
}

// Classifies lambda: true when all equal, throws on partial coincidence.
bool check_hc_inputs(const std::vector<double>& lambda, const std::vector<double>& x, int max_n) {
  if (lambda.empty() || lambda.size() != x.size()) throw DomainError("hc: lambda and x must have equal nonzero length");
  if (static_cast<int>(lambda.size()) > max_n) throw DomainError("hc: N too large");
  require_distinct(x, "hc x");
  if (all_equal(lambda)) return true;
  require_distinct(lambda, "hc lambda");
  return false;
}

std::vector<Real> to_real(const std::vector<double>& v) { return std::vector<Real>(v.begin(), v.end()); }

Matrix<Real> exp_matrix(const std::vector<Real>& lambda, const std::vector<Real>& x) {
  const size_t n = x.size();
  Matrix<Real> m(n, std::vector<Real>(n));
  for (size_t r = 0; r < n; ++r)
    for (size_t j = 0; j < n; ++j) m[r][j] = std::exp(lambda[r] * x[j]);
  return m;
}

Real hc_value(const std::vector<Real>& lambda, const std::vector<Real>& x, bool equal) {
  if (equal) return std::exp(lambda[0] * std::accumulate(x.begin(), x.end(), Real(0)));
  const int N = static_cast<int>(x.size());
  return hn_constant(N) * leibniz_det(exp_matrix(lambda, x)) / (vandermonde(x) * vandermonde(lambda));
}

void require_signature(const std::vector<int>& lambda) {
  if (lambda.empty()) throw DomainError("schur: empty signature");
  for (size_t i = 1; i < lambda.size(); ++i)
    if (lambda[i] > lambda[i - 1]) throw DomainError("schur: signature must be weakly decreasing");
}

int exponent(const std::vector<int>& lambda, int r) {
  const int N = static_cast<int>(lambda.size());
  return lambda[r] + N - 1 - r;
}

template <class T>
T int_power(const T& base, int p) {
  T r(1);
  for (int i = 0; i < std::abs(p); ++i) r *= base;
  return p < 0 ? T(T(1) / r) : r;
}

// (u + t)^p as a jet, p of either sign.
template <class T>
TruncatedSeries<T> power_jet(const T& u, int p, int order) {
  if (p >= 0) {
    // Shifted monomial about t = 0.
    std::vector<T> c(order + 1, T(0));
    T binom(1);
    for (int j = 0; j <= std::min(p, order); ++j) {
      c[j] = binom * int_power(u, p - j);
      binom = binom * T(p - j) / T(j + 1);
    }
    return TruncatedSeries<T>(T(0), std::move(c));
  }
  return TruncatedSeries<T>::constant(T(1), order) / power_jet(u, -p, order);
}

// Sum_i (u_i d_i)^k applied to the alternant det(u_j^{lambda_r + N - 1 - r}) at u,
// each term returned separately.
template <class T>
std::vector<T> euler_terms(const std::vector<int>& lambda, const std::vector<T>& u, int k) {
  const int N = static_cast<int>(u.size());
  Matrix<T> a(N, std::vector<T>(N));
  for (int r = 0; r < N; ++r)
    for (int j = 0; j < N; ++j) a[r][j] = int_power(u[j], exponent(lambda, r));
  std::vector<T> terms(N, T(0));
  for (int i = 0; i < N; ++i) {
    auto cof = column_cofactors(a, i);
    auto jet = TruncatedSeries<T>::zero(k);
    for (int r = 0; r < N; ++r) jet = jet + cof[r] * power_jet(u[i], exponent(lambda, r), k);
    for (int s = 0; s < k; ++s) {
      int ord = jet.order() - 1;
      std::vector<T> w(ord + 1, T(0));
      w[0] = u[i];
      if (ord >= 1) w[1] = T(1);
      jet = TruncatedSeries<T>(T(0), std::move(w)) * derivative(jet);
    }
    terms[i] = jet[0];
  }
  return terms;
}

template <class T>
T schur_eigenvalue(const std::vector<int>& lambda, int k) {
  const int N = static_cast<int>(lambda.size());
  T e(0);
  for (int r = 0; r < N; ++r) e += int_power(T(lambda[r] + N - 1 - r), k);
  return e;
}

Real poly_eval(const std::vector<double>& p, Real x) {
  Real acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Real(*it);
  return acc;
}

// Taylor coefficients of p at x up to the given order.
std::vector<Real> poly_taylor(const std::vector<double>& p, Real x, int order) {
  std::vector<Real> c(order + 1, 0);
  for (int m = 0; m <= order; ++m) {
    Real binom = 1;  // C(j, m), j starting at m
    for (size_t j = m; j < p.size(); ++j) {
      c[m] += Real(p[j]) * binom * std::pow(x, Real(j - m));
      binom = binom * Real(j + 1) / Real(j + 1 - m);
    }
  }
  return c;
}

void check_separable(const SeparableFunction& f, size_t N) {
  if (f.terms.empty()) throw DomainError("dk expansion: empty test function");
  for (const auto& t : f.terms)
    if (t.size() != N) throw DomainError("dk expansion: each term needs one polynomial per coordinate");
}

// d_l^q f at x.
Real partial(const SeparableFunction& f, const std::vector<Real>& x, int l, int q) {
  Real total = 0;
  for (const auto& term : f.terms) {
    Real prod = 1;
    for (size_t j = 0; j < x.size(); ++j) {
      if (static_cast<int>(j) == l) {
        prod *= poly_taylor(term[j], x[j], q)[q] * detail::factorial<Real>(q);
      } else {
        prod *= poly_eval(term[j], x[j]);
      }
    }
    total += prod;
  }
  return total;
}

Real binomial(int n, int k) {
  Real b = 1;
  for (int i = 0; i < k; ++i) b = b * Real(n - i) / Real(i + 1);
  return b;
}

void check_x(const std::vector<double>& x, int max_n, int k, int max_k) {
  if (x.empty() || static_cast<int>(x.size()) > max_n) throw DomainError("dk: N out of range");
  if (k < 0 || k > max_k) throw DomainError("dk: k out of range");
  require_distinct(x, "dk x");
}

// Random reals in [lo, hi] with pairwise gaps at least gap.
std::vector<double> spaced_sample(std::mt19937_64& rng, int n, double lo, double hi, double gap) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    std::vector<double> v(n);
    for (auto& e : v) e = u(rng);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) ok = std::abs(v[i] - v[j]) >= gap;
    if (ok) return v;
  }
}

}  // namespace

double hc_eval(const std::vector<double>& lambda, const std::vector<double>& x) {
  bool equal = check_hc_inputs(lambda, x, 6);
  return static_cast<double>(hc_value(to_real(lambda), to_real(x), equal));
}

double schur_eval(const std::vector<int>& lambda, const std::vector<double>& u) {
  require_signature(lambda);
  if (u.size() != lambda.size() || u.size() > 5) throw DomainError("schur: need N <= 5 points");
  require_distinct(u, "schur u");
  const int N = static_cast<int>(u.size());
  Matrix<Real> a(N, std::vector<Real>(N));
  for (int r = 0; r < N; ++r)
    for (int j = 0; j < N; ++j) a[r][j] = int_power(Real(u[j]), exponent(lambda, r));
  auto ur = to_real(u);
  return static_cast<double>(leibniz_det(a) / vandermonde(ur));
}

BigRational schur_eval_exact(const std::vector<int>& lambda, const std::vector<BigRational>& u) {
  require_signature(lambda);
  const int N = static_cast<int>(lambda.size());
  if (static_cast<int>(u.size()) != N || N > 5) throw DomainError("schur: need N <= 5 points");
  // s_lambda = (prod u)^{lambda_N} s_{lambda - lambda_N}.
  int shift = lambda.back();
  BigRational prefactor(1);
  if (shift != 0) {
    BigRational prod(1);
    for (const auto& v : u) prod *= v;
    if (prod == 0 && shift < 0) throw DomainError("schur: zero point with negative signature entry");
    prefactor = int_power(prod, shift);
  }
  std::vector<int> mu(lambda);
  for (auto& m : mu) m -= shift;
  int top = mu.front() + N;
  // Complete homogeneous h_0..h_top.
  std::vector<BigRational> h(top + 1, BigRational(0));
  h[0] = 1;
  for (const auto& v : u)
    for (int m = 1; m <= top; ++m) h[m] += v * h[m - 1];
  Matrix<BigRational> jt(N, std::vector<BigRational>(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      int idx = mu[i] - i + j;
      jt[i][j] = idx < 0 ? BigRational(0) : h[idx];
    }
  return prefactor * leibniz_det(jt);
}

BigInt schur_dimension(const std::vector<int>& lambda) {
  require_signature(lambda);
  const int N = static_cast<int>(lambda.size());
  if (N > 12) throw DomainError("schur_dimension: N must be <= 12");
  BigInt num = 1, den = 1;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      num *= BigInt(lambda[i] - i - lambda[j] + j);
      den *= BigInt(j - i);
    }
  return num / den;
}

double dk_eigenrelation_error(const std::vector<double>& lambda_in, const std::vector<double>& x_in, int k) {
  if (k < 0 || k > 4) throw DomainError("dk: k must be in [0, 4]");
  bool equal = check_hc_inputs(lambda_in, x_in, 5);
  const int N = static_cast<int>(x_in.size());
  auto lambda = to_real(lambda_in), x = to_real(x_in);
  const Real vx = vandermonde(x);
  Real lhs = 0;
  if (equal) {
    // V f with f = exp(c sum x): lift coordinate i in both factors.
    const Real c = lambda[0];
    const Real base = std::exp(c * std::accumulate(x.begin(), x.end(), Real(0)));
    for (int i = 0; i < N; ++i) {
      std::vector<Real> e(k + 1);
      for (int j = 0; j <= k; ++j) e[j] = base * int_power(c, j) / detail::factorial<Real>(j);
      Jet prod = vandermonde_jet(x, i, k) * Jet(0, std::move(e));
      lhs += detail::factorial<Real>(k) * prod[k];
    }
  } else {
    // V f = c_N det(exp(lambda_r x_j)) / V(lambda); expand along the lifted column.
    const Real scale = hn_constant(N) / vandermonde(lambda);
    auto m = exp_matrix(lambda, x);
    for (int i = 0; i < N; ++i) {
      auto cof = column_cofactors(m, i);
      Jet jet = Jet::zero(k);
      for (int r = 0; r < N; ++r) {
        std::vector<Real> lin(k + 1, 0);
        lin[0] = lambda[r] * x[i];
        if (k >= 1) lin[1] = lambda[r];
        jet = jet + cof[r] * exp_series(Jet(0, std::move(lin)));
      }
      lhs += scale * detail::factorial<Real>(k) * jet[k];
    }
  }
  lhs /= vx;
  Real eig = 0;
  for (auto l : lambda) eig += int_power(l, k);
  const Real f = hc_value(lambda, x, equal);
  const Real rhs = eig * f;
  Real denom = std::max({std::abs(rhs), std::abs(f), Real(1e-300)});
  return static_cast<double>(std::abs(lhs - rhs) / denom);
}

CheckReport check_dk_eigenrelation(const std::vector<double>& lambda, const std::vector<double>& x, int k,
                                   double tol) {
  CheckReport r;
  r.check = "dk";
  r.instances = 1;
  r.max_rel_err = dk_eigenrelation_error(lambda, x, k);
  r.pass = r.max_rel_err <= tol;
  return r;
}

bool dk_schur_exact_holds(const std::vector<int>& lambda, const std::vector<BigRational>& u, int k) {
  require_signature(lambda);
  const int N = static_cast<int>(lambda.size());
  if (static_cast<int>(u.size()) != N || N > 4) throw DomainError("dk-schur: need N <= 4 points");
  if (k < 0 || k > 4) throw DomainError("dk-schur: k must be in [0, 4]");
  for (int i = 0; i < N; ++i) {
    if (u[i] == 0) throw DomainError("dk-schur: points must be nonzero");
    for (int j = i + 1; j < N; ++j)
      if (u[i] == u[j]) throw DomainError("dk-schur: coincident points");
  }
  auto terms = euler_terms(lambda, u, k);
  BigRational lhs(0);
  for (const auto& t : terms) lhs += t;
  const BigRational v = vandermonde(u);
  lhs /= v;
  const BigRational rhs = schur_eigenvalue<BigRational>(lambda, k) * schur_eval_exact(lambda, u);
  return lhs == rhs;
}

double dk_schur_error(const std::vector<int>& lambda, const std::vector<double>& u_in, int k) {
  require_signature(lambda);
  const int N = static_cast<int>(lambda.size());
  if (static_cast<int>(u_in.size()) != N || N > 4) throw DomainError("dk-schur: need N <= 4 points");
  if (k < 0 || k > 4) throw DomainError("dk-schur: k must be in [0, 4]");
  require_distinct(u_in, "dk-schur u");
  for (double v : u_in)
    if (v == 0) throw DomainError("dk-schur: points must be nonzero");
  auto u = to_real(u_in);
  auto terms = euler_terms(lambda, u, k);
  Real lhs = 0, size = 0;
  for (auto t : terms) {
    lhs += t;
    size = std::max(size, std::abs(t));
  }
  const Real v = vandermonde(u);
  lhs /= v;
  const Real rhs = schur_eigenvalue<Real>(lambda, k) * Real(schur_eval(lambda, u_in));
  Real denom = std::max({std::abs(rhs), size / std::abs(v), Real(1e-300)});
  return static_cast<double>(std::abs(lhs - rhs) / denom);
}

CheckReport check_dk_schur_eigenrelation(const std::vector<int>& lambda, const std::vector<BigRational>& u, int k,
                                         bool exact, double tol) {
  CheckReport r;
  r.check = "dk-schur";
  r.instances = 1;
  r.exact = exact;
  if (exact) {
    r.pass = dk_schur_exact_holds(lambda, u, k);
    r.max_rel_err = r.pass ? 0.0 : 1.0;
  } else {
    std::vector<double> ud;
    for (const auto& v : u) ud.push_back(static_cast<double>(v));
    r.max_rel_err = dk_schur_error(lambda, ud, k);
    r.pass = r.max_rel_err <= tol;
  }
  return r;
}

SeparableFunction SeparableFunction::one(int N) {
  SeparableFunction f;
  f.terms.push_back(std::vector<std::vector<double>>(N, std::vector<double>{1.0}));
  return f;
}

SeparableFunction SeparableFunction::power_sum(int N, int p) {
  SeparableFunction f;
  for (int i = 0; i < N; ++i) {
    std::vector<std::vector<double>> term(N, std::vector<double>{1.0});
    term[i] = std::vector<double>(p + 1, 0.0);
    term[i][p] = 1.0;
    f.terms.push_back(std::move(term));
  }
  return f;
}

double dk_direct(const SeparableFunction& f, const std::vector<double>& x_in, int k) {
  check_x(x_in, 4, k, 3);
  check_separable(f, x_in.size());
  auto x = to_real(x_in);
  const int N = static_cast<int>(x.size());
  Real total = 0;
  for (int i = 0; i < N; ++i) {
    Jet fj = Jet::zero(k);
    for (const auto& term : f.terms) {
      Real rest = 1;
      for (int j = 0; j < N; ++j)
        if (j != i) rest *= poly_eval(term[j], x[j]);
      fj = fj + rest * Jet(0, poly_taylor(term[i], x[i], k));
    }
    Jet prod = vandermonde_jet(x, i, k) * fj;
    total += detail::factorial<Real>(k) * prod[k];
  }
  return static_cast<double>(total / vandermonde(x));
}

double dk_expansion(const SeparableFunction& f, const std::vector<double>& x_in, int k) {
  check_x(x_in, 4, k, 3);
  check_separable(f, x_in.size());
  auto x = to_real(x_in);
  const int N = static_cast<int>(x.size());
  Real total = 0;
  for (int m = 0; m <= std::min(k, N - 1); ++m) {
    Real sum_m = 0;
    // Ordered distinct tuples (l_0, ..., l_m) via prefixes of permutations.
    std::vector<int> p(N);
    std::iota(p.begin(), p.end(), 0);
    do {
      bool canonical = std::is_sorted(p.begin() + m + 1, p.end());
      if (!canonical) continue;
      Real den = 1;
      for (int s = 1; s <= m; ++s) den *= x[p[0]] - x[p[s]];
      sum_m += partial(f, x, p[0], k - m) / den;
    } while (std::next_permutation(p.begin(), p.end()));
    total += binomial(k, m) * sum_m;
  }
  return static_cast<double>(total);
}

CheckReport check_dk_expansion_equivalence(const std::vector<double>& x, int k, const SeparableFunction& f,
                                           double tol) {
  CheckReport r;
  r.check = "dk-expansion";
  r.instances = 1;
  double a = dk_direct(f, x, k), b = dk_expansion(f, x, k);
  double fscale = 0;
  {
    auto xr = to_real(x);
    for (int l = 0; l < static_cast<int>(x.size()); ++l)
      fscale = std::max(fscale, static_cast<double>(std::abs(partial(f, xr, l, 0))));
  }
  r.max_rel_err = std::abs(a - b) / std::max({std::abs(a), fscale, 1e-300});
  r.pass = r.max_rel_err <= tol;
  return r;
}

CheckReport random_dk_batch(int instances, int max_n, int max_k, std::uint64_t seed, double tol) {
  if (max_n < 1 || max_n > 5 || max_k < 0 || max_k > 4) throw DomainError("dk batch: N <= 5, k <= 4");
  CheckReport r;
  r.check = "dk";
  r.instances = instances;
  for (int s = 0; s < instances; ++s) {
    auto rng = instance_rng(seed, s);
    int N = std::uniform_int_distribution<int>(1, max_n)(rng);
    int k = std::uniform_int_distribution<int>(1, std::max(1, max_k))(rng);
    auto lambda = spaced_sample(rng, N, -2.0, 2.0, 0.05);
    auto x = spaced_sample(rng, N, -1.0, 1.0, 0.05);
    r.max_rel_err = std::max(r.max_rel_err, dk_eigenrelation_error(lambda, x, k));
  }
  r.pass = r.max_rel_err <= tol;
  return r;
}

CheckReport random_expansion_batch(int instances, int max_n, int max_k, std::uint64_t seed, double tol) {
  if (max_n < 1 || max_n > 4 || max_k < 0 || max_k > 3) throw DomainError("expansion batch: N <= 4, k <= 3");
  CheckReport r;
  r.check = "dk-expansion";
  r.instances = instances;
  for (int s = 0; s < instances; ++s) {
    auto rng = instance_rng(seed, s);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    int N = std::uniform_int_distribution<int>(1, max_n)(rng);
    int k = std::uniform_int_distribution<int>(0, max_k)(rng);
    int nterms = std::uniform_int_distribution<int>(1, 2)(rng);
    SeparableFunction f;
    for (int t = 0; t < nterms; ++t) {
      std::vector<std::vector<double>> term(N);
      for (auto& p : term) {
        p.resize(std::uniform_int_distribution<int>(1, 4)(rng));
        for (auto& c : p) c = coef(rng);
      }
      f.terms.push_back(std::move(term));
    }
    auto x = spaced_sample(rng, N, -1.0, 1.0, 0.05);
    r.max_rel_err = std::max(r.max_rel_err, check_dk_expansion_equivalence(x, k, f, tol).max_rel_err);
  }
  r.pass = r.max_rel_err <= tol;
  return r;
}

CheckReport exhaustive_schur_exact(int max_n, int max_part, int max_k) {
  if (max_n < 1 || max_n > 4 || max_part < 0 || max_k < 0 || max_k > 4)
    throw DomainError("schur sweep: N <= 4, k <= 4");
  CheckReport r;
  r.check = "dk-schur";
  r.exact = true;
  r.pass = true;
  for (int N = 1; N <= max_n; ++N) {
    auto u = default_schur_points(N);
    // Weakly decreasing signatures with entries in [0, max_part], odometer style.
    std::vector<int> lambda(N, 0);
    for (;;) {
      if (std::is_sorted(lambda.rbegin(), lambda.rend())) {
        for (int k = 0; k <= max_k; ++k) {
          ++r.instances;
          if (!dk_schur_exact_holds(lambda, u, k)) {
            r.pass = false;
            r.max_rel_err = 1.0;
          }
        }
      }
      int pos = 0;
      while (pos < N && lambda[pos] == max_part) lambda[pos++] = 0;
      if (pos == N) break;
      ++lambda[pos];
    }
  }
  return r;
}

BigRational parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash != std::string::npos)
      return BigRational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      BigInt den = 1;
      for (size_t i = dot + 1; i < text.size(); ++i) den *= 10;
      return BigRational(BigInt(digits), den);
    }
    return BigRational(BigInt(text));
  } catch (const std::exception&) {
    throw DomainError("cannot parse rational '" + text + "'");
  }
}

std::vector<BigRational> default_schur_points(int N) {
  std::vector<BigRational> u;
  for (int i = 0; i < N; ++i) u.emplace_back(i + 2, i + 1);
  return u;
}

}  // namespace freecorr
