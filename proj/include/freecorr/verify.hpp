#pragma once

// Small-N checks of the Harish-Chandra and Schur operator identities.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace freecorr {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// c_N det(exp(lambda_i x_j)) / (V(x) V(lambda)), V(z) = prod_{i<j} (z_i - z_j),
// c_N = prod_{i=1}^{N-1} i!. N <= 6. All-equal lambda gives exp(lambda sum x).
double hc_eval(const std::vector<double>& lambda, const std::vector<double>& x);

// Bialternant det(u_i^{lambda_j + N - j}) / V(u) at distinct u. N <= 5.
double schur_eval(const std::vector<int>& lambda, const std::vector<double>& u);
// Exact value; Jacobi-Trudi, so coincident u (e.g. 1^N) are allowed.
BigRational schur_eval_exact(const std::vector<int>& lambda, const std::vector<BigRational>& u);
// prod_{i<j} (lambda_i - i - lambda_j + j)/(j - i). N <= 12.
BigInt schur_dimension(const std::vector<int>& lambda);

struct CheckReport {
  std::string check;
  int instances = 0;
  double max_rel_err = 0;
  bool exact = false;
  bool pass = false;
};

// D_k hc = (sum lambda_i^k) hc at one point; returns the relative error.
double dk_eigenrelation_error(const std::vector<double>& lambda, const std::vector<double>& x, int k);
CheckReport check_dk_eigenrelation(const std::vector<double>& lambda, const std::vector<double>& x, int k,
                                   double tol = 1e-8);

// D_k^{U(N)} chi^lambda = sum (lambda_i + N - i)^k chi^lambda.
bool dk_schur_exact_holds(const std::vector<int>& lambda, const std::vector<BigRational>& u, int k);
double dk_schur_error(const std::vector<int>& lambda, const std::vector<double>& u, int k);
CheckReport check_dk_schur_eigenrelation(const std::vector<int>& lambda, const std::vector<BigRational>& u, int k,
                                         bool exact, double tol = 1e-10);

// f = sum over terms of prod_i p_{term,i}(x_i); p given by coefficients of x^j.
struct SeparableFunction {
  std::vector<std::vector<std::vector<double>>> terms;
  static SeparableFunction one(int N);
  static SeparableFunction power_sum(int N, int p);
};
// sum_i d_i^k (V f) / V.
double dk_direct(const SeparableFunction& f, const std::vector<double>& x, int k);
// Divided-difference form: sum_m C(k,m) sum over distinct ordered (l_0..l_m) of
// d_{l_0}^{k-m} f / prod_{j>=1} (x_{l_0} - x_{l_j}).
double dk_expansion(const SeparableFunction& f, const std::vector<double>& x, int k);
CheckReport check_dk_expansion_equivalence(const std::vector<double>& x, int k, const SeparableFunction& f,
                                           double tol = 1e-9);

// Randomized batches with per-instance seeds.
CheckReport random_dk_batch(int instances, int max_n, int max_k, std::uint64_t seed, double tol = 1e-8);
CheckReport random_expansion_batch(int instances, int max_n, int max_k, std::uint64_t seed, double tol = 1e-9);
// Every signature lambda_1 <= max_part with nonnegative parts, N <= max_n, k <= max_k.
CheckReport exhaustive_schur_exact(int max_n, int max_part, int max_k);

// Rational from "p/q" or an integer string.
BigRational parse_rational(const std::string& text);
// Distinct default evaluation points 2, 3/2, 4/3, ...
std::vector<BigRational> default_schur_points(int N);

}  // namespace freecorr
