#pragma once

// Truncated power series (jets) c_0 + c_1 (x-a) + ... + c_T (x-a)^T.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "freecorr/errors.hpp"

namespace freecorr {

template <class Scalar>
class TruncatedSeries {
 public:
  using scalar_type = Scalar;

  TruncatedSeries() : center_(0), coeffs_(1, Scalar(0)) {}
  TruncatedSeries(Scalar center, std::vector<Scalar> coeffs)
      : center_(std::move(center)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("series: empty coefficient list");
  }

  static TruncatedSeries zero(int order, Scalar center = Scalar(0)) {
    check_order(order);
    return TruncatedSeries(center, std::vector<Scalar>(order + 1, Scalar(0)));
  }
  static TruncatedSeries constant(Scalar value, int order, Scalar center = Scalar(0)) {
    auto s = zero(order, center);
    s.coeffs_[0] = std::move(value);
    return s;
  }
  // The function x expanded at the center: a + (x - a).
  static TruncatedSeries identity(int order, Scalar center = Scalar(0)) {
    auto s = constant(center, order, center);
    if (order >= 1) s.coeffs_[1] = Scalar(1);
    return s;
  }
  // The local variable x - a.
  static TruncatedSeries local_variable(int order, Scalar center = Scalar(0)) {
    auto s = zero(order, center);
    if (order >= 1) s.coeffs_[1] = Scalar(1);
    return s;
  }
  // x^p at the center, expanded exactly with binomial coefficients.
  static TruncatedSeries monomial(int p, int order, Scalar center = Scalar(0)) {
    if (p < 0) throw DomainError("series: negative monomial power");
    auto s = zero(order, center);
    Scalar binom(1);
    for (int j = 0; j <= std::min(p, order); ++j) {
      Scalar pw(1);
      for (int r = 0; r < p - j; ++r) pw *= center;
      s.coeffs_[j] = binom * pw;
      binom = binom * Scalar(p - j) / Scalar(j + 1);
    }
    return s;
  }

  const Scalar& center() const { return center_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  const Scalar& operator[](int j) const { return coeffs_.at(j); }
  Scalar& operator[](int j) { return coeffs_.at(j); }

  TruncatedSeries truncated(int order) const {
    check_order(order);
    if (order > this->order())
      throw DomainError("series: cannot extend order " + std::to_string(this->order()) + " to " +
                        std::to_string(order));
    return TruncatedSeries(center_, std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  // Horner evaluation of the represented polynomial at x.
  template <class T>
  T evaluate(const T& x) const {
    T dx = x - T(center_);
    T acc = T(coeffs_.back());
    for (int j = order() - 1; j >= 0; --j) acc = acc * dx + T(coeffs_[j]);
    return acc;
  }

 private:
  static void check_order(int order) {
    if (order < 0) throw DomainError("series: negative order");
  }

  Scalar center_;
  std::vector<Scalar> coeffs_;
};

namespace detail {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class T>
inline constexpr bool has_transcendentals = std::is_floating_point_v<T> || is_complex<T>::value;

template <class Scalar>
bool same_center(const Scalar& a, const Scalar& b) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    using std::abs;
    return abs(a - b) <= Scalar(1e-12) * std::max<Scalar>(Scalar(1), std::max(abs(a), abs(b)));
  } else {
    return a == b;
  }
}

template <class Scalar>
void require_same_center(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b,
                         const char* op) {
  if (!same_center(a.center(), b.center()))
    throw DomainError(std::string("series ") + op + ": center mismatch");
}

template <class Scalar>
Scalar factorial(int n) {
  Scalar f(1);
  for (int i = 2; i <= n; ++i) f *= Scalar(i);
  return f;
}

}  // namespace detail

template <class Scalar>
TruncatedSeries<Scalar> add(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b) {
  detail::require_same_center(a, b, "add");
  int T = std::min(a.order(), b.order());
  std::vector<Scalar> c(T + 1);
  for (int j = 0; j <= T; ++j) c[j] = a[j] + b[j];
  return TruncatedSeries<Scalar>(a.center(), std::move(c));
}

template <class Scalar>
TruncatedSeries<Scalar> sub(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b) {
  detail::require_same_center(a, b, "sub");
  int T = std::min(a.order(), b.order());
  std::vector<Scalar> c(T + 1);
  for (int j = 0; j <= T; ++j) c[j] = a[j] - b[j];
  return TruncatedSeries<Scalar>(a.center(), std::move(c));
}

template <class Scalar>
TruncatedSeries<Scalar> scale(const TruncatedSeries<Scalar>& a, const Scalar& s) {
  std::vector<Scalar> c(a.coeffs());
  for (auto& v : c) v *= s;
  return TruncatedSeries<Scalar>(a.center(), std::move(c));
}

template <class Scalar>
TruncatedSeries<Scalar> add_constant(const TruncatedSeries<Scalar>& a, const Scalar& s) {
  auto r = a;
  r[0] += s;
  return r;
}

template <class Scalar>
TruncatedSeries<Scalar> mul(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b) {
  detail::require_same_center(a, b, "mul");
  int T = std::min(a.order(), b.order());
  std::vector<Scalar> c(T + 1, Scalar(0));
  for (int i = 0; i <= T; ++i) {
    if (a[i] == Scalar(0)) continue;
    for (int j = 0; i + j <= T; ++j) c[i + j] += a[i] * b[j];
  }
  return TruncatedSeries<Scalar>(a.center(), std::move(c));
}

template <class Scalar>
TruncatedSeries<Scalar> pow_int(const TruncatedSeries<Scalar>& a, int p) {
  if (p < 0) throw DomainError("pow_int: negative exponent");
  auto result = TruncatedSeries<Scalar>::constant(Scalar(1), a.order(), a.center());
  auto base = a;
  while (p > 0) {
    if (p & 1) result = mul(result, base);
    p >>= 1;
    if (p > 0) base = mul(base, base);
  }
  return result;
}

template <class Scalar>
TruncatedSeries<Scalar> div(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b) {
  detail::require_same_center(a, b, "div");
  if (b[0] == Scalar(0)) throw DomainError("div: divisor has zero constant term");
  int T = std::min(a.order(), b.order());
  std::vector<Scalar> q(T + 1);
  for (int n = 0; n <= T; ++n) {
    Scalar acc = a[n];
    for (int k = 1; k <= n; ++k) acc -= b[k] * q[n - k];
    q[n] = acc / b[0];
  }
  return TruncatedSeries<Scalar>(a.center(), std::move(q));
}

// b = exp(a) from b' = a' b.
template <class Scalar>
TruncatedSeries<Scalar> exp_series(const TruncatedSeries<Scalar>& a) {
  int T = a.order();
  std::vector<Scalar> b(T + 1, Scalar(0));
  if constexpr (detail::has_transcendentals<Scalar>) {
    b[0] = std::exp(a[0]);
  } else {
    if (a[0] != Scalar(0)) throw DomainError("exp_series: exact mode needs zero constant term");
    b[0] = Scalar(1);
  }
  for (int n = 1; n <= T; ++n) {
    Scalar acc(0);
    for (int k = 1; k <= n; ++k) acc += Scalar(k) * a[k] * b[n - k];
    b[n] = acc / Scalar(n);
  }
  return TruncatedSeries<Scalar>(a.center(), std::move(b));
}

// b = log(a) from a b' = a'.
template <class Scalar>
TruncatedSeries<Scalar> log_series(const TruncatedSeries<Scalar>& a) {
  int T = a.order();
  std::vector<Scalar> b(T + 1, Scalar(0));
  if constexpr (std::is_floating_point_v<Scalar>) {
    if (!(a[0] > 0)) throw DomainError("log_series: constant term must be positive");
    b[0] = std::log(a[0]);
  } else if constexpr (detail::is_complex<Scalar>::value) {
    if (a[0] == Scalar(0)) throw DomainError("log_series: zero constant term");
    b[0] = std::log(a[0]);
  } else {
    if (a[0] != Scalar(1)) throw DomainError("log_series: exact mode needs constant term 1");
  }
  for (int n = 1; n <= T; ++n) {
    Scalar acc = Scalar(n) * a[n];
    for (int k = 1; k < n; ++k) acc -= Scalar(k) * b[k] * a[n - k];
    b[n] = acc / (Scalar(n) * a[0]);
  }
  return TruncatedSeries<Scalar>(a.center(), std::move(b));
}

// outer(inner(x)); inner's value at its center must equal outer's center.
template <class Scalar>
TruncatedSeries<Scalar> compose(const TruncatedSeries<Scalar>& outer, const TruncatedSeries<Scalar>& inner) {
  if (!detail::same_center(inner[0], outer.center()))
    throw DomainError("compose: inner constant term differs from outer center");
  int T = std::min(outer.order(), inner.order());
  auto shift = inner.truncated(T);
  shift[0] = Scalar(0);
  auto acc = TruncatedSeries<Scalar>::constant(outer[T], T, inner.center());
  for (int j = T - 1; j >= 0; --j) acc = add_constant(mul(acc, shift), outer[j]);
  return acc;
}

template <class Scalar>
Scalar deriv_at_center(const TruncatedSeries<Scalar>& a, int m) {
  if (m < 0 || m > a.order())
    throw DomainError("deriv_at_center: m=" + std::to_string(m) + " exceeds order " +
                      std::to_string(a.order()));
  return detail::factorial<Scalar>(m) * a[m];
}

template <class Scalar>
TruncatedSeries<Scalar> derivative(const TruncatedSeries<Scalar>& a) {
  if (a.order() < 1) throw DomainError("derivative: order 0 series");
  std::vector<Scalar> c(a.order());
  for (int j = 0; j < a.order(); ++j) c[j] = Scalar(j + 1) * a[j + 1];
  return TruncatedSeries<Scalar>(a.center(), std::move(c));
}

template <class Scalar>
TruncatedSeries<Scalar> integral(const TruncatedSeries<Scalar>& a, const Scalar& value_at_center = Scalar(0)) {
  std::vector<Scalar> c(a.order() + 2);
  c[0] = value_at_center;
  for (int j = 0; j <= a.order(); ++j) c[j + 1] = a[j] / Scalar(j + 1);
  return TruncatedSeries<Scalar>(a.center(), std::move(c));
}

// Limit of the symmetrized fraction sum_i f(x_i)/prod_{j!=i}(x_i-x_j) as all x_i -> center.
template <class Scalar>
Scalar divided_difference_limit(const TruncatedSeries<Scalar>& a, int n) {
  if (n < 1) throw DomainError("divided_difference_limit: n must be positive");
  if (n - 1 > a.order()) throw DomainError("divided_difference_limit: n-1 exceeds order");
  return a[n - 1];
}

template <class Scalar>
TruncatedSeries<Scalar> operator+(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b) {
  return add(a, b);
}
template <class Scalar>
TruncatedSeries<Scalar> operator-(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b) {
  return sub(a, b);
}
template <class Scalar>
TruncatedSeries<Scalar> operator-(const TruncatedSeries<Scalar>& a) {
  return scale(a, Scalar(-1));
}
template <class Scalar>
TruncatedSeries<Scalar> operator*(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b) {
  return mul(a, b);
}
template <class Scalar>
TruncatedSeries<Scalar> operator*(const Scalar& s, const TruncatedSeries<Scalar>& a) {
  return scale(a, s);
}
template <class Scalar>
TruncatedSeries<Scalar> operator/(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b) {
  return div(a, b);
}

using Series = TruncatedSeries<double>;

}  // namespace freecorr
