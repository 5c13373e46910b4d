#pragma once

// Polynomials in x (coefficients of x^j) and quotients of them.

#include <algorithm>
#include <utility>
#include <vector>

#include "freecorr/errors.hpp"
#include "freecorr/series.hpp"

namespace freecorr {

template <class Scalar>
class Polynomial {
 public:
  Polynomial() : c_{Scalar(0)} {}
  Polynomial(std::initializer_list<Scalar> c) : c_(c) { normalize(); }
  explicit Polynomial(std::vector<Scalar> c) : c_(std::move(c)) { normalize(); }

  const std::vector<Scalar>& coeffs() const { return c_; }
  int degree() const { return (c_.size() == 1 && c_[0] == Scalar(0)) ? -1 : static_cast<int>(c_.size()) - 1; }
  const Scalar& leading() const { return c_.back(); }
  bool is_zero() const { return degree() < 0; }

  template <class T>
  T operator()(const T& x) const {
    T acc = T(c_.back());
    for (int j = static_cast<int>(c_.size()) - 2; j >= 0; --j) acc = acc * x + T(c_[j]);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() == 1) return Polynomial();
    std::vector<Scalar> d(c_.size() - 1);
    for (std::size_t j = 1; j < c_.size(); ++j) d[j - 1] = Scalar(static_cast<int>(j)) * c_[j];
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t j = 0; j < a.c_.size(); ++j) c[j] += a.c_[j];
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[j] += b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<Scalar> c(a.c_);
    for (auto& v : c) v = -v;
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }

  // Synthetic division by (x - r): returns quotient, remainder is p(r).
  Polynomial divide_linear(const Scalar& r) const {
    if (c_.size() == 1) return Polynomial();
    std::vector<Scalar> q(c_.size() - 1);
    Scalar acc = c_.back();
    for (int j = static_cast<int>(c_.size()) - 2; j >= 0; --j) {
      q[j] = acc;
      acc = acc * r + c_[j];
    }
    return Polynomial(std::move(q));
  }

 private:
  void normalize() {
    if (c_.empty()) c_.push_back(Scalar(0));
    while (c_.size() > 1 && c_.back() == Scalar(0)) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

template <class Scalar>
class RationalFunction {
 public:
  RationalFunction() : num_(), den_{Scalar(1)} {}
  RationalFunction(Polynomial<Scalar> num, Polynomial<Scalar> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("rational function: zero denominator");
  }
  static RationalFunction polynomial(Polynomial<Scalar> p) { return RationalFunction(std::move(p), Polynomial<Scalar>{Scalar(1)}); }
  static RationalFunction constant(Scalar c) { return polynomial(Polynomial<Scalar>{c}); }
  // c / (x - p)
  static RationalFunction simple_pole(Scalar c, Scalar p) {
    return RationalFunction(Polynomial<Scalar>{c}, Polynomial<Scalar>{-p, Scalar(1)});
  }

  const Polynomial<Scalar>& num() const { return num_; }
  const Polynomial<Scalar>& den() const { return den_; }

  template <class T>
  T operator()(const T& x) const {
    return num_(x) / den_(x);
  }
  template <class T>
  T derivative_at(const T& x) const {
    T d = den_(x);
    return (num_.derivative()(x) * d - num_(x) * den_.derivative()(x)) / (d * d);
  }
  template <class T>
  T second_derivative_at(const T& x) const {
    // (n/d)'' = (n'' d^2 - 2 n' d' d - n d'' d + 2 n d'^2) / d^3
    auto n1 = num_.derivative(), n2 = n1.derivative();
    auto d1 = den_.derivative(), d2 = d1.derivative();
    T n = num_(x), d = den_(x), dp = d1(x);
    return (n2(x) * d * d - T(2) * n1(x) * dp * d - n * d2(x) * d + T(2) * n * dp * dp) / (d * d * d);
  }
  // Residue at a simple root p of the denominator.
  Scalar residue(const Scalar& p) const {
    Scalar dd = den_.derivative()(p);
    if (dd == Scalar(0)) throw DomainError("residue: pole is not simple");
    return num_(p) / dd;
  }
  // lim_{x->inf} x * f(x); finite when deg num <= deg den - 1.
  bool decays_at_infinity() const { return num_.degree() < den_.degree(); }
  Scalar infinity_coefficient() const {
    if (!decays_at_infinity()) throw DomainError("rational function does not decay at infinity");
    if (num_.degree() == den_.degree() - 1) return num_.leading() / den_.leading();
    return Scalar(0);
  }
  bool bounded_at_infinity() const { return num_.degree() <= den_.degree(); }
  Scalar value_at_infinity() const {
    if (!bounded_at_infinity()) throw DomainError("rational function unbounded at infinity");
    if (num_.degree() == den_.degree()) return num_.leading() / den_.leading();
    return Scalar(0);
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_.coeffs() == b.den_.coeffs()) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a) { return RationalFunction(-a.num_, a.den_); }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }

 private:
  Polynomial<Scalar> num_, den_;
};

// Taylor jet of a polynomial in x at the given center.
template <class Scalar>
TruncatedSeries<Scalar> series_from_polynomial(const Polynomial<Scalar>& p, const Scalar& center, int order) {
  auto x = TruncatedSeries<Scalar>::identity(order, center);
  const auto& c = p.coeffs();
  auto acc = TruncatedSeries<Scalar>::constant(c.back(), order, center);
  for (int j = static_cast<int>(c.size()) - 2; j >= 0; --j) acc = add_constant(mul(acc, x), c[j]);
  return acc;
}

// Taylor jet of num/den at the center; den(center) must not vanish.
template <class Scalar>
TruncatedSeries<Scalar> series_from_rational(const RationalFunction<Scalar>& f, const Scalar& center, int order) {
  return div(series_from_polynomial(f.num(), center, order), series_from_polynomial(f.den(), center, order));
}

}  // namespace freecorr
