#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <type_traits>

#include <Eigen/Dense>

#include "depq/errors.hpp"

namespace depq {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

/// Dense polynomial in one variable, coefficients stored in ascending degree.
///
/// Exactly-zero trailing coefficients are trimmed on construction; addition
/// additionally trims trailing coefficients that are pure cancellation noise
/// relative to the operands. `degree()` is the index of the last nonzero
/// coefficient. The zero polynomial has degree -1 and an empty coefficient vector.
template <typename Scalar>
class Polynomial {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Real = typename Eigen::NumTraits<Scalar>::Real;

  Polynomial() = default;
  explicit Polynomial(Coeffs coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(static_cast<Eigen::Index>(coeffs.size())) {
    std::copy(coeffs.begin(), coeffs.end(), coeffs_.data());
    normalize();
  }

  static Polynomial constant(Scalar c) { return Polynomial{c}; }
  /// (s - root)
  static Polynomial linear_factor(Scalar root) { return Polynomial{-root, Scalar(1)}; }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 0; }
  const Coeffs& coeffs() const { return coeffs_; }
  Scalar operator[](int k) const { return (k >= 0 && k < coeffs_.size()) ? coeffs_[k] : Scalar(0); }
  Scalar leading() const { return is_zero() ? Scalar(0) : coeffs_[coeffs_.size() - 1]; }

  Real max_abs_coeff() const { return is_zero() ? Real(0) : coeffs_.cwiseAbs().maxCoeff(); }

  template <typename X>
  auto operator()(const X& x) const {
    using R = decltype(Scalar(0) * x);
    R acc(0);
    for (Eigen::Index k = coeffs_.size() - 1; k >= 0; --k) acc = acc * x + coeffs_[k];
    return acc;
  }

  Polynomial derivative() const {
    if (degree() < 1) return {};
    Coeffs d(coeffs_.size() - 1);
    for (Eigen::Index k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * Real(k);
    return Polynomial(std::move(d));
  }

  /// Coefficients of p(x0 + h) in powers of h (Taylor shift by repeated synthetic division).
  Coeffs taylor_at(Scalar x0) const {
    Coeffs c = coeffs_;
    const Eigen::Index n = c.size();
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = n - 2; k >= j; --k) c[k] += x0 * c[k + 1];
    return c;
  }

  /// Exact division by s, valid only when the constant term is negligible.
  Polynomial drop_constant() const {
    if (degree() < 1) return {};
    return Polynomial(Coeffs(coeffs_.tail(coeffs_.size() - 1)));
  }

  template <typename Other>
  Polynomial<Other> cast() const {
    return Polynomial<Other>(typename Polynomial<Other>::Coeffs(coeffs_.template cast<Other>()));
  }

 private:
  void normalize() {
    Eigen::Index n = coeffs_.size();
    while (n > 0 && coeffs_[n - 1] == Scalar(0)) --n;
    coeffs_.conservativeResize(n);
  }

  Coeffs coeffs_;
};

using CPoly = Polynomial<std::complex<double>>;
using RPoly = Polynomial<double>;

template <typename Scalar>
Polynomial<Scalar> operator+(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  const Eigen::Index n = std::max(a.coeffs().size(), b.coeffs().size());
  typename Polynomial<Scalar>::Coeffs c = Polynomial<Scalar>::Coeffs::Zero(n);
  c.head(a.coeffs().size()) += a.coeffs();
  c.head(b.coeffs().size()) += b.coeffs();
  // cancellation noise in the leading terms is not a coefficient
  using Real = typename Polynomial<Scalar>::Real;
  const Real noise = Real(8) * Eigen::NumTraits<Real>::epsilon();
  Eigen::Index m = n;
  while (m > 0 && std::abs(c[m - 1]) <= noise * (std::abs(a[int(m - 1)]) + std::abs(b[int(m - 1)]))) --m;
  c.conservativeResize(m);
  return Polynomial<Scalar>(std::move(c));
}

template <typename Scalar>
Polynomial<Scalar> operator-(const Polynomial<Scalar>& a) {
  return Polynomial<Scalar>(typename Polynomial<Scalar>::Coeffs(-a.coeffs()));
}

template <typename Scalar>
Polynomial<Scalar> operator-(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  return a + (-b);
}

template <typename Scalar>
Polynomial<Scalar> operator*(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Eigen::Index na = a.coeffs().size(), nb = b.coeffs().size();
  typename Polynomial<Scalar>::Coeffs c = Polynomial<Scalar>::Coeffs::Zero(na + nb - 1);
  for (Eigen::Index i = 0; i < na; ++i) c.segment(i, nb) += a.coeffs()[i] * b.coeffs();
  return Polynomial<Scalar>(std::move(c));
}

template <typename Scalar>
Polynomial<Scalar> operator*(Scalar k, const Polynomial<Scalar>& a) {
  return Polynomial<Scalar>(typename Polynomial<Scalar>::Coeffs(k * a.coeffs()));
}

template <typename Scalar>
Polynomial<Scalar> scale(const Polynomial<Scalar>& a, Scalar k) {
  return k * a;
}

template <typename Scalar>
Polynomial<Scalar> pow(const Polynomial<Scalar>& a, int n) {
  Polynomial<Scalar> result = Polynomial<Scalar>::constant(Scalar(1));
  Polynomial<Scalar> base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

/// p(q(s)) by Horner's scheme in the polynomial ring.
template <typename Scalar>
Polynomial<Scalar> compose(const Polynomial<Scalar>& p, const Polynomial<Scalar>& q) {
  Polynomial<Scalar> acc;
  for (int k = p.degree(); k >= 0; --k) acc = acc * q + Polynomial<Scalar>::constant(p[k]);
  return acc;
}

/// Ratio of two polynomials. The denominator is never the zero polynomial.
template <typename Scalar>
class RationalFn {
 public:
  RationalFn(Polynomial<Scalar> num, Polynomial<Scalar> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorCode::InvalidArgument, "rational function with zero denominator");
  }

  const Polynomial<Scalar>& num() const { return num_; }
  const Polynomial<Scalar>& den() const { return den_; }

  template <typename X>
  auto operator()(const X& x) const {
    return num_(x) / den_(x);
  }

  /// Limit as |s| -> infinity; zero when deg num < deg den.
  Scalar limit_at_infinity() const {
    if (num_.degree() < den_.degree()) return Scalar(0);
    if (num_.degree() > den_.degree())
      throw Error(ErrorCode::InvalidArgument, "improper rational function has no finite limit");
    return num_.leading() / den_.leading();
  }

 private:
  Polynomial<Scalar> num_;
  Polynomial<Scalar> den_;
};

using CRational = RationalFn<std::complex<double>>;

}  // namespace depq
