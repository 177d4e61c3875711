#pragma once

// Dense univariate polynomials over double and std::complex<double>.
//
// Coefficients are stored in ascending degree order: coeffs()[i] multiplies
// z^i. A polynomial is kept trimmed, so its leading coefficient is nonzero
// unless it is the zero polynomial, whose degree() is kZeroDegree.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <type_traits>
#include <vector>

#include "zinv/error.hpp"

namespace zinv {

using cplx = std::complex<double>;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, cplx>;

/// Degree reported for the zero polynomial. Never a valid exponent.
inline constexpr int kZeroDegree = -1;

/// Default absolute threshold used to drop cancelled leading coefficients.
inline constexpr double kTrimEps = 1e-12;

/// Result type of combining scalars T and U (double op complex -> complex).
template <Scalar T, Scalar U>
using promote_t = std::conditional_t<std::same_as<T, cplx> || std::same_as<U, cplx>, cplx, double>;

template <Scalar T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(0.0); }
  Polynomial(std::initializer_list<T> coeffs) : Polynomial(std::vector<T>(coeffs)) {}

  static Polynomial constant(T c) { return Polynomial(std::vector<T>{c}); }

  /// c * z^power
  static Polynomial monomial(T c, int power) {
    std::vector<T> v(static_cast<std::size_t>(power) + 1, T{});
    v.back() = c;
    return Polynomial(std::move(v));
  }

  /// z - root
  static Polynomial linear(T root) { return Polynomial(std::vector<T>{-root, T{1}}); }

  int degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const T> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  T coeff(int i) const {
    return i >= 0 && static_cast<std::size_t>(i) < coeffs_.size() ? coeffs_[static_cast<std::size_t>(i)] : T{};
  }
  T leading() const { return coeffs_.empty() ? T{} : coeffs_.back(); }

  double norm_inf() const {
    double m = 0.0;
    for (const T& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Drops trailing coefficients with magnitude <= eps. eps = 0 drops exact zeros only.
  Polynomial& trim(double eps = kTrimEps) {
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= eps) coeffs_.pop_back();
    return *this;
  }

  /// Horner evaluation; a real polynomial evaluated at a complex point yields a complex value.
  template <Scalar U>
  promote_t<T, U> operator()(const U& z) const {
    promote_t<T, U> acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Polynomial<cplx> to_complex() const {
    return Polynomial<cplx>(std::vector<cplx>(coeffs_.begin(), coeffs_.end()));
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (T& c : r.coeffs_) c = -c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T{});
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return trim();
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T{});
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return trim();
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial& operator*=(const T& s) {
    for (T& c : coeffs_) c *= s;
    return trim(0.0);
  }

  Polynomial& operator/=(const T& s) {
    for (T& c : coeffs_) c /= s;
    return trim(0.0);
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, const T& s) { return a /= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, T{});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<T> coeffs_;
};

using RealPoly = Polynomial<double>;
using ComplexPoly = Polynomial<cplx>;

template <Scalar T>
struct DivRem {
  Polynomial<T> quotient;
  Polynomial<T> remainder;
};

/// Euclidean division: num = quotient * den + remainder with deg(remainder) < deg(den).
/// The remainder is trimmed with `eps`.
template <Scalar T>
DivRem<T> divrem(const Polynomial<T>& num, const Polynomial<T>& den, double eps = kTrimEps) {
  if (den.is_zero()) throw Error("zero denominator");
  const int dn = num.degree();
  const int dd = den.degree();
  if (dn < dd) return {Polynomial<T>{}, num};

  std::vector<T> rem(num.coeffs().begin(), num.coeffs().end());
  std::vector<T> quo(static_cast<std::size_t>(dn - dd) + 1, T{});
  const auto d = den.coeffs();
  const T lead = den.leading();
  for (int i = dn - dd; i >= 0; --i) {
    const T q = rem[static_cast<std::size_t>(i + dd)] / lead;
    quo[static_cast<std::size_t>(i)] = q;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i + j)] -= q * d[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  Polynomial<T> r(std::move(rem));
  r.trim(eps);
  return {Polynomial<T>(std::move(quo)), std::move(r)};
}

/// order-fold formal derivative.
template <Scalar T>
Polynomial<T> derivative(const Polynomial<T>& p, int order = 1) {
  if (order <= 0) return p;
  if (p.degree() < order) return {};
  std::vector<T> out(static_cast<std::size_t>(p.degree() - order) + 1);
  for (int i = order; i <= p.degree(); ++i) {
    double factor = 1.0;
    for (int m = 0; m < order; ++m) factor *= static_cast<double>(i - m);
    out[static_cast<std::size_t>(i - order)] = p.coeff(i) * factor;
  }
  return Polynomial<T>(std::move(out));
}

template <Scalar T, Scalar U>
promote_t<T, U> eval(const Polynomial<T>& p, const U& z0) {
  return p(z0);
}

template <Scalar T>
Polynomial<T> pow(const Polynomial<T>& base, int exponent) {
  Polynomial<T> out = Polynomial<T>::constant(T{1});
  for (int i = 0; i < exponent; ++i) out = out * base;
  return out;
}

/// Divides p by (z - root) `times` times with synthetic division, discarding the remainders.
template <Scalar T>
Polynomial<T> deflate(const Polynomial<T>& p, const T& root, int times = 1) {
  std::vector<T> c(p.coeffs().begin(), p.coeffs().end());
  for (int t = 0; t < times && c.size() > 1; ++t) {
    std::vector<T> q(c.size() - 1);
    T acc{};
    for (std::size_t i = c.size() - 1; i > 0; --i) {
      acc = acc * root + c[i];
      q[i - 1] = acc;
    }
    c = std::move(q);
  }
  return Polynomial<T>(std::move(c));
}

/// Coefficients of p in powers of (z - center): p(z) = sum_i out[i] (z - center)^i.
/// out[i] equals p^{(i)}(center) / i!.
template <Scalar T, Scalar U>
std::vector<promote_t<T, U>> taylor_coefficients(const Polynomial<T>& p, const U& center) {
  using R = promote_t<T, U>;
  std::vector<R> c(p.coeffs().begin(), p.coeffs().end());
  const std::size_t n = c.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t i = n - 1; i > k; --i) c[i - 1] += center * c[i];
  return c;
}

template <Scalar T>
struct RootMult {
  T root;
  int mult;
};

/// Irreducible real quadratic z^2 - 2az + (a^2 + b^2) raised to `mult`.
struct QuadMult {
  double a;
  double b;
  int mult;
};

/// scale * prod (z - r)^u * prod (z^2 - 2az + a^2 + b^2)^k
template <Scalar T>
Polynomial<T> from_factors(std::span<const RootMult<T>> linear, std::span<const QuadMult> quadratic, T scale = T{1}) {
  Polynomial<T> out = Polynomial<T>::constant(scale);
  for (const auto& f : linear) {
    if (f.mult < 1) throw Error("multiplicity must be at least 1");
    out = out * pow(Polynomial<T>::linear(f.root), f.mult);
  }
  for (const auto& q : quadratic) {
    if (q.mult < 1) throw Error("multiplicity must be at least 1");
    if (q.b == 0.0) throw Error("degenerate quadratic");
    const Polynomial<T> base{T(q.a * q.a + q.b * q.b), T(-2.0 * q.a), T(1.0)};
    out = out * pow(base, q.mult);
  }
  return out;
}

template <Scalar T>
Polynomial<T> from_factors(std::initializer_list<RootMult<T>> linear, std::initializer_list<QuadMult> quadratic,
                           T scale = T{1}) {
  return from_factors<T>(std::span<const RootMult<T>>(linear.begin(), linear.size()),
                         std::span<const QuadMult>(quadratic.begin(), quadratic.size()), scale);
}

/// Real part of each coefficient; used after complex arithmetic on conjugate-closed data.
inline RealPoly real_part(const ComplexPoly& p) {
  std::vector<double> out;
  out.reserve(p.size());
  for (const cplx& c : p.coeffs()) out.push_back(c.real());
  return RealPoly(std::move(out));
}

}  // namespace zinv
