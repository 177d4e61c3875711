#pragma once

// Partial fraction expansion.
//
// real_pfe expands X(z) itself over the reals:
//   X = P(z) + sum A/z^s + sum A/(z-r)^j + sum (Bz+C)/(z^2-2az+a^2+b^2)^j
// with all coefficients found from one square linear system.
//
// complex_pfe_over_z expands Y(z) = X(z)/z over the complex numbers, the
// starting point of the classical tabulated method.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "zinv/error.hpp"
#include "zinv/factorize.hpp"
#include "zinv/polycore.hpp"
#include "zinv/rational.hpp"

namespace zinv {

/// amp / z^shift
struct OriginTerm {
  int shift;
  double amp;
};

/// A / (z - r)^j
struct RealTerm {
  double r;
  int j;
  double A;
};

/// (B z + C) / (z^2 - 2az + a^2 + b^2)^j
struct QuadTerm {
  double a;
  double b;
  int j;
  double B;
  double C;
};

struct RealPartialFraction {
  RealPoly poly_part;
  std::vector<OriginTerm> origin_terms;
  std::vector<RealTerm> real_terms;
  std::vector<QuadTerm> quad_terms;
  /// Estimated 1-norm condition number of the coefficient system.
  double condition = 1.0;
  std::vector<std::string> warnings;
};

struct PfeOptions {
  /// Column order of the unknowns in the linear system; empty means natural order.
  std::vector<std::size_t> unknown_order;
  double consistency_tol = 1e-8;
  double condition_warning = 1e12;
};

namespace detail {

inline RealPoly monic_quadratic(double a, double b) { return RealPoly{a * a + b * b, -2.0 * a, 1.0}; }

/// Monic product of the factors of f with the multiplicity of one factor reduced.
/// which: 0 = origin, 1 = linear[index], 2 = quadratic[index].
inline RealPoly reduced_product(const FactoredDenominator& f, int which, std::size_t index, int drop) {
  FactoredDenominator g = f;
  g.scale = 1.0;
  if (which == 0) g.origin_mult -= drop;
  if (which == 1) g.linears[index].u -= drop;
  if (which == 2) g.quadratics[index].k -= drop;
  std::erase_if(g.linears, [](const LinearFactor& l) { return l.u == 0; });
  std::erase_if(g.quadratics, [](const QuadraticFactor& q) { return q.k == 0; });
  return expand(g);
}

}  // namespace detail

inline RealPartialFraction real_pfe(const RationalFunction& x, const FactoredDenominator& f,
                                    const PfeOptions& opt = {}) {
  const RealPoly& den = x.den();
  if (f.degree() != den.degree()) throw Error("inconsistent factorization: degree mismatch");
  {
    const RealPoly monic = expand(f) / f.scale;
    const RealPoly diff = monic - den;
    if (diff.norm_inf() > opt.consistency_tol * std::max(1.0, den.norm_inf()))
      throw Error("inconsistent factorization: factors do not reproduce the denominator");
  }

  RealPartialFraction out;
  RealPoly remainder = x.num();
  if (x.num().degree() >= den.degree()) {
    auto qr = divrem(x.num(), den);
    out.poly_part = std::move(qr.quotient);
    remainder = std::move(qr.remainder);
  }

  // Basis polynomial of every unknown: D(z) divided by its fraction's denominator.
  const std::size_t size = static_cast<std::size_t>(den.degree());
  std::vector<RealPoly> basis;
  basis.reserve(size);
  for (int s = 1; s <= f.origin_mult; ++s) basis.push_back(detail::reduced_product(f, 0, 0, s));
  for (std::size_t h = 0; h < f.linears.size(); ++h)
    for (int j = 1; j <= f.linears[h].u; ++j) basis.push_back(detail::reduced_product(f, 1, h, j));
  for (std::size_t h = 0; h < f.quadratics.size(); ++h)
    for (int j = 1; j <= f.quadratics[h].k; ++j) {
      const RealPoly base = detail::reduced_product(f, 2, h, j);
      basis.push_back(RealPoly::monomial(1.0, 1) * base);
      basis.push_back(base);
    }

  std::vector<std::size_t> order = opt.unknown_order;
  if (order.empty()) {
    order.resize(size);
    std::iota(order.begin(), order.end(), 0);
  }
  {
    std::vector<std::size_t> check = order;
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < check.size(); ++i)
      if (check.size() != size || check[i] != i) throw Error("unknown_order is not a permutation");
  }

  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
  for (std::size_t c = 0; c < size; ++c) {
    const RealPoly& b = basis[order[c]];
    for (int i = 0; i <= b.degree(); ++i) system(i, static_cast<Eigen::Index>(c)) = b.coeff(i);
  }
  for (int i = 0; i <= remainder.degree(); ++i) rhs(i) = remainder.coeff(i);

  std::vector<double> coef(size, 0.0);
  if (size > 0) {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    const double rcond = lu.rcond();
    const Eigen::VectorXd sol = lu.solve(rhs);
    if (!(rcond > std::numeric_limits<double>::epsilon()) || !sol.allFinite())
      throw Error("inconsistent factorization: singular coefficient system");
    out.condition = 1.0 / rcond;
    if (out.condition > opt.condition_warning)
      out.warnings.push_back("ill-conditioned expansion system (condition estimate " +
                             std::to_string(out.condition) + ")");
    for (std::size_t c = 0; c < size; ++c) coef[order[c]] = sol(static_cast<Eigen::Index>(c));
  }

  std::size_t u = 0;
  for (int s = 1; s <= f.origin_mult; ++s) out.origin_terms.push_back({s, coef[u++]});
  for (const auto& l : f.linears)
    for (int j = 1; j <= l.u; ++j) out.real_terms.push_back({l.r, j, coef[u++]});
  for (const auto& q : f.quadratics)
    for (int j = 1; j <= q.k; ++j) {
      const double B = coef[u++];
      const double C = coef[u++];
      out.quad_terms.push_back({q.a, q.b, j, B, C});
    }
  return out;
}

inline RealPartialFraction real_pfe(const RationalFunction& x, const PfeOptions& opt = {}) {
  if (x.den().degree() < 1) {
    RealPartialFraction out;
    out.poly_part = x.num();
    return out;
  }
  return real_pfe(x, factor_denominator(x.den()), opt);
}

/// Sums the expansion over its common denominator.
inline RationalFunction recombine(const RealPartialFraction& pf) {
  FactoredDenominator f;
  for (const auto& t : pf.origin_terms) f.origin_mult = std::max(f.origin_mult, t.shift);
  for (const auto& t : pf.real_terms) {
    auto it = std::find_if(f.linears.begin(), f.linears.end(), [&](const auto& l) { return l.r == t.r; });
    if (it == f.linears.end())
      f.linears.push_back({t.r, t.j});
    else
      it->u = std::max(it->u, t.j);
  }
  for (const auto& t : pf.quad_terms) {
    auto it = std::find_if(f.quadratics.begin(), f.quadratics.end(),
                           [&](const auto& q) { return q.a == t.a && q.b == t.b; });
    if (it == f.quadratics.end())
      f.quadratics.push_back({t.a, t.b, t.j});
    else
      it->k = std::max(it->k, t.j);
  }

  const RealPoly den = expand(f);
  RealPoly num = pf.poly_part * den;
  for (const auto& t : pf.origin_terms) num += deflate(den, 0.0, t.shift) * t.amp;
  for (const auto& t : pf.real_terms) num += deflate(den, t.r, t.j) * t.A;
  for (const auto& t : pf.quad_terms) {
    RealPoly rest = den;
    const RealPoly q = detail::monic_quadratic(t.a, t.b);
    for (int i = 0; i < t.j; ++i) rest = divrem(rest, q).quotient;
    num += RealPoly{t.C, t.B} * rest;
  }
  return {num, den};
}

/// coeff / (z - pole)^j
struct ComplexTerm {
  cplx pole;
  int j;
  cplx coeff;
};

struct ComplexPartialFraction {
  std::vector<ComplexTerm> terms;
  RealPoly poly_part;
  /// Largest conjugate-symmetry violation seen before symmetry was enforced.
  double closure_defect = 0.0;
};

namespace detail {

/// First `count` Taylor coefficients of num/den around `center`.
struct OverZ {
  RealPoly num;
  FactoredDenominator factors;
  RealPoly den;
};

/// Y = X / z, cancelling the extra z against the numerator when N(0) = 0 exactly.
inline OverZ over_z(const RationalFunction& x, const FactoredDenominator& f) {
  const RealPoly& n = x.num();
  if (!n.is_zero() && n.coeff(0) == 0.0) {
    std::vector<double> shifted(n.coeffs().begin() + 1, n.coeffs().end());
    return {RealPoly(std::move(shifted)), f, x.den()};
  }
  FactoredDenominator g = f;
  g.origin_mult += 1;
  return {n, std::move(g), RealPoly::monomial(1.0, 1) * x.den()};
}

inline std::vector<cplx> quotient_taylor(const RealPoly& num, const ComplexPoly& den, cplx center,
                                         std::size_t count) {
  auto n = taylor_coefficients(num, center);
  const auto d = taylor_coefficients(den, center);
  n.resize(std::max(n.size(), count), cplx{});
  std::vector<cplx> q(count);
  for (std::size_t s = 0; s < count; ++s) {
    cplx acc = n[s];
    for (std::size_t i = 1; i <= s && i < d.size(); ++i) acc -= d[i] * q[s - i];
    q[s] = acc / d[0];
  }
  return q;
}

}  // namespace detail

/// Complex expansion of Y(z) = X(z)/z. The coefficient of 1/(z-p)^(m-s) is
/// (1/s!) d^s/dz^s [(z-p)^m Y(z)] at z = p.
inline ComplexPartialFraction complex_pfe_over_z(const RationalFunction& x, const FactoredDenominator& f) {
  const auto [ynum, g, yden] = detail::over_z(x, f);
  const std::vector<Pole> poles = distinct_poles(g);

  ComplexPartialFraction out;
  RealPoly num = ynum;
  if (num.degree() >= yden.degree()) {
    auto qr = divrem(num, yden);
    out.poly_part = std::move(qr.quotient);
    num = std::move(qr.remainder);
  }

  std::vector<std::vector<cplx>> coeffs(poles.size());
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const ComplexPoly rest = product_except(poles, i);
    coeffs[i] = detail::quotient_taylor(num, rest, poles[i].z, static_cast<std::size_t>(poles[i].mult));
  }

  // Conjugate closure: real poles get real coefficients, pairs get conjugate coefficients.
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (poles[i].z.imag() == 0.0) {
      for (cplx& c : coeffs[i]) {
        out.closure_defect = std::max(out.closure_defect, std::abs(c.imag()));
        c = cplx(c.real(), 0.0);
      }
    } else if (poles[i].z.imag() > 0.0) {
      auto& lo = coeffs[i + 1];  // distinct_poles emits (a+ib, a-ib) adjacently
      for (std::size_t s = 0; s < coeffs[i].size(); ++s) {
        cplx& up = coeffs[i][s];
        out.closure_defect = std::max(out.closure_defect, std::abs(up - std::conj(lo[s])));
        up = 0.5 * (up + std::conj(lo[s]));
        lo[s] = std::conj(up);
      }
    }
  }

  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t s = 0; s < coeffs[i].size(); ++s)
      out.terms.push_back({poles[i].z, poles[i].mult - static_cast<int>(s), coeffs[i][s]});
  return out;
}

inline ComplexPartialFraction complex_pfe_over_z(const RationalFunction& x) {
  if (x.den().degree() < 1) return complex_pfe_over_z(x, FactoredDenominator{});
  return complex_pfe_over_z(x, factor_denominator(x.den()));
}

}  // namespace zinv
