#pragma once

// Closed-form inverse Z-transform built from the real partial fraction
// expansion of X(z). Each expansion term maps to one ClosedFormTerm:
//
//   c z^k                 -> c δ[n+k]
//   A / z^s               -> A δ[n-s]
//   A / (z-r)^k           -> A C(n-1,k-1) r^(n-k),            n >= k
//   (A1 z + A0) / Q^k     -> A1 f1[n] + A0 f0[n],              Q = z^2 - 2az + a^2 + b^2
//
// with f0 the inverse of 1/Q^k (zero for n < 2k) and f1[n] = f0[n+1].

#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "zinv/error.hpp"
#include "zinv/factorize.hpp"
#include "zinv/format.hpp"
#include "zinv/pfe.hpp"
#include "zinv/rational.hpp"
#include "zinv/sequence.hpp"

namespace zinv {

/// amp * δ[n - index]; index < 0 comes from positive powers of z.
struct Impulse {
  double amp;
  int index;
};

/// A * C(n-1, k-1) * r^(n-k) * u[n-k]
struct RealPole {
  double A;
  double r;
  int k;
};

/// A1 * f1[n] + A0 * f0[n] for the pole pair a ± ib of multiplicity k.
struct QuadPole {
  double A1;
  double A0;
  double a;
  double b;
  int k;
};

using ClosedFormTerm = std::variant<Impulse, RealPole, QuadPole>;

struct ClosedFormExpr {
  std::vector<ClosedFormTerm> terms;
  RationalFunction source;
  std::vector<std::string> warnings;
};

namespace detail {

/// Ordinary binomial for 0 <= k; zero when k > n.
template <class Real = double>
Real binomial_as(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Real(0);
  k = std::min(k, n - k);
  Real out = 1;
  for (long i = 1; i <= k; ++i) out = out * Real(n - k + i) / Real(i);
  return out;
}

inline double binomial(long n, long k) { return binomial_as<double>(n, k); }

template <class Real>
Real ipow(const Real& x, long e) {
  if constexpr (std::is_same_v<Real, double>) {
    return std::pow(x, static_cast<double>(e));
  } else if constexpr (std::is_same_v<Real, long double>) {
    return std::pow(x, static_cast<long double>(e));
  } else {
    Real out = 1;
    Real base = e < 0 ? Real(1) / x : x;
    for (long m = e < 0 ? -e : e; m > 0; m >>= 1) {
      if (m & 1) out *= base;
      base *= base;
    }
    return out;
  }
}

}  // namespace detail

/// Inverse transform of 1 / (z^2 - 2az + a^2 + b^2)^k at index n, in any real type
/// with sin, atan2 and sqrt. Zero for n < 2k.
template <class Real>
Real f0_value(const Real& a, const Real& b, int k, long n) {
  using std::atan2;
  using std::sin;
  using std::sqrt;
  if (!(b > 0)) throw Error("not a complex pair");
  if (k < 1) throw Error("multiplicity must be at least 1");
  if (n < 2L * k) return Real(0);
  const Real r = sqrt(a * a + b * b);
  const Real theta = atan2(b, a);
  const Real two_sin = 2 * sin(theta);
  Real prefactor = 2 * detail::ipow(r, n - 2L * k) / detail::ipow(two_sin, 2L * k - 1);
  if ((k - 1) % 2 != 0) prefactor = -prefactor;
  Real sum = 0;
  for (int j = 0; j < k; ++j) {
    const Real term = detail::binomial_as<Real>(n - 1, j) * detail::binomial_as<Real>(n - (k + 1 + j), k - 1 - j) *
                      sin(Real(n - 2L * j - 1) * theta);
    if (j % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return prefactor * sum;
}

inline double f0_eval(double a, double b, int k, long n) { return f0_value<double>(a, b, k, n); }

/// Inverse transform of z / (z^2 - 2az + a^2 + b^2)^k; equals f0 one step ahead.
inline double f1_eval(double a, double b, int k, long n) { return f0_eval(a, b, k, n + 1); }

template <class Real>
Real real_pole_value(const Real& A, const Real& r, int k, long n) {
  if (r == 0) throw Error("origin pole must be an Impulse");
  if (k < 1) throw Error("multiplicity must be at least 1");
  if (n < k) return Real(0);
  return A * detail::binomial_as<Real>(n - 1, k - 1) * detail::ipow(r, n - k);
}

inline double real_pole_term_eval(double A, double r, int k, long n) { return real_pole_value<double>(A, r, k, n); }

/// Term value computed in Real; eval_term uses long double and rounds once.
template <class Real>
Real eval_term_as(const ClosedFormTerm& term, long n) {
  return std::visit(
      [n](const auto& t) -> Real {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Impulse>) {
          return n == t.index ? Real(t.amp) : Real(0);
        } else if constexpr (std::is_same_v<T, RealPole>) {
          return real_pole_value<Real>(t.A, t.r, t.k, n);
        } else {
          Real v = 0;
          if (t.A1 != 0.0) v += Real(t.A1) * f0_value<Real>(t.a, t.b, t.k, n + 1);
          if (t.A0 != 0.0) v += Real(t.A0) * f0_value<Real>(t.a, t.b, t.k, n);
          return v;
        }
      },
      term);
}

inline double eval_term(const ClosedFormTerm& term, long n) {
  return static_cast<double>(eval_term_as<long double>(term, n));
}

inline double eval_at(const ClosedFormExpr& e, long n) {
  long double v = 0.0L;
  for (const auto& t : e.terms) v += eval_term_as<long double>(t, n);
  return static_cast<double>(v);
}

inline SequenceTable eval_sequence(const ClosedFormExpr& e, int n_max) {
  SequenceTable out{{}, "proposed", e.source};
  out.values.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) out.values.push_back(eval_at(e, n));
  return out;
}

inline ClosedFormExpr invert(const RationalFunction& x, const FactoredDenominator& f) {
  ClosedFormExpr out;
  out.source = x;
  const RealPartialFraction pf = real_pfe(x, f);
  out.warnings = pf.warnings;
  for (int k = 0; k <= pf.poly_part.degree(); ++k)
    if (pf.poly_part.coeff(k) != 0.0) out.terms.push_back(Impulse{pf.poly_part.coeff(k), -k});
  if (pf.poly_part.degree() >= 1)
    out.warnings.push_back("non-causal polynomial part: terms δ[n+k] with k > 0 vanish for n >= 0");
  for (const auto& t : pf.origin_terms) out.terms.push_back(Impulse{t.amp, t.shift});
  for (const auto& t : pf.real_terms) out.terms.push_back(RealPole{t.A, t.r, t.j});
  for (const auto& t : pf.quad_terms) out.terms.push_back(QuadPole{t.B, t.C, t.a, t.b, t.j});
  return out;
}

inline ClosedFormExpr invert(const RationalFunction& x) {
  if (x.den().degree() < 1) return invert(x, FactoredDenominator{});
  return invert(x, factor_denominator(x.den()));
}

enum class RenderFormat { text, latex };

namespace detail {

struct Notation {
  std::string delta, times, step;
  std::string binom(const std::string& top, const std::string& bottom) const {
    return latex ? "\\binom{" + top + "}{" + bottom + "}" : "C(" + top + "," + bottom + ")";
  }
  std::string power(double base, const std::string& exponent) const {
    const std::string b = base < 0 ? "(" + format_general(base) + ")" : format_general(base);
    return latex ? b + "^{" + exponent + "}" : b + "^(" + exponent + ")";
  }
  std::string sine(double theta, const std::string& arg) const {
    const std::string a = arg == "n" ? arg : "(" + arg + ")";
    return latex ? "\\sin(" + format_general(theta) + a + ")" : "sin(" + format_general(theta) + "*" + a + ")";
  }
  bool latex;
};

inline Notation notation(RenderFormat f) {
  if (f == RenderFormat::latex) return {"\\delta", " \\cdot ", "u", true};
  return {"δ", "*", "u", false};
}

/// Joins factors, dropping a leading unit coefficient.
inline std::string product(double coef, std::vector<std::string> factors, const Notation& nt) {
  std::string out;
  if (factors.empty()) return format_general(coef);
  if (coef == -1.0)
    out = "-";
  else if (coef != 1.0)
    out = format_general(coef) + nt.times;
  for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? nt.times : "") + factors[i];
  return out;
}

/// f0 block evaluated at n + shift (shift = 0 for f0, 1 for f1).
inline std::string quad_block(double amp, const QuadPole& q, int shift, const Notation& nt) {
  const int k = q.k;
  const double r = std::hypot(q.a, q.b);
  const double theta = std::atan2(q.b, q.a);
  const double coef =
      amp * 2.0 * ((k - 1) % 2 == 0 ? 1.0 : -1.0) / std::pow(2.0 * std::sin(theta), 2 * k - 1);
  std::vector<std::string> factors;
  if (r != 1.0) factors.push_back(nt.power(r, shifted_index("n", shift - 2L * k)));

  std::string sum;
  for (int j = 0; j < k; ++j) {
    std::vector<std::string> parts;
    if (j > 0) parts.push_back(nt.binom(shifted_index("n", shift - 1L), std::to_string(j)));
    if (k - 1 - j > 0)
      parts.push_back(nt.binom(shifted_index("n", shift - (k + 1L + j)), std::to_string(k - 1 - j)));
    parts.push_back(nt.sine(theta, shifted_index("n", shift - 2L * j - 1)));
    std::string piece;
    for (std::size_t i = 0; i < parts.size(); ++i) piece += (i ? nt.times : "") + parts[i];
    if (j == 0)
      sum = piece;
    else
      sum += (j % 2 == 0 ? " + " : " - ") + piece;
  }
  factors.push_back(k > 1 ? "(" + sum + ")" : sum);
  factors.push_back(nt.step + "[" + shifted_index("n", shift - 2L * k) + "]");
  return product(coef, std::move(factors), nt);
}

/// "a + b", or "a - b" when b carries a leading minus.
inline std::string join_sum(const std::string& lhs, const std::string& rhs) {
  if (lhs.empty()) return rhs;
  if (!rhs.empty() && rhs.front() == '-') return lhs + " - " + rhs.substr(1);
  return lhs + " + " + rhs;
}

}  // namespace detail

/// Human-readable formula; deterministic for a given expression.
inline std::string render(const ClosedFormTerm& term, RenderFormat format = RenderFormat::text) {
  const auto nt = detail::notation(format);
  return std::visit(
      [&](const auto& t) -> std::string {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Impulse>) {
          return detail::product(t.amp, {nt.delta + "[" + shifted_index("n", -t.index) + "]"}, nt);
        } else if constexpr (std::is_same_v<T, RealPole>) {
          std::vector<std::string> f;
          if (t.k > 1) f.push_back(nt.binom("n-1", std::to_string(t.k - 1)));
          if (t.r != 1.0) f.push_back(nt.power(t.r, shifted_index("n", -t.k)));
          f.push_back(nt.step + "[" + shifted_index("n", -t.k) + "]");
          return detail::product(t.A, std::move(f), nt);
        } else {
          // coefficients at rounding level relative to their partner are not shown
          const double floor = 1e-13 * std::max({1.0, std::abs(t.A0), std::abs(t.A1)});
          std::string out;
          if (std::abs(t.A1) > floor) out = detail::quad_block(t.A1, t, 1, nt);
          if (std::abs(t.A0) > floor) out = detail::join_sum(out, detail::quad_block(t.A0, t, 0, nt));
          return out.empty() ? "0" : out;
        }
      },
      term);
}

inline std::string render(const ClosedFormExpr& e, RenderFormat format = RenderFormat::text) {
  std::string out;
  for (const auto& t : e.terms) {
    if (const auto* imp = std::get_if<Impulse>(&t); imp && imp->amp == 0.0) continue;
    const std::string piece = render(t, format);
    if (piece == "0") continue;
    out = detail::join_sum(out, piece);
  }
  return out.empty() ? "0" : out;
}

}  // namespace zinv
