#pragma once

// Independent inverse Z-transform methods used to cross-check the closed form:
//
//   longdiv_series  power series of X(z) in 1/z by the division recurrence
//   moreira_invert  complex expansion of X(z)/z mapped through the classical term table
//   juric_invert    recursive principal-part coefficients of X(z)/z
//   residue_xn      sum of residues of X(z) z^(n-1), one index at a time

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zinv/closedform.hpp"
#include "zinv/error.hpp"
#include "zinv/factorize.hpp"
#include "zinv/pfe.hpp"
#include "zinv/polycore.hpp"
#include "zinv/rational.hpp"
#include "zinv/sequence.hpp"

namespace zinv {

/// Relative threshold for the imaginary residue left after summing conjugate-closed terms.
inline constexpr double kSymmetryTol = 1e-9;

namespace detail {

/// Accumulates complex terms and checks the imaginary part against the term magnitudes.
class RealSum {
 public:
  void add(cplx v) {
    sum_ += v;
    mag_ += std::abs(v);
  }
  double value() const {
    if (std::abs(sum_.imag()) > kSymmetryTol * std::max(1.0, mag_))
      throw Error("conjugate symmetry violated (imaginary residue " + std::to_string(sum_.imag()) + ")");
    return sum_.real();
  }

 private:
  cplx sum_ = 0.0;
  double mag_ = 0.0;
};

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// (x)_l = x (x-1) ... (x-l+1)
inline double falling(double x, int l) {
  double out = 1.0;
  for (int i = 0; i < l; ++i) out *= x - i;
  return out;
}

inline FactoredDenominator factor_or_empty(const RationalFunction& x) {
  return x.den().degree() < 1 ? FactoredDenominator{} : factor_denominator(x.den());
}

}  // namespace detail

inline SequenceTable longdiv_series(const RationalFunction& x, int n_max) {
  if (!x.is_causal()) throw Error("non-causal: improper rational");
  const RealPoly& den = x.den();
  const RealPoly& num = x.num();
  const int q = den.degree();
  SequenceTable out{std::vector<double>(static_cast<std::size_t>(n_max) + 1, 0.0), "longdiv", x};
  auto& v = out.values;
  for (int n = 0; n <= n_max; ++n) {
    double acc = q - n >= 0 ? num.coeff(q - n) : 0.0;
    for (int i = 1; i <= std::min(n, q); ++i) acc -= den.coeff(q - i) * v[static_cast<std::size_t>(n - i)];
    v[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

inline SequenceTable moreira_invert(const RationalFunction& x, const FactoredDenominator& f, int n_max) {
  const ComplexPartialFraction cpf = complex_pfe_over_z(x, f);
  SequenceTable out{{}, "moreira", x};
  for (long n = 0; n <= n_max; ++n) {
    double table_value = 0.0;
    detail::RealSum symmetry;
    for (const auto& t : cpf.terms) {
      const int q = t.j;
      if (t.pole == 0.0) {
        // A z / z^q = A z^-(q-1)  ->  A δ[n - (q-1)]
        const cplx v = n == q - 1 ? t.coeff : cplx(0.0);
        symmetry.add(v);
        table_value += v.real();
        continue;
      }
      double prod = 1.0;
      for (int i = 0; i <= q - 2; ++i) prod *= static_cast<double>(n - i);
      const double scale = prod / detail::factorial(q - 1);
      symmetry.add(t.coeff * std::pow(t.pole, static_cast<double>(n - q + 1)) * scale);
      if (t.pole.imag() == 0.0) {
        // A r^(n-q+1) / (q-1)! prod_{i=0}^{q-2} (n - i); q = 1 gives A r^n
        table_value += t.coeff.real() * std::pow(t.pole.real(), static_cast<double>(n - q + 1)) * scale;
      } else if (t.pole.imag() > 0.0) {
        // the pair contributes 2 A r^(n-q+1) / (q-1)! cos((n-q+1) theta + phi) prod (n - i)
        const double A = std::abs(t.coeff);
        const double phi = A == 0.0 ? 0.0 : std::arg(t.coeff);
        const double r = std::abs(t.pole);
        const double theta = std::arg(t.pole);
        table_value += 2.0 * A * std::pow(r, static_cast<double>(n - q + 1)) *
                       std::cos(static_cast<double>(n - q + 1) * theta + phi) * scale;
      }
    }
    symmetry.value();
    out.values.push_back(table_value);
  }
  return out;
}

inline SequenceTable moreira_invert(const RationalFunction& x, int n_max) {
  return moreira_invert(x, detail::factor_or_empty(x), n_max);
}

struct JuricPole {
  cplx pole;
  int mult;
  std::vector<cplx> c;  // c[j], j = 0 .. mult-1
};

struct JuricCoefficients {
  std::vector<JuricPole> poles;
};

/// Coefficients c_{k,j} of Y(z) = X(z)/z = N(z)/D(z) by the derivative recursion
///   c_{k,j} = (N^(j)(z_k) - sum_{l<j} c_{k,l} (j)_l D_k^(j-l)(z_k)) / (j! D_k(z_k))
/// where D_k = D / (z - z_k)^{m_k}.
inline JuricCoefficients juric_coefficients(const RationalFunction& x, const FactoredDenominator& f) {
  const auto [ynum, g, yden] = detail::over_z(x, f);
  const ComplexPoly D = yden.to_complex();
  const ComplexPoly N = ynum.to_complex();

  JuricCoefficients out;
  for (const Pole& p : distinct_poles(g)) {
    const ComplexPoly Dk = deflate(D, p.z, p.mult);
    std::vector<cplx> dk(static_cast<std::size_t>(p.mult));
    std::vector<cplx> nj(static_cast<std::size_t>(p.mult));
    for (int j = 0; j < p.mult; ++j) {
      dk[static_cast<std::size_t>(j)] = derivative(Dk, j)(p.z);
      nj[static_cast<std::size_t>(j)] = derivative(N, j)(p.z);
    }
    const cplx d0 = dk[0];
    if (d0 == 0.0 || !std::isfinite(std::abs(d0))) throw Error("deflation inconsistent");
    JuricPole jp{p.z, p.mult, std::vector<cplx>(static_cast<std::size_t>(p.mult))};
    for (int j = 0; j < p.mult; ++j) {
      cplx acc = nj[static_cast<std::size_t>(j)];
      for (int l = 0; l < j; ++l)
        acc -= jp.c[static_cast<std::size_t>(l)] * detail::falling(j, l) * dk[static_cast<std::size_t>(j - l)];
      jp.c[static_cast<std::size_t>(j)] = acc / (detail::factorial(j) * d0);
    }
    out.poles.push_back(std::move(jp));
  }
  return out;
}

inline JuricCoefficients juric_coefficients(const RationalFunction& x) {
  return juric_coefficients(x, detail::factor_or_empty(x));
}

/// x[n] = sum_k sum_{j<m_k} c_{k,m_k-1-j} C(n,j) z_k^(n-j), with C(n,j) 0^(n-j) read as δ[n-j].
inline SequenceTable juric_invert(const RationalFunction& x, const FactoredDenominator& f, int n_max) {
  const JuricCoefficients jc = juric_coefficients(x, f);
  SequenceTable out{{}, "juric", x};
  for (long n = 0; n <= n_max; ++n) {
    detail::RealSum sum;
    for (const auto& p : jc.poles) {
      for (int j = 0; j < p.mult; ++j) {
        const cplx c = p.c[static_cast<std::size_t>(p.mult - 1 - j)];
        if (p.pole == 0.0) {
          if (n == j) sum.add(c);
        } else if (j <= n) {
          sum.add(c * detail::binomial(n, j) * std::pow(p.pole, static_cast<double>(n - j)));
        }
      }
    }
    out.values.push_back(sum.value());
  }
  return out;
}

inline SequenceTable juric_invert(const RationalFunction& x, int n_max) {
  return juric_invert(x, detail::factor_or_empty(x), n_max);
}

/// x[n] as the sum over the poles z_i of X of
///   1/(m-1)! d^(m-1)/dz^(m-1) [(z - z_i)^m X(z) z^(n-1)] at z_i,
/// differentiating U/V by the quotient rule: (U_s / V^(s+1))' = U_{s+1} / V^(s+2),
/// U_{s+1} = U_s' V - (s+1) U_s V'.
inline double residue_xn(const RationalFunction& x, const FactoredDenominator& f, long n) {
  if (n < 1) throw Error("use n >= 1 or an oracle that handles the origin pole");
  const std::vector<Pole> poles = distinct_poles(f);
  const ComplexPoly base = (RealPoly::monomial(1.0, static_cast<int>(n - 1)) * x.num()).to_complex();
  detail::RealSum sum;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const Pole& p = poles[i];
    const ComplexPoly V = product_except(poles, i);
    const ComplexPoly dV = derivative(V);
    ComplexPoly U = base;
    for (int s = 0; s + 1 < p.mult; ++s) U = derivative(U) * V - dV * cplx(s + 1.0) * U;
    const cplx v = V(p.z);
    sum.add(U(p.z) / (std::pow(v, p.mult) * detail::factorial(p.mult - 1)));
  }
  return sum.value();
}

inline double residue_xn(const RationalFunction& x, long n) {
  return residue_xn(x, detail::factor_or_empty(x), n);
}

/// Residue sums for n >= 1; x[0] comes from the initial value theorem, lim X(z) as z -> infinity.
inline SequenceTable residue_series(const RationalFunction& x, const FactoredDenominator& f, int n_max) {
  if (!x.is_causal()) throw Error("non-causal: improper rational");
  SequenceTable out{{}, "residue", x};
  out.values.push_back(x.num().degree() == x.den().degree() ? x.num().leading() : 0.0);
  for (long n = 1; n <= n_max; ++n) out.values.push_back(residue_xn(x, f, n));
  return out;
}

struct MethodResult {
  std::string method;
  std::optional<SequenceTable> table;
  std::string error;
  double millis = 0.0;
};

struct PairDeviation {
  std::string first;
  std::string second;
  double max_dev;
};

struct ResidueCheck {
  long n;
  double value;
  double anchor;
  double deviation;
};

struct CompareOptions {
  double tol = 1e-7;  // scaled by max(1, max |x[n]|) of the anchor
  std::vector<long> residue_indices{1, 5, 17, 33, 50};
};

struct ComparisonReport {
  std::vector<MethodResult> methods;
  std::vector<PairDeviation> pairs;
  std::vector<ResidueCheck> residues;
  std::string residue_error;
  std::string anchor;
  double scaled_tolerance = 0.0;
  bool pass = false;

  double max_pair_deviation() const {
    double m = 0.0;
    for (const auto& p : pairs) m = std::max(m, p.max_dev);
    return m;
  }
};

/// Runs the closed form and the three sequence oracles, then compares every pair.
/// Long division is the anchor. Method failures are recorded, never thrown.
inline ComparisonReport compare_methods(const RationalFunction& x, const std::optional<FactoredDenominator>& given,
                                        int n_max, const CompareOptions& opt = {}) {
  ComparisonReport rep;
  std::optional<FactoredDenominator> f = given;
  std::string factor_error;
  if (!f) {
    try {
      f = detail::factor_or_empty(x);
    } catch (const std::exception& e) {
      factor_error = e.what();
    }
  }

  const auto run = [&](const std::string& name, const std::function<SequenceTable()>& fn, bool needs_factors) {
    MethodResult m{name, std::nullopt, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
      if (needs_factors && !f) throw Error(factor_error);
      m.table = fn();
    } catch (const std::exception& e) {
      m.error = e.what();
    }
    m.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep.methods.push_back(std::move(m));
  };
  run("longdiv", [&] { return longdiv_series(x, n_max); }, false);
  run("proposed", [&] { return eval_sequence(invert(x, *f), n_max); }, true);
  run("moreira", [&] { return moreira_invert(x, *f, n_max); }, true);
  run("juric", [&] { return juric_invert(x, *f, n_max); }, true);

  bool ok = true;
  const SequenceTable* anchor = nullptr;
  for (const auto& m : rep.methods) {
    if (!m.table) {
      ok = false;
    } else if (!anchor) {
      anchor = &*m.table;
      rep.anchor = m.method;
    }
  }
  if (!anchor) {
    rep.pass = false;
    return rep;
  }
  rep.scaled_tolerance = opt.tol * std::max(1.0, anchor->max_abs());

  for (std::size_t i = 0; i < rep.methods.size(); ++i)
    for (std::size_t j = i + 1; j < rep.methods.size(); ++j) {
      const auto& a = rep.methods[i];
      const auto& b = rep.methods[j];
      if (!a.table || !b.table) continue;
      const double d = max_deviation(*a.table, *b.table);
      rep.pairs.push_back({a.method, b.method, d});
      if (!(d <= rep.scaled_tolerance)) ok = false;
    }

  if (f) {
    for (long n : opt.residue_indices) {
      if (n < 1 || n > n_max) continue;
      try {
        const double v = residue_xn(x, *f, n);
        const double ref = anchor->values[static_cast<std::size_t>(n)];
        rep.residues.push_back({n, v, ref, std::abs(v - ref)});
        if (!(std::abs(v - ref) <= rep.scaled_tolerance)) ok = false;
      } catch (const std::exception& e) {
        rep.residue_error = e.what();
        ok = false;
      }
    }
  }
  rep.pass = ok;
  return rep;
}

}  // namespace zinv
