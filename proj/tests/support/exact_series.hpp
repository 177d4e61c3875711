#pragma once

// Power-series coefficients of N(z)/D(z) in z^-1, computed in exact rational
// arithmetic from the (exactly representable) double coefficients.

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "zinv/polycore.hpp"

namespace zinv::exact {

using Rational = boost::multiprecision::cpp_rational;

inline std::vector<Rational> exact_series(const RealPoly& num, const RealPoly& den, int n_max) {
  const int p = num.degree();
  const int q = den.degree();
  std::vector<Rational> a(static_cast<std::size_t>(q) + 1), b(static_cast<std::size_t>(q) + 1);
  // descending powers: a[i] multiplies z^(q-i)
  for (int i = 0; i <= q; ++i) a[i] = Rational(den.coeff(q - i));
  for (int i = 0; i <= p; ++i) b[q - p + i] = Rational(num.coeff(p - i));
  std::vector<Rational> x;
  for (int n = 0; n <= n_max; ++n) {
    Rational acc = n <= q ? b[n] : Rational(0);
    for (int i = 1; i <= q && i <= n; ++i) acc -= a[i] * x[n - i];
    x.push_back(acc / a[0]);
  }
  return x;
}

inline std::vector<double> exact_series_double(const RealPoly& num, const RealPoly& den, int n_max) {
  std::vector<double> out;
  for (const auto& v : exact_series(num, den, n_max)) out.push_back(static_cast<double>(v));
  return out;
}

}  // namespace zinv::exact
