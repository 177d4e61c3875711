#pragma once

// Combinatorial identities behind the complex-pole formula, checked as
// executable identities in arbitrary-precision integers. The convolution
// cross-check is the only floating-point sweep.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "zinv/closedform.hpp"
#include "zinv/error.hpp"
#include "zinv/oracles.hpp"
#include "zinv/polycore.hpp"
#include "zinv/sequence.hpp"

namespace zinv {

using ExactInt = boost::multiprecision::cpp_int;

/// (x)_l = x (x-1) ... (x-l+1); the empty product (l = 0) is 1.
inline ExactInt falling_factorial(const ExactInt& x, int l) {
  ExactInt out = 1;
  for (int i = 0; i < l; ++i) out *= x - i;
  return out;
}

inline ExactInt factorial(int n) {
  ExactInt out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

/// C(nu, kappa) = (nu)_kappa / kappa!. Exact for every integer nu, including negative
/// values; zero when 0 <= nu < kappa.
inline ExactInt gen_binomial(const ExactInt& nu, int kappa) {
  if (kappa < 0) return 0;
  return falling_factorial(nu, kappa) / factorial(kappa);
}

inline ExactInt pow_exact(const ExactInt& base, int e) {
  ExactInt out = 1;  // 0^0 = 1
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

struct SummationSides {
  ExactInt lhs;
  ExactInt rhs;
};

/// Both sides of
///   sum_{t=j}^{k-1} C(n-1,t) (2k-2-t)!/(k-1-t)! C(t,j) (-1)^t
///     = (-1)^(k-1) C(k-1,j) (n-1)_j (n-(k+1+j))_(k-1-j)
inline SummationSides internal_summation_sides(int k, int j, const ExactInt& n) {
  SummationSides s;
  for (int t = j; t <= k - 1; ++t) {
    ExactInt term = gen_binomial(n - 1, t) * (factorial(2 * k - 2 - t) / factorial(k - 1 - t)) * gen_binomial(t, j);
    s.lhs += t % 2 == 0 ? term : ExactInt(-term);
  }
  ExactInt rhs = gen_binomial(k - 1, j) * falling_factorial(n - 1, j) * falling_factorial(n - (k + 1 + j), k - 1 - j);
  s.rhs = (k - 1) % 2 == 0 ? rhs : ExactInt(-rhs);
  return s;
}

inline bool check_internal_summation(int k, int j, const ExactInt& n) {
  const auto s = internal_summation_sides(k, j, n);
  return s.lhs == s.rhs;
}

/// sum_{w=0}^{sigma} (sigma-w)^p C(sigma,w) (-1)^w: the number of surjections from p
/// labelled balls onto sigma labelled boxes. Zero whenever p < sigma.
inline ExactInt check_surjection_sum(int sigma, int p) {
  ExactInt sum = 0;
  for (int w = 0; w <= sigma; ++w) {
    ExactInt term = pow_exact(sigma - w, p) * gen_binomial(sigma, w);
    sum += w % 2 == 0 ? term : ExactInt(-term);
  }
  return sum;
}

/// Inverse of 1/Q^k as the convolution of the inverses of 1/(z-(a+ib))^k and 1/(z-(a-ib))^k:
///   x[n] = sum_{m=k}^{n-k} C(m-1,m-k) (a+ib)^(m-k) C(n-m-1,n-m-k) (a-ib)^(n-m-k)
/// Generic over the real type; Gaussian powers are formed by repeated multiplication.
template <class Real>
std::vector<Real> convolution_values(const Real& a, const Real& b, int k, int n_max) {
  using std::abs;
  if (!(b > 0)) throw Error("not a complex pair");
  if (k < 1) throw Error("multiplicity must be at least 1");
  struct Gauss {
    Real re, im;
  };
  const auto mul = [](const Gauss& x, const Gauss& y) {
    return Gauss{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  };
  // powers of a+ib; powers of a-ib are their conjugates
  std::vector<Gauss> up{{Real(1), Real(0)}};
  for (int e = 1; e <= n_max; ++e) up.push_back(mul(up.back(), Gauss{a, b}));

  std::vector<Real> out;
  for (long n = 0; n <= n_max; ++n) {
    Real re = 0, im = 0, mag = 0;
    for (long m = k; m <= n - k; ++m) {
      const Real w = detail::binomial_as<Real>(m - 1, m - k) * detail::binomial_as<Real>(n - m - 1, n - m - k);
      const Gauss& p = up[static_cast<std::size_t>(m - k)];
      const Gauss& q = up[static_cast<std::size_t>(n - m - k)];
      const Gauss t = mul(p, Gauss{q.re, -q.im});
      re += w * t.re;
      im += w * t.im;
      mag += abs(w * t.re) + abs(w * t.im);
    }
    if (abs(im) > Real(kSymmetryTol) * (mag > 1 ? mag : Real(1)))
      throw Error("conjugate symmetry violated in convolution");
    out.push_back(re);
  }
  return out;
}

inline SequenceTable convolve_complex_pole_pair(double a, double b, int k, int n_max) {
  SequenceTable out;
  out.values = convolution_values<double>(a, b, k, n_max);
  out.method_tag = "convolution";
  out.source = RationalFunction(RealPoly::constant(1.0), pow(RealPoly{a * a + b * b, -2.0 * a, 1.0}, k));
  return out;
}

/// 50 significant decimal digits; used where values outgrow double's absolute resolution.
using WideReal = boost::multiprecision::cpp_bin_float_50;

struct IdentityReport {
  std::string name;
  long cases = 0;
  long failures = 0;
  double max_deviation = 0.0;  // floating sweeps only
  std::vector<std::string> counterexamples;
};

/// k in [1, k_max], j in [0, k-1], n in [0, n_max].
inline IdentityReport sweep_internal_summation(int k_max = 6, int n_max = 40) {
  IdentityReport r;
  r.name = "internal_summation";
  for (int k = 1; k <= k_max; ++k)
    for (int j = 0; j < k; ++j)
      for (int n = 0; n <= n_max; ++n) {
        ++r.cases;
        if (!check_internal_summation(k, j, n)) {
          ++r.failures;
          r.counterexamples.push_back("k=" + std::to_string(k) + " j=" + std::to_string(j) + " n=" + std::to_string(n));
        }
      }
  return r;
}

/// sigma in [1, sigma_max], p in [0, sigma-1] must give 0; p = sigma must give sigma!.
inline IdentityReport sweep_surjection(int sigma_max = 10) {
  IdentityReport r;
  r.name = "surjection";
  for (int sigma = 1; sigma <= sigma_max; ++sigma)
    for (int p = 0; p <= sigma; ++p) {
      ++r.cases;
      const ExactInt expected = p < sigma ? ExactInt(0) : factorial(sigma);
      if (check_surjection_sum(sigma, p) != expected) {
        ++r.failures;
        r.counterexamples.push_back("sigma=" + std::to_string(sigma) + " p=" + std::to_string(p));
      }
    }
  return r;
}

struct PolePairParams {
  double a;
  double b;
};

inline const std::vector<PolePairParams>& convolution_grid() {
  static const std::vector<PolePairParams> grid{{0.0, 1.0}, {1.0, 1.0}, {1.0, 2.0}, {0.5, 0.8}};
  return grid;
}

/// Convolution against f0 within `tol` (absolute), and both exactly zero for n < 2k.
/// Both sides are evaluated in WideReal from the same double-valued (a, b).
inline IdentityReport sweep_convolution(int k_max = 4, int n_max = 40, double tol = 1e-9) {
  IdentityReport r;
  r.name = "convolution_vs_f0";
  for (const auto& [a, b] : convolution_grid())
    for (int k = 1; k <= k_max; ++k) {
      const WideReal wa(a), wb(b);
      const std::vector<WideReal> conv = convolution_values<WideReal>(wa, wb, k, n_max);
      for (int n = 0; n <= n_max; ++n) {
        ++r.cases;
        const WideReal& c = conv[static_cast<std::size_t>(n)];
        const WideReal f = f0_value<WideReal>(wa, wb, k, n);
        const double dev = static_cast<double>(abs(c - f));
        r.max_deviation = std::max(r.max_deviation, dev);
        const bool prefix_ok = n >= 2 * k || (c == 0 && f == 0);
        if (!(dev <= tol) || !prefix_ok) {
          ++r.failures;
          r.counterexamples.push_back("a=" + format_general(a) + " b=" + format_general(b) + " k=" +
                                      std::to_string(k) + " n=" + std::to_string(n));
        }
      }
    }
  return r;
}

}  // namespace zinv
