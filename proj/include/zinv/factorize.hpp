#pragma once

// Real factorization of a denominator into z^v, (z - r)^u and irreducible
// (z^2 - 2az + a^2 + b^2)^k factors.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "zinv/error.hpp"
#include "zinv/polycore.hpp"

namespace zinv {

struct LinearFactor {
  double r;
  int u;

  friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
};

struct QuadraticFactor {
  double a;
  double b;  // > 0
  int k;

  double r_mod() const { return std::hypot(a, b); }
  /// Principal argument of a + ib; lies in (0, pi) because b > 0.
  double theta() const { return std::atan2(b, a); }

  friend bool operator==(const QuadraticFactor&, const QuadraticFactor&) = default;
};

struct FactoredDenominator {
  int origin_mult = 0;
  std::vector<LinearFactor> linears;
  std::vector<QuadraticFactor> quadratics;
  double scale = 1.0;

  int degree() const {
    int d = origin_mult;
    for (const auto& l : linears) d += l.u;
    for (const auto& q : quadratics) d += 2 * q.k;
    return d;
  }

  friend bool operator==(const FactoredDenominator&, const FactoredDenominator&) = default;
};

/// scale * z^origin_mult * prod (z - r)^u * prod quad^k
inline RealPoly expand(const FactoredDenominator& f) {
  std::vector<RootMult<double>> lin;
  if (f.origin_mult > 0) lin.push_back({0.0, f.origin_mult});
  for (const auto& l : f.linears) lin.push_back({l.r, l.u});
  std::vector<QuadMult> quad;
  for (const auto& q : f.quadratics) quad.push_back({q.a, q.b, q.k});
  return from_factors<double>(std::span<const RootMult<double>>(lin), std::span<const QuadMult>(quad), f.scale);
}

/// A distinct (complex) pole location with its multiplicity.
struct Pole {
  cplx z;
  int mult;
};

/// Origin first, then real poles, then each conjugate pair as (a+ib, a-ib).
inline std::vector<Pole> distinct_poles(const FactoredDenominator& f) {
  std::vector<Pole> out;
  if (f.origin_mult > 0) out.push_back({cplx(0.0, 0.0), f.origin_mult});
  for (const auto& l : f.linears) out.push_back({cplx(l.r, 0.0), l.u});
  for (const auto& q : f.quadratics) {
    out.push_back({cplx(q.a, q.b), q.k});
    out.push_back({cplx(q.a, -q.b), q.k});
  }
  return out;
}

/// Monic product of (z - p)^mult over every pole except poles[skip].
inline ComplexPoly product_except(std::span<const Pole> poles, std::size_t skip) {
  ComplexPoly out = ComplexPoly::constant(1.0);
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (i == skip) continue;
    out = out * pow(ComplexPoly::linear(poles[i].z), poles[i].mult);
  }
  return out;
}

struct RootEstimate {
  cplx root;
  double residual;  // |p(root)|
};

struct RootFinderOptions {
  int max_iterations = 2000;
  int polish_steps = 3;
};

namespace detail {

struct HornerResult {
  cplx value;
  cplx slope;
  double magnitude;  // sum |a_i| |z|^i, the rounding-error scale of `value`
};

inline HornerResult horner_with_slope(std::span<const double> a, cplx z) {
  cplx p = 0.0, dp = 0.0;
  double mag = 0.0;
  const double az = std::abs(z);
  for (std::size_t i = a.size(); i-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[i];
    mag = mag * az + std::abs(a[i]);
  }
  return {p, dp, mag};
}

}  // namespace detail

/// All complex roots of a real polynomial, with repetition.
///
/// Aberth-Ehrlich simultaneous iteration followed by a few Newton polishing
/// steps. Roots at the origin coming from exact zero low-order coefficients
/// are reported exactly.
inline std::vector<RootEstimate> find_roots(const RealPoly& p, const RootFinderOptions& opt = {}) {
  if (p.degree() < 1) throw Error("find_roots requires a polynomial of degree >= 1");
  constexpr double eps = std::numeric_limits<double>::epsilon();

  std::vector<RootEstimate> out;
  std::size_t low = 0;
  while (p.coeff(static_cast<int>(low)) == 0.0) {
    out.push_back({cplx(0.0, 0.0), 0.0});
    ++low;
  }
  std::vector<double> a(p.coeffs().begin() + static_cast<std::ptrdiff_t>(low), p.coeffs().end());
  const double lead = a.back();
  for (double& c : a) c /= lead;
  const std::size_t n = a.size() - 1;
  if (n == 0) return out;

  // Start on a circle whose radius is the geometric mean of the root moduli,
  // rotated off the real axis so conjugate pairs are not seeded symmetrically.
  const double radius = std::max(std::pow(std::abs(a[0]), 1.0 / static_cast<double>(n)), 1e-3);
  const double center = -a[n - 1] / static_cast<double>(n);
  std::vector<cplx> z(n);
  for (std::size_t i = 0; i < n; ++i)
    z[i] = center + std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n) + 0.4);

  std::vector<bool> done(n, false);
  bool all_done = false;
  for (int iter = 0; iter < opt.max_iterations && !all_done; ++iter) {
    all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto h = detail::horner_with_slope(a, z[i]);
      if (std::abs(h.value) <= 4.0 * eps * h.magnitude) {
        done[i] = true;
        continue;
      }
      cplx sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      cplx step;
      if (h.slope == 0.0) {
        step = cplx(1e-3 * (1.0 + std::abs(z[i])), 1e-3);
      } else {
        const cplx ratio = h.value / h.slope;
        step = ratio / (1.0 - ratio * sum);
      }
      z[i] -= step;
      if (std::abs(step) <= 2.0 * eps * std::abs(z[i]))
        done[i] = true;
      else
        all_done = false;
    }
  }

  const auto residual = [&](cplx x) { return std::abs(p(x)); };
  if (!all_done) {
    double worst = 0.0;
    for (const cplx& x : z) worst = std::max(worst, residual(x));
    throw NonConvergence("root finder did not converge", z, worst);
  }

  for (cplx& x : z) {
    double r = residual(x);
    for (int s = 0; s < opt.polish_steps; ++s) {
      const auto h = detail::horner_with_slope(a, x);
      if (h.slope == 0.0) break;
      const cplx cand = x - h.value / h.slope;
      const double rc = residual(cand);
      if (!(rc < r)) break;
      x = cand;
      r = rc;
    }
    out.push_back({x, r});
  }
  return out;
}

struct ClusterOptions {
  double tol_cluster = 1e-6;  // relative to the largest root modulus
  double tol_real = 1e-8;
  double tol_pair = 1e-5;  // relative conjugate-match distance
};

namespace detail {

inline std::string describe(cplx z) {
  return "(" + std::to_string(z.real()) + (z.imag() < 0 ? " - " : " + ") + std::to_string(std::abs(z.imag())) + "i)";
}

/// Single-linkage grouping of points closer than `radius`.
inline std::vector<std::vector<std::size_t>> link_groups(std::span<const cplx> pts, double radius) {
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (std::abs(pts[i] - pts[j]) <= radius) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::ptrdiff_t> slot(pts.size(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return groups;
}

}  // namespace detail

/// Merges nearby roots, snaps nearly-real locations to the real axis and
/// pairs the rest with their conjugates.
inline FactoredDenominator cluster_and_pair(std::span<const cplx> roots, const ClusterOptions& opt = {}) {
  FactoredDenominator out;
  if (roots.empty()) return out;
  double scale = 0.0;
  for (const cplx& z : roots) scale = std::max(scale, std::abs(z));

  struct Location {
    cplx z;
    int mult;
  };
  std::vector<Location> locs;
  for (const auto& g : detail::link_groups(roots, opt.tol_cluster * scale)) {
    cplx sum = 0.0;
    for (std::size_t i : g) sum += roots[i];
    locs.push_back({sum / static_cast<double>(g.size()), static_cast<int>(g.size())});
  }

  std::vector<Location> upper, lower;
  for (const auto& l : locs) {
    if (std::abs(l.z) <= opt.tol_real) {
      out.origin_mult += l.mult;
    } else if (std::abs(l.z.imag()) <= opt.tol_real * (1.0 + std::abs(l.z))) {
      out.linears.push_back({l.z.real(), l.mult});
    } else if (l.z.imag() > 0) {
      upper.push_back(l);
    } else {
      lower.push_back(l);
    }
  }

  std::vector<bool> used(lower.size(), false);
  for (const auto& u : upper) {
    std::ptrdiff_t best = -1;
    double best_dist = opt.tol_pair * std::max(scale, 1.0);
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (used[j] || lower[j].mult != u.mult) continue;
      const double d = std::abs(lower[j].z - std::conj(u.z));
      if (d <= best_dist) {
        best_dist = d;
        best = static_cast<std::ptrdiff_t>(j);
      }
    }
    if (best < 0) throw Error("conjugate pairing failed: unpaired root " + detail::describe(u.z));
    used[static_cast<std::size_t>(best)] = true;
    const cplx l = lower[static_cast<std::size_t>(best)].z;
    out.quadratics.push_back({0.5 * (u.z.real() + l.real()), 0.5 * (u.z.imag() - l.imag()), u.mult});
  }
  for (std::size_t j = 0; j < lower.size(); ++j)
    if (!used[j]) throw Error("conjugate pairing failed: unpaired root " + detail::describe(lower[j].z));

  std::sort(out.linears.begin(), out.linears.end(), [](const auto& x, const auto& y) { return x.r < y.r; });
  std::sort(out.quadratics.begin(), out.quadratics.end(),
            [](const auto& x, const auto& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
  return out;
}

struct FactorOptions {
  RootFinderOptions roots;
  ClusterOptions cluster;
  /// Radius (relative to the largest root modulus) inside which raw roots are
  /// tested as one multiple root before clustering. 0 disables the test.
  double tol_group = 1e-3;
};

namespace detail {

/// Raw roots of an m-fold root scatter on a circle of radius ~eps^(1/m).
/// Each candidate group is collapsed to one location when the polynomial
/// really has an m-fold root there: its centroid is polished by Newton on
/// p^(m-1) and p, p', ..., p^(m-1) must all vanish at the result.
inline std::vector<cplx> collapse_multiple_roots(const RealPoly& p, std::vector<cplx> roots, double tol_group) {
  if (tol_group <= 0.0 || roots.size() < 2) return roots;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double scale = 0.0;
  for (const cplx& z : roots) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return roots;

  const int n = p.degree();
  for (const auto& g : link_groups(roots, tol_group * scale)) {
    const int m = static_cast<int>(g.size());
    if (m < 2) continue;
    cplx c = 0.0;
    for (std::size_t i : g) c += roots[i];
    c /= static_cast<double>(m);
    const cplx centroid = c;

    const RealPoly dq = derivative(p, m - 1);
    const RealPoly dq1 = derivative(dq, 1);
    for (int it = 0; it < 50; ++it) {
      const cplx s = dq1(c);
      if (s == 0.0) break;
      const cplx step = dq(c) / s;
      c -= step;
      if (std::abs(step) <= 4.0 * eps * std::max(std::abs(c), 1.0)) break;
    }
    if (!(std::abs(c - centroid) <= tol_group * scale)) continue;

    const auto t = taylor_coefficients(p, c);
    const double ac = std::abs(c);
    const double lead_term = std::abs(t[static_cast<std::size_t>(m)]);
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) {
      // rounding scale of p^(j)(c)/j!: sum_i C(i,j) |a_i| |c|^(i-j)
      double mag = 0.0;
      for (int i = n; i >= j; --i) {
        double binom = 1.0;
        for (int s = 0; s < j; ++s) binom = binom * static_cast<double>(i - s) / static_cast<double>(s + 1);
        mag = mag * ac + binom * std::abs(p.coeff(i));
      }
      const double allowed = std::pow(1e-7 * scale, m - j) * lead_term + 64.0 * n * eps * mag;
      ok = std::abs(t[static_cast<std::size_t>(j)]) <= allowed;
    }
    if (!ok) continue;
    for (std::size_t i : g) roots[i] = c;
  }
  return roots;
}

}  // namespace detail

/// Numeric factorization of a real denominator: find_roots, multiple-root
/// consolidation, then cluster_and_pair. `scale` carries the leading coefficient.
inline FactoredDenominator factor_denominator(const RealPoly& d, const FactorOptions& opt = {}) {
  if (d.degree() < 1) throw Error("factor_denominator requires a polynomial of degree >= 1");
  int exact_origin = 0;
  while (d.coeff(exact_origin) == 0.0) ++exact_origin;
  FactoredDenominator out;
  if (exact_origin < d.degree()) {
    const RealPoly rest(std::vector<double>(d.coeffs().begin() + exact_origin, d.coeffs().end()));
    std::vector<cplx> roots;
    for (const auto& r : find_roots(rest, opt.roots)) roots.push_back(r.root);
    roots = detail::collapse_multiple_roots(rest, std::move(roots), opt.tol_group);
    out = cluster_and_pair(roots, opt.cluster);
  }
  out.origin_mult += exact_origin;
  out.scale = d.leading();
  return out;
}

}  // namespace zinv
