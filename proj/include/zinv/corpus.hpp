#pragma once

// Seeded random proper rationals with known factored denominators.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "zinv/factorize.hpp"
#include "zinv/format.hpp"
#include "zinv/parser.hpp"
#include "zinv/polycore.hpp"
#include "zinv/rational.hpp"

namespace zinv {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct CorpusOptions {
  int max_degree = 8;
  double min_modulus = 0.3;
  double max_modulus = 1.5;
  double min_separation = 0.3;
  double theta_margin = 0.25;  // keeps pairs away from the real axis
  int max_origin = 3;
  int max_u = 3;
  int max_k = 3;
  double coeff_range = 2.0;
};

struct CorpusCase {
  RationalFunction x;
  FactoredDenominator f;
  std::string text;  // factored form, readable by parse_rational_expr
};

namespace detail {

inline std::string factor_text(const FactoredDenominator& f) {
  std::vector<std::string> parts;
  const auto powered = [](std::string base, int e) { return e == 1 ? base : base + "^" + std::to_string(e); };
  if (f.origin_mult > 0) parts.push_back(powered("z", f.origin_mult));
  for (const auto& l : f.linears)
    parts.push_back(powered("(z " + std::string(l.r < 0 ? "+ " : "- ") + format_exact(std::abs(l.r)) + ")", l.u));
  for (const auto& q : f.quadratics) {
    const RealPoly p{q.a * q.a + q.b * q.b, -2.0 * q.a, 1.0};
    parts.push_back(powered("(" + to_expression(p) + ")", q.k));
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
  return out.empty() ? "1" : out;
}

}  // namespace detail

/// One proper rational: denominator degree in [1, max_degree], numerator degree at most that.
inline CorpusCase generate_case(std::mt19937_64& rng, const CorpusOptions& opt = {}) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  const auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  const int target = pick(1, opt.max_degree);
  FactoredDenominator f;
  std::vector<cplx> placed;
  const auto far_enough = [&](cplx z) {
    for (const cplx& p : placed)
      if (std::abs(p - z) < opt.min_separation) return false;
    return true;
  };

  for (int attempts = 0; f.degree() < target && attempts < 200; ++attempts) {
    const int room = target - f.degree();
    const double kind = unit(rng);
    if (kind < 0.15 && f.origin_mult == 0) {
      f.origin_mult = pick(1, std::min(opt.max_origin, room));
      placed.push_back(0.0);
    } else if (kind < 0.55 || room < 2) {
      const double r = uniform(opt.min_modulus, opt.max_modulus) * (unit(rng) < 0.5 ? -1.0 : 1.0);
      if (!far_enough(r)) continue;
      f.linears.push_back({r, pick(1, std::min(opt.max_u, room))});
      placed.push_back(r);
    } else {
      const double rho = uniform(opt.min_modulus, opt.max_modulus);
      const double theta = uniform(opt.theta_margin, std::numbers::pi - opt.theta_margin);
      const cplx z = std::polar(rho, theta);
      if (!far_enough(z)) continue;
      f.quadratics.push_back({z.real(), z.imag(), pick(1, std::min(opt.max_k, room / 2))});
      placed.push_back(z);
      placed.push_back(std::conj(z));
    }
  }
  if (f.degree() == 0) {
    f.linears.push_back({uniform(opt.min_modulus, opt.max_modulus), 1});
  }

  const int q = f.degree();
  const int p = pick(0, q);
  std::vector<double> num(static_cast<std::size_t>(p) + 1);
  for (double& c : num) c = uniform(-opt.coeff_range, opt.coeff_range);
  while (std::abs(num.back()) < 0.1) num.back() = uniform(-opt.coeff_range, opt.coeff_range);

  RealPoly n(num);
  RationalFunction x(n, expand(f));
  std::string text = "(" + to_expression(n) + ")/(" + detail::factor_text(f) + ")";
  return {std::move(x), std::move(f), std::move(text)};
}

inline std::vector<CorpusCase> generate_corpus(std::uint64_t seed, int count, const CorpusOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusCase> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(generate_case(rng, opt));
  return out;
}

}  // namespace zinv
