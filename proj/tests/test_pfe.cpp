#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "zinv/corpus.hpp"
#include "zinv/pfe.hpp"

using namespace zinv;

namespace {

FactoredDenominator quad01() {
  FactoredDenominator f;
  f.quadratics = {{0.0, 1.0, 1}};
  return f;
}

void expect_same_rational(const RationalFunction& got, const RationalFunction& want, double tol) {
  ASSERT_EQ(got.den().degree(), want.den().degree());
  for (int i = 0; i <= want.den().degree(); ++i) EXPECT_NEAR(got.den().coeff(i), want.den().coeff(i), tol);
  const int top = std::max(got.num().degree(), want.num().degree());
  for (int i = 0; i <= top; ++i) EXPECT_NEAR(got.num().coeff(i), want.num().coeff(i), tol);
}

}  // namespace

TEST(RealPfe, SingleQuadraticTerm) {
  const RationalFunction x(RealPoly{1}, RealPoly{1, 0, 1});
  const auto pf = real_pfe(x, quad01());
  EXPECT_TRUE(pf.poly_part.is_zero());
  ASSERT_EQ(pf.quad_terms.size(), 1u);
  EXPECT_NEAR(pf.quad_terms[0].B, 0.0, 1e-15);
  EXPECT_NEAR(pf.quad_terms[0].C, 1.0, 1e-15);
}

TEST(RealPfe, RealAndQuadraticTerms) {
  const RationalFunction x(RealPoly{1}, RealPoly{-1, 1, -1, 1});
  FactoredDenominator f = quad01();
  f.linears = {{1.0, 1}};
  const auto pf = real_pfe(x, f);
  ASSERT_EQ(pf.real_terms.size(), 1u);
  EXPECT_NEAR(pf.real_terms[0].A, 0.5, 1e-14);
  ASSERT_EQ(pf.quad_terms.size(), 1u);
  EXPECT_NEAR(pf.quad_terms[0].B, -0.5, 1e-14);
  EXPECT_NEAR(pf.quad_terms[0].C, -0.5, 1e-14);
  expect_same_rational(recombine(pf), x, 1e-10);
}

TEST(RealPfe, ImproperInputSplitsPolynomialPart) {
  const RationalFunction x(RealPoly{1, 0, 0, 1}, RealPoly{1, 0, 1});
  const auto pf = real_pfe(x, quad01());
  EXPECT_EQ(pf.poly_part, (RealPoly{0, 1}));
  ASSERT_EQ(pf.quad_terms.size(), 1u);
  EXPECT_NEAR(pf.quad_terms[0].B, -1.0, 1e-14);
  EXPECT_NEAR(pf.quad_terms[0].C, 1.0, 1e-14);
}

TEST(RealPfe, OriginTerms) {
  const RationalFunction x(RealPoly{5}, RealPoly{0, 0, 1});
  FactoredDenominator f;
  f.origin_mult = 2;
  const auto pf = real_pfe(x, f);
  ASSERT_EQ(pf.origin_terms.size(), 2u);
  EXPECT_NEAR(pf.origin_terms[1].amp, 5.0, 1e-15);
  EXPECT_NEAR(pf.origin_terms[0].amp, 0.0, 1e-15);
}

TEST(RealPfe, InconsistentFactorizationThrows) {
  const RationalFunction x(RealPoly{1}, RealPoly{1, 0, 1});
  FactoredDenominator f;
  f.linears = {{2.0, 2}};
  EXPECT_THROW(real_pfe(x, f), Error);
}

TEST(RealPfe, NumericFactoringPath) {
  const RationalFunction x(RealPoly{3, 2}, RealPoly{-2, 1, 1});
  expect_same_rational(recombine(real_pfe(x)), x, 1e-10);
}

TEST(Recombine, PolynomialOnly) {
  RealPartialFraction pf;
  pf.poly_part = RealPoly{0, 1};
  const auto x = recombine(pf);
  EXPECT_EQ(x.num(), (RealPoly{0, 1}));
  EXPECT_EQ(x.den(), (RealPoly{1}));
}

TEST(Recombine, RoundTripRandomCorpus) {
  const auto corpus = generate_corpus(101, 500);
  for (const auto& c : corpus) {
    const auto back = recombine(real_pfe(c.x, c.f));
    const double scale = std::max(1.0, c.x.num().norm_inf());
    ASSERT_EQ(back.den().degree(), c.x.den().degree()) << c.text;
    for (int i = 0; i <= c.x.den().degree(); ++i)
      EXPECT_NEAR(back.den().coeff(i), c.x.den().coeff(i), 1e-8 * std::max(1.0, c.x.den().norm_inf())) << c.text;
    for (int i = 0; i <= std::max(back.num().degree(), c.x.num().degree()); ++i)
      EXPECT_NEAR(back.num().coeff(i), c.x.num().coeff(i), 1e-8 * scale) << c.text;
  }
}

TEST(RealPfe, UnknownOrderingDoesNotChangeCoefficients) {
  const auto corpus = generate_corpus(202, 60);
  std::mt19937_64 rng(5);
  for (const auto& c : corpus) {
    const auto base = real_pfe(c.x, c.f);
    PfeOptions opt;
    opt.unknown_order.resize(static_cast<std::size_t>(c.f.degree()));
    std::iota(opt.unknown_order.begin(), opt.unknown_order.end(), std::size_t{0});
    std::shuffle(opt.unknown_order.begin(), opt.unknown_order.end(), rng);
    const auto perm = real_pfe(c.x, c.f, opt);
    const auto close = [&](double got, double want) { EXPECT_NEAR(got, want, 1e-10 * std::max(1.0, std::abs(want))) << c.text; };
    for (std::size_t i = 0; i < base.real_terms.size(); ++i) close(perm.real_terms[i].A, base.real_terms[i].A);
    for (std::size_t i = 0; i < base.quad_terms.size(); ++i) {
      close(perm.quad_terms[i].B, base.quad_terms[i].B);
      close(perm.quad_terms[i].C, base.quad_terms[i].C);
    }
    for (std::size_t i = 0; i < base.origin_terms.size(); ++i) close(perm.origin_terms[i].amp, base.origin_terms[i].amp);
  }
}

TEST(ComplexPfeOverZ, QuadraticExample) {
  const RationalFunction x(RealPoly{1}, RealPoly{1, 0, 1});
  const auto pf = complex_pfe_over_z(x, quad01());
  int seen = 0;
  for (const auto& t : pf.terms) {
    ASSERT_EQ(t.j, 1);
    if (t.pole == cplx(0, 0)) {
      EXPECT_NEAR(std::abs(t.coeff - cplx(1, 0)), 0.0, 1e-15);
      ++seen;
    } else {
      EXPECT_NEAR(std::abs(t.coeff - cplx(-0.5, 0)), 0.0, 1e-15);
      ++seen;
    }
  }
  EXPECT_EQ(seen, 3);
}

TEST(ComplexPfeOverZ, GeometricSeries) {
  const RationalFunction x(RealPoly{0, 1}, RealPoly{-1, 1});
  const auto pf = complex_pfe_over_z(x);
  ASSERT_EQ(pf.terms.size(), 1u);
  EXPECT_NEAR(std::abs(pf.terms[0].pole - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(pf.terms[0].coeff - 1.0), 0.0, 1e-15);
}

TEST(ComplexPfeOverZ, LeadingOriginCoefficientOfTripleQuadratic) {
  const RationalFunction x(RealPoly{3, 2}, pow(RealPoly{2, -2, 1}, 3));
  FactoredDenominator f;
  f.quadratics = {{1.0, 1.0, 3}};
  const auto pf = complex_pfe_over_z(x, f);
  bool found = false;
  for (const auto& t : pf.terms)
    if (t.pole == cplx(0, 0) && t.j == 1) {
      EXPECT_NEAR(t.coeff.real(), 3.0 / 8.0, 1e-14);
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(ComplexPfeOverZ, ConjugateClosureOnCorpus) {
  for (const auto& c : generate_corpus(303, 200)) {
    const auto pf = complex_pfe_over_z(c.x, c.f);
    EXPECT_LE(pf.closure_defect, 1e-8) << c.text;
    for (const auto& t : pf.terms) {
      if (t.pole.imag() == 0.0) {
        EXPECT_EQ(t.coeff.imag(), 0.0);
        continue;
      }
      const auto mate = std::find_if(pf.terms.begin(), pf.terms.end(), [&](const ComplexTerm& o) {
        return o.j == t.j && o.pole == std::conj(t.pole);
      });
      ASSERT_NE(mate, pf.terms.end());
      EXPECT_EQ(mate->coeff, std::conj(t.coeff));
    }
  }
}
