#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "support/exact_series.hpp"
#include "zinv/closedform.hpp"
#include "zinv/corpus.hpp"
#include "zinv/oracles.hpp"

using namespace zinv;

namespace {

RationalFunction ratio(RealPoly n, RealPoly d) { return RationalFunction(std::move(n), std::move(d)); }

void expect_values(const SequenceTable& t, std::vector<double> want, double tol = 1e-12) {
  ASSERT_GE(t.values.size(), want.size());
  for (std::size_t n = 0; n < want.size(); ++n) EXPECT_NEAR(t.values[n], want[n], tol) << "n=" << n;
}

}  // namespace

TEST(Invert, QuadraticPairTerm) {
  const auto e = invert(ratio({1}, {1, 0, 1}));
  ASSERT_EQ(e.terms.size(), 1u);
  const auto& q = std::get<QuadPole>(e.terms[0]);
  EXPECT_NEAR(q.A1, 0.0, 1e-15);
  EXPECT_NEAR(q.A0, 1.0, 1e-15);
  EXPECT_NEAR(q.a, 0.0, 1e-12);
  EXPECT_NEAR(q.b, 1.0, 1e-12);
  EXPECT_EQ(q.k, 1);
  for (int n = 0; n <= 20; ++n) {
    const double want = n < 2 ? 0.0 : -std::cos(n * std::numbers::pi / 2);
    EXPECT_NEAR(eval_at(e, n), want, 1e-12) << n;
  }
}

TEST(Invert, SimpleRealPole) {
  const auto e = invert(ratio({1}, {-3, 1}));
  ASSERT_EQ(e.terms.size(), 1u);
  const auto& r = std::get<RealPole>(e.terms[0]);
  EXPECT_NEAR(r.A, 1.0, 1e-15);
  EXPECT_NEAR(r.r, 3.0, 1e-14);
  EXPECT_EQ(r.k, 1);
  EXPECT_EQ(eval_at(e, 0), 0.0);
  EXPECT_NEAR(eval_at(e, 4), 27.0, 1e-12);
}

TEST(Invert, ShiftedImpulse) {
  const auto e = invert(ratio({5}, {0, 0, 1}));
  expect_values(eval_sequence(e, 3), {0, 0, 5, 0});
  EXPECT_EQ(render(e), "5*δ[n-2]");
}

TEST(Invert, NonCausalPartWarnsAndVanishes) {
  const auto e = invert(ratio({1, 0, 0, 1}, {1, 0, 1}));
  ASSERT_FALSE(e.warnings.empty());
  EXPECT_NE(e.warnings.back().find("non-causal"), std::string::npos);
  // z + (1 - z)/(z^2 + 1): the z term never contributes on n >= 0
  expect_values(eval_sequence(e, 6), exact::exact_series_double(RealPoly{1, -1}, RealPoly{1, 0, 1}, 6), 1e-14);
}

TEST(EvalSequence, Examples) {
  expect_values(eval_sequence(invert(ratio({1}, {1, 0, 1})), 6), {0, 0, 1, 0, -1, 0, 1});
  expect_values(eval_sequence(invert(ratio({0, 1}, {-1, 1})), 4), {1, 1, 1, 1, 1});
  const auto e = eval_sequence(invert(ratio({1}, {1, 0, 1})), 3);
  EXPECT_EQ(e.method_tag, "proposed");
}

TEST(F0, Examples) {
  EXPECT_NEAR(f0_eval(0, 1, 1, 2), 1.0, 1e-15);
  EXPECT_NEAR(f0_eval(0, 1, 1, 3), 0.0, 1e-15);
  EXPECT_NEAR(f0_eval(0, 1, 1, 4), -1.0, 1e-15);
  EXPECT_NEAR(f0_eval(0, 1, 2, 4), 1.0, 1e-14);
  EXPECT_NEAR(f0_eval(0, 1, 2, 6), -2.0, 1e-14);
  EXPECT_NEAR(f0_eval(0, 1, 2, 8), 3.0, 1e-14);
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(f0_eval(0.4, 0.9, k, 2 * k - 1), 0.0);
  EXPECT_THROW(f0_eval(1, 0, 1, 4), Error);
}

TEST(F0, MatchesExactSeries) {
  for (auto [a, b] : {std::pair{0.0, 1.0}, {1.0, 1.0}, {0.5, 0.8}, {-0.75, 0.25}})
    for (int k = 1; k <= 4; ++k) {
      const RealPoly q{a * a + b * b, -2 * a, 1};
      const auto x = exact::exact_series_double(RealPoly{1}, pow(q, k), 40);
      for (int n = 0; n <= 40; ++n) EXPECT_NEAR(f0_eval(a, b, k, n), x[n], 1e-9 * std::max(1.0, std::abs(x[n])));
    }
}

TEST(F1, Examples) {
  EXPECT_NEAR(f1_eval(0, 1, 1, 1), 1.0, 1e-15);
  EXPECT_NEAR(f1_eval(0, 1, 2, 3), 1.0, 1e-14);
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(f1_eval(1.2, 0.3, k, 2 * k - 2), 0.0);
}

TEST(F1, ShiftIdentityIsBitExact) {
  for (auto [a, b] : {std::pair{0.0, 1.0}, {1.0, 1.0}, {1.0, 2.0}, {0.5, 0.8}})
    for (int k = 1; k <= 4; ++k)
      for (int n = 0; n <= 40; ++n) EXPECT_EQ(f1_eval(a, b, k, n), f0_eval(a, b, k, n + 1));
}

TEST(RealPoleTerm, Examples) {
  EXPECT_EQ(real_pole_term_eval(1, 3, 1, 0), 0.0);
  EXPECT_EQ(real_pole_term_eval(1, 3, 1, 4), 27.0);
  EXPECT_EQ(real_pole_term_eval(1, 2, 3, 5), 24.0);
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(real_pole_term_eval(2.5, -0.7, k, k - 1), 0.0);
  EXPECT_THROW(real_pole_term_eval(1, 0, 1, 3), Error);
}

TEST(Render, Examples) {
  EXPECT_EQ(render(ClosedFormTerm{Impulse{5, 2}}), "5*δ[n-2]");
  EXPECT_EQ(render(ClosedFormTerm{RealPole{1, 3, 1}}), "3^(n-1)*u[n-1]");
  const std::string s = render(invert(ratio({1}, {1, 0, 1})));
  EXPECT_NE(s.find("u[n-2]"), std::string::npos);
  EXPECT_NE(s.find("sin(1.5708*(n-1))"), std::string::npos);
  EXPECT_EQ(render(ClosedFormExpr{}), "0");
}

TEST(Render, Latex) {
  const std::string s = render(ClosedFormTerm{RealPole{2, 0.5, 2}}, RenderFormat::latex);
  EXPECT_NE(s.find("\\binom{n-1}{1}"), std::string::npos);
  EXPECT_NE(s.find("0.5^{n-2}"), std::string::npos);
}

TEST(Invert, MatchesExactSeriesOnCorpus) {
  for (const auto& c : generate_corpus(kDefaultSeed, 300)) {
    const auto got = eval_sequence(invert(c.x, c.f), 50);
    const auto want = exact::exact_series_double(c.x.num(), c.x.den(), 50);
    double peak = 0;
    for (double v : want) peak = std::max(peak, std::abs(v));
    for (int n = 0; n <= 50; ++n) ASSERT_NEAR(got.values[n], want[n], 1e-7 * std::max(1.0, peak)) << c.text << " n=" << n;
  }
}

TEST(Invert, ZeroPrefixAndFirstTermOnCorpus) {
  auto corpus = generate_corpus(99, 200);
  for (const auto& c : corpus) {
    const RationalFunction x(RealPoly{1}, c.x.den());
    const int q = x.den().degree();
    const auto s = eval_sequence(invert(x, c.f), q);
    for (int n = 0; n < q; ++n) EXPECT_NEAR(s.values[n], 0.0, 1e-8) << c.text;
    EXPECT_NEAR(s.values[q], 1.0, 1e-8) << c.text;
  }
}

TEST(Invert, Linearity) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coef(-2, 2);
  CorpusOptions small;
  small.max_degree = 4;
  for (int trial = 0; trial < 100; ++trial) {
    const CorpusCase x = generate_case(rng, small);
    const CorpusCase y = generate_case(rng, small);
    bool shared = false;
    for (const auto& p : distinct_poles(x.f))
      for (const auto& q : distinct_poles(y.f)) shared |= std::abs(p.z - q.z) < 1e-3;
    if (shared) continue;
    const double alpha = coef(rng), beta = coef(rng);
    const RationalFunction sum = alpha * x.x + beta * y.x;
    const auto ex = eval_sequence(invert(x.x, x.f), 30);
    const auto ey = eval_sequence(invert(y.x, y.f), 30);
    const auto es = eval_sequence(invert(sum), 30);
    for (int n = 0; n <= 30; ++n)
      EXPECT_NEAR(es.values[n], alpha * ex.values[n] + beta * ey.values[n], 1e-9 * std::max(1.0, std::abs(es.values[n])))
          << x.text << " | " << y.text << " n=" << n;
  }
}
