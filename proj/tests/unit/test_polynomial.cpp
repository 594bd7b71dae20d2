/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#include <gtest/gtest.h>

#include "support/generators.hpp"

namespace sq = skolem_qe;
using sq::testing::Gen;

namespace {

const auto X = sq::testing::program_vars({"x1", "x2", "x3", "x4"});
const sq::VarId& x1 = X[0];
const sq::VarId& x2 = X[1];

sq::TemplatePolynomial P(const sq::VarId& v) { return sq::var(v); }
sq::TemplatePolynomial K(long n, long d = 1) { return sq::constant(sq::Rational(n, d)); }

}  // namespace

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(sq::parse_rational("42"), 42);
  EXPECT_EQ(sq::parse_rational("-7"), -7);
  EXPECT_EQ(sq::parse_rational("6/8"), sq::Rational(3, 4));
  EXPECT_EQ(sq::parse_rational("35.0"), 35);
  EXPECT_EQ(sq::parse_rational("0.125"), sq::Rational(1, 8));
  EXPECT_EQ(sq::parse_rational("-2.5"), sq::Rational(-5, 2));
}

TEST(Rational, RejectsMalformedLiterals) {
  for (const char* bad : {"", "1/0", "abc", "1.2.3", "--1", "1/", "/2"}) {
    EXPECT_THROW(sq::parse_rational(bad), sq::Error) << bad;
  }
}

TEST(Rational, CanonicalForm) {
  Gen g(7);
  for (int i = 0; i < 200; ++i) {
    sq::Rational q = g.rational(50, 30);
    EXPECT_GT(q.get_den(), 0);
    mpz_class d = gcd(mpz_class(abs(q.get_num())), q.get_den());
    EXPECT_EQ(d, 1);
  }
}

TEST(Polynomial, AddCollectsLikeTerms) {
  EXPECT_EQ(P(x1) + (K(1) + P(x1)), K(1) + K(2) * P(x1));
  auto p = K(3) * P(x1) * P(x2) - K(1, 2);
  EXPECT_EQ(p + sq::TemplatePolynomial{}, p);
}

TEST(Polynomial, AddingTemplatesCancelsConstants) {
  sq::UnknownFactory f;
  auto c1 = f.fresh("c1"), c2 = f.fresh("c2");
  auto lhs = (sq::var(c1) * P(x1) + K(1)) + (sq::var(c2) * P(x1) - K(1));
  auto rhs = sq::lift(sq::coeff_var(c1) + sq::coeff_var(c2)) * P(x1);
  EXPECT_EQ(lhs, rhs);
  Gen g(11);
  for (int i = 0; i < 5; ++i) {
    sq::Assignment pt{{c1, g.rational()}, {c2, g.rational()}, {x1, g.rational()}};
    EXPECT_EQ(sq::evaluate(lhs, pt), (pt[c1] + pt[c2]) * pt[x1]);
  }
}

TEST(Polynomial, Multiplication) {
  EXPECT_EQ(P(x1) * P(x1), sq::pow(P(x1), 2));
  EXPECT_EQ((K(1) + P(x1)) * (K(1) - P(x1)), K(1) - P(x1) * P(x1));

  sq::UnknownFactory f;
  auto y1 = f.fresh("y1"), c1 = f.fresh("c1"), c2 = f.fresh("c2");
  auto prod = sq::var(y1) * (sq::var(c1) + sq::var(c2) * P(x1));
  ASSERT_EQ(prod.size(), 2u);
  EXPECT_EQ(prod.constant_term(), sq::coeff_var(y1) * sq::coeff_var(c1));
  EXPECT_EQ(prod.coefficient(sq::Monomial(x1)), sq::coeff_var(y1) * sq::coeff_var(c2));
  EXPECT_EQ(sq::unknown_degree(prod), 2u);
  EXPECT_EQ(sq::program_degree(prod), 1u);
}

TEST(Polynomial, NoZeroCoefficientsStored) {
  auto p = P(x1) - P(x1);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.size(), 0u);
  Gen g(3);
  for (int i = 0; i < 300; ++i) {
    auto q = g.poly(X, 3, 4) * g.poly(X, 2, 3) - g.poly(X, 2, 3);
    for (const auto& [m, c] : q.terms()) EXPECT_FALSE(c.is_zero());
  }
}

TEST(Polynomial, Substitution) {
  auto x3 = X[2], x4 = X[3];
  sq::UnknownFactory f;
  auto c31 = f.fresh("c31"), c32 = f.fresh("c32");
  auto body = sq::var(c31) + sq::var(c32) * P(x1);
  auto out = sq::substitute(P(x4) - K(1) - P(x3), {{x3, body}});
  EXPECT_EQ(out, P(x4) - K(1) - sq::var(c31) - sq::var(c32) * P(x1));

  auto p = K(3) * P(x1) * P(x2) + K(2);
  EXPECT_EQ(sq::substitute(p, {}), p);

  auto sq_ = sq::substitute(P(x1) * P(x1), {{x1, P(x1) + K(1)}});
  EXPECT_EQ(sq_, P(x1) * P(x1) + K(2) * P(x1) + K(1));
  Gen g(5);
  for (int i = 0; i < 10; ++i) {
    sq::Rational v = g.rational();
    EXPECT_EQ(sq::evaluate(sq_, {{x1, v}}), (v + 1) * (v + 1));
  }
}

TEST(Polynomial, SubstitutionIsSimultaneous) {
  auto swapped = sq::substitute(P(x1) - K(2) * P(x2), {{x1, P(x2)}, {x2, P(x1)}});
  EXPECT_EQ(swapped, P(x2) - K(2) * P(x1));
}

TEST(Polynomial, Evaluation) {
  EXPECT_EQ(sq::evaluate(K(1) + P(x1), {{x1, 2}}), 3);
  EXPECT_EQ(sq::evaluate(sq::TemplatePolynomial{}, {}), 0);
  EXPECT_EQ(sq::evaluate(P(x1) * P(x1) + K(1), {{x1, sq::Rational(3, 2)}}), sq::Rational(13, 4));
}

TEST(Polynomial, EvaluationNeedsEveryVariable) {
  try {
    sq::evaluate(P(x1) + P(x2), {{x1, 1}});
    FAIL() << "expected UnboundVariable";
  } catch (const sq::Error& e) {
    EXPECT_EQ(e.code(), sq::ErrorCode::UnboundVariable);
  }
}

TEST(Polynomial, CoefficientVectorInGrlexOrder) {
  auto cv = sq::coefficient_vector(K(1) + P(x1));
  ASSERT_EQ(cv.size(), 2u);
  EXPECT_TRUE(cv[0].first.is_one());
  EXPECT_EQ(cv[1].first, sq::Monomial(x1));
  EXPECT_TRUE(sq::coefficient_vector(sq::TemplatePolynomial{}).empty());

  auto mixed = sq::coefficient_vector(P(x1) * P(x2) + P(x1) * P(x1));
  ASSERT_EQ(mixed.size(), 2u);
  EXPECT_EQ(mixed[0].first, sq::Monomial(x1, 2));
  EXPECT_EQ(mixed[1].first, sq::Monomial::from_factors({{x1, 1}, {x2, 1}}));
}

namespace {

// Independent grlex: compare exponent vectors indexed by declaration order.
std::vector<unsigned> exponents(const sq::Monomial& m) {
  std::vector<unsigned> e(X.size(), 0);
  for (std::size_t i = 0; i < X.size(); ++i) e[i] = m.exponent(X[i]);
  return e;
}

bool grlex_oracle(const sq::Monomial& a, const sq::Monomial& b) {
  auto ea = exponents(a), eb = exponents(b);
  unsigned da = 0, db = 0;
  for (unsigned v : ea) da += v;
  for (unsigned v : eb) db += v;
  if (da != db) return da < db;
  return ea > eb;  // x1 outranks x2: x1^2 < x1*x2 < x2^2
}

}  // namespace

TEST(Monomial, GrlexMatchesOracleExhaustively) {
  auto all = sq::monomials_up_to_degree(X, 3);
  ASSERT_EQ(all.size(), 35u);
  sq::GrlexOrder lt;
  for (const auto& a : all)
    for (const auto& b : all) {
      EXPECT_EQ(lt(a, b), grlex_oracle(a, b)) << sq::to_string(a) << " vs " << sq::to_string(b);
      if (!(a == b)) {
        EXPECT_NE(lt(a, b), lt(b, a));
      }
    }
  auto resorted = all;
  std::stable_sort(resorted.begin(), resorted.end(), lt);
  EXPECT_EQ(resorted, all);
}

TEST(Polynomial, InfixPrinting) {
  EXPECT_EQ(sq::to_string(K(1) + P(x1)), "1 + x1");
  EXPECT_EQ(sq::to_string(P(x1) * P(x1) - K(1, 2) * P(x2)), "-1/2*x2 + x1^2");
  EXPECT_EQ(sq::to_string(sq::TemplatePolynomial{}), "0");
  EXPECT_EQ(sq::to_string(-P(x1)), "-x1");
}

class RingProperties : public ::testing::TestWithParam<int> {};

TEST_P(RingProperties, AxiomsAndHomomorphism) {
  Gen g(static_cast<std::uint64_t>(GetParam()));
  sq::UnknownFactory f;
  auto U = sq::testing::unknown_vars({"a", "b"}, f);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = g.poly(X, 3, g.integer(0, 4), U);
    auto q = g.poly(X, 3, g.integer(0, 4), U);
    auto r = g.poly(X, 2, g.integer(0, 3), U);
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ((p + q) + r, p + (q + r));
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_EQ(p * K(1), p);
    EXPECT_EQ(p - p, sq::TemplatePolynomial{});

    sq::Assignment pt = g.point(X);
    for (const auto& u : U) pt[u] = g.rational();
    EXPECT_EQ(sq::evaluate(p + q, pt), sq::evaluate(p, pt) + sq::evaluate(q, pt));
    EXPECT_EQ(sq::evaluate(p * q, pt), sq::evaluate(p, pt) * sq::evaluate(q, pt));

    // Re-normalizing a canonical polynomial is a no-op.
    sq::TemplatePolynomial rebuilt;
    for (const auto& [m, c] : p.terms()) rebuilt.add_term(m, c);
    EXPECT_EQ(rebuilt, p);

    // substitute/evaluate commute.
    sq::Bindings b{{X[0], g.poly(X, 2, 2, U)}, {X[2], g.poly(X, 1, 2, U)}};
    sq::Assignment shifted = pt;
    for (const auto& [v, body] : b) shifted[v] = sq::evaluate(body, pt);
    EXPECT_EQ(sq::evaluate(sq::substitute(p, b), pt), sq::evaluate(p, shifted));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RingProperties, ::testing::Range(1, 6));
