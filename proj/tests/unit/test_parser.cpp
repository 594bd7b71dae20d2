/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#include <filesystem>

#include <gtest/gtest.h>

#include "support/generators.hpp"

namespace sq = skolem_qe;

namespace {

sq::ErrorCode code_of(std::string_view text, sq::InputFormat fmt) {
  try {
    sq::parse(text, fmt);
  } catch (const sq::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for: " << text;
  return sq::ErrorCode::InvalidArgument;
}

std::string sample(const std::string& name) { return sq::testing::read_text(std::string(SKOLEM_QE_SAMPLES) + "/" + name); }

constexpr auto Native = sq::InputFormat::Native;
constexpr auto Smt = sq::InputFormat::SmtLib2Subset;

}  // namespace

TEST(Parser, RunningExampleNative) {
  auto f = sq::to_cnf(sq::parse(sample("running_example.native"), Native));
  ASSERT_EQ(f.prefix.size(), 4u);
  std::vector<sq::Quantifier> qs;
  std::vector<std::string> names;
  for (const auto& qv : f.prefix) {
    qs.push_back(qv.quantifier);
    names.push_back(qv.var.name());
  }
  using Q = sq::Quantifier;
  EXPECT_EQ(qs, (std::vector<Q>{Q::ForAll, Q::Exists, Q::Exists, Q::ForAll}));
  EXPECT_EQ(names, (std::vector<std::string>{"x1", "x2", "x3", "x4"}));
  ASSERT_EQ(f.cnf->size(), 2u);
  EXPECT_EQ((*f.cnf)[0].size(), 2u);
  EXPECT_EQ((*f.cnf)[1].size(), 2u);
}

TEST(Parser, NativeAndSmtAgree) {
  auto a = sq::to_cnf(sq::parse(sample("running_example.native"), Native));
  auto b = sq::to_cnf(sq::parse(sample("running_example.smt2"), Smt));
  EXPECT_EQ(a.prefix, b.prefix);
  EXPECT_EQ(*a.cnf, *b.cnf);
}

TEST(Parser, TrivialAtomNormalizes) {
  auto f = sq::parse("(assert (forall ((x Real)) (>= x x)))", Smt);
  ASSERT_TRUE(f.matrix.is_atom());
  EXPECT_TRUE(f.matrix.atom().poly.is_zero());
  EXPECT_EQ(f.matrix.atom().rel, sq::Relation::GE);
}

TEST(Parser, DisequalitySplits) {
  auto f = sq::to_cnf(sq::parse("(formula (prefix (forall x)) (matrix (!= x 1)))", Native));
  ASSERT_EQ(f.cnf->size(), 1u);
  const auto& c = (*f.cnf)[0];
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].rel, sq::Relation::LT);
  EXPECT_EQ(c[1].rel, sq::Relation::GT);
  EXPECT_EQ(sq::to_string(c[0].poly), "-1 + x");
}

TEST(Parser, LiteralsAndArithmetic) {
  auto f = sq::parse("(formula (prefix (forall x) (exists y)) (matrix (< (* 1/2 x) (- y 0.25 (/ x 4)))))", Native);
  // x/2 < y - 1/4 - x/4  <=>  3/4 x - y + 1/4 < 0
  EXPECT_EQ(sq::to_string(f.matrix.atom().poly), "1/4 + 3/4*x - y");
}

TEST(Parser, SmtFeatures) {
  auto f = sq::parse(R"(
    (set-logic NRA)
    (set-info :status sat)
    (assert (forall ((x Real)) (exists ((y Real))
      (let ((s (* x x)) (big (> y 100)))
        (=> (not big) (and (>= y s) (distinct y 3)))))))
    (check-sat)
    (exit))",
                     Smt);
  ASSERT_EQ(f.prefix.size(), 2u);
  auto cnf = sq::to_cnf(f).cnf;
  EXPECT_GE(cnf->size(), 2u);
  sq::Assignment pt{{f.prefix[0].var, 2}, {f.prefix[1].var, 5}};
  EXPECT_TRUE(sq::evaluate(f.matrix, pt));
  pt[f.prefix[1].var] = 3;
  EXPECT_FALSE(sq::evaluate(f.matrix, pt));
}

TEST(Parser, DeclaredConstantsAreOuterExistentials) {
  auto f = sq::parse("(declare-const k Real)(assert (forall ((x Real)) (> (+ x k) x)))", Smt);
  ASSERT_EQ(f.prefix.size(), 2u);
  EXPECT_EQ(f.prefix[0].quantifier, sq::Quantifier::Exists);
  EXPECT_EQ(f.prefix[0].var.name(), "k");
}

TEST(Parser, Errors) {
  EXPECT_EQ(code_of("(formula (prefix (forall x)) (matrix (> x 0)", Native), sq::ErrorCode::ParseError);
  EXPECT_EQ(code_of("(formula (prefix (forall x)) (matrix (> x y)))", Native), sq::ErrorCode::FreeVariable);
  EXPECT_EQ(code_of("(formula (prefix (forall x)) (matrix (> (/ 1 x) 0)))", Native), sq::ErrorCode::UnsupportedTheory);
  EXPECT_EQ(code_of("(assert (forall ((x Real)) (> (sin x) 0)))", Smt), sq::ErrorCode::UnsupportedTheory);
  EXPECT_EQ(code_of("(assert (forall ((x Int)) (> x 0)))", Smt), sq::ErrorCode::UnsupportedTheory);
  EXPECT_EQ(code_of("(assert (forall ((x Real)) (and (> x 0) (exists ((y Real)) (> y x)))))", Smt),
            sq::ErrorCode::NotPrenex);
  EXPECT_EQ(code_of("(assert (forall ((x Real)) (> (frob x) 0)))", Smt), sq::ErrorCode::ParseError);
}

TEST(Parser, ErrorsCarryPosition) {
  try {
    sq::parse("(formula (prefix (forall x))\n  (matrix (> x @)))", Native);
    FAIL();
  } catch (const sq::Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Parser, PrintParseRoundTripOnSamples) {
  for (const auto& entry : std::filesystem::directory_iterator(SKOLEM_QE_SAMPLES)) {
    auto path = entry.path();
    auto fmt = path.extension() == ".smt2" ? Smt : Native;
    auto f = sq::parse(sq::testing::read_text(path.string()), fmt);
    auto g = sq::parse(sq::to_native(f), Native);
    EXPECT_EQ(f.prefix, g.prefix) << path;
    EXPECT_EQ(f.matrix, g.matrix) << path;
  }
}

TEST(Parser, PrintParseRoundTripOnRandomFormulas) {
  sq::testing::Gen g(99);
  auto X = sq::testing::program_vars({"a", "b", "c"});
  for (int i = 0; i < 100; ++i) {
    sq::QuantifiedFormula f;
    for (const auto& v : X) f.prefix.push_back({g.coin() ? sq::Quantifier::ForAll : sq::Quantifier::Exists, v});
    f.matrix = g.bool_expr(X, 3, 2);
    auto h = sq::parse(sq::to_native(f), Native);
    EXPECT_EQ(sq::to_cnf(f).cnf, sq::to_cnf(h).cnf) << sq::to_native(f);
  }
}
