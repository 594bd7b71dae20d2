/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "skolem_qe/formula.hpp"

namespace skolem_qe {

/// `poly > 0` when strict, else `poly >= 0`.
struct SignedConstraint {
  TemplatePolynomial poly;
  bool strict = false;

  friend bool operator==(const SignedConstraint&, const SignedConstraint&) = default;
};

inline bool holds(const SignedConstraint& c, const Assignment& point) {
  int s = sgn(evaluate(c.poly, point));
  return c.strict ? s > 0 : s >= 0;
}

inline std::string to_string(const SignedConstraint& c) {
  return to_string(c.poly) + (c.strict ? " > 0" : " >= 0");
}

/// forall x. (h_1 /\ ... /\ h_m) => conclusion
struct PolynomialEntailment {
  std::vector<SignedConstraint> hypotheses;
  SignedConstraint conclusion;
};

inline bool holds(const PolynomialEntailment& e, const Assignment& point) {
  for (const auto& h : e.hypotheses)
    if (!holds(h, point)) return true;
  return holds(e.conclusion, point);
}

inline std::string to_string(const PolynomialEntailment& e) {
  std::string out;
  for (const auto& h : e.hypotheses) {
    if (!out.empty()) out += " /\\ ";
    out += to_string(h);
  }
  return out + " => " + to_string(e.conclusion);
}

enum class TheoremCase { FarkasLinear, HandelmanLinearHyp, PutinarGeneral, NonlinearHandelman };

inline std::string_view to_string(TheoremCase c) {
  switch (c) {
    case TheoremCase::FarkasLinear: return "farkas";
    case TheoremCase::HandelmanLinearHyp: return "handelman";
    case TheoremCase::PutinarGeneral: return "putinar";
    case TheoremCase::NonlinearHandelman: return "nl-handelman";
  }
  return "?";
}

enum class ConclusionStrategy { LastLiteral, TryEach };

/// Entailments that must all be encoded for one choice of conclusion.
using EntailmentConjunction = std::vector<PolynomialEntailment>;

inline SignedConstraint trivially_true() { return {constant(1), true}; }

namespace detail {

using ConstraintSet = std::vector<SignedConstraint>;

/// The literal itself as a conjunction of signed constraints (EQ gives two).
inline ConstraintSet positive_form(const Atom& a) {
  const auto& p = a.poly;
  switch (a.rel) {
    case Relation::LT: return {{-p, true}};
    case Relation::LE: return {{-p, false}};
    case Relation::GT: return {{p, true}};
    case Relation::GE: return {{p, false}};
    case Relation::EQ: return {{p, false}, {-p, false}};
    case Relation::NE: break;
  }
  throw Error(ErrorCode::InvalidArgument, "disequality cannot be a single conclusion");
}

/// The negated literal as a disjunction of conjunctions.
inline std::vector<ConstraintSet> negated_form(const Atom& a) {
  const auto& p = a.poly;
  switch (a.rel) {
    case Relation::LT: return {{{p, false}}};
    case Relation::LE: return {{{p, true}}};
    case Relation::GT: return {{{-p, false}}};
    case Relation::GE: return {{{-p, true}}};
    case Relation::EQ: return {{{p, true}}, {{-p, true}}};
    case Relation::NE: return {{{p, false}, {-p, false}}};
  }
  return {};
}

inline EntailmentConjunction entailments_for(const Clause& lits, std::size_t conclusion_index) {
  std::vector<ConstraintSet> hyp_choices{ConstraintSet{}};
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i == conclusion_index) continue;
    std::vector<ConstraintSet> next;
    for (const auto& base : hyp_choices)
      for (const auto& alt : negated_form(lits[i])) {
        ConstraintSet merged = base;
        merged.insert(merged.end(), alt.begin(), alt.end());
        next.push_back(std::move(merged));
      }
    hyp_choices = std::move(next);
  }
  EntailmentConjunction out;
  for (auto& hyps : hyp_choices) {
    if (hyps.empty()) hyps.push_back(trivially_true());
    for (const auto& concl : positive_form(lits[conclusion_index])) out.push_back({hyps, concl});
  }
  return out;
}

}  // namespace detail

/// Rewrites a clause l_1 \/ ... \/ l_w as entailments ~l_1 /\ ... => l_w.
///
/// The result is a disjunction of alternatives; each alternative is a
/// conjunction of entailments. LastLiteral yields one alternative, TryEach one
/// per conclusion choice. Constant literals are decided eagerly: a true one
/// makes the clause vacuous (an empty alternative), a false one is dropped.
inline std::vector<EntailmentConjunction> clause_to_entailments(const Clause& clause, ConclusionStrategy strategy) {
  Clause lits;
  for (const auto& a : clause) {
    if (a.rel == Relation::NE) {
      lits.push_back({a.poly, Relation::LT});
      lits.push_back({a.poly, Relation::GT});
    } else {
      lits.push_back(a);
    }
  }
  Clause kept;
  for (const auto& a : lits) {
    if (is_rational_constant(a.poly)) {
      if (compare_to_zero(constant_value(a.poly), a.rel)) return {EntailmentConjunction{}};
      continue;
    }
    kept.push_back(a);
  }
  if (kept.empty()) return {{PolynomialEntailment{{trivially_true()}, {constant(-1), false}}}};

  std::vector<EntailmentConjunction> out;
  if (strategy == ConclusionStrategy::LastLiteral || kept.size() == 1) {
    out.push_back(detail::entailments_for(kept, kept.size() - 1));
  } else {
    for (std::size_t j = kept.size(); j-- > 0;) out.push_back(detail::entailments_for(kept, j));
  }
  return out;
}

/// Degree inspection in program variables only.
inline TheoremCase classify(const PolynomialEntailment& e) {
  unsigned hyp_degree = 0;
  for (const auto& h : e.hypotheses) hyp_degree = std::max(hyp_degree, program_degree(h.poly));
  unsigned concl_degree = program_degree(e.conclusion.poly);
  if (hyp_degree <= 1 && concl_degree <= 1) return TheoremCase::FarkasLinear;
  if (hyp_degree <= 1) return TheoremCase::HandelmanLinearHyp;
  return TheoremCase::PutinarGeneral;
}

}  // namespace skolem_qe
