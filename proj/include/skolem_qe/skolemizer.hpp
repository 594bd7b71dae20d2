/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "skolem_qe/formula.hpp"

namespace skolem_qe {

/// All monomials of total degree <= `degree` over `vars`, in graded-lex order
/// (priority follows the order of `vars`). There are C(|vars|+degree, degree).
inline std::vector<Monomial> monomials_up_to_degree(const std::vector<VarId>& vars, unsigned degree) {
  std::vector<Monomial> out;
  std::vector<Monomial::Factor> current;
  // Depth-first over variables; each branch fixes one exponent.
  auto rec = [&](auto&& self, std::size_t index, unsigned budget) -> void {
    if (index == vars.size()) {
      out.push_back(Monomial::from_factors(current));
      return;
    }
    for (unsigned e = 0; e <= budget; ++e) {
      if (e > 0) current.emplace_back(vars[index], e);
      self(self, index + 1, budget - e);
      if (e > 0) current.pop_back();
    }
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), GrlexOrder{});
  return out;
}

/// f_i(U_i) = sum_j c_{i,j} * m_{i,j} for one existential variable.
struct SkolemTemplate {
  VarId target;
  std::vector<VarId> scope;
  unsigned degree = 0;
  std::vector<VarId> coefficients;  // c_<i>_<j>, one per monomial
  std::vector<Monomial> monomials;
  TemplatePolynomial body;
};

/// The existential-free formula left after template substitution. `unknowns`
/// continues numbering for the certificate encoders.
struct UniversalFormula {
  std::vector<VarId> universals;
  std::vector<Clause> clauses;
  std::map<VarId, SkolemTemplate> templates;
  UnknownFactory unknowns;
};

inline SkolemTemplate make_template(const VarId& target, std::size_t position, const std::vector<VarId>& scope,
                                    unsigned degree, UnknownFactory& unknowns) {
  SkolemTemplate t;
  t.target = target;
  t.scope = scope;
  t.degree = degree;
  t.monomials = monomials_up_to_degree(scope, degree);
  for (std::size_t j = 0; j < t.monomials.size(); ++j) {
    VarId c = unknowns.fresh("c_" + std::to_string(position) + "_" + std::to_string(j + 1));
    t.coefficients.push_back(c);
    t.body.add_term(t.monomials[j], coeff_var(c));
  }
  return t;
}

/// Replaces each existential by a degree-`degree` template over the universals
/// that precede it. Coefficients are named c_<prefix position, 1-based>_<k>.
inline UniversalFormula skolemize(const QuantifiedFormula& f, unsigned degree) {
  if (!f.cnf) throw Error(ErrorCode::InvalidArgument, "skolemize needs the CNF of the matrix");
  UniversalFormula out;
  Bindings bindings;
  std::vector<VarId> seen_universals;
  for (std::size_t i = 0; i < f.prefix.size(); ++i) {
    const auto& qv = f.prefix[i];
    if (qv.quantifier == Quantifier::ForAll) {
      seen_universals.push_back(qv.var);
      continue;
    }
    SkolemTemplate t = make_template(qv.var, i + 1, seen_universals, degree, out.unknowns);
    bindings.emplace(qv.var, t.body);
    out.templates.emplace(qv.var, std::move(t));
  }
  out.universals = seen_universals;
  out.clauses.reserve(f.cnf->size());
  for (const auto& clause : *f.cnf) {
    Clause c;
    c.reserve(clause.size());
    for (const auto& a : clause) c.push_back(substitute(a, bindings));
    out.clauses.push_back(std::move(c));
  }
  return out;
}

}  // namespace skolem_qe
