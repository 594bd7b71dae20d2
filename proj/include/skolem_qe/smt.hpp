/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "skolem_qe/encoders.hpp"
#include "skolem_qe/formula.hpp"

// SMT-LIB2 text for constraint systems and ground formulas.
namespace skolem_qe::smt {

inline bool simple_symbol(std::string_view s) {
  if (s.empty() || (s[0] >= '0' && s[0] <= '9')) return false;
  static constexpr std::string_view extra = "~!@$%^&*_-+=<>.?/";
  for (char c : s) {
    bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    if (!alnum && extra.find(c) == std::string_view::npos) return false;
  }
  return true;
}

inline std::string symbol(std::string_view name) {
  if (simple_symbol(name)) return std::string(name);
  if (name.find('|') != std::string_view::npos || name.find('\\') != std::string_view::npos)
    throw Error(ErrorCode::InvalidArgument, "variable name '" + std::string(name) + "' cannot be quoted");
  return "|" + std::string(name) + "|";
}

/// `3`, `(- 3)`, `(/ 1 2)`, `(- (/ 1 2))`.
inline std::string numeral(const Rational& q) {
  Rational mag = abs(q);
  std::string body = mag.get_den() == 1 ? mag.get_num().get_str()
                                        : "(/ " + mag.get_num().get_str() + " " + mag.get_den().get_str() + ")";
  return sgn(q) < 0 ? "(- " + body + ")" : body;
}

inline std::string product(const Rational& q, const Monomial& m) {
  if (m.is_one()) return numeral(q);
  std::vector<std::string> parts;
  if (q != 1) parts.push_back(numeral(q));
  for (const auto& [v, e] : m.factors())
    for (unsigned k = 0; k < e; ++k) parts.push_back(symbol(v.name()));
  if (parts.size() == 1) return parts.front();
  std::string out = "(*";
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

inline std::string sum(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  if (terms.size() == 1) return terms.front();
  std::string out = "(+";
  for (const auto& t : terms) out += " " + t;
  return out + ")";
}

inline std::string term(const CoeffPoly& p) {
  std::vector<std::string> terms;
  for (const auto& [m, q] : p.terms()) terms.push_back(product(q, m));
  return sum(terms);
}

/// Ground polynomials only.
inline std::string term(const TemplatePolynomial& p) {
  std::vector<std::string> terms;
  for (const auto& [m, c] : p.terms()) {
    if (!c.is_constant()) throw Error(ErrorCode::InvalidArgument, "SMT term of a non-ground template");
    terms.push_back(product(c.constant_term(), m));
  }
  return sum(terms);
}

inline std::string atom(const std::string& lhs, Relation r) {
  if (r == Relation::NE) return "(not (= " + lhs + " 0))";
  return "(" + std::string(to_string(r)) + " " + lhs + " 0)";
}

inline std::string formula(const BoolExpr& e) {
  if (e.is_atom()) return atom(term(e.atom().poly), e.atom().rel);
  std::string out = e.kind() == BoolExpr::Kind::And ? "(and" : "(or";
  for (const auto& c : e.children()) out += " " + formula(c);
  return out + ")";
}

inline std::vector<std::string> assertions(const ConstraintSystem& sys) {
  std::vector<std::string> out;
  for (const auto& e : sys.equalities) out.push_back(atom(term(e), Relation::EQ));
  for (const auto& i : sys.inequalities) out.push_back(atom(term(i.poly), i.strict ? Relation::GT : Relation::GE));
  for (const auto& alt : sys.disjunctions) {
    std::string d = "(or";
    for (const auto& s : alt) {
      auto parts = assertions(s);
      if (parts.empty())
        d += " true";
      else if (parts.size() == 1)
        d += " " + parts.front();
      else {
        d += " (and";
        for (const auto& p : parts) d += " " + p;
        d += ")";
      }
    }
    out.push_back(d + ")");
  }
  return out;
}

/// Complete script: logic, declarations, assertions, check-sat, get-model.
inline std::string script(std::string_view logic, const std::set<VarId>& vars, const std::vector<std::string>& asserts) {
  std::string out = "(set-logic " + std::string(logic) + ")\n";
  for (const auto& v : vars) out += "(declare-const " + symbol(v.name()) + " Real)\n";
  if (asserts.empty()) out += "(assert true)\n";
  for (const auto& a : asserts) out += "(assert " + a + ")\n";
  return out + "(check-sat)\n(get-model)\n";
}

/// QF_LRA is upgraded to QF_NRA when some constraint is non-linear in the unknowns.
inline std::string logic_for(const ConstraintSystem& sys, std::string_view requested = "QF_LRA") {
  if (requested == "QF_LRA" && sys.max_unknown_degree() > 1) return "QF_NRA";
  return std::string(requested);
}

inline std::string emit(const ConstraintSystem& sys, std::string_view logic = "QF_LRA") {
  return script(logic_for(sys, logic), sys.unknowns(), assertions(sys));
}

inline unsigned degree(const BoolExpr& e) {
  if (e.is_atom()) return program_degree(e.atom().poly);
  unsigned d = 0;
  for (const auto& c : e.children()) d = std::max(d, degree(c));
  return d;
}

/// Satisfiability query for a ground quantifier-free formula over `vars`.
inline std::string emit(const BoolExpr& e, const std::set<VarId>& vars) {
  return script(degree(e) > 1 ? "QF_NRA" : "QF_LRA", vars, {formula(e)});
}

}  // namespace skolem_qe::smt
