/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skolem_qe/formula.hpp"
#include "skolem_qe/sexpr.hpp"

namespace skolem_qe {

enum class InputFormat { Native, SmtLib2Subset };

namespace detail {

inline const std::set<std::string, std::less<>>& unsupported_functions() {
  static const std::set<std::string, std::less<>> names{
      "exp", "log", "ln", "sin", "cos", "tan", "sqrt", "arcsin", "arccos", "arctan", "asin", "acos",
      "atan", "pi", "abs", "div", "mod", "to_int", "is_int", "to_real", "ite", "^", "pow", "expt"};
  return names;
}

/// Turns s-expressions into a prenex QuantifiedFormula. Variables get ranks
/// from their prefix position.
class FormulaBuilder {
 public:
  void bind(const SExpr& at, Quantifier q, const std::string& name, const std::string& sort = "Real") {
    if (sort != "Real")
      throw Error(ErrorCode::UnsupportedTheory, at.where() + ": sort '" + sort + "' is not supported (Real only)");
    if (vars_.count(name)) syntax_error(at, "variable '" + name + "' bound twice");
    VarId v = VarId::program(name, static_cast<std::uint32_t>(prefix_.size()));
    vars_.emplace(name, v);
    prefix_.push_back({q, v});
  }

  /// Peels the quantifier blocks off `e` and parses the quantifier-free rest.
  QuantifiedFormula finish(const SExpr& e) {
    const SExpr* cur = strip_annotation(&e);
    while (cur->headed_by("forall") || cur->headed_by("exists")) {
      Quantifier q = cur->headed_by("forall") ? Quantifier::ForAll : Quantifier::Exists;
      if (cur->size() != 3 || !(*cur)[1].is_list) syntax_error(*cur, "malformed quantifier");
      for (const auto& b : (*cur)[1].items) {
        if (!b.is_list || b.size() != 2 || !b[0].is_atom() || !b[1].is_atom())
          syntax_error(b, "malformed variable binding");
        bind(b, q, b[0].token, b[1].token);
      }
      cur = strip_annotation(&(*cur)[2]);
    }
    return make(formula(*cur));
  }

  QuantifiedFormula make(BoolExpr matrix) {
    QuantifiedFormula f;
    f.prefix = prefix_;
    f.matrix = eliminate_disequalities(matrix);
    check_closed(f);
    return f;
  }

  BoolExpr formula(const SExpr& e) {
    if (e.is_atom()) {
      if (e.token == "true") return BoolExpr::truth();
      if (e.token == "false") return BoolExpr::falsity();
      if (auto* b = lookup_let<BoolExpr>(e.token)) return *b;
      syntax_error(e, "expected a formula, found '" + e.token + "'");
    }
    if (e.items.empty() || !e[0].is_atom()) syntax_error(e, "expected a formula");
    const std::string& head = e[0].token;
    if (head == "forall" || head == "exists")
      throw Error(ErrorCode::NotPrenex, e.where() + ": quantifier below a connective");
    if (head == "!") {
      if (e.size() < 2) syntax_error(e, "empty annotation");
      return formula(e[1]);
    }
    if (head == "let") return with_let<BoolExpr>(e, [&](const SExpr& body) { return formula(body); });
    if (head == "and" || head == "or") {
      if (e.size() == 1) return head == "and" ? BoolExpr::truth() : BoolExpr::falsity();
      std::vector<BoolExpr> kids;
      for (std::size_t i = 1; i < e.size(); ++i) kids.push_back(formula(e[i]));
      return head == "and" ? BoolExpr::make_and(std::move(kids)) : BoolExpr::make_or(std::move(kids));
    }
    if (head == "not") {
      if (e.size() != 2) syntax_error(e, "'not' takes one argument");
      return negate(formula(e[1]));
    }
    if (head == "=>") {
      if (e.size() < 3) syntax_error(e, "'=>' takes at least two arguments");
      BoolExpr acc = formula(e[e.size() - 1]);
      for (std::size_t i = e.size() - 2; i >= 1; --i) acc = BoolExpr::make_or({negate(formula(e[i])), acc});
      return acc;
    }
    static const std::map<std::string, Relation, std::less<>> rels{
        {"<", Relation::LT}, {"<=", Relation::LE}, {">", Relation::GT}, {">=", Relation::GE},
        {"=", Relation::EQ}, {"!=", Relation::NE}, {"distinct", Relation::NE}};
    if (auto it = rels.find(head); it != rels.end()) {
      if (e.size() < 3) syntax_error(e, "'" + head + "' takes at least two arguments");
      std::vector<TemplatePolynomial> args;
      for (std::size_t i = 1; i < e.size(); ++i) args.push_back(term(e[i]));
      std::vector<BoolExpr> parts;
      if (it->second == Relation::NE) {
        for (std::size_t i = 0; i < args.size(); ++i)
          for (std::size_t j = i + 1; j < args.size(); ++j) parts.emplace_back(Atom{args[i] - args[j], Relation::NE});
      } else {
        for (std::size_t i = 0; i + 1 < args.size(); ++i) parts.emplace_back(Atom{args[i] - args[i + 1], it->second});
      }
      return BoolExpr::make_and(std::move(parts));
    }
    syntax_error(e, "unknown connective or predicate '" + head + "'");
  }

  TemplatePolynomial term(const SExpr& e) {
    if (e.is_atom()) {
      if (looks_numeric(e.token)) {
        try {
          return constant(parse_rational(e.token));
        } catch (const Error& err) {
          syntax_error(e, err.what());
        }
      }
      if (auto* p = lookup_let<TemplatePolynomial>(e.token)) return *p;
      auto it = vars_.find(e.token);
      if (it == vars_.end())
        throw Error(ErrorCode::FreeVariable, e.where() + ": variable '" + e.token + "' is not quantified");
      return var(it->second);
    }
    if (e.items.empty() || !e[0].is_atom()) syntax_error(e, "expected a term");
    const std::string& head = e[0].token;
    if (head == "let") return with_let<TemplatePolynomial>(e, [&](const SExpr& body) { return term(body); });
    if (head == "+") {
      TemplatePolynomial sum;
      for (std::size_t i = 1; i < e.size(); ++i) sum += term(e[i]);
      return sum;
    }
    if (head == "*") {
      TemplatePolynomial prod = constant(1);
      for (std::size_t i = 1; i < e.size(); ++i) prod = prod * term(e[i]);
      return prod;
    }
    if (head == "-") {
      if (e.size() < 2) syntax_error(e, "'-' needs an argument");
      if (e.size() == 2) return -term(e[1]);
      TemplatePolynomial acc = term(e[1]);
      for (std::size_t i = 2; i < e.size(); ++i) acc -= term(e[i]);
      return acc;
    }
    if (head == "/") {
      if (e.size() < 3) syntax_error(e, "'/' takes at least two arguments");
      TemplatePolynomial acc = term(e[1]);
      for (std::size_t i = 2; i < e.size(); ++i) {
        TemplatePolynomial d = term(e[i]);
        if (!is_rational_constant(d))
          throw Error(ErrorCode::UnsupportedTheory, e[i].where() + ": division by a non-constant term");
        Rational q = constant_value(d);
        if (sgn(q) == 0) throw Error(ErrorCode::UnsupportedTheory, e[i].where() + ": division by zero");
        acc = acc * constant(1 / q);
      }
      return acc;
    }
    if (unsupported_functions().count(head))
      throw Error(ErrorCode::UnsupportedTheory, e.where() + ": '" + head + "' is outside polynomial real arithmetic");
    syntax_error(e, "unknown function '" + head + "'");
  }

 private:
  using LetValue = std::variant<TemplatePolynomial, BoolExpr>;

  static const SExpr* strip_annotation(const SExpr* e) {
    while (e->headed_by("!") && e->size() >= 2) e = &(*e)[1];
    return e;
  }

  template <class T>
  const T* lookup_let(const std::string& name) const {
    for (auto it = lets_.rbegin(); it != lets_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return std::get_if<T>(&f->second);
    }
    return nullptr;
  }

  template <class R, class F>
  R with_let(const SExpr& e, F&& body) {
    if (e.size() != 3 || !e[1].is_list) syntax_error(e, "malformed let");
    std::map<std::string, LetValue> scope;
    for (const auto& b : e[1].items) {
      if (!b.is_list || b.size() != 2 || !b[0].is_atom()) syntax_error(b, "malformed let binding");
      scope.emplace(b[0].token, let_value(b[1]));
    }
    lets_.push_back(std::move(scope));
    auto result = body(e[2]);
    lets_.pop_back();
    return result;
  }

  // A let-bound expression is a term unless it only parses as a formula.
  LetValue let_value(const SExpr& e) {
    try {
      return term(e);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::ParseError) throw;
      return formula(e);
    }
  }

  std::map<std::string, VarId> vars_;
  std::vector<QuantifiedVar> prefix_;
  std::vector<std::map<std::string, LetValue>> lets_;
};

inline QuantifiedFormula parse_native(const std::vector<SExpr>& top) {
  if (top.size() != 1 || !top[0].headed_by("formula"))
    throw Error(ErrorCode::ParseError, "expected a single (formula (prefix ...) (matrix ...)) expression");
  const SExpr& f = top[0];
  if (f.size() != 3 || !f[1].headed_by("prefix") || !f[2].headed_by("matrix") || f[2].size() != 2)
    syntax_error(f, "expected (formula (prefix ...) (matrix <expr>))");
  FormulaBuilder builder;
  for (std::size_t i = 1; i < f[1].size(); ++i) {
    const SExpr& q = f[1][i];
    if (!q.is_list || q.size() < 2 || !(q.headed_by("forall") || q.headed_by("exists")))
      syntax_error(q, "expected (forall x) or (exists x)");
    for (std::size_t j = 1; j < q.size(); ++j) {
      if (!q[j].is_atom() || looks_numeric(q[j].token)) syntax_error(q[j], "expected a variable name");
      builder.bind(q[j], q.headed_by("forall") ? Quantifier::ForAll : Quantifier::Exists, q[j].token);
    }
  }
  return builder.make(builder.formula(f[2][1]));
}

inline QuantifiedFormula parse_smt2(const std::vector<SExpr>& top) {
  static const std::set<std::string, std::less<>> logics{"LRA", "NRA", "QF_LRA", "QF_NRA", "ALL"};
  FormulaBuilder builder;
  std::vector<SExpr> asserts;
  for (const auto& cmd : top) {
    if (!cmd.is_list || cmd.items.empty() || !cmd[0].is_atom()) syntax_error(cmd, "expected a command");
    const std::string& name = cmd[0].token;
    if (name == "set-logic") {
      if (cmd.size() != 2) syntax_error(cmd, "malformed set-logic");
      if (!logics.count(cmd[1].token))
        throw Error(ErrorCode::UnsupportedTheory, cmd.where() + ": logic '" + cmd[1].token + "' is not supported");
    } else if (name == "declare-const") {
      if (cmd.size() != 3) syntax_error(cmd, "malformed declare-const");
      builder.bind(cmd, Quantifier::Exists, cmd[1].token, cmd[2].token);
    } else if (name == "declare-fun") {
      if (cmd.size() != 4 || !cmd[2].is_list) syntax_error(cmd, "malformed declare-fun");
      if (!cmd[2].items.empty())
        throw Error(ErrorCode::UnsupportedTheory, cmd.where() + ": uninterpreted functions are not supported");
      builder.bind(cmd, Quantifier::Exists, cmd[1].token, cmd[3].token);
    } else if (name == "assert") {
      if (cmd.size() != 2) syntax_error(cmd, "malformed assert");
      asserts.push_back(cmd[1]);
    } else if (name == "set-info" || name == "set-option" || name == "check-sat" || name == "get-model" ||
               name == "exit" || name == "get-value" || name == "get-info") {
      continue;
    } else {
      syntax_error(cmd, "unsupported command '" + name + "'");
    }
  }
  if (asserts.empty()) throw Error(ErrorCode::ParseError, "no assert command");
  if (asserts.size() == 1) return builder.finish(asserts.front());
  SExpr conj;
  conj.is_list = true;
  conj.line = asserts.front().line;
  conj.column = asserts.front().column;
  SExpr head;
  head.token = "and";
  conj.items.push_back(head);
  for (auto& a : asserts) conj.items.push_back(a);
  return builder.finish(conj);
}

inline std::string literal_sexpr(const Rational& q) {
  if (sgn(q) < 0) return "(- " + to_string(Rational(-q)) + ")";
  return to_string(q);
}

}  // namespace detail

/// Parses a closed prenex formula. NE atoms are rewritten to LT-or-GT; every
/// term is expanded to canonical form. The CNF field is left empty.
inline QuantifiedFormula parse(std::string_view text, InputFormat format) {
  auto top = read_sexprs(text);
  return format == InputFormat::Native ? detail::parse_native(top) : detail::parse_smt2(top);
}

/// Native-grammar s-expression for a ground polynomial: `(+ 1 (* 2 x1 x1))`.
inline std::string to_sexpr(const TemplatePolynomial& p) {
  std::vector<std::string> terms;
  for (const auto& [m, c] : p.terms()) {
    if (!c.is_constant()) throw Error(ErrorCode::InvalidArgument, "to_sexpr expects a ground polynomial");
    Rational q = c.constant_term();
    if (m.is_one()) {
      terms.push_back(detail::literal_sexpr(q));
      continue;
    }
    std::vector<std::string> factors;
    for (const auto& [v, e] : m.factors())
      for (unsigned k = 0; k < e; ++k) factors.push_back(v.name());
    std::string prod;
    if (factors.size() == 1 && q == 1) {
      prod = factors.front();
    } else {
      prod = "(*";
      if (q != 1) prod += " " + detail::literal_sexpr(q);
      for (const auto& f : factors) prod += " " + f;
      prod += ")";
    }
    terms.push_back(prod);
  }
  if (terms.empty()) return "0";
  if (terms.size() == 1) return terms.front();
  std::string out = "(+";
  for (const auto& t : terms) out += " " + t;
  return out + ")";
}

inline std::string to_sexpr(const BoolExpr& e) {
  if (e.is_atom())
    return "(" + std::string(to_string(e.atom().rel)) + " " + to_sexpr(e.atom().poly) + " 0)";
  std::string out = e.kind() == BoolExpr::Kind::And ? "(and" : "(or";
  for (const auto& c : e.children()) out += " " + to_sexpr(c);
  return out + ")";
}

/// Prints in the Native grammar; `parse(to_native(f), Native)` reproduces f.
inline std::string to_native(const QuantifiedFormula& f) {
  std::string out = "(formula\n  (prefix";
  for (const auto& qv : f.prefix)
    out += std::string(qv.quantifier == Quantifier::ForAll ? " (forall " : " (exists ") + qv.var.name() + ")";
  out += ")\n  (matrix " + to_sexpr(f.matrix) + "))\n";
  return out;
}

}  // namespace skolem_qe
