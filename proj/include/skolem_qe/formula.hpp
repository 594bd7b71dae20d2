/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skolem_qe/error.hpp"
#include "skolem_qe/polynomial.hpp"

namespace skolem_qe {

/// Comparison of a polynomial against zero.
enum class Relation { LT, LE, GT, GE, EQ, NE };

inline std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::LT: return "<";
    case Relation::LE: return "<=";
    case Relation::GT: return ">";
    case Relation::GE: return ">=";
    case Relation::EQ: return "=";
    case Relation::NE: return "!=";
  }
  return "?";
}

/// Classical complement: LT<->GE, LE<->GT, EQ<->NE.
inline Relation complement(Relation r) {
  switch (r) {
    case Relation::LT: return Relation::GE;
    case Relation::LE: return Relation::GT;
    case Relation::GT: return Relation::LE;
    case Relation::GE: return Relation::LT;
    case Relation::EQ: return Relation::NE;
    case Relation::NE: return Relation::EQ;
  }
  return r;
}

inline bool compare_to_zero(const Rational& v, Relation r) {
  int s = sgn(v);
  switch (r) {
    case Relation::LT: return s < 0;
    case Relation::LE: return s <= 0;
    case Relation::GT: return s > 0;
    case Relation::GE: return s >= 0;
    case Relation::EQ: return s == 0;
    case Relation::NE: return s != 0;
  }
  return false;
}

/// `poly rel 0`.
struct Atom {
  TemplatePolynomial poly;
  Relation rel = Relation::GE;

  friend bool operator==(const Atom&, const Atom&) = default;
};

inline bool holds(const Atom& a, const Assignment& point) {
  return compare_to_zero(evaluate(a.poly, point), a.rel);
}

inline Atom substitute(const Atom& a, const Bindings& b) { return {substitute(a.poly, b), a.rel}; }

inline std::string to_string(const Atom& a) {
  return to_string(a.poly) + " " + std::string(to_string(a.rel)) + " 0";
}

/// Negation-free boolean combination of atoms. And/Or nodes always have at
/// least two children; the smart constructors flatten and collapse.
class BoolExpr {
 public:
  enum class Kind { Atom, And, Or };

  BoolExpr() : BoolExpr(Atom{}) {}  // 0 >= 0, i.e. true
  BoolExpr(Atom atom) : kind_(Kind::Atom), atom_(std::move(atom)) {}

  static BoolExpr make_and(std::vector<BoolExpr> children) { return make(Kind::And, std::move(children)); }
  static BoolExpr make_or(std::vector<BoolExpr> children) { return make(Kind::Or, std::move(children)); }
  static BoolExpr truth() { return BoolExpr(Atom{TemplatePolynomial{}, Relation::EQ}); }
  static BoolExpr falsity() { return BoolExpr(Atom{TemplatePolynomial{}, Relation::GT}); }

  Kind kind() const noexcept { return kind_; }
  bool is_atom() const noexcept { return kind_ == Kind::Atom; }
  const Atom& atom() const { return atom_; }
  const std::vector<BoolExpr>& children() const noexcept { return children_; }

  friend bool operator==(const BoolExpr&, const BoolExpr&) = default;

 private:
  static BoolExpr make(Kind kind, std::vector<BoolExpr> children) {
    if (children.empty())
      throw Error(ErrorCode::InvalidArgument, "empty connective");
    std::vector<BoolExpr> flat;
    for (auto& c : children) {
      if (c.kind_ == kind)
        for (auto& g : c.children_) flat.push_back(std::move(g));
      else
        flat.push_back(std::move(c));
    }
    if (flat.size() == 1) return std::move(flat.front());
    BoolExpr e;
    e.kind_ = kind;
    e.children_ = std::move(flat);
    return e;
  }

  Kind kind_;
  Atom atom_;
  std::vector<BoolExpr> children_;
};

inline bool evaluate(const BoolExpr& e, const Assignment& point) {
  switch (e.kind()) {
    case BoolExpr::Kind::Atom: return holds(e.atom(), point);
    case BoolExpr::Kind::And:
      for (const auto& c : e.children())
        if (!evaluate(c, point)) return false;
      return true;
    case BoolExpr::Kind::Or:
      for (const auto& c : e.children())
        if (evaluate(c, point)) return true;
      return false;
  }
  return false;
}

inline BoolExpr substitute(const BoolExpr& e, const Bindings& b) {
  if (e.is_atom()) return BoolExpr(substitute(e.atom(), b));
  std::vector<BoolExpr> kids;
  kids.reserve(e.children().size());
  for (const auto& c : e.children()) kids.push_back(substitute(c, b));
  return e.kind() == BoolExpr::Kind::And ? BoolExpr::make_and(std::move(kids))
                                          : BoolExpr::make_or(std::move(kids));
}

/// Atom-level negation; NE results are split into LT or GT.
inline BoolExpr negate_atom(const Atom& a) {
  Relation r = complement(a.rel);
  if (r == Relation::NE)
    return BoolExpr::make_or({Atom{a.poly, Relation::LT}, Atom{a.poly, Relation::GT}});
  return BoolExpr(Atom{a.poly, r});
}

/// Negation pushed to the atoms (De Morgan).
inline BoolExpr negate(const BoolExpr& e) {
  if (e.is_atom()) return negate_atom(e.atom());
  std::vector<BoolExpr> kids;
  kids.reserve(e.children().size());
  for (const auto& c : e.children()) kids.push_back(negate(c));
  return e.kind() == BoolExpr::Kind::And ? BoolExpr::make_or(std::move(kids))
                                          : BoolExpr::make_and(std::move(kids));
}

/// Rewrites every NE atom into LT-or-GT.
inline BoolExpr eliminate_disequalities(const BoolExpr& e) {
  if (e.is_atom()) {
    if (e.atom().rel == Relation::NE)
      return BoolExpr::make_or({Atom{e.atom().poly, Relation::LT}, Atom{e.atom().poly, Relation::GT}});
    return e;
  }
  std::vector<BoolExpr> kids;
  for (const auto& c : e.children()) kids.push_back(eliminate_disequalities(c));
  return e.kind() == BoolExpr::Kind::And ? BoolExpr::make_and(std::move(kids))
                                          : BoolExpr::make_or(std::move(kids));
}

inline void collect_program_variables(const BoolExpr& e, std::set<VarId>& out) {
  if (e.is_atom()) {
    auto vs = program_variables(e.atom().poly);
    out.insert(vs.begin(), vs.end());
    return;
  }
  for (const auto& c : e.children()) collect_program_variables(c, out);
}

/// Disjunction of atoms.
using Clause = std::vector<Atom>;

inline bool evaluate(const std::vector<Clause>& cnf, const Assignment& point) {
  for (const auto& clause : cnf) {
    bool sat = false;
    for (const auto& a : clause)
      if (holds(a, point)) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

enum class Quantifier { ForAll, Exists };

struct QuantifiedVar {
  Quantifier quantifier;
  VarId var;

  friend bool operator==(const QuantifiedVar&, const QuantifiedVar&) = default;
};

/// Closed prenex formula: quantifier prefix plus a quantifier-free matrix, and
/// optionally the matrix in conjunctive normal form.
struct QuantifiedFormula {
  std::vector<QuantifiedVar> prefix;
  BoolExpr matrix;
  std::optional<std::vector<Clause>> cnf;

  std::vector<VarId> variables(Quantifier q) const {
    std::vector<VarId> out;
    for (const auto& qv : prefix)
      if (qv.quantifier == q) out.push_back(qv.var);
    return out;
  }
};

/// Throws FreeVariable when the matrix mentions a variable missing from the prefix.
inline void check_closed(const QuantifiedFormula& f) {
  std::set<VarId> bound;
  for (const auto& qv : f.prefix) {
    if (!bound.insert(qv.var).second)
      throw Error(ErrorCode::InvalidArgument, "variable '" + qv.var.name() + "' quantified twice");
  }
  std::set<VarId> used;
  collect_program_variables(f.matrix, used);
  for (const auto& v : used)
    if (!bound.count(v)) throw Error(ErrorCode::FreeVariable, "variable '" + v.name() + "' is not quantified");
}

struct CnfOptions {
  std::size_t clause_budget = 10000;
};

namespace detail {

inline std::vector<Clause> distribute(const BoolExpr& e, const CnfOptions& opt) {
  switch (e.kind()) {
    case BoolExpr::Kind::Atom: return {Clause{e.atom()}};
    case BoolExpr::Kind::And: {
      std::vector<Clause> out;
      for (const auto& c : e.children()) {
        auto part = distribute(c, opt);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        if (out.size() > opt.clause_budget)
          throw Error(ErrorCode::SizeLimitExceeded, "CNF exceeds " + std::to_string(opt.clause_budget) + " clauses");
      }
      return out;
    }
    case BoolExpr::Kind::Or: {
      std::vector<Clause> acc{Clause{}};
      for (const auto& c : e.children()) {
        auto part = distribute(c, opt);
        if (acc.size() * part.size() > opt.clause_budget)
          throw Error(ErrorCode::SizeLimitExceeded, "CNF exceeds " + std::to_string(opt.clause_budget) + " clauses");
        std::vector<Clause> next;
        next.reserve(acc.size() * part.size());
        for (const auto& left : acc)
          for (const auto& right : part) {
            Clause merged = left;
            for (const auto& a : right)
              if (std::find(merged.begin(), merged.end(), a) == merged.end()) merged.push_back(a);
            next.push_back(std::move(merged));
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

}  // namespace detail

/// Conjunctive normal form by distribution. Clauses follow the left-to-right
/// order of the matrix; duplicate literals inside a clause are dropped.
inline QuantifiedFormula to_cnf(QuantifiedFormula f, const CnfOptions& opt = {}) {
  f.cnf = detail::distribute(f.matrix, opt);
  return f;
}

/// Flips every quantifier and negates the matrix, then re-normalizes to CNF.
inline QuantifiedFormula negate(const QuantifiedFormula& f, const CnfOptions& opt = {}) {
  QuantifiedFormula g;
  g.prefix.reserve(f.prefix.size());
  for (const auto& qv : f.prefix)
    g.prefix.push_back({qv.quantifier == Quantifier::ForAll ? Quantifier::Exists : Quantifier::ForAll, qv.var});
  g.matrix = negate(f.matrix);
  return to_cnf(std::move(g), opt);
}

}  // namespace skolem_qe
