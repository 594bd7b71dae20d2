/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skolem_qe/monomial.hpp"
#include "skolem_qe/rational.hpp"
#include "skolem_qe/variable.hpp"

namespace skolem_qe {

template <class Coeff>
class SparsePolynomial;

namespace detail {

inline bool coeff_is_zero(const Rational& q) { return sgn(q) == 0; }

template <class C>
bool coeff_is_zero(const SparsePolynomial<C>& p) {
  return p.is_zero();
}

}  // namespace detail

/// Sparse polynomial keyed by monomial in graded-lex order. Zero coefficients
/// are never stored, so structural equality is polynomial equality.
///
/// Two instantiations matter: `CoeffPoly` (rational coefficients over unknowns)
/// and `TemplatePolynomial` (CoeffPoly coefficients over program variables).
template <class Coeff>
class SparsePolynomial {
 public:
  using Terms = std::map<Monomial, Coeff, GrlexOrder>;

  SparsePolynomial() = default;
  explicit SparsePolynomial(const Coeff& constant) { add_term(Monomial{}, constant); }

  static SparsePolynomial term(const Monomial& m, const Coeff& c) {
    SparsePolynomial p;
    p.add_term(m, c);
    return p;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Coefficient of `m`, zero when absent.
  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff{} : it->second;
  }

  Coeff constant_term() const { return coefficient(Monomial{}); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }

  /// Total degree in this level's variables; 0 for the zero polynomial.
  unsigned degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
  }

  std::set<VarId> variables() const {
    std::set<VarId> out;
    for (const auto& [m, c] : terms_)
      for (const auto& f : m.factors()) out.insert(f.first);
    return out;
  }

  void add_term(const Monomial& m, const Coeff& c) {
    if (detail::coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  SparsePolynomial& operator+=(const SparsePolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SparsePolynomial& operator-=(const SparsePolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  SparsePolynomial& operator*=(const SparsePolynomial& o) { return *this = *this * o; }

  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
  friend SparsePolynomial operator-(const SparsePolynomial& a) {
    SparsePolynomial r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
  }
  friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
    SparsePolynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
};

using CoeffPoly = SparsePolynomial<Rational>;
using TemplatePolynomial = SparsePolynomial<CoeffPoly>;

/// Map from program variable to replacement polynomial.
using Bindings = std::map<VarId, TemplatePolynomial>;

// ---- construction ---------------------------------------------------------

inline CoeffPoly coeff_constant(const Rational& q) { return CoeffPoly(q); }

inline CoeffPoly coeff_var(const VarId& unknown) {
  return CoeffPoly::term(Monomial(unknown), Rational(1));
}

inline TemplatePolynomial constant(const Rational& q) { return TemplatePolynomial(CoeffPoly(q)); }

inline TemplatePolynomial lift(const CoeffPoly& c) { return TemplatePolynomial(c); }

/// A variable as a template polynomial; unknowns land in the coefficient level.
inline TemplatePolynomial var(const VarId& v) {
  if (v.is_unknown()) return TemplatePolynomial(coeff_var(v));
  return TemplatePolynomial::term(Monomial(v), CoeffPoly(Rational(1)));
}

// ---- ring operations ------------------------------------------------------

inline TemplatePolynomial add(const TemplatePolynomial& p, const TemplatePolynomial& q) { return p + q; }
inline TemplatePolynomial mul(const TemplatePolynomial& p, const TemplatePolynomial& q) { return p * q; }

template <class C>
SparsePolynomial<C> pow(const SparsePolynomial<C>& base, unsigned exponent) {
  SparsePolynomial<C> result(C(1));
  SparsePolynomial<C> b = base;
  while (exponent > 0) {
    if (exponent & 1U) result = result * b;
    exponent >>= 1U;
    if (exponent > 0) b = b * b;
  }
  return result;
}

inline TemplatePolynomial scale(const TemplatePolynomial& p, const CoeffPoly& c) {
  return lift(c) * p;
}

// ---- inspection -----------------------------------------------------------

inline unsigned program_degree(const TemplatePolynomial& p) { return p.degree(); }

inline unsigned unknown_degree(const TemplatePolynomial& p) {
  unsigned d = 0;
  for (const auto& [m, c] : p.terms()) d = std::max(d, c.degree());
  return d;
}

inline bool is_ground(const TemplatePolynomial& p) {
  for (const auto& [m, c] : p.terms())
    if (!c.is_constant()) return false;
  return true;
}

/// Ground and free of program variables.
inline bool is_rational_constant(const TemplatePolynomial& p) { return p.is_constant() && is_ground(p); }

inline Rational constant_value(const TemplatePolynomial& p) { return p.constant_term().constant_term(); }

inline std::set<VarId> program_variables(const TemplatePolynomial& p) { return p.variables(); }

inline std::set<VarId> unknown_variables(const TemplatePolynomial& p) {
  std::set<VarId> out;
  for (const auto& [m, c] : p.terms()) {
    auto vs = c.variables();
    out.insert(vs.begin(), vs.end());
  }
  return out;
}

/// Terms in graded-lex order, the shape used for coefficient matching.
inline std::vector<std::pair<Monomial, CoeffPoly>> coefficient_vector(const TemplatePolynomial& p) {
  return {p.terms().begin(), p.terms().end()};
}

// ---- evaluation & substitution --------------------------------------------

namespace detail {

inline const Rational& lookup(const Assignment& point, const VarId& v) {
  auto it = point.find(v);
  if (it == point.end())
    throw Error(ErrorCode::UnboundVariable, "no value for variable '" + v.name() + "'");
  return it->second;
}

inline Rational evaluate_monomial(const Monomial& m, const Assignment& point) {
  Rational value(1);
  for (const auto& [v, e] : m.factors()) {
    const Rational& base = lookup(point, v);
    for (unsigned k = 0; k < e; ++k) value *= base;
  }
  return value;
}

}  // namespace detail

inline Rational evaluate(const CoeffPoly& p, const Assignment& point) {
  Rational sum(0);
  for (const auto& [m, c] : p.terms()) sum += c * detail::evaluate_monomial(m, point);
  return sum;
}

/// Exact value of `p`; `point` must bind every variable of both kinds.
inline Rational evaluate(const TemplatePolynomial& p, const Assignment& point) {
  Rational sum(0);
  for (const auto& [m, c] : p.terms()) sum += evaluate(c, point) * detail::evaluate_monomial(m, point);
  return sum;
}

/// Replaces every unknown by its value, leaving a ground polynomial.
inline TemplatePolynomial instantiate_unknowns(const TemplatePolynomial& p, const Assignment& model) {
  TemplatePolynomial out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, CoeffPoly(evaluate(c, model)));
  return out;
}

/// Replaces program variables by values, leaving a polynomial over unknowns.
inline CoeffPoly evaluate_program(const TemplatePolynomial& p, const Assignment& point) {
  CoeffPoly out;
  for (const auto& [m, c] : p.terms()) {
    Rational mv = detail::evaluate_monomial(m, point);
    out += c * CoeffPoly(mv);
  }
  return out;
}

/// Simultaneous substitution of program variables; unbound variables stay.
inline TemplatePolynomial substitute(const TemplatePolynomial& p, const Bindings& bindings) {
  if (bindings.empty()) return p;
  std::map<std::pair<VarId, unsigned>, TemplatePolynomial> powers;
  auto power = [&](const VarId& v, unsigned e) -> const TemplatePolynomial& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    auto b = bindings.find(v);
    TemplatePolynomial value = b == bindings.end() ? TemplatePolynomial::term(Monomial(v, e), CoeffPoly(Rational(1)))
                                                   : pow(b->second, e);
    return powers.emplace(key, std::move(value)).first->second;
  };
  TemplatePolynomial out;
  for (const auto& [m, c] : p.terms()) {
    TemplatePolynomial t = lift(c);
    for (const auto& [v, e] : m.factors()) t = t * power(v, e);
    out += t;
  }
  return out;
}

// ---- printing -------------------------------------------------------------

namespace detail {

inline std::string infix_coeff(const CoeffPoly& c);

inline void append_signed(std::string& out, bool negative, const std::string& body) {
  if (out.empty())
    out = negative ? "-" + body : body;
  else
    out += (negative ? " - " : " + ") + body;
}

inline std::string infix_coeff(const CoeffPoly& c) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [m, q] : c.terms()) {
    bool neg = sgn(q) < 0;
    Rational mag = abs(q);
    std::string body;
    if (m.is_one())
      body = to_string(mag);
    else if (mag == 1)
      body = to_string(m);
    else
      body = to_string(mag) + "*" + to_string(m);
    append_signed(out, neg, body);
  }
  return out;
}

}  // namespace detail

inline std::string to_string(const CoeffPoly& c) { return detail::infix_coeff(c); }

/// Human-readable infix form, terms in graded-lex order: `1 + x1`, `x1^2 - 1/2*x2`.
inline std::string to_string(const TemplatePolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    if (c.is_constant()) {
      const Rational q = c.constant_term();
      bool neg = sgn(q) < 0;
      Rational mag = abs(q);
      std::string body;
      if (m.is_one())
        body = to_string(mag);
      else if (mag == 1)
        body = to_string(m);
      else
        body = to_string(mag) + "*" + to_string(m);
      detail::append_signed(out, neg, body);
    } else if (c.size() == 1) {
      const auto& [mu, q] = *c.terms().begin();
      Rational mag = abs(q);
      std::string body = mag == 1 ? to_string(mu) : to_string(mag) + "*" + to_string(mu);
      if (!m.is_one()) body += "*" + to_string(m);
      detail::append_signed(out, sgn(q) < 0, body);
    } else {
      std::string body = "(" + detail::infix_coeff(c) + ")";
      if (!m.is_one()) body += "*" + to_string(m);
      detail::append_signed(out, false, body);
    }
  }
  return out;
}

}  // namespace skolem_qe
