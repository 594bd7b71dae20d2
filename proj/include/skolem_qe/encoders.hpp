/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skolem_qe/entailment.hpp"
#include "skolem_qe/skolemizer.hpp"

namespace skolem_qe {

/// `poly > 0` when strict, else `poly >= 0`, over unknowns only.
struct UnknownInequality {
  CoeffPoly poly;
  bool strict = false;

  friend bool operator==(const UnknownInequality&, const UnknownInequality&) = default;
};

/// Existential constraints over unknowns: every equality is `poly = 0`, every
/// inequality holds, and in each disjunction at least one member system holds.
struct ConstraintSystem {
  std::vector<CoeffPoly> equalities;
  std::vector<UnknownInequality> inequalities;
  std::vector<std::vector<ConstraintSystem>> disjunctions;

  void add_equality(CoeffPoly p) {
    if (!p.is_zero()) equalities.push_back(std::move(p));
  }
  void add_inequality(CoeffPoly p, bool strict) { inequalities.push_back({std::move(p), strict}); }

  void conjoin(const ConstraintSystem& o) {
    equalities.insert(equalities.end(), o.equalities.begin(), o.equalities.end());
    inequalities.insert(inequalities.end(), o.inequalities.begin(), o.inequalities.end());
    disjunctions.insert(disjunctions.end(), o.disjunctions.begin(), o.disjunctions.end());
  }

  void collect_unknowns(std::set<VarId>& out) const {
    for (const auto& e : equalities) {
      auto vs = e.variables();
      out.insert(vs.begin(), vs.end());
    }
    for (const auto& i : inequalities) {
      auto vs = i.poly.variables();
      out.insert(vs.begin(), vs.end());
    }
    for (const auto& d : disjunctions)
      for (const auto& s : d) s.collect_unknowns(out);
  }

  std::set<VarId> unknowns() const {
    std::set<VarId> out;
    collect_unknowns(out);
    return out;
  }

  /// Exact check of every constraint under `model`.
  bool holds(const Assignment& model) const {
    for (const auto& e : equalities)
      if (sgn(evaluate(e, model)) != 0) return false;
    for (const auto& i : inequalities) {
      int s = sgn(evaluate(i.poly, model));
      if (i.strict ? s <= 0 : s < 0) return false;
    }
    for (const auto& d : disjunctions) {
      bool any = false;
      for (const auto& s : d)
        if (s.holds(model)) {
          any = true;
          break;
        }
      if (!any) return false;
    }
    return true;
  }

  unsigned max_unknown_degree() const {
    unsigned d = 0;
    for (const auto& e : equalities) d = std::max(d, e.degree());
    for (const auto& i : inequalities) d = std::max(d, i.poly.degree());
    for (const auto& alt : disjunctions)
      for (const auto& s : alt) d = std::max(d, s.max_unknown_degree());
    return d;
  }

  std::size_t size() const {
    std::size_t n = equalities.size() + inequalities.size();
    for (const auto& alt : disjunctions)
      for (const auto& s : alt) n += s.size();
    return n;
  }

  bool empty() const { return equalities.empty() && inequalities.empty() && disjunctions.empty(); }
};

/// Gram-matrix SOS template a^T (L L^T) a with L lower-triangular unknowns.
struct SosBlock {
  std::vector<Monomial> monomial_basis;
  std::vector<std::vector<VarId>> factor;  // factor[r][c] for c <= r

  /// sum_k (sum_{r >= k} L[r][k] * a_r)^2, nonnegative for every real L.
  TemplatePolynomial polynomial() const {
    TemplatePolynomial out;
    for (std::size_t k = 0; k < monomial_basis.size(); ++k) {
      TemplatePolynomial column;
      for (std::size_t r = k; r < monomial_basis.size(); ++r)
        column.add_term(monomial_basis[r], coeff_var(factor[r][k]));
      out += column * column;
    }
    return out;
  }

  std::size_t unknown_count() const {
    std::size_t n = monomial_basis.size();
    return n * (n + 1) / 2;
  }
};

/// An encoded entailment plus the unknowns the encoder introduced, which tests
/// and diagnostics use to plant or read back certificates.
struct Encoding {
  TheoremCase theorem = TheoremCase::FarkasLinear;
  ConstraintSystem system;
  std::vector<VarId> multipliers;  // Farkas y_0..y_m or one per semigroup element
  std::vector<SosBlock> sos_blocks;  // Putinar h_0..h_m
  std::optional<VarId> slack;  // Putinar strictness slack
};

struct EncoderConfig {
  unsigned handelman_degree = 2;
  std::optional<unsigned> sos_degree;
  std::optional<TheoremCase> theorem_override;
  std::size_t semigroup_budget = 5000;
};

namespace detail {

/// One equality per monomial of `diff`.
inline void match_coefficients(const TemplatePolynomial& diff, ConstraintSystem& sys) {
  for (const auto& [m, c] : diff.terms()) sys.add_equality(c);
}

inline std::string group_prefix(const std::string& stem, std::uint32_t group) {
  return stem + "_" + std::to_string(group) + "_";
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

inline std::vector<VarId> entailment_variables(const PolynomialEntailment& e) {
  std::set<VarId> vs = program_variables(e.conclusion.poly);
  for (const auto& h : e.hypotheses) {
    auto hv = program_variables(h.poly);
    vs.insert(hv.begin(), hv.end());
  }
  return {vs.begin(), vs.end()};
}

inline bool positive_constant(const SignedConstraint& c) {
  return is_rational_constant(c.poly) && sgn(constant_value(c.poly)) > 0;
}

}  // namespace detail

/// Exponent vectors k with sum(k) <= d, in graded-lex order (the empty product first).
inline std::vector<std::vector<unsigned>> semigroup_exponents(std::size_t m, unsigned d) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> k(m, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned budget) -> void {
    if (i == m) {
      out.push_back(k);
      return;
    }
    for (unsigned e = 0; e <= budget; ++e) {
      k[i] = e;
      self(self, i + 1, budget - e);
    }
    k[i] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    unsigned da = 0, db = 0;
    for (unsigned x : a) da += x;
    for (unsigned x : b) db += x;
    if (da != db) return da < db;
    return a > b;
  });
  return out;
}

/// Products prod g_i^{k_i} with sum(k_i) <= d; there are C(m+d, d) of them.
inline std::vector<TemplatePolynomial> semigroup_generate(const std::vector<SignedConstraint>& hypotheses, unsigned d,
                                                          std::size_t budget = 5000) {
  std::size_t m = hypotheses.size();
  if (detail::binomial(static_cast<unsigned>(m + d), d) > budget)
    throw Error(ErrorCode::SizeLimitExceeded,
                "semigroup of " + std::to_string(m) + " hypotheses at degree " + std::to_string(d) + " exceeds budget");
  std::map<std::vector<unsigned>, TemplatePolynomial> cache;
  std::vector<TemplatePolynomial> out;
  for (const auto& k : semigroup_exponents(m, d)) {
    auto first = std::find_if(k.begin(), k.end(), [](unsigned x) { return x > 0; });
    TemplatePolynomial product;
    if (first == k.end()) {
      product = constant(1);
    } else {
      // Every proper factor was generated earlier (lower total degree).
      std::vector<unsigned> smaller = k;
      std::size_t i = static_cast<std::size_t>(first - k.begin());
      --smaller[i];
      product = cache.at(smaller) * hypotheses[i].poly;
    }
    cache.emplace(k, product);
    out.push_back(std::move(product));
  }
  return out;
}

/// Farkas: conclusion = y_0 + sum y_i * h_i with y >= 0, matched monomial-wise.
/// A strict conclusion also needs y_0 + sum over strict hypotheses of y_i > 0.
inline Encoding farkas_encode(const PolynomialEntailment& e, UnknownFactory& unknowns) {
  if (classify(e) != TheoremCase::FarkasLinear)
    throw Error(ErrorCode::WrongCase, "Farkas encoding needs linear hypotheses and conclusion");
  Encoding enc;
  enc.theorem = TheoremCase::FarkasLinear;
  auto prefix = detail::group_prefix("y", unknowns.next_group());
  for (std::size_t i = 0; i <= e.hypotheses.size(); ++i) enc.multipliers.push_back(unknowns.fresh(prefix + std::to_string(i)));

  TemplatePolynomial diff = e.conclusion.poly - var(enc.multipliers[0]);
  CoeffPoly strict_mass = coeff_var(enc.multipliers[0]);
  for (std::size_t i = 0; i < e.hypotheses.size(); ++i) {
    const auto& y = enc.multipliers[i + 1];
    diff -= scale(e.hypotheses[i].poly, coeff_var(y));
    if (e.hypotheses[i].strict) strict_mass += coeff_var(y);
  }
  detail::match_coefficients(diff, enc.system);
  for (const auto& y : enc.multipliers) enc.system.add_inequality(coeff_var(y), false);
  if (e.conclusion.strict) enc.system.add_inequality(strict_mass, true);
  return enc;
}

namespace detail {

inline Encoding semigroup_encode(const PolynomialEntailment& e, unsigned d, std::size_t budget, TheoremCase theorem,
                                 UnknownFactory& unknowns) {
  std::vector<SignedConstraint> hyps;
  for (const auto& h : e.hypotheses)
    if (!positive_constant(h)) hyps.push_back({h.poly, false});
  auto elements = semigroup_generate(hyps, d, budget);
  Encoding enc;
  enc.theorem = theorem;
  auto prefix = group_prefix("y", unknowns.next_group());
  TemplatePolynomial diff = e.conclusion.poly;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    VarId y = unknowns.fresh(prefix + std::to_string(i));
    enc.multipliers.push_back(y);
    diff -= scale(elements[i], coeff_var(y));
  }
  match_coefficients(diff, enc.system);
  for (const auto& y : enc.multipliers) enc.system.add_inequality(coeff_var(y), false);
  // elements[0] is the empty product 1.
  if (e.conclusion.strict) enc.system.add_inequality(coeff_var(enc.multipliers.front()), true);
  return enc;
}

}  // namespace detail

/// Handelman: conclusion = sum y_i * s_i over the degree-d semigroup of the
/// (weakened) linear hypotheses; strict conclusions need the multiplier of 1 > 0.
inline Encoding handelman_encode(const PolynomialEntailment& e, unsigned d, UnknownFactory& unknowns,
                                 std::size_t budget = 5000) {
  auto c = classify(e);
  if (c != TheoremCase::HandelmanLinearHyp && c != TheoremCase::FarkasLinear)
    throw Error(ErrorCode::WrongCase, "Handelman encoding needs linear hypotheses");
  return detail::semigroup_encode(e, d, budget, TheoremCase::HandelmanLinearHyp, unknowns);
}

/// Same shape as Handelman but accepts non-linear hypotheses. Sound only.
inline Encoding nonlinear_handelman_encode(const PolynomialEntailment& e, unsigned d, UnknownFactory& unknowns,
                                           std::size_t budget = 5000) {
  return detail::semigroup_encode(e, d, budget, TheoremCase::NonlinearHandelman, unknowns);
}

/// SOS template over `vars` with basis of all monomials up to degree `d`.
/// Factor entries are named <tag>_<r>_<c>.
inline SosBlock sos_template(const std::vector<VarId>& vars, unsigned d, UnknownFactory& unknowns,
                             const std::string& tag) {
  SosBlock block;
  block.monomial_basis = monomials_up_to_degree(vars, d);
  std::size_t n = block.monomial_basis.size();
  block.factor.resize(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c <= r; ++c)
      block.factor[r].push_back(unknowns.fresh(tag + "_" + std::to_string(r) + "_" + std::to_string(c)));
  return block;
}

/// Default SOS half-degree of the block multiplying a factor of degree
/// `factor_degree`: the smallest d' with 2d' + factor_degree >= deg(conclusion).
inline unsigned default_sos_degree(const PolynomialEntailment& e, unsigned factor_degree = 0) {
  unsigned g = program_degree(e.conclusion.poly);
  return g > factor_degree ? (g - factor_degree + 1) / 2 : 0;
}

/// Putinar: conclusion = h_0 + sum h_i * g_i with SOS h_i, matched monomial-wise.
/// A strict conclusion adds a slack eps > 0 to the right-hand side. Without an
/// explicit `sos_degree` each block gets its own default degree.
inline Encoding putinar_encode(const PolynomialEntailment& e, std::optional<unsigned> sos_degree,
                               UnknownFactory& unknowns) {
  auto vars = detail::entailment_variables(e);
  auto group = unknowns.next_group();
  Encoding enc;
  enc.theorem = TheoremCase::PutinarGeneral;

  std::vector<TemplatePolynomial> hyps;
  for (const auto& h : e.hypotheses)
    if (!detail::positive_constant(h)) hyps.push_back(h.poly);

  auto tag = [&](std::size_t i) { return "l_" + std::to_string(group) + "_" + std::to_string(i); };
  enc.sos_blocks.push_back(sos_template(vars, sos_degree.value_or(default_sos_degree(e)), unknowns, tag(0)));
  TemplatePolynomial diff = e.conclusion.poly - enc.sos_blocks.back().polynomial();
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    unsigned d = sos_degree.value_or(default_sos_degree(e, program_degree(hyps[i])));
    enc.sos_blocks.push_back(sos_template(vars, d, unknowns, tag(i + 1)));
    diff -= enc.sos_blocks.back().polynomial() * hyps[i];
  }
  if (e.conclusion.strict) {
    enc.slack = unknowns.fresh("eps_" + std::to_string(group));
    diff -= var(*enc.slack);
  }
  detail::match_coefficients(diff, enc.system);
  if (enc.slack) enc.system.add_inequality(coeff_var(*enc.slack), true);
  return enc;
}

/// Picks the certificate by degree inspection unless the config forces one.
inline Encoding encode(const PolynomialEntailment& e, const EncoderConfig& cfg, UnknownFactory& unknowns) {
  TheoremCase which = cfg.theorem_override.value_or(classify(e));
  switch (which) {
    case TheoremCase::FarkasLinear: return farkas_encode(e, unknowns);
    case TheoremCase::HandelmanLinearHyp:
      return handelman_encode(e, cfg.handelman_degree, unknowns, cfg.semigroup_budget);
    case TheoremCase::PutinarGeneral: return putinar_encode(e, cfg.sos_degree, unknowns);
    case TheoremCase::NonlinearHandelman:
      return nonlinear_handelman_encode(e, cfg.handelman_degree, unknowns, cfg.semigroup_budget);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown theorem case");
}

/// Encodes every clause of a universal formula into one system. Clauses whose
/// entailments come in several alternatives become a disjunction.
inline ConstraintSystem encode_clauses(UniversalFormula& uf, ConclusionStrategy strategy, const EncoderConfig& cfg) {
  ConstraintSystem out;
  for (const auto& clause : uf.clauses) {
    auto alternatives = clause_to_entailments(clause, strategy);
    std::vector<ConstraintSystem> encoded;
    bool vacuous = false;
    for (const auto& conj : alternatives) {
      ConstraintSystem sys;
      for (const auto& e : conj) sys.conjoin(encode(e, cfg, uf.unknowns).system);
      if (sys.empty()) vacuous = true;
      encoded.push_back(std::move(sys));
    }
    if (vacuous) continue;
    if (encoded.size() == 1)
      out.conjoin(encoded.front());
    else
      out.disjunctions.push_back(std::move(encoded));
  }
  return out;
}

}  // namespace skolem_qe
