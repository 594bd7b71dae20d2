/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "skolem_qe/skolemizer.hpp"
#include "skolem_qe/solver.hpp"

namespace skolem_qe {

/// Concrete Skolem functions: ground polynomials over each existential's scope.
struct SkolemWitness {
  std::map<VarId, TemplatePolynomial> functions;
};

inline std::string to_string(const SkolemWitness& w) {
  std::string out;
  for (const auto& [v, p] : w.functions) out += v.name() + " = " + to_string(p) + "\n";
  return out;
}

enum class VerificationMode { Sampling, SolverCheck };
enum class Verdict { Verified, Refuted, Inconclusive };

inline std::string_view to_string(VerificationMode m) { return m == VerificationMode::Sampling ? "sampling" : "solver"; }

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct VerificationReport {
  VerificationMode mode = VerificationMode::Sampling;
  std::size_t samples_tried = 0;
  std::optional<Assignment> counterexample;
  Verdict verdict = Verdict::Inconclusive;
  std::string detail;
};

/// Substitutes model values into each template; throws MissingBinding when a
/// coefficient has no value.
inline SkolemWitness extract_witness(const std::map<VarId, SkolemTemplate>& templates, const Assignment& model) {
  SkolemWitness w;
  for (const auto& [target, t] : templates) {
    for (const auto& c : t.coefficients)
      if (!model.count(c)) throw Error(ErrorCode::MissingBinding, "model has no value for '" + c.name() + "'");
    w.functions.emplace(target, instantiate_unknowns(t.body, model));
  }
  return w;
}

/// The matrix with every existential replaced by its witness.
inline BoolExpr ground_matrix(const QuantifiedFormula& f, const SkolemWitness& w) {
  for (const auto& v : f.variables(Quantifier::Exists))
    if (!w.functions.count(v)) throw Error(ErrorCode::MissingBinding, "witness has no function for '" + v.name() + "'");
  return substitute(f.matrix, w.functions);
}

namespace detail {

inline void collect_atoms(const BoolExpr& e, std::vector<const Atom*>& out) {
  if (e.is_atom()) {
    if (!is_rational_constant(e.atom().poly)) out.push_back(&e.atom());
    return;
  }
  for (const auto& c : e.children()) collect_atoms(c, out);
}

class PointSampler {
 public:
  PointSampler(std::vector<VarId> vars, const BoolExpr& ground, std::uint64_t seed)
      : vars_(std::move(vars)), rng_(seed) {
    collect_atoms(ground, atoms_);
  }

  Assignment next() {
    Assignment p;
    for (const auto& v : vars_) p[v] = (pick(2) == 0) ? small_integer() : dyadic();
    if (!atoms_.empty() && pick(3) == 0) move_to_boundary(p);
    return p;
  }

 private:
  unsigned pick(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng_); }

  Rational small_integer() { return Rational(std::uniform_int_distribution<int>(-5, 5)(rng_)); }

  Rational dyadic() {
    unsigned shift = 1 + pick(6);
    long den = 1L << shift;
    long num = std::uniform_int_distribution<long>(-10 * den, 10 * den)(rng_);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  // Solves one atom for a variable it mentions linearly, then nudges by 0 or 1/1024.
  void move_to_boundary(Assignment& p) {
    const Atom& a = *atoms_[pick(static_cast<unsigned>(atoms_.size()))];
    std::vector<VarId> linear;
    for (const auto& v : vars_) {
      unsigned deg = 0;
      for (const auto& [m, c] : a.poly.terms()) deg = std::max(deg, m.exponent(v));
      if (deg == 1) linear.push_back(v);
    }
    if (linear.empty()) return;
    const VarId& v = linear[pick(static_cast<unsigned>(linear.size()))];
    p[v] = 0;
    Rational b = evaluate(a.poly, p);
    p[v] = 1;
    Rational slope = evaluate(a.poly, p) - b;
    if (sgn(slope) == 0) {
      p[v] = 0;
      return;
    }
    static const Rational nudges[] = {Rational(0), Rational(1, 1024), Rational(-1, 1024)};
    p[v] = -b / slope + nudges[pick(3)];
  }

  std::vector<VarId> vars_;
  std::vector<const Atom*> atoms_;
  std::mt19937_64 rng_;
};

}  // namespace detail

/// Evaluates the witnessed matrix at `n` sampled assignments of the universals.
/// Sampling can only refute; passing all samples reports Verified.
inline VerificationReport verify_sampling(const QuantifiedFormula& f, const SkolemWitness& w, std::size_t n,
                                          std::uint64_t seed) {
  VerificationReport r;
  r.mode = VerificationMode::Sampling;
  BoolExpr g = ground_matrix(f, w);
  auto universals = f.variables(Quantifier::ForAll);
  if (universals.empty()) n = 1;
  detail::PointSampler sampler(universals, g, seed);
  for (std::size_t i = 0; i < n; ++i) {
    Assignment p = sampler.next();
    ++r.samples_tried;
    if (!evaluate(g, p)) {
      r.verdict = Verdict::Refuted;
      r.counterexample = std::move(p);
      r.detail = "matrix false at sampled point";
      return r;
    }
  }
  r.verdict = Verdict::Verified;
  r.detail = "no violation in " + std::to_string(r.samples_tried) + " samples";
  return r;
}

/// Asks the solver for a point violating the witnessed matrix; unsat is a proof.
inline VerificationReport verify_solver(const QuantifiedFormula& f, const SkolemWitness& w, const SolverConfig& cfg) {
  VerificationReport r;
  r.mode = VerificationMode::SolverCheck;
  BoolExpr g = ground_matrix(f, w);
  auto universals = f.variables(Quantifier::ForAll);
  if (universals.empty()) {
    r.samples_tried = 1;
    if (evaluate(g, {})) {
      r.verdict = Verdict::Verified;
    } else {
      r.verdict = Verdict::Refuted;
      r.counterexample = Assignment{};
    }
    return r;
  }
  std::set<VarId> vars(universals.begin(), universals.end());
  SolverResult res = solve(negate(g), vars, cfg);
  switch (res.status) {
    case SolverStatus::Unsat:
      r.verdict = Verdict::Verified;
      r.detail = "negated matrix is unsatisfiable";
      break;
    case SolverStatus::Sat:
      r.verdict = Verdict::Refuted;
      r.counterexample = res.model;
      r.detail = "solver found a violating point";
      break;
    case SolverStatus::Unknown:
      if (!res.irrational.empty()) {
        r.verdict = Verdict::Refuted;
        r.detail = "solver found a violating point with algebraic coordinates";
        break;
      }
      [[fallthrough]];
    default:
      r.verdict = Verdict::Inconclusive;
      r.detail = std::string(to_string(res.status)) + (res.diagnostics.empty() ? "" : ": " + res.diagnostics);
  }
  return r;
}

}  // namespace skolem_qe
