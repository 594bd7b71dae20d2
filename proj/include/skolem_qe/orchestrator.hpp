/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "skolem_qe/encoders.hpp"
#include "skolem_qe/solver.hpp"
#include "skolem_qe/verifier.hpp"

namespace skolem_qe {

enum class VerifyMode { None, Sampling, SolverCheck };

struct RunConfig {
  std::vector<unsigned> degree_schedule{0, 1, 2};
  EncoderConfig encoder;
  ConclusionStrategy conclusion_strategy = ConclusionStrategy::LastLiteral;
  bool retry_try_each = true;  // after a LastLiteral miss at the same degree
  bool try_negation = true;
  bool cross_check = false;  // also run the negation after a Sat and compare
  VerifyMode verify = VerifyMode::SolverCheck;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  SolverConfig solver;
  std::optional<std::chrono::milliseconds> timeout;
  CnfOptions cnf;
};

enum class RunVerdict { Sat, Unsat, Unknown };

inline std::string_view to_string(RunVerdict v) {
  switch (v) {
    case RunVerdict::Sat: return "sat";
    case RunVerdict::Unsat: return "unsat";
    case RunVerdict::Unknown: return "unknown";
  }
  return "?";
}

/// One (formula, degree, strategy) pipeline pass.
struct AttemptStats {
  bool negated = false;
  unsigned degree = 0;
  ConclusionStrategy strategy = ConclusionStrategy::LastLiteral;
  std::size_t clauses = 0;
  std::size_t unknowns = 0;
  std::size_t constraints = 0;
  double skolemize_seconds = 0;
  double encode_seconds = 0;
  double solve_seconds = 0;
  double verify_seconds = 0;
  std::string result;  // solver status or the reason the attempt was skipped
};

struct Outcome {
  RunVerdict verdict = RunVerdict::Unknown;
  std::optional<SkolemWitness> witness;  // of the formula for Sat, of its negation for Unsat
  std::optional<VerificationReport> report;
  std::optional<unsigned> degree;
  bool negated = false;
  std::vector<AttemptStats> attempts;
  double total_seconds = 0;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Found {
  SkolemWitness witness;
  std::optional<VerificationReport> report;
  unsigned degree = 0;
};

class Runner {
 public:
  Runner(const RunConfig& cfg, Outcome& out) : cfg_(cfg), out_(out), start_(Clock::now()) {}

  bool expired() const { return cfg_.timeout && Clock::now() - start_ >= *cfg_.timeout; }

  /// Tries the whole degree schedule on `f` (already in CNF).
  std::optional<Found> search(const QuantifiedFormula& f, bool negated) {
    bool multi_literal =
        std::any_of(f.cnf->begin(), f.cnf->end(), [](const Clause& c) { return c.size() > 1; });
    for (unsigned d : cfg_.degree_schedule) {
      std::vector<ConclusionStrategy> strategies{cfg_.conclusion_strategy};
      if (cfg_.conclusion_strategy == ConclusionStrategy::LastLiteral && cfg_.retry_try_each && multi_literal)
        strategies.push_back(ConclusionStrategy::TryEach);
      for (auto s : strategies) {
        if (expired()) return std::nullopt;
        if (auto found = attempt(f, negated, d, s)) return found;
      }
    }
    return std::nullopt;
  }

 private:
  std::optional<Found> attempt(const QuantifiedFormula& f, bool negated, unsigned degree, ConclusionStrategy s) {
    AttemptStats st;
    st.negated = negated;
    st.degree = degree;
    st.strategy = s;
    auto t = Clock::now();
    UniversalFormula uf = skolemize(f, degree);
    st.skolemize_seconds = seconds_since(t);
    st.clauses = uf.clauses.size();

    ConstraintSystem sys;
    t = Clock::now();
    try {
      sys = encode_clauses(uf, s, cfg_.encoder);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WrongCase && e.code() != ErrorCode::SizeLimitExceeded) throw;
      st.encode_seconds = seconds_since(t);
      st.result = e.what();
      out_.attempts.push_back(st);
      return std::nullopt;
    }
    st.encode_seconds = seconds_since(t);
    st.unknowns = sys.unknowns().size();
    st.constraints = sys.size();

    SolverConfig scfg = cfg_.solver;
    if (cfg_.timeout) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(*cfg_.timeout - (Clock::now() - start_));
      scfg.timeout = std::max(std::chrono::milliseconds(1), std::min(scfg.timeout, left));
    }
    t = Clock::now();
    SolverResult res = solve(sys, scfg);
    st.solve_seconds = seconds_since(t);
    st.result = to_string(res.status);
    if (!res.diagnostics.empty()) st.result += ": " + res.diagnostics;
    bool algebraic = res.status == SolverStatus::Unknown && !res.irrational.empty() &&
                     cfg_.verify != VerifyMode::None && rational_templates(uf, res);
    if (res.status != SolverStatus::Sat && !algebraic) {
      out_.attempts.push_back(st);
      return std::nullopt;
    }

    // With algebraic certificate values the witness itself is still exact, but
    // only a solver proof of the witness may stand in for the exact re-check.
    // Coefficients that no constraint mentions are free; fix them at 0.
    for (const auto& [target, tp] : uf.templates)
      for (const auto& c : tp.coefficients) res.model.try_emplace(c, 0);
    Found found;
    found.degree = degree;
    found.witness = extract_witness(uf.templates, res.model);
    t = Clock::now();
    found.report = algebraic ? verify_solver(f, found.witness, cfg_.solver) : verify(f, found.witness);
    st.verify_seconds = seconds_since(t);
    if (algebraic) {
      if (found.report->verdict == Verdict::Inconclusive) {
        st.result += "; witness unproved";
        out_.attempts.push_back(st);
        return std::nullopt;
      }
      st.result += "; witness proved by solver";
    }
    out_.attempts.push_back(st);
    if (found.report && found.report->verdict == Verdict::Refuted)
      throw Error(ErrorCode::Soundness, "witness at degree " + std::to_string(degree) + (negated ? " for the negation" : "") +
                                            " is refuted:\n" + to_string(found.witness));
    return found;
  }

  static bool rational_templates(const UniversalFormula& uf, const SolverResult& res) {
    for (const auto& [target, t] : uf.templates)
      for (const auto& c : t.coefficients)
        if (res.irrational.count(c)) return false;
    return true;
  }

  std::optional<VerificationReport> verify(const QuantifiedFormula& f, const SkolemWitness& w) const {
    switch (cfg_.verify) {
      case VerifyMode::None: return std::nullopt;
      case VerifyMode::Sampling: return verify_sampling(f, w, cfg_.samples, cfg_.seed);
      case VerifyMode::SolverCheck: return verify_solver(f, w, cfg_.solver);
    }
    return std::nullopt;
  }

  const RunConfig& cfg_;
  Outcome& out_;
  Clock::time_point start_;
};

}  // namespace detail

/// Degree schedule on the formula first, then on its negation; a witness for
/// the negation proves the formula unsatisfiable.
inline Outcome run(const QuantifiedFormula& input, const RunConfig& cfg = {}) {
  if (cfg.degree_schedule.empty() || !std::is_sorted(cfg.degree_schedule.begin(), cfg.degree_schedule.end()))
    throw Error(ErrorCode::InvalidArgument, "degree schedule must be nonempty and ascending");
  auto start = detail::Clock::now();
  Outcome out;
  detail::Runner runner(cfg, out);
  QuantifiedFormula f = input.cnf ? input : to_cnf(input, cfg.cnf);

  auto finish = [&](std::optional<detail::Found> found, bool negated) {
    out.verdict = negated ? RunVerdict::Unsat : RunVerdict::Sat;
    out.negated = negated;
    out.degree = found->degree;
    out.witness = std::move(found->witness);
    out.report = std::move(found->report);
  };

  if (auto found = runner.search(f, false)) {
    if (cfg.cross_check) {
      auto other = runner.search(negate(f, cfg.cnf), true);
      if (other)
        throw Error(ErrorCode::Soundness, "witnesses found for both the formula and its negation");
    }
    finish(std::move(found), false);
  } else if (cfg.try_negation) {
    if (auto neg = runner.search(negate(f, cfg.cnf), true)) finish(std::move(neg), true);
  }
  out.total_seconds = detail::seconds_since(start);
  return out;
}

}  // namespace skolem_qe
