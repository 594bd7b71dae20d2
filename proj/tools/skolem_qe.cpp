/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "skolem_qe/skolem_qe.hpp"

namespace sq = skolem_qe;
using nlohmann::json;

namespace {

enum ExitCode { kSat = 0, kUnsat = 1, kUnknown = 2, kError = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sq::Error(sq::ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

sq::InputFormat pick_format(const std::string& name, const std::string& path) {
  if (name == "native") return sq::InputFormat::Native;
  if (name == "smt2") return sq::InputFormat::SmtLib2Subset;
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".smt2") == 0 ? sq::InputFormat::SmtLib2Subset
                                                                             : sq::InputFormat::Native;
}

std::vector<unsigned> parse_degrees(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw sq::Error(sq::ErrorCode::InvalidArgument, "bad degree list '" + text + "'");
    out.push_back(static_cast<unsigned>(std::stoul(item)));
  }
  return out;
}

std::optional<sq::TheoremCase> parse_theorem(const std::string& name) {
  if (name == "auto") return std::nullopt;
  if (name == "farkas") return sq::TheoremCase::FarkasLinear;
  if (name == "handelman") return sq::TheoremCase::HandelmanLinearHyp;
  if (name == "putinar") return sq::TheoremCase::PutinarGeneral;
  return sq::TheoremCase::NonlinearHandelman;
}

json report_json(const sq::VerificationReport& r) {
  json j{{"mode", std::string(to_string(r.mode))},
         {"verdict", std::string(to_string(r.verdict))},
         {"samples_tried", r.samples_tried}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.counterexample) {
    json pt = json::object();
    for (const auto& [v, q] : *r.counterexample) pt[v.name()] = q.get_str();
    j["counterexample"] = pt;
  }
  return j;
}

json outcome_json(const sq::Outcome& o) {
  json j{{"verdict", std::string(to_string(o.verdict))}, {"negated", o.negated}};
  if (o.witness) {
    json w = json::object(), native = json::object();
    for (const auto& [v, p] : o.witness->functions) {
      w[v.name()] = to_string(p);
      native[v.name()] = sq::to_sexpr(p);
    }
    j["witness"] = w;
    j["witness_native"] = native;
  }
  j["degree"] = o.degree ? json(*o.degree) : json(nullptr);
  j["verification"] = o.report ? report_json(*o.report) : json(nullptr);
  json attempts = json::array();
  for (const auto& a : o.attempts)
    attempts.push_back({{"negated", a.negated},
                        {"degree", a.degree},
                        {"conclusion", a.strategy == sq::ConclusionStrategy::TryEach ? "try-each" : "last"},
                        {"clauses", a.clauses},
                        {"unknowns", a.unknowns},
                        {"constraints", a.constraints},
                        {"skolemize_s", a.skolemize_seconds},
                        {"encode_s", a.encode_seconds},
                        {"solve_s", a.solve_seconds},
                        {"verify_s", a.verify_seconds},
                        {"result", a.result}});
  j["stats"] = {{"total_s", o.total_seconds}, {"attempts", attempts}};
  return j;
}

void print_outcome(const sq::Outcome& o) {
  std::cout << to_string(o.verdict) << "\n";
  if (o.witness) {
    if (o.negated) std::cout << "; witness for the negation\n";
    for (const auto& [v, p] : o.witness->functions) std::cout << v.name() << " = " << to_string(p) << "\n";
  }
  if (o.degree) std::cout << "; degree " << *o.degree << "\n";
  if (o.report) std::cout << "; " << to_string(o.report->mode) << " check: " << to_string(o.report->verdict) << "\n";
  std::cout << "; " << o.attempts.size() << " attempts, " << o.total_seconds << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skolem-template satisfiability for quantified real arithmetic"};
  app.require_subcommand(1);

  std::string file, format = "auto", degrees = "0,1,2", theorem = "auto", conclusion = "last", verify = "solver";
  std::string solver_cmd = sq::default_solver_command();
  unsigned handelman_d = 2, encode_degree = 1;
  std::optional<unsigned> sos_d;
  double timeout = 0;
  bool no_negation = false, as_json = false, cross_check = false;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("file", file, "Formula file")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", format, "Input format")->check(CLI::IsMember({"auto", "native", "smt2"}));
  };
  auto add_encoder = [&](CLI::App* sub) {
    sub->add_option("--handelman-d", handelman_d, "Semigroup degree")->check(CLI::PositiveNumber);
    sub->add_option("--sos-d", sos_d, "SOS basis half-degree");
    sub->add_option("--theorem", theorem, "Certificate")
        ->check(CLI::IsMember({"auto", "farkas", "handelman", "putinar", "nl-handelman"}));
    sub->add_option("--conclusion", conclusion, "Conclusion literal choice")->check(CLI::IsMember({"last", "try-each"}));
  };

  auto* solve_cmd = app.add_subcommand("solve", "Decide a formula");
  add_input(solve_cmd);
  add_encoder(solve_cmd);
  solve_cmd->add_option("--degrees", degrees, "Template degree schedule");
  solve_cmd->add_flag("--no-negation", no_negation, "Skip the negated formula");
  solve_cmd->add_flag("--cross-check", cross_check, "Run the negation even after a witness is found");
  solve_cmd->add_option("--verify", verify, "Witness check")->check(CLI::IsMember({"none", "sample", "solver"}));
  solve_cmd->add_option("--solver-cmd", solver_cmd, "Solver command line");
  solve_cmd->add_option("--timeout", timeout, "Global timeout in seconds")->check(CLI::NonNegativeNumber);
  solve_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* print_cmd = app.add_subcommand("print", "Parse and print the formula with its CNF");
  add_input(print_cmd);

  auto* encode_cmd = app.add_subcommand("encode", "Print the constraint system for one degree");
  add_input(encode_cmd);
  add_encoder(encode_cmd);
  encode_cmd->add_option("--degree", encode_degree, "Template degree");

  CLI11_PARSE(app, argc, argv);

  try {
    auto f = sq::to_cnf(sq::parse(read_file(file), pick_format(format, file)));

    sq::EncoderConfig enc;
    enc.handelman_degree = handelman_d;
    enc.sos_degree = sos_d;
    enc.theorem_override = parse_theorem(theorem);
    auto strategy = conclusion == "try-each" ? sq::ConclusionStrategy::TryEach : sq::ConclusionStrategy::LastLiteral;

    if (*print_cmd) {
      std::cout << sq::to_native(f);
      for (const auto& clause : *f.cnf) {
        std::cout << ";";
        for (std::size_t i = 0; i < clause.size(); ++i) std::cout << (i ? " | " : " ") << to_string(clause[i]);
        std::cout << "\n";
      }
      return 0;
    }
    if (*encode_cmd) {
      auto uf = sq::skolemize(f, encode_degree);
      std::cout << sq::smt::emit(sq::encode_clauses(uf, strategy, enc));
      return 0;
    }

    sq::RunConfig cfg;
    cfg.degree_schedule = parse_degrees(degrees);
    cfg.encoder = enc;
    cfg.conclusion_strategy = strategy;
    cfg.try_negation = !no_negation;
    cfg.cross_check = cross_check;
    cfg.verify = verify == "none" ? sq::VerifyMode::None
                 : verify == "sample" ? sq::VerifyMode::Sampling
                                      : sq::VerifyMode::SolverCheck;
    cfg.solver.command = solver_cmd;
    if (timeout > 0) {
      cfg.timeout = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
      cfg.solver.timeout = *cfg.timeout;
    }
    auto outcome = sq::run(f, cfg);
    if (as_json)
      std::cout << outcome_json(outcome).dump(2) << "\n";
    else
      print_outcome(outcome);
    switch (outcome.verdict) {
      case sq::RunVerdict::Sat: return kSat;
      case sq::RunVerdict::Unsat: return kUnsat;
      case sq::RunVerdict::Unknown: return kUnknown;
    }
  } catch (const sq::Error& e) {
    if (as_json)
      std::cout << json{{"verdict", "error"}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2)
                << "\n";
    std::cerr << "skolem-qe: " << e.what() << "\n";
    if (e.code() == sq::ErrorCode::Soundness) std::cerr << "skolem-qe: internal soundness failure, please report the input\n";
    return kError;
  }
  return kError;
}
