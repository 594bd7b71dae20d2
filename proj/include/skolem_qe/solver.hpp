/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "skolem_qe/sexpr.hpp"
#include "skolem_qe/smt.hpp"

extern char** environ;

namespace skolem_qe {

inline std::string default_solver_command() {
  if (const char* env = std::getenv("SKOLEM_QE_SOLVER"); env && *env) return env;
  return "z3 -smt2";
}

struct SolverConfig {
  /// Whitespace-separated argv. `{file}` is replaced by the script path,
  /// otherwise the path is appended.
  std::string command = default_solver_command();
  std::chrono::milliseconds timeout{30000};
  std::string logic = "QF_LRA";
};

enum class SolverStatus { Sat, Unsat, Unknown, Timeout };

inline std::string_view to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Sat: return "sat";
    case SolverStatus::Unsat: return "unsat";
    case SolverStatus::Unknown: return "unknown";
    case SolverStatus::Timeout: return "timeout";
  }
  return "?";
}

struct SolverResult {
  SolverStatus status = SolverStatus::Unknown;
  Assignment model;
  std::set<VarId> defaulted;  // declared but absent from the model, read as 0
  std::set<VarId> irrational;  // algebraic in the solver's model; `model` then holds only the rational part
  std::string diagnostics;
  std::chrono::duration<double> elapsed{};
};

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string out;
  std::string err;
};

namespace detail {

inline std::vector<std::string> split_command(const std::string& command) {
  std::istringstream in(command);
  std::vector<std::string> argv;
  for (std::string tok; in >> tok;) argv.push_back(tok);
  return argv;
}

class TempScript {
 public:
  explicit TempScript(const std::string& text) {
    auto pattern = (std::filesystem::temp_directory_path() / "skolem-qe-XXXXXX.smt2").string();
    std::vector<char> buf(pattern.begin(), pattern.end());
    buf.push_back('\0');
    int fd = ::mkstemps(buf.data(), 5);
    if (fd < 0) throw Error(ErrorCode::SolverCrash, std::string("cannot create script file: ") + std::strerror(errno));
    path_ = buf.data();
    std::size_t off = 0;
    while (off < text.size()) {
      ssize_t n = ::write(fd, text.data() + off, text.size() - off);
      if (n <= 0) {
        ::close(fd);
        throw Error(ErrorCode::SolverCrash, "cannot write script file");
      }
      off += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempScript() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempScript(const TempScript&) = delete;
  TempScript& operator=(const TempScript&) = delete;

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace detail

/// Runs argv with stdout and stderr captured; SIGKILL once the deadline passes.
inline ProcessResult run_process(const std::vector<std::string>& argv, std::chrono::milliseconds timeout) {
  if (argv.empty()) throw Error(ErrorCode::SolverCrash, "empty solver command");
  int out_pipe[2], err_pipe[2];
  if (::pipe(out_pipe) != 0) throw Error(ErrorCode::SolverCrash, "pipe failed");
  if (::pipe(err_pipe) != 0) {
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    throw Error(ErrorCode::SolverCrash, "pipe failed");
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);
  posix_spawn_file_actions_adddup2(&actions, err_pipe[1], STDERR_FILENO);
  posix_spawn_file_actions_addclose(&actions, out_pipe[0]);
  posix_spawn_file_actions_addclose(&actions, err_pipe[0]);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);

  std::vector<char*> cargv;
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  // Own process group, so a timeout also takes down anything a wrapper script started.
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  pid_t pid = 0;
  int rc = posix_spawnp(&pid, cargv[0], &actions, &attr, cargv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);
  if (rc != 0) {
    ::close(out_pipe[0]);
    ::close(err_pipe[0]);
    throw Error(ErrorCode::SolverCrash, "cannot start '" + argv[0] + "': " + std::strerror(rc));
  }

  ProcessResult res;
  auto deadline = std::chrono::steady_clock::now() + timeout;
  pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  std::string* sinks[2] = {&res.out, &res.err};
  int open_fds = 2;
  char buf[4096];
  while (open_fds > 0) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      res.timed_out = true;
      ::kill(-pid, SIGKILL);
      break;
    }
    int n = ::poll(fds, 2, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (n < 0 && errno != EINTR) break;
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      ssize_t got = ::read(fds[i].fd, buf, sizeof buf);
      if (got > 0) {
        sinks[i]->append(buf, static_cast<std::size_t>(got));
      } else {
        ::close(fds[i].fd);
        fds[i].fd = -1;
        --open_fds;
      }
    }
  }
  for (auto& f : fds)
    if (f.fd >= 0) ::close(f.fd);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

namespace detail {

inline Rational model_value(const SExpr& e) {
  if (e.is_atom()) {
    if (!looks_numeric(e.token)) throw Error(ErrorCode::ModelParseError, e.where() + ": unexpected value '" + e.token + "'");
    return parse_rational(e.token);
  }
  if (e.headed_by("root-obj")) throw Error(ErrorCode::IrrationalModel, e.where() + ": algebraic number in model");
  if (e.headed_by("-") && e.size() == 2) return -model_value(e[1]);
  if (e.headed_by("/") && e.size() == 3) {
    Rational d = model_value(e[2]);
    if (sgn(d) == 0) throw Error(ErrorCode::ModelParseError, e.where() + ": division by zero in model");
    return model_value(e[1]) / d;
  }
  throw Error(ErrorCode::ModelParseError, e.where() + ": unsupported model value");
}

}  // namespace detail

/// Reads `(define-fun v () Real value)` entries, optionally wrapped in
/// `(model ...)`. Values may be integers, decimals, `(- v)` and `(/ a b)`.
/// Variables in `expected` that the model omits are bound to 0 and reported
/// through `defaulted`. Algebraic values throw IrrationalModel unless
/// `irrational` is given, in which case those variables are left unbound and
/// listed there.
inline Assignment parse_model(std::string_view text, const std::set<VarId>& expected,
                              std::set<VarId>* defaulted = nullptr, std::set<VarId>* irrational = nullptr) {
  std::map<std::string, VarId> by_name;
  for (const auto& v : expected) by_name.emplace(v.name(), v);
  std::vector<SExpr> top;
  try {
    top = read_sexprs(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::ModelParseError, e.what());
  }
  Assignment out;
  auto take = [&](const SExpr& def) {
    if (!def.headed_by("define-fun")) return;
    if (def.size() != 5 || !def[1].is_atom()) throw Error(ErrorCode::ModelParseError, def.where() + ": malformed define-fun");
    if (!def[2].is_list || !def[2].items.empty()) return;
    auto it = by_name.find(def[1].token);
    if (it == by_name.end()) return;
    try {
      out[it->second] = detail::model_value(def[4]);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IrrationalModel || !irrational) throw;
      irrational->insert(it->second);
    }
  };
  for (const auto& item : top) {
    if (!item.is_list) throw Error(ErrorCode::ModelParseError, item.where() + ": expected a model");
    if (item.headed_by("define-fun")) {
      take(item);
      continue;
    }
    for (const auto& def : item.items) take(def);
  }
  for (const auto& v : expected)
    if (!out.count(v) && !(irrational && irrational->count(v))) {
      out.emplace(v, Rational(0));
      if (defaulted) defaulted->insert(v);
    }
  return out;
}

/// Runs the external solver on `script` and reads back values for `vars` on sat.
inline SolverResult run_solver(const std::string& script, const std::set<VarId>& vars, const SolverConfig& cfg) {
  detail::TempScript file(script);
  auto argv = detail::split_command(cfg.command);
  bool placed = false;
  for (auto& a : argv)
    if (auto pos = a.find("{file}"); pos != std::string::npos) {
      a.replace(pos, 6, file.path());
      placed = true;
    }
  if (!placed) argv.push_back(file.path());

  auto start = std::chrono::steady_clock::now();
  ProcessResult proc = run_process(argv, cfg.timeout);
  SolverResult res;
  res.elapsed = std::chrono::steady_clock::now() - start;
  if (proc.timed_out) {
    res.status = SolverStatus::Timeout;
    res.diagnostics = "solver exceeded " + std::to_string(cfg.timeout.count()) + " ms";
    return res;
  }

  std::istringstream lines(proc.out);
  std::string first;
  while (std::getline(lines, first)) {
    while (!first.empty() && (first.back() == '\r' || first.back() == ' ')) first.pop_back();
    if (!first.empty()) break;
  }
  if (first.rfind("(error", 0) == 0)
    throw Error(ErrorCode::SolverCrash, "solver reported " + first);
  if (first == "unsat") {
    res.status = SolverStatus::Unsat;
  } else if (first == "unknown") {
    res.status = SolverStatus::Unknown;
    res.diagnostics = "solver answered unknown";
  } else if (first == "timeout") {
    res.status = SolverStatus::Timeout;
  } else if (first == "sat") {
    std::string rest((std::istreambuf_iterator<char>(lines)), std::istreambuf_iterator<char>());
    if (rest.find("(error") != std::string::npos)
      throw Error(ErrorCode::SolverCrash, "solver error after sat: " + rest.substr(rest.find("(error")));
    res.status = SolverStatus::Sat;
    res.model = parse_model(rest, vars, &res.defaulted, &res.irrational);
  } else {
    std::string why = first.empty() ? proc.err : first;
    throw Error(ErrorCode::SolverCrash,
                "solver exited with code " + std::to_string(proc.exit_code) + " and no verdict: " + why);
  }
  return res;
}

namespace detail {

inline std::string names(const std::set<VarId>& vs) {
  std::string out;
  for (const auto& v : vs) out += (out.empty() ? "" : ", ") + v.name();
  return out;
}

// A model with algebraic values cannot be re-checked exactly, so it degrades to Unknown.
template <class Check>
SolverResult finish_solve(SolverResult res, Check&& exact) {
  if (res.status != SolverStatus::Sat) return res;
  if (!res.irrational.empty()) {
    res.status = SolverStatus::Unknown;
    res.diagnostics = "IrrationalModel: algebraic values for " + names(res.irrational);
  } else if (!exact(res.model)) {
    res.status = SolverStatus::Unknown;
    res.diagnostics = "solver model fails exact re-validation";
    res.model.clear();
  }
  return res;
}

}  // namespace detail

/// Decides a constraint system. A sat model is re-checked exactly; irrational
/// or inexact models degrade to Unknown.
inline SolverResult solve(const ConstraintSystem& sys, const SolverConfig& cfg = {}) {
  return detail::finish_solve(run_solver(smt::emit(sys, cfg.logic), sys.unknowns(), cfg),
                              [&](const Assignment& m) { return sys.holds(m); });
}

/// Satisfiability of a ground formula over `vars`; a sat model is re-checked.
inline SolverResult solve(const BoolExpr& e, const std::set<VarId>& vars, const SolverConfig& cfg = {}) {
  return detail::finish_solve(run_solver(smt::emit(e, vars), vars, cfg),
                              [&](const Assignment& m) { return evaluate(e, m); });
}

}  // namespace skolem_qe
