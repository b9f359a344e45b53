// Copyright 2026 The itsnt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "itsnt/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>

namespace itsnt {

namespace {

constexpr std::chrono::milliseconds kCommandBudget{10000};
constexpr std::chrono::milliseconds kCheckSlack{1500};

struct ReadTimeout {};

bool is_cvc5(const std::string& path) {
  return std::filesystem::path(path).filename().string().find("cvc5") != std::string::npos;
}

}  // namespace

struct SmtSession::Process {
  pid_t pid = -1;
  int to_solver = -1;
  int from_solver = -1;
  std::string buffer;
};

SmtSession::SmtSession(SolverConfig config) : config_(std::move(config)) {
  scopes_.emplace_back();
  declared_.emplace_back();
  start();
}

SmtSession::~SmtSession() { stop(); }

void SmtSession::start() {
  ::signal(SIGPIPE, SIG_IGN);
  int in[2], out[2];
  if (::pipe(in) != 0 || ::pipe(out) != 0) throw SolverError("pipe: " + std::string(std::strerror(errno)));

  std::vector<std::string> argv{config_.path};
  if (is_cvc5(config_.path)) {
    argv.insert(argv.end(), {"--lang=smt2", "--incremental", "--produce-models",
                             "--tlimit-per=" + std::to_string(config_.timeout.count())});
  } else {
    argv.insert(argv.end(), {"-in", "-smt2"});
  }

  pid_t pid = ::fork();
  if (pid < 0) throw SolverError("fork: " + std::string(std::strerror(errno)));
  if (pid == 0) {
    ::dup2(in[0], STDIN_FILENO);
    ::dup2(out[1], STDOUT_FILENO);
    int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
    ::close(in[0]);
    ::close(in[1]);
    ::close(out[0]);
    ::close(out[1]);
    std::vector<char*> cargv;
    for (auto& a : argv) cargv.push_back(a.data());
    cargv.push_back(nullptr);
    ::execvp(cargv[0], cargv.data());
    ::_exit(127);
  }
  ::close(in[0]);
  ::close(out[1]);
  proc_ = std::make_unique<Process>();
  proc_->pid = pid;
  proc_->to_solver = in[1];
  proc_->from_solver = out[0];

  command("(set-option :print-success true)", kCommandBudget);
  command("(set-option :produce-models true)", kCommandBudget);
  if (!is_cvc5(config_.path))
    command("(set-option :timeout " + std::to_string(config_.timeout.count()) + ")", kCommandBudget);
  command("(set-logic QF_NIA)", kCommandBudget);
}

void SmtSession::stop() {
  if (!proc_) return;
  if (proc_->to_solver >= 0) {
    // Best effort; the solver may already be gone.
    const char* bye = "(exit)\n";
    [[maybe_unused]] auto n = ::write(proc_->to_solver, bye, std::strlen(bye));
    ::close(proc_->to_solver);
  }
  if (proc_->from_solver >= 0) ::close(proc_->from_solver);
  if (proc_->pid > 0) {
    ::kill(proc_->pid, SIGKILL);
    ::waitpid(proc_->pid, nullptr, 0);
  }
  proc_.reset();
}

void SmtSession::send(const std::string& cmd) {
  std::string line = cmd + "\n";
  size_t off = 0;
  while (off < line.size()) {
    ssize_t n = ::write(proc_->to_solver, line.data() + off, line.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw SolverError("solver closed its input");
    }
    off += static_cast<size_t>(n);
  }
}

SExpr SmtSession::receive(std::chrono::steady_clock::time_point deadline) {
  for (;;) {
    if (auto len = complete_prefix(proc_->buffer)) {
      std::string text = proc_->buffer.substr(0, *len);
      proc_->buffer.erase(0, *len);
      return parse_sexpr(std::string_view(text).substr(text.find_first_not_of(" \t\r\n")));
    }
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) throw ReadTimeout{};
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    pollfd pfd{proc_->from_solver, POLLIN, 0};
    int r = ::poll(&pfd, 1, static_cast<int>(ms) + 1);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw SolverError("poll: " + std::string(std::strerror(errno)));
    }
    if (r == 0) continue;
    char buf[4096];
    ssize_t n = ::read(proc_->from_solver, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw SolverError("read: " + std::string(std::strerror(errno)));
    }
    if (n == 0) {
      // EOF; a trailing bare atom without newline is still a response.
      if (!proc_->buffer.empty() && proc_->buffer.find_first_not_of(" \t\r\n") != std::string::npos) {
        proc_->buffer += '\n';
        continue;
      }
      throw SolverError("solver '" + config_.path + "' terminated unexpectedly");
    }
    proc_->buffer.append(buf, static_cast<size_t>(n));
  }
}

std::string SmtSession::command(const std::string& cmd, std::chrono::milliseconds budget) {
  send(cmd);
  SExpr e;
  try {
    e = receive(std::chrono::steady_clock::now() + budget);
  } catch (const ReadTimeout&) {
    throw SolverError("solver did not answer '" + cmd + "'");
  }
  if (e.is_list && !e.list.empty() && e.list.front().is_atom("error"))
    throw SolverError("solver error on '" + cmd + "': " + e.to_string());
  return e.to_string();
}

size_t SmtSession::depth() const { return scopes_.size() - 1; }

void SmtSession::declare(const VarSet& vs) {
  for (const auto& v : vs) {
    bool known = false;
    for (const auto& scope : declared_) known = known || scope.count(v) > 0;
    if (known) continue;
    std::string cmd = "(declare-const " + quote_symbol(v.name()) + " Int)";
    command(cmd, kCommandBudget);
    scopes_.back().push_back(cmd);
    declared_.back().insert(v);
  }
}

void SmtSession::push() {
  command("(push 1)", kCommandBudget);
  scopes_.emplace_back();
  declared_.emplace_back();
}

void SmtSession::pop() {
  if (scopes_.size() <= 1) throw SolverError("pop without matching push");
  command("(pop 1)", kCommandBudget);
  scopes_.pop_back();
  declared_.pop_back();
}

void SmtSession::add(const Formula& f) {
  declare(f.vars());
  std::string cmd = "(assert " + to_smtlib(f) + ")";
  command(cmd, kCommandBudget);
  scopes_.back().push_back(cmd);
}

SatResult SmtSession::check() {
  ++queries_;
  send("(check-sat)");
  SExpr e;
  try {
    e = receive(std::chrono::steady_clock::now() + config_.timeout + kCheckSlack);
  } catch (const ReadTimeout&) {
    // Hung past its own timeout: restart and rebuild the scope stack.
    ++restarts_;
    auto scopes = scopes_;
    stop();
    start();
    for (size_t i = 0; i < scopes.size(); ++i) {
      if (i > 0) command("(push 1)", kCommandBudget);
      for (const auto& c : scopes[i]) command(c, kCommandBudget);
    }
    return SatResult::kUnknown;
  }
  if (e.is_atom("sat")) return SatResult::kSat;
  if (e.is_atom("unsat")) return SatResult::kUnsat;
  if (e.is_atom("unknown") || e.is_atom("timeout")) return SatResult::kUnknown;
  throw SolverError("unexpected check-sat response: " + e.to_string());
}

Valuation SmtSession::model(const VarSet& vars) {
  Valuation res;
  for (const auto& v : vars) res[v] = 0;
  SExpr e = parse_sexpr(command("(get-model)", kCommandBudget));
  // Older solvers wrap the definitions in (model ...).
  size_t first = (!e.list.empty() && e.list.front().is_atom("model")) ? 1 : 0;
  for (size_t i = first; i < e.list.size(); ++i) {
    const SExpr& d = e.list[i];
    // (define-fun name () Int value)
    if (!d.is_list || d.list.size() != 5 || !d.list[0].is_atom("define-fun")) continue;
    Var v(d.list[1].symbol());
    if (!vars.count(v)) continue;
    Poly val = poly_from_smtlib(d.list[4]);
    if (!val.is_constant() || val.constant_term().get_den() != 1)
      throw SolverError("non-integer model value for " + v.name());
    res[v] = val.constant_term().get_num();
  }
  return res;
}

SatResult check_sat(SmtSession& session, const Formula& f, Valuation* model,
                    const VarSet& model_vars) {
  session.push();
  SatResult r;
  try {
    session.add(f);
    r = session.check();
    if (r == SatResult::kSat && model) *model = session.model(model_vars.empty() ? f.vars() : model_vars);
  } catch (...) {
    if (session.depth() > 0) session.pop();
    throw;
  }
  session.pop();
  return r;
}

}  // namespace itsnt
