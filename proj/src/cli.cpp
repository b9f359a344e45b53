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

#include "itsnt/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "itsnt/frontend.hpp"
#include "itsnt/inference.hpp"
#include "itsnt/strategy.hpp"

namespace itsnt {

namespace {

enum class ProofLevel { kNone, kSteps, kFull };

struct Settings {
  double timeout_s = 60;
  long smt_timeout_ms = 2000;
  unsigned strengthen_budget = 3;
  unsigned validate_steps = 1000;
  std::uint64_t seed = 0;
  std::string solver = "z3";
  ProofLevel proof = ProofLevel::kNone;
};

void add_common(CLI::App& cmd, Settings& s) {
  cmd.add_option("--timeout", s.timeout_s, "Wall-clock budget per program in seconds")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--smt-timeout", s.smt_timeout_ms, "Timeout per solver query in milliseconds")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--strengthen-budget", s.strengthen_budget,
                 "Invariant-deduction passes per derivation lineage");
  cmd.add_option("--validate-steps", s.validate_steps,
                 "Loop iterations simulated when validating a witness")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--seed", s.seed, "Seed for randomized checks");
  cmd.add_option("--solver", s.solver, "SMT solver executable (z3 or cvc5)");
  std::map<std::string, ProofLevel> levels{
      {"none", ProofLevel::kNone}, {"steps", ProofLevel::kSteps}, {"full", ProofLevel::kFull}};
  cmd.add_option("--proof", s.proof, "Proof log verbosity: none, steps or full")
      ->transform(CLI::CheckedTransformer(levels, CLI::ignore_case));
}

StrategyOptions strategy_options(const Settings& s) {
  StrategyOptions o;
  o.solver.path = s.solver;
  o.solver.timeout = std::chrono::milliseconds(s.smt_timeout_ms);
  o.timeout = std::chrono::milliseconds(static_cast<long>(s.timeout_s * 1000));
  o.strengthen_budget = s.strengthen_budget;
  o.validate_steps = s.validate_steps;
  return o;
}

std::string read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_verdict(const Verdict& v, ProofLevel level, std::ostream& out) {
  out << to_string(v.answer) << "\n";
  if (v.answer == Answer::kNo) {
    out << "witness: " << v.witness->to_string() << "\n";
    out << "model:\n";
    for (const auto& [var, val] : v.model)
      if (!ParamPool::is_reserved(var)) out << "  " << var.name() << " = " << val << "\n";
    out << "trace:\n";
    for (const auto& line : v.plan.lines()) out << "  " << line << "\n";
  } else {
    out << "reason: " << v.reason << "\n";
  }
  if (level == ProofLevel::kNone) return;
  out << "proof:\n";
  if (v.answer == Answer::kNo) out << "  derivation: " << v.derivation << "\n";
  for (const auto& l : v.log)
    if (!l.detail || level == ProofLevel::kFull) out << "  " << l.text << "\n";
}

int prove_file(const std::string& path, const Settings& s, std::ostream& out, std::ostream& err) {
  Program p;
  try {
    p = parse_program(read_input(path));
  } catch (const ParseError& e) {
    err << "error: " << path << ":" << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    Verdict v = prove_nontermination(p, strategy_options(s));
    print_verdict(v, s.proof, out);
    return v.answer == Answer::kNo ? kExitNo : kExitMaybe;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

// One line per file, then totals. Every NO is replayed once more here.
int bench(const std::vector<std::string>& files, const Settings& s, std::ostream& out) {
  unsigned no = 0, maybe = 0, errors = 0, unvalidated = 0;
  for (const auto& f : files) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string status;
    try {
      Program p = parse_program(read_input(f));
      Verdict v = prove_nontermination(p, strategy_options(s));
      if (v.answer == Answer::kNo) {
        if (v.witness && validate_witness(p, *v.witness, v.plan, s.validate_steps).ok) {
          status = "NO";
          ++no;
        } else {
          status = "UNVALIDATED";
          ++unvalidated;
        }
      } else {
        status = "MAYBE";
        ++maybe;
      }
    } catch (const std::exception& e) {
      status = std::string("ERROR ") + e.what();
      ++errors;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    out << f << ": " << status << " (" << ms.count() << " ms)\n";
  }
  out << "total: " << files.size() << " NO: " << no << " MAYBE: " << maybe << " ERROR: " << errors
      << " UNVALIDATED: " << unvalidated << "\n";
  return unvalidated ? kExitInternal : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-termination prover for integer transition systems", "itsnt"};
  app.require_subcommand(1);
  Settings s;
  std::string file;
  std::vector<std::string> files;
  CLI::App* prove = app.add_subcommand("prove", "Prove non-termination of one program");
  add_common(*prove, s);
  prove->add_option("file", file, "Input program")->required();
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run the prover on many programs");
  add_common(*bench_cmd, s);
  bench_cmd->add_option("files", files, "Input programs")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }
  if (prove->parsed()) return prove_file(file, s, out, err);
  return bench(files, s, out);
}

}  // namespace itsnt
