// Copyright 2026 The Pinfer Authors. All rights reserved.
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
//
// Command line front end.
//
// Exit codes: 0 success, 1 invalid precondition or no result, 2 usage or
// parse error, 3 solver timeout or unknown.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pinfer/driver.hpp"
#include "pinfer/smt.hpp"

using namespace pinfer;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::string file;
  InferConfig cfg;
  std::string jsonPath;
};

void addCommon(CLI::App *cmd, CommonOpts &o) {
  cmd->add_option("file", o.file, "rewrite description (.opt)")->required();
  cmd->add_option("--widths", o.cfg.widths, "candidate bit widths");
  cmd->add_option("--seed", o.cfg.seed, "random seed");
  cmd->add_option("--backend", o.cfg.backend, "exhaustive or smt")
      ->check(CLI::IsMember({"exhaustive", "smt"}));
  cmd->add_option("--smt-cmd", o.cfg.smtCmd, "solver command reading stdin");
  cmd->add_option("--smt-timeout", o.cfg.smtTimeoutMs, "per-query timeout, ms");
  cmd->add_option("--timeout", o.cfg.timeoutMs, "overall timeout, ms");
  cmd->add_option("--max-bits", o.cfg.maxBits, "exhaustive state budget");
  cmd->add_option("--budget0", o.cfg.budget0, "example budget base");
  cmd->add_option("--budget1", o.cfg.budget1, "example budget growth");
  cmd->add_option("--assignment-cap", o.cfg.assignmentCap,
                  "width assignments kept");
  cmd->add_option("--max-iters", o.cfg.maxIters, "refinement iterations");
  cmd->add_option("--search-budget", o.cfg.searchBudget,
                  "search candidates tried");
  cmd->add_option("--k", o.cfg.learner.maxK, "partial clause width");
  cmd->add_option("--restarts", o.cfg.learner.restarts,
                  "partial learner restarts");
  cmd->add_option("--assume", o.cfg.assumes, "extra Assume: predicate");
  cmd->add_option("--hint", o.cfg.hints, "extra initial predicate");
  cmd->add_option("--json", o.jsonPath, "write a JSON report here");
}

json reportJson(const InferReport &rep) {
  json j;
  j["status"] = statusName(rep.status);
  if (rep.weakest) j["weakest"] = toString(rep.weakest);
  j["partials"] = json::array();
  for (const PartialResult &p : rep.partials)
    j["partials"].push_back(
        {{"formula", toString(p.formula)}, {"fraction", p.fraction}});
  j["stats"] = {{"iterations", rep.stats.iterations},
                {"positives", rep.stats.positives},
                {"negatives", rep.stats.negatives},
                {"predicates", rep.stats.predicates},
                {"candidates_tried", rep.stats.candidatesTried}};
  return j;
}

void maybeWriteJson(const std::string &path, const json &j) {
  if (path.empty()) return;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

int exitCodeFor(InferStatus s) {
  switch (s) {
  case InferStatus::Weakest:
  case InferStatus::PartialOnly:
    return 0;
  case InferStatus::Stalled:
    return 1;
  case InferStatus::Unknown:
  case InferStatus::Timeout:
    return 3;
  }
  return 1;
}

int printReport(const InferReport &rep, const std::string &jsonPath) {
  std::cout << "status: " << statusName(rep.status) << "\n";
  if (rep.weakest) std::cout << "weakest: " << toString(rep.weakest) << "\n";
  for (const PartialResult &p : rep.partials)
    std::cout << "partial (" << static_cast<int>(p.fraction * 100)
              << "% of positives): " << toString(p.formula) << "\n";
  std::cout << "iterations: " << rep.stats.iterations
            << "  examples: " << rep.stats.positives << "+/"
            << rep.stats.negatives << "-"
            << "  predicates: " << rep.stats.predicates << "\n";
  if (rep.stats.candidatesTried)
    std::cout << "candidates tried: " << rep.stats.candidatesTried << "\n";
  maybeWriteJson(jsonPath, reportJson(rep));
  return exitCodeFor(rep.status);
}

int runVerify(const CommonOpts &o) {
  Optimization opt = parseOptimizationFile(o.file);
  InferConfig cfg = o.cfg;
  for (const std::string &t : cfg.assumes)
    opt.assumes.push_back(
        typecheckPred(opt, opt.types, parsePrecondition(t, "<assume>")));
  auto tas =
      sampleTypeAssignments(opt.types, cfg.widths, cfg.assignmentCap, cfg.seed);
  if (tas.empty()) {
    std::cerr << "error: no feasible width assignment\n";
    return 1;
  }
  auto backend = makeBackend(opt, tas, cfg);
  PredPtr pre = opt.pre ? opt.pre : pTrue();

  json j;
  j["file"] = o.file;
  j["precondition"] = toString(pre);
  int rc = 0;
  if (auto cex = backend->refinementCex(pre)) {
    std::cout << "invalid: counterexample " << valuationKey(*cex) << "\n";
    j["valid"] = false;
    j["counterexample"] = valuationKey(*cex);
    rc = 1;
  } else if (auto missed = backend->missedPositive(pre)) {
    std::cout << "valid but not weakest: misses " << valuationKey(*missed)
              << "\n";
    j["valid"] = true;
    j["weakest"] = false;
    j["missed"] = valuationKey(*missed);
  } else if (auto extra = backend->acceptedNonPositive(pre)) {
    std::cout << "valid, accepts non-positive binding " << valuationKey(*extra)
              << "\n";
    j["valid"] = true;
    j["weakest"] = false;
    j["accepted_non_positive"] = valuationKey(*extra);
  } else {
    std::cout << "valid and weakest\n";
    j["valid"] = true;
    j["weakest"] = true;
  }
  if (auto *smt = dynamic_cast<SmtBackend *>(backend.get()))
    if (smt->sawTimeout() || smt->sawUnknown()) rc = 3;
  maybeWriteJson(o.jsonPath, j);
  return rc;
}

int runCompare(const CommonOpts &o, const std::string &preA,
               const std::string &preB) {
  Optimization opt = parseOptimizationFile(o.file);
  PredPtr a = typecheckPred(opt, opt.types, parsePrecondition(preA, "<a>"));
  PredPtr b = typecheckPred(opt, opt.types, parsePrecondition(preB, "<b>"));
  auto tas = sampleTypeAssignments(opt.types, o.cfg.widths,
                                   o.cfg.assignmentCap, o.cfg.seed);
  if (tas.empty()) {
    std::cerr << "error: no feasible width assignment\n";
    return 1;
  }
  auto backend = makeBackend(opt, tas, o.cfg);
  auto aNotB = backend->weakerWitness(a, b);
  auto bNotA = backend->weakerWitness(b, a);
  const char *verdict = !aNotB && !bNotA ? "equivalent"
                        : aNotB && !bNotA ? "first is weaker"
                        : !aNotB && bNotA ? "second is weaker"
                                          : "incomparable";
  std::cout << verdict << "\n";
  if (aNotB)
    std::cout << "accepted only by first: " << valuationKey(*aNotB) << "\n";
  if (bNotA)
    std::cout << "accepted only by second: " << valuationKey(*bNotA) << "\n";
  json j;
  j["verdict"] = verdict;
  if (aNotB) j["only_first"] = valuationKey(*aNotB);
  if (bNotA) j["only_second"] = valuationKey(*bNotA);
  maybeWriteJson(o.jsonPath, j);
  int rc = 0;
  if (auto *smt = dynamic_cast<SmtBackend *>(backend.get()))
    if (smt->sawTimeout() || smt->sawUnknown()) rc = 3;
  return rc;
}

int runGeneralize(const CommonOpts &o) {
  Optimization concrete = parseOptimizationFile(o.file);
  GeneralizeResult res = generalize(concrete);
  std::cout << printOptimization(res.opt);
  for (const auto &[name, value] : res.binding)
    std::cout << "; " << name << " = " << value << "\n";
  json j;
  j["optimization"] = printOptimization(res.opt);
  j["binding"] = json::object();
  for (const auto &[name, value] : res.binding) j["binding"][name] = value;
  maybeWriteJson(o.jsonPath, j);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"precondition inference for peephole rewrites"};
  app.require_subcommand(1);

  CommonOpts vOpts, iOpts, sOpts, cOpts, gOpts;
  std::string preA, preB;

  CLI::App *verify =
      app.add_subcommand("verify", "check the file's stated precondition");
  addCommon(verify, vOpts);

  CLI::App *inferCmd =
      app.add_subcommand("infer", "learn a precondition from examples");
  addCommon(inferCmd, iOpts);

  CLI::App *search =
      app.add_subcommand("search", "enumerate preconditions in size order");
  addCommon(search, sOpts);

  CLI::App *compare =
      app.add_subcommand("compare", "order two preconditions by strength");
  addCommon(compare, cOpts);
  compare->add_option("first", preA, "first precondition")->required();
  compare->add_option("second", preB, "second precondition")->required();

  CLI::App *gen = app.add_subcommand(
      "generalize", "lift literal constants to symbolic ones");
  gen->add_option("file", gOpts.file, "rewrite description (.opt)")->required();
  gen->add_option("--json", gOpts.jsonPath, "write a JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return runVerify(vOpts);
    if (compare->parsed()) return runCompare(cOpts, preA, preB);
    if (gen->parsed()) return runGeneralize(gOpts);
    if (inferCmd->parsed()) {
      Optimization opt = parseOptimizationFile(iOpts.file);
      return printReport(infer(opt, iOpts.cfg), iOpts.jsonPath);
    }
    if (search->parsed()) {
      Optimization opt = parseOptimizationFile(sOpts.file);
      return printReport(enumerativeSearch(opt, sOpts.cfg), sOpts.jsonPath);
    }
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
