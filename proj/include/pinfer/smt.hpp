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
// Solver-backed query answering over SMT-LIB v2 bitvectors.
//
// Each query runs one solver process: the script goes to its stdin, the
// answer comes back on stdout. The totalized concrete semantics was chosen
// to coincide with SMT-LIB's, so both backends agree bit for bit.

#ifndef PINFER_SMT_HPP
#define PINFER_SMT_HPP

#include <optional>
#include <string>

#include "pinfer/verify.hpp"

namespace pinfer {

struct SolverReply {
  enum class Status { Sat, Unsat, Unknown, Timeout, Error };
  Status status = Status::Error;
  std::string output;  // full solver stdout, for model extraction
};

// Runs `cmd` through the shell, feeds it `script`, and waits up to timeoutMs.
SolverReply runSolver(const std::string &cmd, const std::string &script,
                      int timeoutMs);

// True when `cmd` answers sat to a trivial query.
bool solverAvailable(const std::string &cmd, int timeoutMs = 5000);

class SmtBackend : public Backend {
public:
  SmtBackend(const Optimization &opt, std::vector<TypeAssignment> tas,
             std::string solverCmd, int timeoutMs = 30000);

  ExClass classify(const ConstValuation &v) override;
  std::optional<ConstValuation> refinementCex(const PredPtr &pre) override;
  std::optional<ConstValuation> missedPositive(const PredPtr &pre) override;
  std::optional<ConstValuation> acceptedNonPositive(const PredPtr &pre) override;
  std::optional<ConstValuation> weakerWitness(const PredPtr &a,
                                              const PredPtr &b) override;
  std::vector<ConstValuation> findExamples(ExClass want, size_t k,
                                           const ExampleSet &exclude) override;

  // Set when any query so far timed out or came back unknown.
  bool sawUnknown() const { return sawUnknown_; }
  bool sawTimeout() const { return sawTimeout_; }

private:
  const Optimization &opt_;
  std::vector<TypeAssignment> tas_;
  std::string cmd_;
  int timeoutMs_;
  bool sawUnknown_ = false;
  bool sawTimeout_ = false;

  std::optional<ConstValuation> querySat(const TypeAssignment &ta,
                                         const std::string &body,
                                         const std::vector<std::string> &extra);
};

}  // namespace pinfer

#endif  // PINFER_SMT_HPP
