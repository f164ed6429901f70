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
// Top-level inference loops.
//
// `infer` alternates example generation, predicate learning, and boolean
// synthesis, then validates the result against the backend and feeds
// counterexamples back as new examples. The final formula accepts exactly
// the non-trivial positive bindings. `enumerativeSearch` reaches the same
// goal by trying guarded CNF candidates in size order. `generalize` lifts a
// concrete rewrite into one with symbolic constants.

#ifndef PINFER_DRIVER_HPP
#define PINFER_DRIVER_HPP

#include "pinfer/learner.hpp"
#include "pinfer/verify.hpp"

namespace pinfer {

enum class InferStatus { Weakest, PartialOnly, Stalled, Unknown, Timeout };
const char *statusName(InferStatus s);

struct InferConfig {
  std::vector<int> widths = {4, 8};
  uint64_t seed = 1;
  std::string backend = "exhaustive";  // or "smt"
  std::string smtCmd = "z3 -in";
  int smtTimeoutMs = 30000;
  int maxBits = 24;          // exhaustive state-space budget
  int budget0 = 32;          // examples per class and round: b0 + b1*ceil(log2(n+1))
  int budget1 = 32;
  size_t assignmentCap = 8;  // width assignments kept per rewrite
  int maxIters = 32;
  int timeoutMs = 0;         // overall wall-clock limit; 0 disables
  size_t searchBudget = 200000;
  LearnerConfig learner;
  std::vector<std::string> hints;    // extra initial predicates, as text
  std::vector<std::string> assumes;  // extra Assume: predicates, as text
};

struct PartialResult {
  PredPtr formula;
  double fraction = 0;  // of positive examples accepted
};

struct InferStats {
  int iterations = 0;
  size_t positives = 0;
  size_t negatives = 0;
  size_t predicates = 0;
  size_t candidatesTried = 0;  // search mode
};

struct InferReport {
  InferStatus status = InferStatus::Unknown;
  PredPtr weakest;  // set when status == Weakest
  std::vector<PartialResult> partials;
  InferStats stats;
};

// Converts a learned CNF over atomic predicates into a predicate term. Each
// literal is guarded by the atom's safety condition, so the result never
// evaluates unsafely.
PredPtr cnfToTerm(const CnfFormula &f, const std::vector<PredPtr> &preds,
                  const Optimization &opt);

// The condition under which the expression evaluates safely, as a term.
PredPtr safetyTerm(const CexprPtr &e, const Optimization &opt);

// Counterexample-guided inference; mutates opt only by type-checking the
// configured hint and assume texts against it.
InferReport infer(Optimization &opt, const InferConfig &cfg);

// Size-ordered enumeration of guarded CNF candidates over the predicate
// stream, validated the same way.
InferReport enumerativeSearch(Optimization &opt, const InferConfig &cfg);

struct GeneralizeResult {
  Optimization opt;
  // Original literal value of each introduced constant, in C1, C2, ... order.
  std::vector<std::pair<std::string, int64_t>> binding;
};

// Replaces the source's literal operands with symbolic constants, matching
// target literals of equal value to the same constant.
GeneralizeResult generalize(const Optimization &concrete);

std::unique_ptr<Backend> makeBackend(const Optimization &opt,
                                     const std::vector<TypeAssignment> &tas,
                                     const InferConfig &cfg);

}  // namespace pinfer

#endif  // PINFER_DRIVER_HPP
