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
// Learning preconditions from labeled examples.
//
// Examples are abstracted to predicate vectors. While some positive cannot
// be told apart from a negative under the current predicates, a new atomic
// predicate is learned on demand from the candidate stream: it must separate
// a sample drawn from the clashing group, must never be unsafe on a positive
// example, and separation requirements relax as the search gets deeper.

#ifndef PINFER_LEARNER_HPP
#define PINFER_LEARNER_HPP

#include "pinfer/boolsynth.hpp"
#include "pinfer/examples.hpp"
#include "pinfer/predenum.hpp"

namespace pinfer {

struct LearnerConfig {
  int maxK = 1;               // clause width for the partial learner
  int restarts = 3;           // alternative first clauses to try
  size_t sampleCap = 16;      // sampled examples per predicate search
  size_t fullSepWindow = 2000;   // candidates that must separate fully
  size_t relaxWindow = 10000;    // then 0.75 of the sample, 0.6 beyond
  double rho1 = 0.75;
  double rho2 = 0.6;
  size_t candidateCap = 50000;   // give up after this many candidates
  uint64_t seed = 1;
};

struct PredicateMatrix {
  std::vector<PredPtr> preds;
  std::vector<std::string> posVecs;  // one per positive example
  std::vector<std::string> negVecs;
};

PredicateMatrix buildMatrix(const Optimization &opt, const ExampleSet &examples,
                            const std::vector<PredPtr> &preds);

// True when no literal can accept the positive vector without also accepting
// the negative one.
bool vectorsClash(const std::string &pos, const std::string &neg);

struct LearnerOutput {
  std::vector<PredPtr> preds;
  CnfFormula partial;   // greedy, may give up positives
  CnfFormula complete;  // exact, bottom when predicates ran out
  bool stalled = false;
};

// Searches the candidate stream for a predicate separating the given sample.
// Returns nullptr when the stream or the candidate budget runs out.
PredPtr learnPredicate(const Optimization &opt, PredicateStream &stream,
                       const std::vector<PredPtr> &have,
                       const std::vector<ConstValuation> &samplePos,
                       const std::vector<ConstValuation> &sampleNeg,
                       const std::vector<ConstValuation> &allPositives,
                       const LearnerConfig &cfg);

LearnerOutput preconditionsByExamples(const Optimization &opt,
                                      const ExampleSet &examples,
                                      const std::vector<PredPtr> &initial,
                                      PredicateStream &stream,
                                      const LearnerConfig &cfg);

}  // namespace pinfer

#endif  // PINFER_LEARNER_HPP
