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
// Candidate predicate enumeration.
//
// Atomic predicates are produced in rounds of increasing weight. The weight
// of a constant expression counts one per leaf plus one per abs/log2 call
// (width() counts two); operators are free. A comparison weighs the sum of
// its sides, a predicate function its argument plus one.
//
// Expressions are canonicalized before emission so that each round is free
// of algebraic duplicates: double negations collapse, commutative operands
// are flattened and sorted, and identity elements fold away. Duplicate
// detection keys on the printed form.

#ifndef PINFER_PREDENUM_HPP
#define PINFER_PREDENUM_HPP

#include <set>
#include <string>
#include <vector>

#include "pinfer/dsl.hpp"
#include "pinfer/term.hpp"

namespace pinfer {

// Canonical form used for duplicate pruning; idempotent.
CexprPtr canonCexpr(const CexprPtr &e);

int weightOf(const Cexpr &e);
int weightOf(const Pred &p);  // atoms only: Cmp and PFun

// Lazily generated, deterministic sequence of typed atomic predicates for one
// optimization. Instances cache their output, so one stream can be shared by
// every learner call on the same rewrite.
class PredicateStream {
public:
  PredicateStream(const Optimization &opt, int maxWeight = 8);

  // Returns the i-th candidate, or nullptr once the stream is exhausted.
  PredPtr get(size_t i);

  size_t generatedCount() const { return preds_.size(); }

private:
  struct Entry {
    CexprPtr e;
    std::string key;
    TypeRef symRep;   // representative type of the symbolic constants, or -1
    TypeRef ctxHint;  // symRep, else the type behind a width() leaf, or -1
    bool hasSym;      // mentions a symbolic constant or width()
  };

  void growTo(size_t i);
  void buildCexprTier(int w);
  void emitPredTier(int w);
  void addCexpr(int w, CexprPtr e);
  bool addPred(PredPtr p);

  const Optimization &opt_;
  int maxWeight_;
  int builtWeight_ = 0;
  std::vector<std::vector<Entry>> tiers_;  // tiers_[w] = cexprs of weight w
  size_t cexprCount_ = 0;
  std::set<std::string> cexprSeen_;
  std::set<std::string> predSeen_;
  std::vector<PredPtr> preds_;
  bool exhausted_ = false;
};

}  // namespace pinfer

#endif  // PINFER_PREDENUM_HPP
