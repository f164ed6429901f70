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
// Boolean formula learning over predicate vectors.
//
// An example is abstracted to a string over {T, B, *}: the value of each
// atomic predicate on it, where '*' marks a predicate whose evaluation is
// unsafe there. A literal never accepts a '*' entry, under either polarity,
// so any clause mentioning such a predicate rejects the example.
//
// Formulas are in CNF. The empty formula is true, a formula containing an
// empty clause is false, and a distinguished bottom value signals that
// learning failed.

#ifndef PINFER_BOOLSYNTH_HPP
#define PINFER_BOOLSYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace pinfer {

struct BoolLit {
  int pred = 0;
  bool negated = false;
  friend bool operator==(const BoolLit &, const BoolLit &) = default;
};

struct BoolClause {
  std::vector<BoolLit> lits;  // disjunction
  friend bool operator==(const BoolClause &, const BoolClause &) = default;
};

struct CnfFormula {
  bool bottom = false;        // learning failed; distinct from false
  std::vector<BoolClause> clauses;
  friend bool operator==(const CnfFormula &, const CnfFormula &) = default;
};

CnfFormula cnfTrue();
CnfFormula cnfFalse();
CnfFormula cnfBottom();

bool litAccepts(const BoolLit &l, const std::string &vec);
bool clauseAccepts(const BoolClause &c, const std::string &vec);
bool accepts(const CnfFormula &f, const std::string &vec);

std::string toString(const BoolLit &l);
std::string toString(const BoolClause &c);
std::string toString(const CnfFormula &f);

struct WeightedVec {
  std::string vec;
  int64_t weight = 1;
};

// Greedy set cover: picks clauses from the pool, in scoring order, until all
// negatives are rejected. Every clause in the pool is assumed to accept every
// positive. Returns bottom when the pool cannot reject some negative.
CnfFormula coverClauses(const std::vector<BoolClause> &pool,
                        const std::vector<std::string> &negs);

// Exact separation: smallest-k CNF whose clauses all accept every positive
// and which rejects every negative. Clause size grows from 0 while k does not
// exceed the predicate count; returns bottom beyond that. An empty positive
// set yields the false formula.
CnfFormula learnComplete(const std::vector<std::string> &pos,
                         const std::vector<std::string> &neg, int npreds);

// Weighted greedy partial separation with clauses of at most maxK literals.
// Each round adds the clause that keeps the largest accepted positive weight
// among those rejecting at least one remaining negative; positives the clause
// rejects are given up. Returns bottom when no candidate clause rejects a
// remaining negative. firstClause, when nonempty, forces the first selection.
CnfFormula learnPartial(const std::vector<WeightedVec> &pos,
                        const std::vector<std::string> &neg, int npreds,
                        int maxK = 1,
                        const BoolClause *firstClause = nullptr);

// Runs learnPartial once per top-scoring first clause (up to `restarts` of
// them) and keeps the best result: largest accepted positive weight, then
// fewest clauses, then lexicographically smallest printed form.
CnfFormula learnPartialRestarts(const std::vector<WeightedVec> &pos,
                                const std::vector<std::string> &neg,
                                int npreds, int maxK = 1, int restarts = 3);

int64_t acceptedWeight(const CnfFormula &f, const std::vector<WeightedVec> &pos);

// Text format: a "preds N" header, then one example per line as
// "<vector> <+|-> <weight>".
struct VecMatrix {
  int npreds = 0;
  std::vector<WeightedVec> pos;
  std::vector<std::string> neg;
};
VecMatrix parseMatrixFile(const std::string &path);

}  // namespace pinfer

#endif  // PINFER_BOOLSYNTH_HPP
