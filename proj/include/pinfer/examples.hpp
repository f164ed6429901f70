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
// Example generation and bookkeeping.
//
// An example binds every symbolic constant of a rewrite, together with a
// width assignment; the runtime inputs stay quantified. An example is
// positive when the rewrite is correct for all runtime values and the source
// is reachable (defined for at least one runtime binding), negative when some
// runtime binding breaks it, and trivial when it is vacuously correct.

#ifndef PINFER_EXAMPLES_HPP
#define PINFER_EXAMPLES_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pinfer/bitvec.hpp"
#include "pinfer/dsl.hpp"
#include "pinfer/semantics.hpp"

namespace pinfer {

struct ConstValuation {
  TypeAssignment ta;
  std::vector<BitVec> consts;  // aligned with Optimization::symConsts
};

enum class ExClass { Positive, Negative, Trivial };

std::string valuationKey(const ConstValuation &v);

// Builds an evaluation environment with the constants bound; runtime values
// are filled in separately.
Env makeEnv(const Optimization &opt, const ConstValuation &v);

class ExampleSet {
public:
  bool addPositive(const ConstValuation &v);
  bool addNegative(const ConstValuation &v);
  bool contains(const ConstValuation &v) const { return seen_.count(valuationKey(v)) != 0; }

  const std::vector<ConstValuation> &positives() const { return pos_; }
  const std::vector<ConstValuation> &negatives() const { return neg_; }
  size_t total() const { return pos_.size() + neg_.size(); }

private:
  std::vector<ConstValuation> pos_, neg_;
  std::set<std::string> seen_;
};

// Per-class budget for one generation round; grows with the constant count.
int exampleBudget(int budget0, int budget1, size_t constCount);

// All feasible width assignments over the given universe, capped: when there
// are more than `cap`, the first and last are always kept and the rest are
// sampled with the seed.
std::vector<TypeAssignment> sampleTypeAssignments(const TypeModel &types,
                                                  const std::vector<int> &widths,
                                                  size_t cap, uint64_t seed);

// Cartesian product of {0, 1, -1, smin} over the constants, deduplicated.
std::vector<ConstValuation> genBoundary(const Optimization &opt,
                                        const std::vector<TypeAssignment> &tas);

// Uniform random constants; produces at most `count` fresh valuations not
// already in `have`.
std::vector<ConstValuation> genRandom(const Optimization &opt,
                                      const std::vector<TypeAssignment> &tas,
                                      size_t count, std::mt19937_64 &rng,
                                      const ExampleSet &have);

// True when every Assume: predicate accepts the valuation.
bool assumptionsHold(const Optimization &opt, const ConstValuation &v);

}  // namespace pinfer

#endif  // PINFER_EXAMPLES_HPP
