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

#include "pinfer/examples.hpp"

#include <algorithm>
#include <cmath>

namespace pinfer {

std::string valuationKey(const ConstValuation &v) {
  std::string key;
  for (int w : v.ta.widths) key += std::to_string(w) + ",";
  key += "|";
  for (const BitVec &b : v.consts) key += std::to_string(b.bits) + ",";
  return key;
}

Env makeEnv(const Optimization &opt, const ConstValuation &v) {
  Env env;
  env.opt = &opt;
  env.ta = &v.ta;
  for (size_t i = 0; i < opt.symConsts.size(); ++i)
    env.consts[opt.node(opt.symConsts[i]).name] = v.consts[i];
  return env;
}

bool ExampleSet::addPositive(const ConstValuation &v) {
  if (!seen_.insert(valuationKey(v)).second) return false;
  pos_.push_back(v);
  return true;
}

bool ExampleSet::addNegative(const ConstValuation &v) {
  if (!seen_.insert(valuationKey(v)).second) return false;
  neg_.push_back(v);
  return true;
}

int exampleBudget(int budget0, int budget1, size_t constCount) {
  int bits = static_cast<int>(std::ceil(std::log2(static_cast<double>(constCount) + 1.0)));
  return std::max(1, budget0 + budget1 * bits);
}

std::vector<TypeAssignment> sampleTypeAssignments(const TypeModel &types,
                                                  const std::vector<int> &widths,
                                                  size_t cap, uint64_t seed) {
  std::vector<TypeAssignment> all = enumerateAssignments(types, widths);
  if (all.size() <= cap || cap < 2) return all;
  std::vector<TypeAssignment> out;
  out.push_back(all.front());
  std::vector<TypeAssignment> middle(all.begin() + 1, all.end() - 1);
  std::mt19937_64 rng(seed);
  std::vector<TypeAssignment> picked;
  std::sample(middle.begin(), middle.end(), std::back_inserter(picked), cap - 2, rng);
  for (auto &ta : picked) out.push_back(std::move(ta));
  out.push_back(all.back());
  return out;
}

std::vector<ConstValuation> genBoundary(const Optimization &opt,
                                        const std::vector<TypeAssignment> &tas) {
  std::vector<ConstValuation> out;
  std::set<std::string> seen;
  for (const TypeAssignment &ta : tas) {
    size_t n = opt.symConsts.size();
    std::vector<int> idx(n, 0);
    for (;;) {
      ConstValuation v;
      v.ta = ta;
      for (size_t i = 0; i < n; ++i) {
        int w = ta.width(opt.node(opt.symConsts[i]).type);
        switch (idx[i]) {
        case 0: v.consts.push_back(BitVec(w, 0)); break;
        case 1: v.consts.push_back(BitVec(w, 1)); break;
        case 2: v.consts.push_back(BitVec::allOnes(w)); break;
        default: v.consts.push_back(BitVec::signedMin(w)); break;
        }
      }
      if (seen.insert(valuationKey(v)).second) out.push_back(std::move(v));
      size_t i = n;
      bool done = n == 0;
      while (i > 0) {
        --i;
        if (++idx[i] < 4) break;
        idx[i] = 0;
        if (i == 0) done = true;
      }
      if (done) break;
    }
  }
  return out;
}

std::vector<ConstValuation> genRandom(const Optimization &opt,
                                      const std::vector<TypeAssignment> &tas,
                                      size_t count, std::mt19937_64 &rng,
                                      const ExampleSet &have) {
  std::vector<ConstValuation> out;
  if (tas.empty()) return out;
  std::set<std::string> seen;
  size_t attempts = count * 8 + 64;
  for (size_t t = 0; t < attempts && out.size() < count; ++t) {
    const TypeAssignment &ta = tas[rng() % tas.size()];
    ConstValuation v;
    v.ta = ta;
    for (int id : opt.symConsts) {
      int w = ta.width(opt.node(id).type);
      v.consts.push_back(BitVec(w, rng()));
    }
    std::string key = valuationKey(v);
    if (have.contains(v) || !seen.insert(key).second) continue;
    out.push_back(std::move(v));
  }
  return out;
}

bool assumptionsHold(const Optimization &opt, const ConstValuation &v) {
  Env env = makeEnv(opt, v);
  for (const PredPtr &a : opt.assumes)
    if (evalPred(env, *a) != TriBool::Accept) return false;
  return true;
}

}  // namespace pinfer
