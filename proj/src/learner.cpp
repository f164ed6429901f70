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

#include "pinfer/learner.hpp"

#include <algorithm>
#include <map>

#include "pinfer/verify.hpp"

namespace pinfer {

PredicateMatrix buildMatrix(const Optimization &opt, const ExampleSet &examples,
                            const std::vector<PredPtr> &preds) {
  PredicateMatrix m;
  m.preds = preds;
  auto vecOf = [&](const ConstValuation &v) {
    std::string s;
    s.reserve(preds.size());
    for (const PredPtr &p : preds) s += tbChar(evalOn(opt, p, v));
    return s;
  };
  for (const auto &v : examples.positives()) m.posVecs.push_back(vecOf(v));
  for (const auto &v : examples.negatives()) m.negVecs.push_back(vecOf(v));
  return m;
}

bool vectorsClash(const std::string &pos, const std::string &neg) {
  for (size_t i = 0; i < pos.size(); ++i)
    if (pos[i] != '*' && pos[i] != neg[i]) return false;
  return true;
}

PredPtr learnPredicate(const Optimization &opt, PredicateStream &stream,
                       const std::vector<PredPtr> &have,
                       const std::vector<ConstValuation> &samplePos,
                       const std::vector<ConstValuation> &sampleNeg,
                       const std::vector<ConstValuation> &allPositives,
                       const LearnerConfig &cfg) {
  std::set<std::string> haveKeys;
  for (const PredPtr &p : have) haveKeys.insert(toString(p));

  double total = static_cast<double>(samplePos.size() + sampleNeg.size());
  if (total == 0) return nullptr;

  for (size_t i = 0; i < cfg.candidateCap; ++i) {
    PredPtr p = stream.get(i);
    if (!p) return nullptr;
    if (haveKeys.count(toString(p))) continue;

    bool unsafeOnPositive = false;
    for (const auto &v : allPositives)
      if (evalOn(opt, p, v) == TriBool::Unsafe) { unsafeOnPositive = true; break; }
    if (unsafeOnPositive) continue;

    size_t posT = 0, posB = 0, negT = 0, negB = 0, star = 0;
    for (const auto &v : samplePos) {
      TriBool r = evalOn(opt, p, v);
      if (r == TriBool::Accept) ++posT;
      else if (r == TriBool::Reject) ++posB;
    }
    for (const auto &v : sampleNeg) {
      TriBool r = evalOn(opt, p, v);
      if (r == TriBool::Accept) ++negT;
      else if (r == TriBool::Reject) ++negB;
      else ++star;
    }
    // Constant over the whole sample tells the classes nothing apart.
    size_t allT = posT + negT, allB = posB + negB;
    size_t n = samplePos.size() + sampleNeg.size();
    if (allT == n || allB == n || (allT == 0 && allB == 0)) continue;

    double threshold = i < cfg.fullSepWindow ? 1.0
                       : i < cfg.relaxWindow ? cfg.rho1
                                             : cfg.rho2;
    double scorePos =
        (static_cast<double>(posT) + static_cast<double>(sampleNeg.size() - negT)) / total;
    double scoreNeg =
        (static_cast<double>(posB) + static_cast<double>(sampleNeg.size() - negB)) / total;
    if (std::max(scorePos, scoreNeg) >= threshold - 1e-9) return p;
  }
  return nullptr;
}

namespace {

int charRank(char c) { return c == 'T' ? 0 : c == 'B' ? 1 : 2; }

bool vecLess(const std::string &a, const std::string &b) {
  for (size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (a[i] != b[i]) return charRank(a[i]) < charRank(b[i]);
  return a.size() < b.size();
}

template <typename T>
std::vector<T> sampleUpTo(const std::vector<T> &in, size_t cap,
                          std::mt19937_64 &rng) {
  if (in.size() <= cap) return in;
  std::vector<T> out;
  std::sample(in.begin(), in.end(), std::back_inserter(out), cap, rng);
  return out;
}

}  // namespace

LearnerOutput preconditionsByExamples(const Optimization &opt,
                                      const ExampleSet &examples,
                                      const std::vector<PredPtr> &initial,
                                      PredicateStream &stream,
                                      const LearnerConfig &cfg) {
  LearnerOutput out;
  out.preds = initial;
  std::mt19937_64 rng(cfg.seed);
  const size_t maxPreds = initial.size() + 40;

  for (;;) {
    PredicateMatrix m = buildMatrix(opt, examples, out.preds);

    // Group positives by vector; find groups some negative clashes with.
    std::map<std::string, std::vector<size_t>> posGroups;
    for (size_t i = 0; i < m.posVecs.size(); ++i)
      posGroups[m.posVecs[i]].push_back(i);

    struct Clash {
      std::string vec;
      std::vector<size_t> posIdx;
      std::vector<size_t> negIdx;
    };
    std::vector<Clash> clashes;
    for (auto &[vec, idx] : posGroups) {
      Clash c{vec, idx, {}};
      for (size_t j = 0; j < m.negVecs.size(); ++j)
        if (vectorsClash(vec, m.negVecs[j])) c.negIdx.push_back(j);
      if (!c.negIdx.empty()) clashes.push_back(std::move(c));
    }
    if (clashes.empty()) break;
    if (out.preds.size() >= maxPreds) {
      out.stalled = true;
      break;
    }
    std::sort(clashes.begin(), clashes.end(), [](const Clash &a, const Clash &b) {
      if (a.posIdx.size() != b.posIdx.size())
        return a.posIdx.size() > b.posIdx.size();
      return vecLess(a.vec, b.vec);
    });

    PredPtr learned;
    for (const Clash &c : clashes) {
      std::vector<ConstValuation> pos, neg;
      for (size_t i : c.posIdx) pos.push_back(examples.positives()[i]);
      for (size_t j : c.negIdx) neg.push_back(examples.negatives()[j]);
      size_t half = cfg.sampleCap / 2;
      pos = sampleUpTo(pos, half, rng);
      neg = sampleUpTo(neg, half, rng);
      learned = learnPredicate(opt, stream, out.preds, pos, neg,
                               examples.positives(), cfg);
      if (learned) break;
    }
    if (!learned) {
      out.stalled = true;
      break;
    }
    out.preds.push_back(learned);
  }

  PredicateMatrix m = buildMatrix(opt, examples, out.preds);
  std::map<std::string, int64_t> posCounts;
  for (const auto &v : m.posVecs) ++posCounts[v];
  std::vector<WeightedVec> posW;
  for (auto &[vec, count] : posCounts) posW.push_back({vec, count});
  std::vector<std::string> negD = m.negVecs;
  std::sort(negD.begin(), negD.end());
  negD.erase(std::unique(negD.begin(), negD.end()), negD.end());
  std::vector<std::string> posD;
  for (auto &[vec, count] : posCounts) posD.push_back(vec);

  int np = static_cast<int>(out.preds.size());
  out.partial = learnPartialRestarts(posW, negD, np, cfg.maxK, cfg.restarts);
  out.complete = out.stalled ? cnfBottom() : learnComplete(posD, negD, np);
  return out;
}

}  // namespace pinfer
