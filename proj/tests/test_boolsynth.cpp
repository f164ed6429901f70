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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pinfer/boolsynth.hpp"

using namespace pinfer;

namespace {

std::string goldenMatrixPath() { return std::string(PINFER_TEST_DATA_DIR) + "/golden.matrix"; }

std::string randomVec(std::mt19937_64 &rng, int n, bool allowStar) {
  static const char kAll[] = {'T', 'B', '*'};
  std::string s;
  for (int i = 0; i < n; ++i) s += kAll[rng() % (allowStar ? 3 : 2)];
  return s;
}

}  // namespace

TEST_CASE("literal and clause acceptance") {
  CHECK(litAccepts({0, false}, "T"));
  CHECK(!litAccepts({0, false}, "B"));
  CHECK(!litAccepts({0, true}, "T"));
  CHECK(litAccepts({0, true}, "B"));
  // An unsafe entry rejects under both polarities.
  CHECK(!litAccepts({0, false}, "*"));
  CHECK(!litAccepts({0, true}, "*"));

  BoolClause c{{{0, false}, {1, true}}};
  CHECK(clauseAccepts(c, "TB"));
  CHECK(clauseAccepts(c, "TT"));
  CHECK(clauseAccepts(c, "BB"));
  CHECK(!clauseAccepts(c, "BT"));
  CHECK(!clauseAccepts(c, "**"));
  CHECK(clauseAccepts(c, "*B"));
}

TEST_CASE("formula acceptance and printing") {
  CHECK(accepts(cnfTrue(), "BBB"));
  CHECK(!accepts(cnfFalse(), "TTT"));
  CHECK(!accepts(cnfBottom(), "TTT"));
  CnfFormula f;
  f.clauses = {BoolClause{{{0, false}, {1, false}}},
               BoolClause{{{0, true}, {1, true}, {2, false}}}};
  CHECK(toString(f) == "(p1 | p2) & (!p1 | !p2 | p3)");
  CHECK(accepts(f, "BTB"));
  CHECK(!accepts(f, "TTB"));
  CHECK(!accepts(f, "BBT"));
}

TEST_CASE("matrix file parsing") {
  VecMatrix m = parseMatrixFile(goldenMatrixPath());
  CHECK(m.npreds == 3);
  REQUIRE(m.pos.size() == 5);
  REQUIRE(m.neg.size() == 3);
  CHECK(m.pos[0].vec == "BTB");
  CHECK(m.pos[0].weight == 8);
  CHECK(m.pos[2].vec == "TBB");
  CHECK(m.pos[2].weight == 10);
  CHECK(m.neg[2] == "TTB");
}

TEST_CASE("greedy partial on the bundled matrix") {
  VecMatrix m = parseMatrixFile(goldenMatrixPath());
  CnfFormula f = learnPartial(m.pos, m.neg, m.npreds, 1);
  // First selection keeps the most positive weight (p2, 19); the follow-up
  // rejects the remaining negative while keeping 16.
  CHECK(toString(f) == "(p2) & (!p1)");
  CHECK(acceptedWeight(f, m.pos) == 16);
  for (const auto &n : m.neg) CHECK(!accepts(f, n));
}

TEST_CASE("restarts never do worse than plain greedy") {
  VecMatrix m = parseMatrixFile(goldenMatrixPath());
  CnfFormula plain = learnPartial(m.pos, m.neg, m.npreds, 1);
  CnfFormula best = learnPartialRestarts(m.pos, m.neg, m.npreds, 1, 3);
  CHECK(acceptedWeight(best, m.pos) >= acceptedWeight(plain, m.pos));
  for (const auto &n : m.neg) CHECK(!accepts(best, n));
}

TEST_CASE("exact learning on the bundled matrix") {
  VecMatrix m = parseMatrixFile(goldenMatrixPath());
  std::vector<std::string> pos;
  for (const auto &p : m.pos) pos.push_back(p.vec);
  CnfFormula f = learnComplete(pos, m.neg, m.npreds);
  CHECK(toString(f) == "(p1 | p2) & (!p1 | !p2 | p3)");
  for (const auto &p : pos) CHECK(accepts(f, p));
  for (const auto &n : m.neg) CHECK(!accepts(f, n));
}

TEST_CASE("exact learning edge cases") {
  CHECK(toString(learnComplete({}, {"TB"}, 2)) == "(false)");
  CHECK(toString(learnComplete({"TB"}, {}, 2)) == "true");
  // The same vector on both sides cannot be separated.
  CHECK(learnComplete({"TB"}, {"TB"}, 2).bottom);
}

TEST_CASE("partial learning edge cases") {
  CHECK(!learnPartialRestarts({{"TB", 1}}, {}, 2, 1, 3).bottom);
  CHECK(toString(learnPartialRestarts({{"TB", 1}}, {}, 2, 1, 3)) == "true");
  // When the only separating clauses lose every positive, the learner still
  // returns a sound (if useless) precondition rather than bottom.
  CnfFormula f = learnPartial({{"TT", 1}}, {"TT"}, 2, 1);
  CHECK(!f.bottom);
  CHECK(!accepts(f, "TT"));
  CHECK(acceptedWeight(f, {{"TT", 1}}) == 0);
}

TEST_CASE("cover output is a subset rejecting all negatives") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 500; ++round) {
    int npreds = 1 + static_cast<int>(rng() % 6);
    std::vector<BoolClause> pool;
    int poolSize = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < poolSize; ++i) {
      BoolClause c;
      for (int p = 0; p < npreds; ++p)
        if (rng() % 3 == 0) c.lits.push_back({p, rng() % 2 == 0});
      if (!c.lits.empty()) pool.push_back(c);
    }
    std::vector<std::string> negs;
    int nneg = static_cast<int>(rng() % 10);
    for (int i = 0; i < nneg; ++i) negs.push_back(randomVec(rng, npreds, true));

    CnfFormula f = coverClauses(pool, negs);
    if (f.bottom) {
      // Failure means some negative slips through every pool clause.
      bool stuck = false;
      for (const auto &n : negs) {
        bool rejectable = false;
        for (const auto &c : pool)
          if (!clauseAccepts(c, n)) rejectable = true;
        if (!rejectable) stuck = true;
      }
      CHECK(stuck);
      continue;
    }
    for (const auto &n : negs) CHECK(!accepts(f, n));
    for (const auto &c : f.clauses)
      CHECK(std::find(pool.begin(), pool.end(), c) != pool.end());
  }
}

TEST_CASE("exact learning separates disjoint definite sets") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 500; ++round) {
    int npreds = 1 + static_cast<int>(rng() % 6);
    std::set<std::string> pos, neg;
    int npos = 1 + static_cast<int>(rng() % 10);
    int nneg = static_cast<int>(rng() % 10);
    for (int i = 0; i < npos; ++i) pos.insert(randomVec(rng, npreds, false));
    for (int i = 0; i < nneg; ++i) {
      std::string v = randomVec(rng, npreds, false);
      if (!pos.count(v)) neg.insert(v);
    }
    std::vector<std::string> posV(pos.begin(), pos.end());
    std::vector<std::string> negV(neg.begin(), neg.end());
    CnfFormula f = learnComplete(posV, negV, npreds);
    REQUIRE(!f.bottom);
    for (const auto &p : posV) CHECK(accepts(f, p));
    for (const auto &n : negV) CHECK(!accepts(f, n));
  }
}
