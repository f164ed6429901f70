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

#include <algorithm>
#include <set>

#include "pinfer/examples.hpp"

using namespace pinfer;

namespace {

Optimization twoConstOpt() {
  return parseOptimization(
      "%a = and %X, C1\n%r = or %a, C2\n=>\n%r = xor %a, C2\n", "t");
}

}  // namespace

TEST_CASE("example budget grows with the constant count") {
  CHECK(exampleBudget(32, 32, 0) == 32);
  CHECK(exampleBudget(32, 32, 1) == 64);
  CHECK(exampleBudget(32, 32, 2) == 96);
  CHECK(exampleBudget(32, 32, 3) == 96);
  CHECK(exampleBudget(32, 32, 4) == 128);
  CHECK(exampleBudget(0, 0, 5) == 1);  // never empty
}

TEST_CASE("valuation keys separate widths and values") {
  Optimization opt = twoConstOpt();
  auto tas = enumerateAssignments(opt.types, {4, 8});
  REQUIRE(tas.size() == 2);
  ConstValuation a{tas[0], {BitVec(4, 1), BitVec(4, 2)}};
  ConstValuation b{tas[0], {BitVec(4, 2), BitVec(4, 1)}};
  ConstValuation c{tas[1], {BitVec(8, 1), BitVec(8, 2)}};
  CHECK(valuationKey(a) != valuationKey(b));
  CHECK(valuationKey(a) != valuationKey(c));
  CHECK(valuationKey(a) == valuationKey(ConstValuation{tas[0], {BitVec(4, 1), BitVec(4, 2)}}));
}

TEST_CASE("example set deduplicates across classes") {
  Optimization opt = twoConstOpt();
  auto tas = enumerateAssignments(opt.types, {4});
  ConstValuation v{tas[0], {BitVec(4, 1), BitVec(4, 2)}};
  ExampleSet ex;
  CHECK(ex.addPositive(v));
  CHECK(!ex.addPositive(v));
  CHECK(!ex.addNegative(v));
  CHECK(ex.contains(v));
  CHECK(ex.positives().size() == 1);
  CHECK(ex.negatives().empty());
  CHECK(ex.total() == 1);
}

TEST_CASE("boundary generation covers the corner values") {
  Optimization opt = twoConstOpt();
  auto tas = enumerateAssignments(opt.types, {4});
  auto vs = genBoundary(opt, tas);
  CHECK(vs.size() == 16);  // {0, 1, -1, smin} per constant
  std::set<std::pair<uint64_t, uint64_t>> pairs;
  for (const auto &v : vs) pairs.insert({v.consts[0].bits, v.consts[1].bits});
  for (uint64_t a : {0u, 1u, 15u, 8u})
    for (uint64_t b : {0u, 1u, 15u, 8u}) CHECK(pairs.count({a, b}));
}

TEST_CASE("random generation is seeded and fresh") {
  Optimization opt = twoConstOpt();
  auto tas = enumerateAssignments(opt.types, {4, 8});
  ExampleSet have;
  std::mt19937_64 r1(42), r2(42), r3(43);
  auto a = genRandom(opt, tas, 20, r1, have);
  auto b = genRandom(opt, tas, 20, r2, have);
  auto c = genRandom(opt, tas, 20, r3, have);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    CHECK(valuationKey(a[i]) == valuationKey(b[i]));
  bool differs = c.size() != a.size();
  for (size_t i = 0; !differs && i < a.size(); ++i)
    differs = valuationKey(a[i]) != valuationKey(c[i]);
  CHECK(differs);
  CHECK(a.size() <= 20);

  // No duplicates, and nothing already in `have`.
  std::set<std::string> keys;
  for (const auto &v : a) CHECK(keys.insert(valuationKey(v)).second);
  for (const auto &v : a) have.addPositive(v);
  std::mt19937_64 r4(42);
  for (const auto &v : genRandom(opt, tas, 20, r4, have))
    CHECK(!have.contains(v));
}

TEST_CASE("width values respect the assignment") {
  Optimization opt = twoConstOpt();
  auto tas = enumerateAssignments(opt.types, {8});
  std::mt19937_64 rng(1);
  ExampleSet have;
  for (const auto &v : genRandom(opt, tas, 30, rng, have)) {
    CHECK(v.consts.size() == 2);
    for (const auto &c : v.consts) CHECK(c.width == 8);
  }
}

TEST_CASE("assignment sampling keeps the extremes") {
  Optimization opt = parseOptimization(
      "%e = zext %X\n%r = add %e, C1\n=>\n%r = add %e, C1\n", "t");
  auto all = enumerateAssignments(opt.types, {4, 5, 6, 7, 8, 9, 10});
  REQUIRE(all.size() == 21);
  auto some = sampleTypeAssignments(opt.types, {4, 5, 6, 7, 8, 9, 10}, 5, 9);
  REQUIRE(some.size() == 5);
  CHECK(some.front() == all.front());
  CHECK(some.back() == all.back());
  // Sampling is deterministic in the seed.
  auto again = sampleTypeAssignments(opt.types, {4, 5, 6, 7, 8, 9, 10}, 5, 9);
  CHECK(some.size() == again.size());
  for (size_t i = 0; i < some.size(); ++i) CHECK(some[i] == again[i]);
  // Below the cap, everything is kept.
  auto few = sampleTypeAssignments(opt.types, {4, 8}, 5, 9);
  CHECK(few.size() == 1);
}

TEST_CASE("assumptions filter valuations") {
  Optimization opt = parseOptimization(R"(
Name: t
Assume: C1 != 0
%r = udiv %X, C1
=>
%r = udiv %X, C1
)", "t");
  auto tas = enumerateAssignments(opt.types, {4});
  CHECK(!assumptionsHold(opt, ConstValuation{tas[0], {BitVec(4, 0)}}));
  CHECK(assumptionsHold(opt, ConstValuation{tas[0], {BitVec(4, 3)}}));
}

TEST_CASE("environment carries constants") {
  Optimization opt = twoConstOpt();
  auto tas = enumerateAssignments(opt.types, {4});
  ConstValuation v{tas[0], {BitVec(4, 5), BitVec(4, 9)}};
  Env env = makeEnv(opt, v);
  CHECK(env.consts.at("C1") == BitVec(4, 5));
  CHECK(env.consts.at("C2") == BitVec(4, 9));
  CHECK(env.runtime.empty());
}
