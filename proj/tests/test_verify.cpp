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

#include "pinfer/verify.hpp"

using namespace pinfer;

namespace {

struct Fix {
  Optimization opt;
  std::vector<TypeAssignment> tas;
  Fix(const std::string &path, std::vector<int> widths) {
    opt = parseOptimizationFile(std::string(PINFER_SUITE_DIR) + "/" + path);
    tas = enumerateAssignments(opt.types, widths);
  }
  ConstValuation val(uint64_t c) const {
    int w = tas[0].width(opt.types.find(opt.node(opt.symConsts[0]).type));
    return {tas[0], {BitVec(w, c)}};
  }
  PredPtr pre(const std::string &s) {
    Optimization &o = opt;
    return typecheckPred(o, o.types, parsePrecondition(s));
  }
};

// Width-4 classification of udiv_pow2 by direct arithmetic: source is
// X udiv C1 (undefined at C1 = 0), target shifts by log2(C1), whose safety
// needs C1 != 0.
ExClass udivPow2Oracle(uint64_t c1) {
  if (c1 == 0) return ExClass::Negative;  // unsafe target expression
  uint64_t l = 0;
  while ((uint64_t(1) << (l + 1)) <= c1) ++l;
  for (uint64_t x = 0; x < 16; ++x)
    if (x / c1 != (x >> l)) return ExClass::Negative;
  return ExClass::Positive;
}

}  // namespace

TEST_CASE("classification matches direct arithmetic") {
  Fix f("udiv_pow2.opt", {4});
  ExhaustiveBackend backend(f.opt, f.tas);
  for (uint64_t c = 0; c < 16; ++c)
    CHECK(backend.classify(f.val(c)) == udivPow2Oracle(c));
}

TEST_CASE("trivial bindings are neither positive nor negative") {
  // With C1 = 0 the source divides by zero for every X while the target
  // stays safe and defined, so the binding is vacuously correct.
  Optimization opt = parseOptimization(
      "%r = udiv %X, C1\n=>\n%r = and %X, C1\n", "t");
  auto tas = enumerateAssignments(opt.types, {4});
  ExhaustiveBackend backend(opt, tas);
  CHECK(backend.classify({tas[0], {BitVec(4, 0)}}) == ExClass::Trivial);
  CHECK(backend.classify({tas[0], {BitVec(4, 7)}}) == ExClass::Negative);
}

TEST_CASE("refinement counterexamples are the smallest") {
  Fix f("udiv_pow2.opt", {4, 8});
  ExhaustiveBackend backend(f.opt, f.tas);

  // The stated precondition is valid and weakest.
  PredPtr good = f.pre("isPowerOf2(C1)");
  CHECK(!backend.refinementCex(good).has_value());
  CHECK(!backend.missedPositive(good).has_value());
  CHECK(!backend.acceptedNonPositive(good).has_value());

  // Accepting a non-power rewrites incorrectly; the first bad C1 is 3.
  auto cex = backend.refinementCex(f.pre("C1 != 0"));
  REQUIRE(cex.has_value());
  CHECK(cex->consts[0] == BitVec(4, 3));

  // An unsafe precondition is rejected outright, at the first unsafe binding.
  auto unsafe = backend.refinementCex(f.pre("log2(C1) == 1"));
  REQUIRE(unsafe.has_value());
  CHECK(unsafe->consts[0] == BitVec(4, 0));

  // A valid but narrow precondition misses the smallest positive, C1 = 1.
  auto missed = backend.missedPositive(f.pre("C1 == 4"));
  REQUIRE(missed.has_value());
  CHECK(missed->consts[0] == BitVec(4, 1));

  // Accepting everything pulls in the first non-positive binding, C1 = 0.
  auto extra = backend.acceptedNonPositive(f.pre("true"));
  REQUIRE(extra.has_value());
  CHECK(extra->consts[0] == BitVec(4, 0));
}

TEST_CASE("weaker witness orders preconditions") {
  Fix f("udiv_pow2.opt", {4});
  ExhaustiveBackend backend(f.opt, f.tas);
  PredPtr broad = f.pre("isPowerOf2(C1)");
  PredPtr narrow = f.pre("C1 == 4");
  auto w = backend.weakerWitness(broad, narrow);
  REQUIRE(w.has_value());
  CHECK(w->consts[0] == BitVec(4, 1));
  CHECK(!backend.weakerWitness(narrow, broad).has_value());
  CHECK(!backend.weakerWitness(broad, broad).has_value());
}

TEST_CASE("findExamples skips known valuations") {
  Fix f("udiv_pow2.opt", {4});
  ExhaustiveBackend backend(f.opt, f.tas);
  ExampleSet have;
  have.addPositive(f.val(1));
  auto fresh = backend.findExamples(ExClass::Positive, 2, have);
  REQUIRE(fresh.size() == 2);
  CHECK(fresh[0].consts[0] == BitVec(4, 2));
  CHECK(fresh[1].consts[0] == BitVec(4, 4));
  auto negs = backend.findExamples(ExClass::Negative, 3, have);
  REQUIRE(negs.size() == 3);
  CHECK(negs[0].consts[0] == BitVec(4, 0));
}

TEST_CASE("assumptions shrink the query domain") {
  Optimization opt = parseOptimization(R"(
Name: t
Assume: isPowerOf2(C1)
%r = udiv %X, C1
=>
%r = lshr %X, (log2(C1))
)", "t");
  auto tas = enumerateAssignments(opt.types, {4});
  ExhaustiveBackend backend(opt, tas);
  // Under the assumption every binding is positive, so `true` is weakest.
  PredPtr t = pTrue();
  CHECK(!backend.refinementCex(t).has_value());
  CHECK(!backend.missedPositive(t).has_value());
  CHECK(!backend.acceptedNonPositive(t).has_value());
}

TEST_CASE("evalOn reports three values") {
  Fix f("udiv_pow2.opt", {4});
  CHECK(evalOn(f.opt, f.pre("C1 == 0"), f.val(0)) == TriBool::Accept);
  CHECK(evalOn(f.opt, f.pre("C1 == 0"), f.val(1)) == TriBool::Reject);
  CHECK(evalOn(f.opt, f.pre("log2(C1) == 1"), f.val(0)) == TriBool::Unsafe);
}

TEST_CASE("state space guard") {
  // Two 8-bit constants and two 8-bit inputs exceed a 24-bit budget.
  Optimization opt = parseOptimization(
      "%a = add %X, C1\n%b = add %Y, C2\n%r = add %a, %b\n=>\n%r = add %a, %b\n",
      "t");
  auto tas = enumerateAssignments(opt.types, {8});
  CHECK_THROWS_AS(
      [&] {
        ExhaustiveBackend backend(opt, tas, 24);
        backend.classify({tas[0], {BitVec(8, 1), BitVec(8, 2)}});
      }(),
      std::runtime_error);
}

TEST_CASE("accepted keys match positive keys for the stated precondition") {
  for (const char *name : {"udiv_pow2.opt", "and_or_disjoint.opt",
                           "ult_signbit.opt"}) {
    Fix f(name, {4});
    ExhaustiveBackend backend(f.opt, f.tas);
    PredPtr pre = f.opt.pre;
    REQUIRE(pre != nullptr);
    CHECK(acceptedKeys(backend, f.opt, pre) == positiveKeys(backend));
  }
}
