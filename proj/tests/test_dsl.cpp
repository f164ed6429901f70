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

#include <filesystem>

#include "pinfer/dsl.hpp"

using namespace pinfer;

namespace {

const char *kSample = R"(
; sample rewrite
Name: sample
Pre: isPowerOf2(C1)
Assume: C1 != 0
%a = shl nuw nsw %X, C1
%c = icmp ult %a, C2
%r = select %c, %a, C2
=>
%r = %a
)";

}  // namespace

TEST_CASE("parse instruction dag") {
  Optimization opt = parseOptimization(kSample, "sample");
  CHECK(opt.name == "sample");
  CHECK(opt.pre != nullptr);
  CHECK(opt.assumes.size() == 1);
  CHECK(opt.inputVars.size() == 1);
  CHECK(opt.symConsts.size() == 2);
  CHECK(opt.node(opt.inputVars[0]).name == "%X");
  CHECK(opt.node(opt.symConsts[0]).name == "C1");
  CHECK(opt.node(opt.symConsts[1]).name == "C2");

  const Node &shl = opt.node(opt.sourceOrder[0]);
  CHECK(shl.op == Opcode::Shl);
  CHECK(shl.flags.nuw);
  CHECK(shl.flags.nsw);
  CHECK(!shl.flags.exact);
  const Node &cmp = opt.node(opt.sourceOrder[1]);
  CHECK(cmp.op == Opcode::ICmp);
  CHECK(cmp.cond == Cond::Ult);
  const Node &sel = opt.node(opt.sourceOrder[2]);
  CHECK(sel.op == Opcode::Select);
  CHECK(sel.operands.size() == 3);

  // The target root is a copy of %a and shares the source root's name.
  const Node &root = opt.node(opt.targetRoot);
  CHECK(root.op == Opcode::Copy);
  CHECK(root.name == "%r");
}

TEST_CASE("type constraints from the sample") {
  Optimization opt = parseOptimization(kSample, "sample");
  const TypeModel &tm = opt.types;
  // icmp result is i1; its operands share a width with %X.
  CHECK(tm.fixedWidth(opt.node(opt.sourceOrder[1]).type) == 1);
  TypeRef x = opt.node(opt.inputVars[0]).type;
  CHECK(tm.find(opt.node(opt.symConsts[0]).type) == tm.find(x));
  CHECK(tm.find(opt.node(opt.symConsts[1]).type) == tm.find(x));
}

TEST_CASE("print parse round trip") {
  Optimization opt = parseOptimization(kSample, "sample");
  std::string once = printOptimization(opt);
  Optimization again = parseOptimization(once, "again");
  CHECK(printOptimization(again) == once);
}

TEST_CASE("suite files round trip") {
  size_t seen = 0;
  for (const auto &ent : std::filesystem::directory_iterator(PINFER_SUITE_DIR)) {
    if (ent.path().extension() != ".opt") continue;
    ++seen;
    Optimization opt = parseOptimizationFile(ent.path().string());
    std::string once = printOptimization(opt);
    CHECK(printOptimization(parseOptimization(once, "rt")) == once);
  }
  CHECK(seen >= 10);
}

TEST_CASE("assignment enumeration respects cast ordering") {
  Optimization opt = parseOptimization(R"(
Name: widen
%e = zext %X
%r = add %e, C1
=>
%r = add %e, C1
)", "widen");
  auto tas = enumerateAssignments(opt.types, {4, 8, 16});
  // Exactly the strictly increasing width pairs, in lexicographic order.
  REQUIRE(tas.size() == 3);
  TypeRef narrow = opt.node(opt.inputVars[0]).type;
  TypeRef wide = opt.node(opt.symConsts[0]).type;
  std::vector<std::pair<int, int>> got;
  for (const auto &ta : tas)
    got.push_back({ta.width(opt.types.find(narrow)), ta.width(opt.types.find(wide))});
  std::vector<std::pair<int, int>> want = {{4, 8}, {4, 16}, {8, 16}};
  CHECK(got == want);
}

TEST_CASE("single width assignment per universe entry") {
  Optimization opt = parseOptimization("%r = add %X, C1\n=>\n%r = add %X, C1\n", "t");
  auto tas = enumerateAssignments(opt.types, {8, 4, 4});
  REQUIRE(tas.size() == 2);  // universe sorted and deduplicated
  CHECK(tas[0].width(opt.types.find(opt.node(opt.inputVars[0]).type)) == 4);
  CHECK(tas[1].width(opt.types.find(opt.node(opt.inputVars[0]).type)) == 8);
}

TEST_CASE("width annotation pins a type") {
  Optimization opt = parseOptimization(R"(
Name: pinned
%r = add i8 %X, C1
=>
%r = add i8 %X, C1
)", "pinned");
  CHECK(opt.types.fixedWidth(opt.node(opt.sourceRoot).type) == 8);
  auto tas = enumerateAssignments(opt.types, {4, 8});
  CHECK(tas.size() == 1);
}

TEST_CASE("parse errors carry locations") {
  CHECK_THROWS_AS(parseOptimization("%r = add exact %X, C1\n=>\n%r = %X\n", "t"),
                  ParseError);
  CHECK_THROWS_AS(parseOptimization("%r = udiv nuw %X, C1\n=>\n%r = %X\n", "t"),
                  ParseError);
  // Duplicate definition.
  CHECK_THROWS_AS(
      parseOptimization("%r = add %X, C1\n%r = add %X, C1\n=>\n%r = %X\n", "t"),
      ParseError);
  // New names may not appear in the target.
  CHECK_THROWS_AS(parseOptimization("%r = add %X, C1\n=>\n%r = add %Y, C1\n", "t"),
                  ParseError);
  CHECK_THROWS_AS(parseOptimization("%r = add %X, C1\n=>\n%r = add %X, C2\n", "t"),
                  ParseError);
  // Constant expressions are target-only.
  CHECK_THROWS_AS(parseOptimization("%r = add %X, (C1 + 1)\n=>\n%r = %X\n", "t"),
                  ParseError);
  // icmp needs its predicate keyword.
  CHECK_THROWS_AS(parseOptimization("%c = icmp %X, C1\n=>\n%c = %X\n", "t"),
                  ParseError);
  // Missing target.
  CHECK_THROWS_AS(parseOptimization("%r = add %X, C1\n", "t"), ParseError);
  try {
    parseOptimization("%r = bogus %X\n=>\n%r = %X\n", "somefile");
    CHECK(false);
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("somefile:1") != std::string::npos);
  }
}

TEST_CASE("precondition parsing and precedence") {
  PredPtr p = parsePrecondition("C1 + C2 * C1 == 0 && isPowerOf2(C1)");
  CHECK(toString(p) == "(C1 + C2 * C1 == 0) && isPowerOf2(C1)");
  CHECK(toString(parsePrecondition("!(C1 u< C2) || C1 == C2")) ==
        "!(C1 u< C2) || (C1 == C2)");
  CHECK(toString(parsePrecondition("(C1 & ~C2) != 0")) == "C1 & ~C2 != 0");
  CHECK(toString(parsePrecondition("true")) == "true");
  // Shift and arithmetic precedence round trips.
  for (const char *s : {"C1 << 1 == C2", "C1 - (C2 - 1) == 0",
                        "abs(C1) u< smin", "log2(C1) + 1 u< width(%X)"}) {
    PredPtr q = parsePrecondition(s);
    CHECK(toString(parsePrecondition(toString(q))) == toString(q));
  }
}

TEST_CASE("typecheck rejects unknown names") {
  Optimization opt = parseOptimization("%r = add %X, C1\n=>\n%r = add %X, C1\n", "t");
  CHECK_THROWS_AS(
      typecheckPred(opt, opt.types, parsePrecondition("C2 == 0")), ParseError);
  CHECK_THROWS_AS(
      typecheckPred(opt, opt.types, parsePrecondition("width(%Y) == 4")),
      ParseError);
  PredPtr ok = typecheckPred(opt, opt.types, parsePrecondition("C1 != 0"));
  CHECK(ok != nullptr);
}

TEST_CASE("unify and fixWidth conflicts throw") {
  TypeModel tm;
  TypeRef a = tm.fresh(), b = tm.fresh();
  tm.fixWidth(a, 4);
  tm.fixWidth(b, 8);
  CHECK_THROWS_AS(tm.unify(a, b), ParseError);
  CHECK_THROWS_AS(tm.fixWidth(a, 8), ParseError);
  TypeRef c = tm.fresh();
  tm.unify(c, a);
  CHECK(tm.fixedWidth(c) == 4);
}
