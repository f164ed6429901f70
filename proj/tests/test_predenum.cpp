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
#include <set>

#include "pinfer/predenum.hpp"
#include "pinfer/semantics.hpp"

using namespace pinfer;

namespace {

Optimization simpleOpt() {
  return parseOptimization("%r = add %X, C1\n=>\n%r = add %X, C1\n", "t");
}

// Random cexpr over one symbol, depth-bounded, with every node typed.
CexprPtr randomCexpr(std::mt19937_64 &rng, TypeRef t, int depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  if (depth == 0 || pick(3) == 0) {
    switch (pick(4)) {
    case 0: return cLit(static_cast<int64_t>(rng() % 19) - 9, t);
    case 1: return cSMin(t);
    case 2: return cSym("C1", t);
    default: return cLit(1, t);
    }
  }
  switch (pick(6)) {
  case 0: return cUn(CUnOp::Neg, randomCexpr(rng, t, depth - 1));
  case 1: return cUn(CUnOp::Not, randomCexpr(rng, t, depth - 1));
  case 2: return cFun(CFun::Abs, randomCexpr(rng, t, depth - 1));
  case 3: return cFun(CFun::Log2, randomCexpr(rng, t, depth - 1));
  default:
    return cBin(static_cast<CBinOp>(pick(13)), randomCexpr(rng, t, depth - 1),
                randomCexpr(rng, t, depth - 1));
  }
}

// Canonicalization may fold subtrees into fresh literals that carry no type;
// the stream stamps a context type before use, so stamp one here too.
CexprPtr stampType(const CexprPtr &e, TypeRef t) {
  auto c = std::make_shared<Cexpr>(*e);
  c->type = t;
  if (c->a) c->a = stampType(c->a, t);
  if (c->b) c->b = stampType(c->b, t);
  return c;
}

}  // namespace

TEST_CASE("canonicalization is idempotent") {
  Optimization opt = simpleOpt();
  TypeRef t = opt.node(opt.symConsts[0]).type;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    CexprPtr e = randomCexpr(rng, t, 3);
    CexprPtr c1 = canonCexpr(e);
    CexprPtr c2 = canonCexpr(c1);
    CHECK(toString(c1) == toString(c2));
  }
}

TEST_CASE("canonicalization preserves safe evaluations") {
  // Wherever the original expression evaluates safely, the canonical form
  // must evaluate safely to the same value. (The canonical form may be safe
  // in strictly more environments, e.g. after an absorbing fold.)
  Optimization opt = simpleOpt();
  TypeRef t = opt.node(opt.symConsts[0]).type;
  auto tas = enumerateAssignments(opt.types, {4});
  Env env;
  env.opt = &opt;
  env.ta = &tas[0];
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int i = 0; i < 1500; ++i) {
    CexprPtr e = randomCexpr(rng, t, 3);
    CexprPtr c = stampType(canonCexpr(e), t);
    for (uint64_t v = 0; v < 16; ++v) {
      env.consts.insert_or_assign("C1", BitVec(4, v));
      auto before = evalCexpr(env, *e);
      if (!before) continue;
      auto after = evalCexpr(env, *c);
      REQUIRE(after.has_value());
      CHECK(*after == *before);
      ++checked;
    }
  }
  CHECK(checked > 5000);
}

TEST_CASE("specific canonical forms") {
  Optimization opt = simpleOpt();
  TypeRef t = opt.node(opt.symConsts[0]).type;
  auto c1 = cSym("C1", t);
  auto key = [](const CexprPtr &e) { return toString(canonCexpr(e)); };
  CHECK(key(cUn(CUnOp::Neg, cUn(CUnOp::Neg, c1))) == "C1");
  CHECK(key(cUn(CUnOp::Not, cUn(CUnOp::Not, c1))) == "C1");
  CHECK(key(cBin(CBinOp::Add, c1, cLit(0, t))) == "C1");
  CHECK(key(cBin(CBinOp::Mul, c1, cLit(1, t))) == "C1");
  CHECK(key(cBin(CBinOp::Mul, c1, cLit(0, t))) == "0");
  CHECK(key(cBin(CBinOp::Sub, c1, c1)) == "0");
  CHECK(key(cBin(CBinOp::Xor, c1, c1)) == "0");
  CHECK(key(cBin(CBinOp::And, c1, c1)) == "C1");
  // Commutative operands sort structurally, so both orders agree.
  CHECK(key(cBin(CBinOp::Add, cLit(3, t), c1)) ==
        key(cBin(CBinOp::Add, c1, cLit(3, t))));
  CHECK(key(cBin(CBinOp::Mul, cLit(2, t), cBin(CBinOp::Mul, c1, cLit(3, t)))) ==
        key(cBin(CBinOp::Mul, cLit(6, t), c1)));
}

TEST_CASE("weights") {
  Optimization opt = simpleOpt();
  TypeRef t = opt.node(opt.symConsts[0]).type;
  auto c1 = cSym("C1", t);
  CHECK(weightOf(*c1) == 1);
  CHECK(weightOf(*cLit(5, t)) == 1);
  CHECK(weightOf(*cWidth("%X", t)) == 2);
  CHECK(weightOf(*cFun(CFun::Abs, c1)) == 2);
  CHECK(weightOf(*cBin(CBinOp::Add, c1, cLit(1, t))) == 2);   // operators free
  CHECK(weightOf(*cUn(CUnOp::Not, c1)) == 1);
  CHECK(weightOf(*pCmp(Cond::Ult, c1, cLit(0, t))) == 2);
  CHECK(weightOf(*pFun(PFun::IsPowerOf2, c1)) == 2);
}

TEST_CASE("stream is deterministic and duplicate free") {
  Optimization a = simpleOpt();
  Optimization b = simpleOpt();
  PredicateStream s1(a), s2(b);
  std::set<std::string> seen;
  for (size_t i = 0; i < 1000; ++i) {
    PredPtr p = s1.get(i);
    PredPtr q = s2.get(i);
    if (!p) {
      CHECK(q == nullptr);
      break;
    }
    REQUIRE(q != nullptr);
    CHECK(toString(p) == toString(q));
    CHECK(seen.insert(toString(p)).second);
  }
}

TEST_CASE("stream front-loads cheap predicates") {
  Optimization opt = parseOptimizationFile(std::string(PINFER_SUITE_DIR) +
                                           "/udiv_pow2.opt");
  PredicateStream s(opt);
  bool foundPow2 = false, foundNonZero = false;
  for (size_t i = 0; i < 60 && s.get(i); ++i) {
    std::string k = toString(s.get(i));
    if (k == "isPowerOf2(C1)") foundPow2 = true;
    if (k == "C1 == 0" || k == "0 == C1") foundNonZero = true;
  }
  CHECK(foundPow2);
  CHECK(foundNonZero);
  // Weights never decrease along the stream.
  int last = 0;
  for (size_t i = 0; s.get(i) && i < 500; ++i) {
    int w = weightOf(*s.get(i));
    CHECK(w >= last);
    last = w;
  }
}

TEST_CASE("stream stays well typed across widths") {
  // In a two-width rewrite, a predicate must never compare the narrow
  // symbol's expressions against the wide symbol's.
  Optimization opt = parseOptimization(R"(
%e = zext %X
%c = icmp ult %e, C1
=>
%c = icmp ult %e, C1
)", "t");
  PredicateStream s(opt);
  size_t n = 0;
  for (size_t i = 0; s.get(i) && i < 2000; ++i, ++n) {
    PredPtr p = s.get(i);
    // Every atom type-checks against the optimization.
    Optimization copy = opt;
    CHECK_NOTHROW(typecheckPred(copy, copy.types, parsePrecondition(toString(p))));
  }
  CHECK(n > 50);
  bool sawWidth = false;
  for (size_t i = 0; s.get(i) && i < 2000; ++i)
    if (toString(s.get(i)).find("width(") != std::string::npos) sawWidth = true;
  CHECK(sawWidth);
}

TEST_CASE("single width rewrites skip width predicates") {
  Optimization opt = simpleOpt();
  PredicateStream s(opt);
  for (size_t i = 0; s.get(i) && i < 2000; ++i)
    CHECK(toString(s.get(i)).find("width(") == std::string::npos);
}
