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
// End-to-end acceptance checks. Each check prints one PASS/FAIL line; the
// oracles here recompute expected answers independently of the library
// internals wherever the expectation is more than a direct fact.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pinfer/driver.hpp"
#include "pinfer/smt.hpp"

using namespace pinfer;

namespace {

int failures = 0;

void report(const std::string &name, bool ok, const std::string &note = "") {
  std::printf("%s: %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
              note.empty() ? "" : " - ", note.c_str());
  if (!ok) ++failures;
}

double secondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string suitePath(const std::string &name) {
  return std::string(PINFER_SUITE_DIR) + "/" + name;
}

// Mini-suite files: every bundled rewrite with at least one symbolic
// constant, sorted by name.
std::vector<std::string> miniSuite() {
  std::vector<std::string> out;
  for (const auto &ent : std::filesystem::directory_iterator(PINFER_SUITE_DIR)) {
    if (ent.path().extension() != ".opt") continue;
    Optimization opt = parseOptimizationFile(ent.path().string());
    if (!opt.symConsts.empty()) out.push_back(ent.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- golden matrix checks ---------------------------------------------------

void checkGoldenPartial() {
  auto t0 = std::chrono::steady_clock::now();
  VecMatrix m = parseMatrixFile(std::string(PINFER_TEST_DATA_DIR) + "/golden.matrix");
  CnfFormula f = learnPartial(m.pos, m.neg, m.npreds, 1);
  bool ok = toString(f) == "(p2) & (!p1)" && acceptedWeight(f, m.pos) == 16 &&
            secondsSince(t0) < 1.0;
  report("partial learner golden matrix", ok, toString(f));
}

void checkGoldenComplete() {
  auto t0 = std::chrono::steady_clock::now();
  VecMatrix m = parseMatrixFile(std::string(PINFER_TEST_DATA_DIR) + "/golden.matrix");
  std::vector<std::string> pos;
  for (const auto &p : m.pos) pos.push_back(p.vec);
  CnfFormula f = learnComplete(pos, m.neg, m.npreds);
  bool ok = toString(f) == "(p1 | p2) & (!p1 | !p2 | p3)" && secondsSince(t0) < 1.0;
  report("complete learner golden matrix", ok, toString(f));
}

// --- end-to-end with an arithmetic oracle -----------------------------------

// Width-4 classification of the mul-nuw/udiv rewrite with plain integers.
// Source: %m = mul nuw %X, C1; %r = udiv %m, C2.
// Target: %r = udiv %X, (C2 /u C1).
bool mulUdivPositive(uint64_t c1, uint64_t c2) {
  if (c1 == 0) return false;  // target constant division is unsafe
  uint64_t q = c2 / c1;
  bool anyDefined = false;
  for (uint64_t x = 0; x < 16; ++x) {
    bool defS = x * c1 < 16 && c2 != 0;
    if (!defS) continue;
    anyDefined = true;
    uint64_t valS = (x * c1) / c2;
    if (q == 0) return false;  // target divides by zero: undefined
    if (valS != x / q) return false;
  }
  return anyDefined;
}

void checkEndToEnd() {
  auto t0 = std::chrono::steady_clock::now();
  Optimization opt = parseOptimizationFile(suitePath("mul_nuw_udiv.opt"));
  InferConfig cfg;
  cfg.widths = {4};
  InferReport rep = infer(opt, cfg);
  bool ok = rep.status == InferStatus::Weakest;
  if (ok) {
    auto tas = enumerateAssignments(opt.types, {4});
    for (uint64_t c1 = 0; c1 < 16 && ok; ++c1) {
      for (uint64_t c2 = 0; c2 < 16 && ok; ++c2) {
        ConstValuation v{tas[0], {BitVec(4, c1), BitVec(4, c2)}};
        bool accepted = evalOn(opt, rep.weakest, v) == TriBool::Accept;
        if (accepted != mulUdivPositive(c1, c2)) ok = false;
      }
    }
  }
  ok = ok && secondsSince(t0) < 60.0;
  report("multiply-divide inference matches arithmetic oracle", ok,
         rep.weakest ? toString(rep.weakest) : statusName(rep.status));
}

// --- three-valued evaluation ------------------------------------------------

CexprPtr randomCexpr(std::mt19937_64 &rng, TypeRef t, int depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  if (depth == 0 || pick(3) == 0) {
    switch (pick(3)) {
    case 0: return cLit(static_cast<int64_t>(rng() % 9) - 4, t);
    case 1: return cSMin(t);
    default: return cSym("C1", t);
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

PredPtr randomAtom(std::mt19937_64 &rng, TypeRef t) {
  if (rng() % 4 == 0)
    return pFun(static_cast<PFun>(rng() % 3), randomCexpr(rng, t, 2));
  return pCmp(static_cast<Cond>(rng() % 10), randomCexpr(rng, t, 2),
              randomCexpr(rng, t, 2));
}

void checkThreeValued() {
  auto t0 = std::chrono::steady_clock::now();
  Optimization opt =
      parseOptimization("%r = add %X, C1\n=>\n%r = add %X, C1\n", "t");
  TypeRef t = opt.node(opt.symConsts[0]).type;
  auto tas = enumerateAssignments(opt.types, {4});
  Env env;
  env.opt = &opt;
  env.ta = &tas[0];
  std::mt19937_64 rng(2026);
  bool ok = true;
  for (int i = 0; i < 1000 && ok; ++i) {
    PredPtr a = randomAtom(rng, t);
    PredPtr b = randomAtom(rng, t);
    for (uint64_t c = 0; c < 16 && ok; ++c) {
      env.consts.insert_or_assign("C1", BitVec(4, c));
      TriBool va = evalPred(env, *a);
      TriBool vb = evalPred(env, *b);
      // Negation maps Accept and Reject to each other and keeps Unsafe.
      TriBool vn = evalPred(env, *pNot(a));
      if (va == TriBool::Unsafe && vn != TriBool::Unsafe) ok = false;
      if (va == TriBool::Accept && vn != TriBool::Reject) ok = false;
      if (va == TriBool::Reject && vn != TriBool::Accept) ok = false;
      // Left-to-right short circuit.
      TriBool vAnd = evalPred(env, *pAnd(a, b));
      TriBool wantAnd = va == TriBool::Reject   ? TriBool::Reject
                        : va == TriBool::Unsafe ? TriBool::Unsafe
                                                : vb;
      if (vAnd != wantAnd) ok = false;
      TriBool vOr = evalPred(env, *pOr(a, b));
      TriBool wantOr = va == TriBool::Accept   ? TriBool::Accept
                       : va == TriBool::Unsafe ? TriBool::Unsafe
                                               : vb;
      if (vOr != wantOr) ok = false;
      // A missing value is exactly a violated safety condition.
      for (const PredPtr &p : {a, b}) {
        if (p->kind != Pred::Kind::Cmp && p->kind != Pred::Kind::PFun) continue;
        for (const CexprPtr &e : {p->ca, p->cb}) {
          if (!e) continue;
          if (evalCexpr(env, *e).has_value() != cexprSafe(env, *e)) ok = false;
        }
      }
    }
  }
  ok = ok && secondsSince(t0) < 30.0;
  report("three-valued evaluation laws over random predicates", ok);
}

void checkClauseStar() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  bool ok = true;
  static const char kAll[] = {'T', 'B', '*'};
  for (int i = 0; i < 10000 && ok; ++i) {
    int n = 1 + static_cast<int>(rng() % 8);
    std::string vec;
    for (int j = 0; j < n; ++j) vec += kAll[rng() % 3];
    int star = static_cast<int>(rng() % n);
    vec[static_cast<size_t>(star)] = '*';
    // Either polarity of the starred predicate rejects the vector.
    if (accepts(CnfFormula{false, {BoolClause{{{star, false}}}}}, vec)) ok = false;
    if (accepts(CnfFormula{false, {BoolClause{{{star, true}}}}}, vec)) ok = false;
  }
  ok = ok && secondsSince(t0) < 5.0;
  report("unsafe entries reject both literal polarities", ok);
}

void checkGreedyCover() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(11);
  bool ok = true;
  static const char kAll[] = {'T', 'B', '*'};
  for (int round = 0; round < 500 && ok; ++round) {
    int npreds = 1 + static_cast<int>(rng() % 6);
    auto vec = [&](bool star) {
      std::string s;
      for (int j = 0; j < npreds; ++j) s += kAll[rng() % (star ? 3 : 2)];
      return s;
    };
    // Random clause pool and negatives for the cover.
    std::vector<BoolClause> pool;
    for (int i = 0, k = 1 + static_cast<int>(rng() % 8); i < k; ++i) {
      BoolClause c;
      for (int p = 0; p < npreds; ++p)
        if (rng() % 3 == 0) c.lits.push_back({p, rng() % 2 == 0});
      if (!c.lits.empty()) pool.push_back(c);
    }
    std::vector<std::string> negs;
    for (int i = 0, k = static_cast<int>(rng() % 10); i < k; ++i)
      negs.push_back(vec(true));
    CnfFormula f = coverClauses(pool, negs);
    if (!f.bottom) {
      for (const auto &n : negs)
        if (accepts(f, n)) ok = false;
      for (const auto &c : f.clauses)
        if (std::find(pool.begin(), pool.end(), c) == pool.end()) ok = false;
    }
    // Exact learning on disjoint definite vector sets.
    std::set<std::string> pos, neg;
    for (int i = 0, k = 1 + static_cast<int>(rng() % 10); i < k; ++i)
      pos.insert(vec(false));
    for (int i = 0, k = static_cast<int>(rng() % 10); i < k; ++i) {
      std::string v = vec(false);
      if (!pos.count(v)) neg.insert(v);
    }
    CnfFormula g = learnComplete({pos.begin(), pos.end()},
                                 {neg.begin(), neg.end()}, npreds);
    if (g.bottom) ok = false;
    for (const auto &p : pos)
      if (!accepts(g, p)) ok = false;
    for (const auto &n : neg)
      if (accepts(g, n)) ok = false;
  }
  ok = ok && secondsSince(t0) < 60.0;
  report("greedy cover and exact learning on random matrices", ok);
}

// --- suite-wide runs --------------------------------------------------------

void checkMiniSuite() {
  auto files = miniSuite();
  bool ok = files.size() >= 10;
  std::string note;
  for (const auto &name : files) {
    auto t0 = std::chrono::steady_clock::now();
    Optimization opt = parseOptimizationFile(suitePath(name));
    InferConfig cfg;
    cfg.widths = {4, 8};
    InferReport rep = infer(opt, cfg);
    bool fileOk = rep.status == InferStatus::Weakest ||
                  rep.status == InferStatus::PartialOnly;
    if (rep.status == InferStatus::Weakest) {
      auto tas = enumerateAssignments(opt.types, cfg.widths);
      ExhaustiveBackend oracle(opt, tas);
      fileOk = acceptedKeys(oracle, opt, rep.weakest) == positiveKeys(oracle);
    }
    fileOk = fileOk && secondsSince(t0) < 300.0;
    if (!fileOk) {
      ok = false;
      note += name + "=" + statusName(rep.status) + " ";
    }
  }
  report("bundled rewrite suite infers accept-exact preconditions", ok, note);
}

void checkInferSearchAgree() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string note;
  for (const auto &name : miniSuite()) {
    Optimization a = parseOptimizationFile(suitePath(name));
    Optimization b = parseOptimizationFile(suitePath(name));
    InferConfig cfg;
    cfg.widths = {4};
    InferReport ri = infer(a, cfg);
    InferReport rs = enumerativeSearch(b, cfg);
    if (ri.status != InferStatus::Weakest || rs.status != InferStatus::Weakest)
      continue;  // agreement only applies where both modes finish
    auto tas = enumerateAssignments(a.types, cfg.widths);
    ExhaustiveBackend oracle(a, tas);
    if (acceptedKeys(oracle, a, ri.weakest) !=
        acceptedKeys(oracle, a, rs.weakest)) {
      ok = false;
      note += name + " ";
    }
  }
  ok = ok && secondsSince(t0) < 600.0;
  report("inference and enumerative search agree extensionally", ok, note);
}

void checkBackendAgreement() {
  InferConfig cfg;
  if (!solverAvailable(cfg.smtCmd)) {
    report("solver and exhaustive refinement verdicts agree", true,
           "skipped, no solver installed");
    return;
  }
  bool ok = true;
  std::string note;
  for (const auto &name : miniSuite()) {
    Optimization opt = parseOptimizationFile(suitePath(name));
    auto tas = enumerateAssignments(opt.types, {4, 8});
    ExhaustiveBackend ex(opt, tas);
    SmtBackend smt(opt, tas, cfg.smtCmd, cfg.smtTimeoutMs);
    std::vector<PredPtr> pres = {pTrue()};
    if (opt.pre) pres.push_back(opt.pre);
    for (const PredPtr &p : pres) {
      bool exCex = ex.refinementCex(p).has_value();
      bool smtCex = smt.refinementCex(p).has_value();
      if (smt.sawUnknown() || smt.sawTimeout()) continue;
      if (exCex != smtCex) {
        ok = false;
        note += name + " ";
      }
    }
  }
  report("solver and exhaustive refinement verdicts agree", ok, note);
}

void checkGeneralization() {
  bool ok = true;
  std::string note;
  for (const char *name : {"g1_and_icmp.opt", "g2_mul_shl.opt", "g3_and_or.opt"}) {
    GeneralizeResult g = generalize(parseOptimizationFile(suitePath(name)));
    auto tas = enumerateAssignments(g.opt.types, {4});
    if (tas.empty() || g.binding.empty()) {
      ok = false;
      note += std::string(name) + "=no-types ";
      continue;
    }
    ConstValuation origin{tas[0], {}};
    for (const auto &[cname, value] : g.binding) {
      int w = tas[0].width(g.opt.types.find(g.opt.node(g.opt.findNode(cname)).type));
      origin.consts.push_back(BitVec(w, static_cast<uint64_t>(value)));
    }
    ExhaustiveBackend backend(g.opt, tas);
    if (backend.classify(origin) != ExClass::Positive) {
      ok = false;
      note += std::string(name) + "=origin-not-positive ";
      continue;
    }
    InferConfig cfg;
    cfg.widths = {4};
    InferReport rep = infer(g.opt, cfg);
    if (rep.status != InferStatus::Weakest &&
        rep.status != InferStatus::PartialOnly) {
      ok = false;
      note += std::string(name) + "=" + statusName(rep.status) + " ";
    }
  }
  report("concrete rewrites generalize and re-infer", ok, note);
}

}  // namespace

int main() {
  checkGoldenPartial();
  checkGoldenComplete();
  checkEndToEnd();
  checkThreeValued();
  checkClauseStar();
  checkGreedyCover();
  checkMiniSuite();
  checkInferSearchAgree();
  checkBackendAgreement();
  checkGeneralization();
  std::printf("%s\n", failures == 0 ? "all acceptance checks passed"
                                    : "acceptance checks FAILED");
  return failures == 0 ? 0 : 1;
}
