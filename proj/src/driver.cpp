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

#include "pinfer/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <set>

#include "pinfer/smt.hpp"

namespace pinfer {

const char *statusName(InferStatus s) {
  switch (s) {
  case InferStatus::Weakest: return "weakest";
  case InferStatus::PartialOnly: return "partial";
  case InferStatus::Stalled: return "stalled";
  case InferStatus::Unknown: return "unknown";
  case InferStatus::Timeout: return "timeout";
  }
  return "?";
}

// --- formula construction ---------------------------------------------------

namespace {

// A cexpr of the same width as `t`, usable to express that width in a term.
CexprPtr widthExpr(TypeRef t, const Optimization &opt) {
  if (auto w = opt.types.fixedWidth(t)) return cLit(*w, t);
  TypeRef rep = opt.types.find(t);
  for (const Node &n : opt.nodes) {
    if (n.name.empty()) continue;
    if ((n.kind == Node::Kind::InputVar || n.kind == Node::Kind::SymConst ||
         n.kind == Node::Kind::Instr)) {
      CexprPtr e = cWidth(n.name, t);
      if (opt.types.find(n.type) == rep) return e;
    }
  }
  return cLit(64, t);  // no name of this width exists; be permissive
}

void collectSafety(const CexprPtr &e, const Optimization &opt,
                   std::vector<PredPtr> &out) {
  switch (e->kind) {
  case Cexpr::Kind::UnOp:
    collectSafety(e->a, opt, out);
    return;
  case Cexpr::Kind::CFun:
    collectSafety(e->a, opt, out);
    if (e->cfun == CFun::Log2)
      out.push_back(pCmp(Cond::Ne, e->a, cLit(0, e->type)));
    return;
  case Cexpr::Kind::BinOp:
    collectSafety(e->a, opt, out);
    collectSafety(e->b, opt, out);
    switch (e->binop) {
    case CBinOp::UDiv:
    case CBinOp::URem:
      out.push_back(pCmp(Cond::Ne, e->b, cLit(0, e->type)));
      return;
    case CBinOp::SDiv:
    case CBinOp::SRem:
      out.push_back(pCmp(Cond::Ne, e->b, cLit(0, e->type)));
      out.push_back(pOr(pCmp(Cond::Ne, e->a, cSMin(e->type)),
                        pCmp(Cond::Ne, e->b, cLit(-1, e->type))));
      return;
    case CBinOp::Shl:
    case CBinOp::LShr:
    case CBinOp::AShr:
      out.push_back(pCmp(Cond::Ult, e->b, widthExpr(e->type, opt)));
      return;
    default:
      return;
    }
  default:
    return;
  }
}

PredPtr atomGuard(const PredPtr &atom, const Optimization &opt) {
  std::vector<PredPtr> conds;
  if (atom->ca) collectSafety(atom->ca, opt, conds);
  if (atom->cb) collectSafety(atom->cb, opt, conds);
  return pAndAll(conds);
}

PredPtr negateAtom(const PredPtr &atom) {
  if (atom->kind == Pred::Kind::Cmp)
    return pCmp(condNegate(atom->cond), atom->ca, atom->cb);
  return pNot(atom);
}

void collectAtoms(const PredPtr &p, std::vector<PredPtr> &out) {
  switch (p->kind) {
  case Pred::Kind::Cmp:
  case Pred::Kind::PFun:
    out.push_back(p);
    return;
  case Pred::Kind::Not:
    collectAtoms(p->pa, out);
    return;
  case Pred::Kind::And:
  case Pred::Kind::Or:
    collectAtoms(p->pa, out);
    collectAtoms(p->pb, out);
    return;
  default:
    return;
  }
}

}  // namespace

PredPtr safetyTerm(const CexprPtr &e, const Optimization &opt) {
  std::vector<PredPtr> conds;
  collectSafety(e, opt, conds);
  return pAndAll(conds);
}

PredPtr cnfToTerm(const CnfFormula &f, const std::vector<PredPtr> &preds,
                  const Optimization &opt) {
  if (f.bottom) return pFalse();
  std::vector<PredPtr> clauseTerms;
  for (const BoolClause &c : f.clauses) {
    std::vector<PredPtr> litTerms;
    for (const BoolLit &l : c.lits) {
      const PredPtr &atom = preds[static_cast<size_t>(l.pred)];
      PredPtr body = l.negated ? negateAtom(atom) : atom;
      PredPtr guard = atomGuard(atom, opt);
      litTerms.push_back(guard->kind == Pred::Kind::True ? body
                                                         : pAnd(guard, body));
    }
    clauseTerms.push_back(pOrAll(litTerms));
  }
  return pAndAll(clauseTerms);
}

std::unique_ptr<Backend> makeBackend(const Optimization &opt,
                                     const std::vector<TypeAssignment> &tas,
                                     const InferConfig &cfg) {
  if (cfg.backend == "smt")
    return std::make_unique<SmtBackend>(opt, tas, cfg.smtCmd, cfg.smtTimeoutMs);
  return std::make_unique<ExhaustiveBackend>(opt, tas, cfg.maxBits);
}

// --- shared inference plumbing ----------------------------------------------

namespace {

struct Session {
  Optimization &opt;
  const InferConfig &cfg;
  InferReport rep;
  std::vector<TypeAssignment> tas;
  std::unique_ptr<Backend> backend;
  ExampleSet examples;
  std::mt19937_64 rng;
  std::chrono::steady_clock::time_point start;
  std::vector<PredPtr> initial;
  bool seeded = false;

  Session(Optimization &o, const InferConfig &c)
      : opt(o), cfg(c), rng(c.seed), start(std::chrono::steady_clock::now()) {}

  bool setup() {
    for (const std::string &t : cfg.assumes)
      opt.assumes.push_back(
          typecheckPred(opt, opt.types, parsePrecondition(t, "<assume>")));
    for (const std::string &t : cfg.hints)
      initial.push_back(
          typecheckPred(opt, opt.types, parsePrecondition(t, "<hint>")));
    for (const PredPtr &a : opt.assumes) collectAtoms(a, initial);
    std::set<std::string> seen;
    std::vector<PredPtr> dedup;
    for (const PredPtr &p : initial)
      if (seen.insert(toString(p)).second) dedup.push_back(p);
    initial = std::move(dedup);

    tas = sampleTypeAssignments(opt.types, cfg.widths, cfg.assignmentCap, cfg.seed);
    if (tas.empty()) return false;
    backend = makeBackend(opt, tas, cfg);
    return true;
  }

  bool timedOut() const {
    if (cfg.timeoutMs <= 0) return false;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    return ms > cfg.timeoutMs;
  }

  void addClassified(const ConstValuation &v) {
    if (examples.contains(v) || !assumptionsHold(opt, v)) return;
    switch (backend->classify(v)) {
    case ExClass::Positive: examples.addPositive(v); break;
    case ExClass::Negative: examples.addNegative(v); break;
    case ExClass::Trivial: break;
    }
  }

  void generateExamples() {
    size_t budget = static_cast<size_t>(
        exampleBudget(cfg.budget0, cfg.budget1, opt.symConsts.size()));
    if (!seeded) {
      seeded = true;
      for (const auto &v : genBoundary(opt, tas)) addClassified(v);
    }
    for (const auto &v : genRandom(opt, tas, budget, rng, examples))
      addClassified(v);
    if (examples.positives().size() < budget / 4)
      for (const auto &v : backend->findExamples(ExClass::Positive, 8, examples))
        examples.addPositive(v);
    if (examples.negatives().size() < budget / 4)
      for (const auto &v : backend->findExamples(ExClass::Negative, 8, examples))
        examples.addNegative(v);
  }

  void recordPartial(const PredPtr &term, std::set<std::string> &seen) {
    std::string key = toString(term);
    if (!seen.insert(key).second) return;
    size_t accepted = 0;
    for (const auto &v : examples.positives())
      if (evalOn(opt, term, v) == TriBool::Accept) ++accepted;
    double frac = examples.positives().empty()
                      ? 0.0
                      : static_cast<double>(accepted) /
                            static_cast<double>(examples.positives().size());
    rep.partials.push_back({term, frac});
  }

  InferReport finish(InferStatus fallback) {
    if (rep.status == InferStatus::Unknown) {
      if (auto *smt = dynamic_cast<SmtBackend *>(backend.get())) {
        if (smt->sawTimeout()) fallback = InferStatus::Timeout;
        else if (smt->sawUnknown()) fallback = InferStatus::Unknown;
      }
      rep.status = fallback;
    }
    rep.stats.positives = examples.positives().size();
    rep.stats.negatives = examples.negatives().size();
    return std::move(rep);
  }
};

}  // namespace

InferReport infer(Optimization &opt, const InferConfig &cfg) {
  Session s(opt, cfg);
  if (!s.setup()) {
    s.rep.status = InferStatus::Unknown;
    return s.rep;
  }
  PredicateStream stream(opt);
  std::set<std::string> partialSeen;

  for (int iter = 0; iter < cfg.maxIters; ++iter) {
    s.rep.stats.iterations = iter + 1;
    if (s.timedOut()) return s.finish(InferStatus::Timeout);
    s.generateExamples();

    LearnerConfig lcfg = cfg.learner;
    lcfg.maxK = cfg.learner.maxK;
    lcfg.seed = cfg.seed + static_cast<uint64_t>(iter) * 7919;
    LearnerOutput lo =
        preconditionsByExamples(opt, s.examples, s.initial, stream, lcfg);
    s.rep.stats.predicates = lo.preds.size();

    if (!lo.partial.bottom && !lo.partial.clauses.empty()) {
      PredPtr pt = cnfToTerm(lo.partial, lo.preds, opt);
      if (auto cex = s.backend->refinementCex(pt))
        s.examples.addNegative(*cex);
      else
        s.recordPartial(pt, partialSeen);
    }

    if (lo.complete.bottom)
      return s.finish(s.rep.partials.empty() ? InferStatus::Stalled
                                             : InferStatus::PartialOnly);

    PredPtr phi = cnfToTerm(lo.complete, lo.preds, opt);
    if (auto cex = s.backend->refinementCex(phi)) {
      s.examples.addNegative(*cex);
      continue;
    }
    if (auto missed = s.backend->missedPositive(phi)) {
      // Valid but not weakest: keep it as a partial result and push on.
      s.recordPartial(phi, partialSeen);
      s.examples.addPositive(*missed);
      continue;
    }
    if (auto extra = s.backend->acceptedNonPositive(phi)) {
      // Accepted binding outside the positive set; tighten around it.
      s.examples.addNegative(*extra);
      continue;
    }
    s.rep.status = InferStatus::Weakest;
    s.rep.weakest = phi;
    return s.finish(InferStatus::Weakest);
  }
  return s.finish(s.rep.partials.empty() ? InferStatus::Stalled
                                         : InferStatus::PartialOnly);
}

// --- enumerative search -----------------------------------------------------

namespace {

struct SearchClause {
  BoolClause clause;
  int weight;
};

}  // namespace

InferReport enumerativeSearch(Optimization &opt, const InferConfig &cfg) {
  Session s(opt, cfg);
  if (!s.setup()) {
    s.rep.status = InferStatus::Unknown;
    return s.rep;
  }
  PredicateStream stream(opt);
  s.generateExamples();

  std::vector<PredPtr> preds;
  std::vector<int> predWeight;
  size_t nextStreamIdx = 0;
  // A small pool keeps the clause pool cubic in something manageable; the
  // candidate budget bounds the rest.
  constexpr size_t kMaxSearchPreds = 64;
  auto loadPredsUpTo = [&](int w) {
    for (;;) {
      if (preds.size() >= kMaxSearchPreds) return;
      PredPtr p = stream.get(nextStreamIdx);
      if (!p || weightOf(*p) > w) return;
      preds.push_back(p);
      predWeight.push_back(weightOf(*p));
      ++nextStreamIdx;
    }
  };

  constexpr int kMaxLitsPerClause = 3;
  constexpr int kMaxClauses = 3;
  constexpr int kMaxSize = 14;

  std::vector<SearchClause> clauses;
  size_t clausesBuiltForPreds = 0;
  auto rebuildClauses = [&](int maxW) {
    if (clausesBuiltForPreds == preds.size()) return;
    clausesBuiltForPreds = preds.size();
    clauses.clear();
    // All clauses with up to kMaxLitsPerClause distinct predicates.
    std::vector<BoolLit> cur;
    auto rec = [&](auto &&self, int startPred, int weight) -> void {
      if (!cur.empty()) clauses.push_back({BoolClause{cur}, weight});
      if (cur.size() == kMaxLitsPerClause) return;
      for (int p = startPred; p < static_cast<int>(preds.size()); ++p) {
        int w2 = weight + predWeight[static_cast<size_t>(p)];
        if (w2 > maxW) continue;
        for (int neg = 0; neg < 2; ++neg) {
          cur.push_back({p, neg == 1});
          self(self, p + 1, w2);
          cur.pop_back();
        }
      }
    };
    rec(rec, 0, 0);
    std::stable_sort(clauses.begin(), clauses.end(),
                     [](const SearchClause &a, const SearchClause &b) {
                       return a.weight < b.weight;
                     });
  };

  std::set<std::string> posKeys, negKeys;
  auto fitsExamples = [&](const PredPtr &term) {
    for (const auto &v : s.examples.positives())
      if (evalOn(opt, term, v) != TriBool::Accept) return false;
    for (const auto &v : s.examples.negatives())
      if (evalOn(opt, term, v) == TriBool::Accept) return false;
    return true;
  };

  auto validate = [&](const PredPtr &term) -> int {
    // 0: weakest, 1: rejected with new example, 2: rejected quietly
    if (auto cex = s.backend->refinementCex(term)) {
      s.examples.addNegative(*cex);
      return 1;
    }
    if (auto missed = s.backend->missedPositive(term)) {
      s.examples.addPositive(*missed);
      return 1;
    }
    if (auto extra = s.backend->acceptedNonPositive(term)) {
      s.examples.addNegative(*extra);
      return 1;
    }
    return 0;
  };

  auto tryCandidate = [&](const CnfFormula &f) -> bool {
    ++s.rep.stats.candidatesTried;
    PredPtr term = cnfToTerm(f, preds, opt);
    if (!fitsExamples(term)) return false;
    if (validate(term) == 0) {
      s.rep.status = InferStatus::Weakest;
      s.rep.weakest = term;
      return true;
    }
    return false;
  };

  for (int size = 0; size <= kMaxSize; ++size) {
    if (s.timedOut()) return s.finish(InferStatus::Timeout);
    if (s.rep.stats.candidatesTried >= cfg.searchBudget) break;
    if (size == 0) {
      if (tryCandidate(cnfTrue())) return s.finish(InferStatus::Weakest);
      continue;
    }
    loadPredsUpTo(size);
    rebuildClauses(size);
    s.rep.stats.predicates = preds.size();

    // All combinations of clauses with strictly increasing indices whose
    // weights sum exactly to `size`.
    std::vector<size_t> pick;
    bool done = false;
    auto combine = [&](auto &&self, size_t startIdx, int left) -> void {
      if (done) return;
      if (left == 0 && !pick.empty()) {
        CnfFormula f;
        for (size_t i : pick) f.clauses.push_back(clauses[i].clause);
        if (tryCandidate(f)) { done = true; return; }
        if (s.rep.stats.candidatesTried >= cfg.searchBudget || s.timedOut()) {
          done = true;
          return;
        }
        return;
      }
      if (pick.size() == kMaxClauses) return;
      for (size_t i = startIdx; i < clauses.size(); ++i) {
        if (clauses[i].weight > left) break;  // sorted by weight
        pick.push_back(i);
        self(self, i + 1, left - clauses[i].weight);
        pick.pop_back();
        if (done) return;
      }
    };
    combine(combine, 0, size);
    if (s.rep.status == InferStatus::Weakest) return s.finish(InferStatus::Weakest);
    if (s.rep.stats.candidatesTried >= cfg.searchBudget) break;
  }
  return s.finish(InferStatus::Stalled);
}

// --- generalization ---------------------------------------------------------

GeneralizeResult generalize(const Optimization &concrete) {
  GeneralizeResult res;
  res.opt = concrete;
  Optimization &opt = res.opt;

  int nextId = 1;
  for (int id : opt.symConsts) {
    // Number fresh constants after any that already exist.
    const std::string &n = opt.node(id).name;
    nextId = std::max(nextId, std::atoi(n.c_str() + 1) + 1);
  }

  std::map<int64_t, int> byValue;  // literal value -> symconst node id
  auto liftOperand = [&](int &operandId, bool inSource) {
    Node &n = opt.nodes[static_cast<size_t>(operandId)];
    if (n.kind != Node::Kind::ConstLiteral) return;
    auto it = byValue.find(n.lit);
    if (it != byValue.end()) {
      opt.types.unify(n.type, opt.nodes[static_cast<size_t>(it->second)].type);
      operandId = it->second;
      return;
    }
    if (!inSource) return;  // unmatched target literals stay concrete
    std::string name = "C" + std::to_string(nextId++);
    res.binding.emplace_back(name, n.lit);
    byValue[n.lit] = operandId;
    n.kind = Node::Kind::SymConst;
    n.name = name;
    opt.symConsts.push_back(operandId);
  };

  for (int id : opt.sourceOrder)
    for (int &op : opt.nodes[static_cast<size_t>(id)].operands)
      liftOperand(op, true);
  for (int id : opt.targetOrder)
    for (int &op : opt.nodes[static_cast<size_t>(id)].operands)
      liftOperand(op, false);
  return res;
}

}  // namespace pinfer
