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

#include "pinfer/predenum.hpp"

#include <algorithm>
#include <map>

namespace pinfer {

namespace {

bool isLit(const Cexpr &e, int64_t v) { return e.kind == Cexpr::Kind::Lit && e.lit == v; }
bool isLit(const Cexpr &e) { return e.kind == Cexpr::Kind::Lit; }

bool isCommutative(CBinOp op) {
  switch (op) {
  case CBinOp::Add:
  case CBinOp::Mul:
  case CBinOp::And:
  case CBinOp::Or:
  case CBinOp::Xor:
    return true;
  default:
    return false;
  }
}

void flattenInto(CBinOp op, const CexprPtr &e, std::vector<CexprPtr> &out) {
  if (e->kind == Cexpr::Kind::BinOp && e->binop == op) {
    flattenInto(op, e->a, out);
    flattenInto(op, e->b, out);
  } else {
    out.push_back(e);
  }
}

CexprPtr rebuild(CBinOp op, std::vector<CexprPtr> ops) {
  CexprPtr e = ops[0];
  for (size_t i = 1; i < ops.size(); ++i) e = cBin(op, e, ops[i]);
  return e;
}

// Folds an n-ary commutative application: combines literal operands, applies
// identity and absorbing elements, and sorts the rest structurally.
CexprPtr canonCommutative(CBinOp op, const CexprPtr &a, const CexprPtr &b) {
  std::vector<CexprPtr> ops;
  flattenInto(op, a, ops);
  flattenInto(op, b, ops);

  int64_t acc;
  switch (op) {
  case CBinOp::Add: acc = 0; break;
  case CBinOp::Mul: acc = 1; break;
  case CBinOp::And: acc = -1; break;
  default: acc = 0; break;  // Or, Xor
  }
  std::vector<CexprPtr> rest;
  for (auto &o : ops) {
    if (isLit(*o)) {
      switch (op) {
      case CBinOp::Add: acc += o->lit; break;
      case CBinOp::Mul: acc *= o->lit; break;
      case CBinOp::And: acc &= o->lit; break;
      case CBinOp::Or: acc |= o->lit; break;
      default: acc ^= o->lit; break;
      }
    } else {
      rest.push_back(o);
    }
  }
  if (op == CBinOp::Mul && acc == 0) return cLit(0);
  if (op == CBinOp::And && acc == 0) return cLit(0);
  if (op == CBinOp::Or && acc == -1) return cLit(-1);

  std::sort(rest.begin(), rest.end(), [](const CexprPtr &x, const CexprPtr &y) {
    return structuralCompare(*x, *y) < 0;
  });
  if (op == CBinOp::And || op == CBinOp::Or) {
    rest.erase(std::unique(rest.begin(), rest.end(),
                           [](const CexprPtr &x, const CexprPtr &y) {
                             return structuralCompare(*x, *y) == 0;
                           }),
               rest.end());
  } else if (op == CBinOp::Xor) {
    // x ^ x cancels pairwise.
    std::vector<CexprPtr> kept;
    for (size_t i = 0; i < rest.size();) {
      if (i + 1 < rest.size() && structuralCompare(*rest[i], *rest[i + 1]) == 0)
        i += 2;
      else
        kept.push_back(rest[i++]);
    }
    rest = std::move(kept);
  }

  bool dropAcc = (op == CBinOp::Add && acc == 0) || (op == CBinOp::Mul && acc == 1) ||
                 (op == CBinOp::And && acc == -1) ||
                 ((op == CBinOp::Or || op == CBinOp::Xor) && acc == 0);
  std::vector<CexprPtr> all;
  if (!dropAcc) all.push_back(cLit(acc));
  all.insert(all.end(), rest.begin(), rest.end());
  if (all.empty()) {
    switch (op) {
    case CBinOp::Add:
    case CBinOp::Or:
    case CBinOp::Xor: return cLit(0);
    case CBinOp::Mul: return cLit(1);
    default: return cLit(-1);  // And
    }
  }
  if (!dropAcc && acc == -1 && op == CBinOp::Mul && !rest.empty()) {
    all.erase(all.begin());
    return cUn(CUnOp::Neg, rebuild(op, all));
  }
  return rebuild(op, all);
}

CexprPtr canonUn(CUnOp op, CexprPtr a);

CexprPtr canonBin(CBinOp op, CexprPtr a, CexprPtr b) {
  if (isCommutative(op)) return canonCommutative(op, a, b);
  switch (op) {
  case CBinOp::Sub:
    if (isLit(*b, 0)) return a;
    if (structuralCompare(*a, *b) == 0) return cLit(0);
    if (isLit(*a) && isLit(*b)) return cLit(a->lit - b->lit);
    if (isLit(*a, 0)) return canonUn(CUnOp::Neg, b);
    if (isLit(*b)) return canonCommutative(CBinOp::Add, a, cLit(-b->lit));
    if (b->kind == Cexpr::Kind::UnOp && b->unop == CUnOp::Neg)
      return canonCommutative(CBinOp::Add, a, b->a);
    break;
  case CBinOp::Shl:
  case CBinOp::LShr:
  case CBinOp::AShr:
    if (isLit(*b, 0)) return a;
    if (isLit(*a, 0)) return cLit(0);
    break;
  case CBinOp::UDiv:
  case CBinOp::SDiv:
    if (isLit(*b, 1)) return a;
    break;
  case CBinOp::URem:
  case CBinOp::SRem:
    if (isLit(*b, 1)) return cLit(0);
    break;
  default:
    break;
  }
  return cBin(op, std::move(a), std::move(b));
}

CexprPtr canonUn(CUnOp op, CexprPtr a) {
  if (op == CUnOp::Neg) {
    if (isLit(*a)) return cLit(-a->lit);
    if (a->kind == Cexpr::Kind::SMin) return a;
    if (a->kind == Cexpr::Kind::UnOp && a->unop == CUnOp::Neg) return a->a;
    if (a->kind == Cexpr::Kind::UnOp && a->unop == CUnOp::Not)
      return canonCommutative(CBinOp::Add, a->a, cLit(1));  // -~x == x + 1
    if (a->kind == Cexpr::Kind::BinOp && a->binop == CBinOp::Sub)
      return canonBin(CBinOp::Sub, a->b, a->a);  // -(a - b) == b - a
    return cUn(CUnOp::Neg, std::move(a));
  }
  // Not
  if (isLit(*a)) return cLit(~a->lit);
  if (a->kind == Cexpr::Kind::UnOp && a->unop == CUnOp::Not) return a->a;
  if (a->kind == Cexpr::Kind::UnOp && a->unop == CUnOp::Neg)
    return canonCommutative(CBinOp::Add, a->a, cLit(-1));  // ~-x == x - 1
  return cUn(CUnOp::Not, std::move(a));
}

CexprPtr canonCFun(CFun f, CexprPtr a) {
  if (f == CFun::Abs) {
    if (a->kind == Cexpr::Kind::SMin) return a;
    // The sign of a literal depends on the bit width, so only fold values
    // that read the same at every width.
    if (isLit(*a) && (a->lit == 0 || a->lit == 1)) return a;
    if (a->kind == Cexpr::Kind::CFun && a->cfun == CFun::Abs) return a;
    if (a->kind == Cexpr::Kind::UnOp && a->unop == CUnOp::Neg)
      return canonCFun(CFun::Abs, a->a);
    return cFun(f, std::move(a));
  }
  if (isLit(*a, 1)) return cLit(0);
  return cFun(f, std::move(a));
}

}  // namespace

CexprPtr canonCexpr(const CexprPtr &e) {
  switch (e->kind) {
  case Cexpr::Kind::Lit:
  case Cexpr::Kind::SMin:
  case Cexpr::Kind::SymConst:
  case Cexpr::Kind::WidthOf:
    return e;
  case Cexpr::Kind::UnOp:
    return canonUn(e->unop, canonCexpr(e->a));
  case Cexpr::Kind::BinOp:
    return canonBin(e->binop, canonCexpr(e->a), canonCexpr(e->b));
  case Cexpr::Kind::CFun:
    return canonCFun(e->cfun, canonCexpr(e->a));
  }
  return e;
}

int weightOf(const Cexpr &e) {
  switch (e.kind) {
  case Cexpr::Kind::Lit:
  case Cexpr::Kind::SMin:
  case Cexpr::Kind::SymConst:
    return 1;
  case Cexpr::Kind::WidthOf:
    return 2;
  case Cexpr::Kind::UnOp:
    return weightOf(*e.a);
  case Cexpr::Kind::BinOp:
    return weightOf(*e.a) + weightOf(*e.b);
  case Cexpr::Kind::CFun:
    return weightOf(*e.a) + 1;
  }
  return 0;
}

int weightOf(const Pred &p) {
  switch (p.kind) {
  case Pred::Kind::Cmp:
    return weightOf(*p.ca) + weightOf(*p.cb);
  case Pred::Kind::PFun:
    return weightOf(*p.ca) + 1;
  default:
    return 1;
  }
}

// --- PredicateStream --------------------------------------------------------

namespace {

CexprPtr retype(const CexprPtr &e, TypeRef ctx) {
  auto c = std::make_shared<Cexpr>(*e);
  c->type = ctx;
  if (c->a) c->a = retype(c->a, ctx);
  if (c->b) c->b = retype(c->b, ctx);
  return CexprPtr(std::move(c));
}

constexpr size_t kMaxPreds = 200000;

// With several symbolic constants the tier sizes multiply, so bound the raw
// expression pool; the useful predicates all come from cheap expressions.
constexpr size_t kMaxCexprs = 20000;

}  // namespace

PredicateStream::PredicateStream(const Optimization &opt, int maxWeight)
    : opt_(opt), maxWeight_(maxWeight) {
  tiers_.resize(static_cast<size_t>(maxWeight_) + 1);
}

PredPtr PredicateStream::get(size_t i) {
  growTo(i);
  return i < preds_.size() ? preds_[i] : nullptr;
}

void PredicateStream::growTo(size_t i) {
  while (i >= preds_.size() && !exhausted_) {
    if (builtWeight_ >= maxWeight_) {
      exhausted_ = true;
      break;
    }
    ++builtWeight_;
    buildCexprTier(builtWeight_);
    emitPredTier(builtWeight_);
  }
}

void PredicateStream::addCexpr(int w, CexprPtr raw) {
  if (cexprCount_ >= kMaxCexprs) return;
  CexprPtr e = canonCexpr(raw);
  if (weightOf(*e) != w) return;  // folded into an earlier tier
  std::string key = toString(e);
  if (!cexprSeen_.insert(key).second) return;
  ++cexprCount_;

  Entry en;
  en.e = e;
  en.key = std::move(key);
  en.symRep = -1;
  en.ctxHint = -1;
  std::vector<std::string> syms;
  collectSymConsts(*e, syms);
  for (const auto &s : syms) {
    int id = opt_.findNode(s);
    TypeRef r = opt_.types.find(opt_.node(id).type);
    if (en.symRep >= 0 && en.symRep != r) return;  // mixes widths, ill-typed
    en.symRep = r;
  }
  en.hasSym = !syms.empty();
  en.ctxHint = en.symRep;
  if (en.ctxHint < 0) {
    // First width() leaf decides the evaluation width.
    std::vector<const Cexpr *> stack{e.get()};
    while (!stack.empty()) {
      const Cexpr *c = stack.back();
      stack.pop_back();
      if (c->kind == Cexpr::Kind::WidthOf) {
        en.ctxHint = opt_.types.find(opt_.node(opt_.findNode(c->name)).type);
        en.hasSym = true;
        break;
      }
      if (c->b) stack.push_back(c->b.get());
      if (c->a) stack.push_back(c->a.get());
    }
  } else {
    // width() inside also counts as symbolic, already covered by symRep.
    std::vector<const Cexpr *> stack{e.get()};
    while (!stack.empty()) {
      const Cexpr *c = stack.back();
      stack.pop_back();
      if (c->kind == Cexpr::Kind::WidthOf) { en.hasSym = true; break; }
      if (c->b) stack.push_back(c->b.get());
      if (c->a) stack.push_back(c->a.get());
    }
  }
  if (!en.hasSym && w > 2) return;  // literal-only terms stay small
  tiers_[w].push_back(std::move(en));
}

void PredicateStream::buildCexprTier(int w) {
  if (w == 1) {
    std::vector<int64_t> pool = {0, 1, -1};
    for (const Node &n : opt_.nodes)
      if (n.kind == Node::Kind::ConstLiteral &&
          std::find(pool.begin(), pool.end(), n.lit) == pool.end())
        pool.push_back(n.lit);
    for (int64_t v : pool) addCexpr(1, cLit(v));
    addCexpr(1, cSMin());
    for (int id : opt_.symConsts) addCexpr(1, cSym(opt_.node(id).name));
    return;
  }
  if (w == 2) {
    // width() only matters when the rewrite spans several widths.
    std::set<TypeRef> reps;
    for (int id : opt_.inputVars) reps.insert(opt_.types.find(opt_.node(id).type));
    for (int id : opt_.symConsts) reps.insert(opt_.types.find(opt_.node(id).type));
    if (reps.size() >= 2) {
      for (int id : opt_.inputVars) addCexpr(2, cWidth(opt_.node(id).name));
      for (int id : opt_.symConsts) addCexpr(2, cWidth(opt_.node(id).name));
    }
  }
  for (const Entry &a : tiers_[w - 1]) {
    addCexpr(w, cFun(CFun::Abs, a.e));
    addCexpr(w, cFun(CFun::Log2, a.e));
  }
  static const CBinOp kBinOps[] = {CBinOp::Add, CBinOp::Sub, CBinOp::Mul,
                                   CBinOp::UDiv, CBinOp::SDiv, CBinOp::URem,
                                   CBinOp::SRem, CBinOp::Shl, CBinOp::LShr,
                                   CBinOp::AShr, CBinOp::And, CBinOp::Or,
                                   CBinOp::Xor};
  for (int i = 1; i < w; ++i)
    for (const Entry &a : tiers_[i])
      for (const Entry &b : tiers_[w - i])
        for (CBinOp op : kBinOps)
          addCexpr(w, cBin(op, a.e, b.e));

  // The unary operators are weight-free; one application each over the tier.
  // Iterating over the additions too would not terminate: the -~x fold makes
  // x+1, whose literal keeps the weight, and so on without end.
  const size_t base = tiers_[w].size();
  for (size_t i = 0; i < base; ++i) {
    CexprPtr e = tiers_[w][i].e;
    addCexpr(w, cUn(CUnOp::Neg, e));
    addCexpr(w, cUn(CUnOp::Not, e));
  }
}

bool PredicateStream::addPred(PredPtr p) {
  if (preds_.size() >= kMaxPreds) {
    exhausted_ = true;
    return false;
  }
  std::string key = toString(p);
  if (!predSeen_.insert(std::move(key)).second) return true;
  preds_.push_back(std::move(p));
  return true;
}

void PredicateStream::emitPredTier(int w) {
  if (w < 2) return;
  static const PFun kPFuns[] = {PFun::IsSignBit, PFun::IsPowerOf2,
                                PFun::IsPowerOf2OrZero};
  for (const Entry &a : tiers_[w - 1]) {
    if (!a.hasSym || a.ctxHint < 0) continue;
    for (PFun f : kPFuns)
      if (!addPred(pFun(f, retype(a.e, a.ctxHint)))) return;
  }
  static const Cond kConds[] = {Cond::Eq, Cond::Ult, Cond::Slt};
  for (Cond c : kConds) {
    for (int i = 1; i < w; ++i) {
      for (const Entry &a : tiers_[i]) {
        for (const Entry &b : tiers_[w - i]) {
          if (!a.hasSym && !b.hasSym) continue;
          if (a.symRep >= 0 && b.symRep >= 0 && a.symRep != b.symRep) continue;
          int cmp = structuralCompare(*a.e, *b.e);
          if (cmp == 0) continue;
          if (c == Cond::Eq && cmp > 0) continue;  // one orientation suffices
          TypeRef ctx = a.symRep >= 0 ? a.symRep
                        : b.symRep >= 0 ? b.symRep
                        : a.ctxHint >= 0 ? a.ctxHint
                                         : b.ctxHint;
          if (ctx < 0) continue;
          if (!addPred(pCmp(c, retype(a.e, ctx), retype(b.e, ctx)))) return;
        }
      }
    }
  }
}

}  // namespace pinfer
