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

#include "pinfer/term.hpp"

#include <sstream>

namespace pinfer {

CexprPtr cLit(int64_t v, TypeRef t) {
  auto e = std::make_shared<Cexpr>();
  e->kind = Cexpr::Kind::Lit;
  e->lit = v;
  e->type = t;
  return e;
}
CexprPtr cSMin(TypeRef t) {
  auto e = std::make_shared<Cexpr>();
  e->kind = Cexpr::Kind::SMin;
  e->type = t;
  return e;
}
CexprPtr cSym(const std::string &name, TypeRef t) {
  auto e = std::make_shared<Cexpr>();
  e->kind = Cexpr::Kind::SymConst;
  e->name = name;
  e->type = t;
  return e;
}
CexprPtr cUn(CUnOp op, CexprPtr a) {
  auto e = std::make_shared<Cexpr>();
  e->kind = Cexpr::Kind::UnOp;
  e->unop = op;
  e->type = a ? a->type : -1;
  e->a = std::move(a);
  return e;
}
CexprPtr cBin(CBinOp op, CexprPtr a, CexprPtr b) {
  auto e = std::make_shared<Cexpr>();
  e->kind = Cexpr::Kind::BinOp;
  e->binop = op;
  e->type = a ? a->type : -1;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}
CexprPtr cFun(CFun f, CexprPtr a) {
  auto e = std::make_shared<Cexpr>();
  e->kind = Cexpr::Kind::CFun;
  e->cfun = f;
  e->type = a ? a->type : -1;
  e->a = std::move(a);
  return e;
}
CexprPtr cWidth(const std::string &value, TypeRef t) {
  auto e = std::make_shared<Cexpr>();
  e->kind = Cexpr::Kind::WidthOf;
  e->name = value;
  e->type = t;
  return e;
}

PredPtr pTrue() {
  auto p = std::make_shared<Pred>();
  p->kind = Pred::Kind::True;
  return p;
}
PredPtr pFalse() {
  auto p = std::make_shared<Pred>();
  p->kind = Pred::Kind::False;
  return p;
}
PredPtr pCmp(Cond c, CexprPtr a, CexprPtr b) {
  auto p = std::make_shared<Pred>();
  p->kind = Pred::Kind::Cmp;
  p->cond = c;
  p->ca = std::move(a);
  p->cb = std::move(b);
  return p;
}
PredPtr pFun(PFun f, CexprPtr a) {
  auto p = std::make_shared<Pred>();
  p->kind = Pred::Kind::PFun;
  p->pfun = f;
  p->ca = std::move(a);
  return p;
}
PredPtr pNot(PredPtr a) {
  auto p = std::make_shared<Pred>();
  p->kind = Pred::Kind::Not;
  p->pa = std::move(a);
  return p;
}
PredPtr pAnd(PredPtr a, PredPtr b) {
  auto p = std::make_shared<Pred>();
  p->kind = Pred::Kind::And;
  p->pa = std::move(a);
  p->pb = std::move(b);
  return p;
}
PredPtr pOr(PredPtr a, PredPtr b) {
  auto p = std::make_shared<Pred>();
  p->kind = Pred::Kind::Or;
  p->pa = std::move(a);
  p->pb = std::move(b);
  return p;
}

PredPtr pAndAll(const std::vector<PredPtr> &ps) {
  if (ps.empty()) return pTrue();
  PredPtr r = ps[0];
  for (size_t i = 1; i < ps.size(); ++i) r = pAnd(r, ps[i]);
  return r;
}
PredPtr pOrAll(const std::vector<PredPtr> &ps) {
  if (ps.empty()) return pFalse();
  PredPtr r = ps[0];
  for (size_t i = 1; i < ps.size(); ++i) r = pOr(r, ps[i]);
  return r;
}

// --- structural comparison --------------------------------------------------

static int cmp3(int64_t a, int64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

int structuralCompare(const Cexpr &a, const Cexpr &b) {
  if (int c = cmp3(static_cast<int>(a.kind), static_cast<int>(b.kind))) return c;
  switch (a.kind) {
  case Cexpr::Kind::Lit: return cmp3(a.lit, b.lit);
  case Cexpr::Kind::SMin: return 0;
  case Cexpr::Kind::SymConst:
  case Cexpr::Kind::WidthOf: return a.name.compare(b.name);
  case Cexpr::Kind::UnOp:
    if (int c = cmp3(static_cast<int>(a.unop), static_cast<int>(b.unop))) return c;
    return structuralCompare(*a.a, *b.a);
  case Cexpr::Kind::BinOp:
    if (int c = cmp3(static_cast<int>(a.binop), static_cast<int>(b.binop))) return c;
    if (int c = structuralCompare(*a.a, *b.a)) return c;
    return structuralCompare(*a.b, *b.b);
  case Cexpr::Kind::CFun:
    if (int c = cmp3(static_cast<int>(a.cfun), static_cast<int>(b.cfun))) return c;
    return structuralCompare(*a.a, *b.a);
  }
  return 0;
}

int structuralCompare(const Pred &a, const Pred &b) {
  if (int c = cmp3(static_cast<int>(a.kind), static_cast<int>(b.kind))) return c;
  switch (a.kind) {
  case Pred::Kind::True:
  case Pred::Kind::False: return 0;
  case Pred::Kind::Cmp:
    if (int c = cmp3(static_cast<int>(a.cond), static_cast<int>(b.cond))) return c;
    if (int c = structuralCompare(*a.ca, *b.ca)) return c;
    return structuralCompare(*a.cb, *b.cb);
  case Pred::Kind::PFun:
    if (int c = cmp3(static_cast<int>(a.pfun), static_cast<int>(b.pfun))) return c;
    return structuralCompare(*a.ca, *b.ca);
  case Pred::Kind::Not: return structuralCompare(*a.pa, *b.pa);
  case Pred::Kind::And:
  case Pred::Kind::Or:
    if (int c = structuralCompare(*a.pa, *b.pa)) return c;
    return structuralCompare(*a.pb, *b.pb);
  }
  return 0;
}

bool structuralEqual(const PredPtr &a, const PredPtr &b) {
  if (!a || !b) return a == b;
  return structuralCompare(*a, *b) == 0;
}

bool mentionsSymbol(const Cexpr &e) {
  switch (e.kind) {
  case Cexpr::Kind::SymConst:
  case Cexpr::Kind::WidthOf: return true;
  case Cexpr::Kind::UnOp:
  case Cexpr::Kind::CFun: return mentionsSymbol(*e.a);
  case Cexpr::Kind::BinOp: return mentionsSymbol(*e.a) || mentionsSymbol(*e.b);
  default: return false;
  }
}

void collectSymConsts(const Cexpr &e, std::vector<std::string> &out) {
  switch (e.kind) {
  case Cexpr::Kind::SymConst: out.push_back(e.name); break;
  case Cexpr::Kind::UnOp:
  case Cexpr::Kind::CFun: collectSymConsts(*e.a, out); break;
  case Cexpr::Kind::BinOp:
    collectSymConsts(*e.a, out);
    collectSymConsts(*e.b, out);
    break;
  default: break;
  }
}
void collectSymConsts(const Pred &p, std::vector<std::string> &out) {
  switch (p.kind) {
  case Pred::Kind::Cmp:
    collectSymConsts(*p.ca, out);
    collectSymConsts(*p.cb, out);
    break;
  case Pred::Kind::PFun: collectSymConsts(*p.ca, out); break;
  case Pred::Kind::Not: collectSymConsts(*p.pa, out); break;
  case Pred::Kind::And:
  case Pred::Kind::Or:
    collectSymConsts(*p.pa, out);
    collectSymConsts(*p.pb, out);
    break;
  default: break;
  }
}

// --- printing ---------------------------------------------------------------

const char *condToken(Cond c) {
  switch (c) {
  case Cond::Eq: return "==";
  case Cond::Ne: return "!=";
  case Cond::Ugt: return "u>";
  case Cond::Uge: return "u>=";
  case Cond::Ult: return "u<";
  case Cond::Ule: return "u<=";
  case Cond::Sgt: return ">";
  case Cond::Sge: return ">=";
  case Cond::Slt: return "<";
  case Cond::Sle: return "<=";
  }
  return "?";
}

const char *binopToken(CBinOp op) {
  switch (op) {
  case CBinOp::Add: return "+";
  case CBinOp::Sub: return "-";
  case CBinOp::Mul: return "*";
  case CBinOp::UDiv: return "/u";
  case CBinOp::SDiv: return "/";
  case CBinOp::URem: return "%u";
  case CBinOp::SRem: return "%";
  case CBinOp::Shl: return "<<";
  case CBinOp::LShr: return "u>>";
  case CBinOp::AShr: return ">>";
  case CBinOp::And: return "&";
  case CBinOp::Or: return "|";
  case CBinOp::Xor: return "^";
  }
  return "?";
}

Cond condSwap(Cond c) {
  switch (c) {
  case Cond::Ugt: return Cond::Ult;
  case Cond::Uge: return Cond::Ule;
  case Cond::Ult: return Cond::Ugt;
  case Cond::Ule: return Cond::Uge;
  case Cond::Sgt: return Cond::Slt;
  case Cond::Sge: return Cond::Sle;
  case Cond::Slt: return Cond::Sgt;
  case Cond::Sle: return Cond::Sge;
  default: return c;
  }
}

Cond condNegate(Cond c) {
  switch (c) {
  case Cond::Eq: return Cond::Ne;
  case Cond::Ne: return Cond::Eq;
  case Cond::Ugt: return Cond::Ule;
  case Cond::Uge: return Cond::Ult;
  case Cond::Ult: return Cond::Uge;
  case Cond::Ule: return Cond::Ugt;
  case Cond::Sgt: return Cond::Sle;
  case Cond::Sge: return Cond::Slt;
  case Cond::Slt: return Cond::Sge;
  case Cond::Sle: return Cond::Sgt;
  }
  return c;
}

namespace {

// Precedence levels, tighter binds higher.
enum { kPrimary = 9, kUnary = 8, kMul = 7, kAdd = 6, kShift = 5, kBitAnd = 4, kBitXor = 3, kBitOr = 2 };

int binopPrec(CBinOp op) {
  switch (op) {
  case CBinOp::Mul:
  case CBinOp::UDiv:
  case CBinOp::SDiv:
  case CBinOp::URem:
  case CBinOp::SRem: return kMul;
  case CBinOp::Add:
  case CBinOp::Sub: return kAdd;
  case CBinOp::Shl:
  case CBinOp::LShr:
  case CBinOp::AShr: return kShift;
  case CBinOp::And: return kBitAnd;
  case CBinOp::Xor: return kBitXor;
  case CBinOp::Or: return kBitOr;
  }
  return kPrimary;
}

void printCexpr(std::ostream &os, const Cexpr &e, int parentPrec) {
  switch (e.kind) {
  case Cexpr::Kind::Lit: os << e.lit; return;
  case Cexpr::Kind::SMin: os << "smin"; return;
  case Cexpr::Kind::SymConst: os << e.name; return;
  case Cexpr::Kind::WidthOf: os << "width(" << e.name << ")"; return;
  case Cexpr::Kind::CFun:
    os << (e.cfun == CFun::Abs ? "abs(" : "log2(");
    printCexpr(os, *e.a, 0);
    os << ")";
    return;
  case Cexpr::Kind::UnOp: {
    bool paren = parentPrec > kUnary;
    if (paren) os << "(";
    os << (e.unop == CUnOp::Neg ? "-" : "~");
    printCexpr(os, *e.a, kUnary + 1);
    if (paren) os << ")";
    return;
  }
  case Cexpr::Kind::BinOp: {
    int prec = binopPrec(e.binop);
    bool paren = parentPrec > prec;
    if (paren) os << "(";
    printCexpr(os, *e.a, prec);
    os << " " << binopToken(e.binop) << " ";
    // Binops associate left; force parens on a right child of equal precedence.
    printCexpr(os, *e.b, prec + 1);
    if (paren) os << ")";
    return;
  }
  }
}

const char *pfunName(PFun f) {
  switch (f) {
  case PFun::IsSignBit: return "isSignBit";
  case PFun::IsPowerOf2: return "isPowerOf2";
  case PFun::IsPowerOf2OrZero: return "isPowerOf2OrZero";
  }
  return "?";
}

enum { kPredOr = 1, kPredAnd = 2, kPredNot = 3, kPredAtom = 4 };

void printPred(std::ostream &os, const Pred &p, int parentPrec) {
  switch (p.kind) {
  case Pred::Kind::True: os << "true"; return;
  case Pred::Kind::False: os << "false"; return;
  case Pred::Kind::Cmp:
    printCexpr(os, *p.ca, 1);
    os << " " << condToken(p.cond) << " ";
    printCexpr(os, *p.cb, 1);
    return;
  case Pred::Kind::PFun:
    os << pfunName(p.pfun) << "(";
    printCexpr(os, *p.ca, 0);
    os << ")";
    return;
  case Pred::Kind::Not:
    os << "!";
    if (p.pa->kind == Pred::Kind::PFun || p.pa->kind == Pred::Kind::True ||
        p.pa->kind == Pred::Kind::False || p.pa->kind == Pred::Kind::Not) {
      printPred(os, *p.pa, kPredNot);
    } else {
      os << "(";
      printPred(os, *p.pa, 0);
      os << ")";
    }
    return;
  case Pred::Kind::And: {
    bool paren = parentPrec > kPredAnd || p.pa->kind == Pred::Kind::Cmp || true;
    // Comparisons inside &&/|| are always parenthesized for readability.
    (void)paren;
    auto side = [&os](const Pred &q, int prec) {
      if (q.kind == Pred::Kind::Cmp) {
        os << "(";
        printPred(os, q, 0);
        os << ")";
      } else {
        printPred(os, q, prec);
      }
    };
    bool outer = parentPrec > kPredAnd;
    if (outer) os << "(";
    side(*p.pa, kPredAnd);
    os << " && ";
    side(*p.pb, kPredAnd + 1);
    if (outer) os << ")";
    return;
  }
  case Pred::Kind::Or: {
    auto side = [&os](const Pred &q, int prec) {
      if (q.kind == Pred::Kind::Cmp) {
        os << "(";
        printPred(os, q, 0);
        os << ")";
      } else {
        printPred(os, q, prec);
      }
    };
    bool outer = parentPrec > kPredOr;
    if (outer) os << "(";
    side(*p.pa, kPredOr);
    os << " || ";
    side(*p.pb, kPredOr + 1);
    if (outer) os << ")";
    return;
  }
  }
}

}  // namespace

std::string toString(const CexprPtr &e) {
  std::ostringstream os;
  printCexpr(os, *e, 0);
  return os.str();
}

std::string toString(const PredPtr &p) {
  std::ostringstream os;
  printPred(os, *p, 0);
  return os.str();
}

}  // namespace pinfer
