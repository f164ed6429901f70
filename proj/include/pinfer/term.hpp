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
// ASTs for the precondition language: predicates over constant expressions.
//
//   pre    ::= pred | !pre | pre && pre | pre || pre
//   pred   ::= cexpr cond cexpr | pfun(cexpr)
//   cexpr  ::= literal | smin | C | -cexpr | ~cexpr | cexpr binop cexpr
//            | abs(cexpr) | log2(cexpr) | width(value)
//
// Terms are immutable and shared. Each cexpr carries the type variable it was
// checked against; widths are resolved through a TypeAssignment at evaluation
// time.

#ifndef PINFER_TERM_HPP
#define PINFER_TERM_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pinfer {

using TypeRef = int;

enum class Cond { Eq, Ne, Ugt, Uge, Ult, Ule, Sgt, Sge, Slt, Sle };
enum class CUnOp { Neg, Not };
enum class CBinOp { Add, Sub, Mul, UDiv, SDiv, URem, SRem, Shl, LShr, AShr, And, Or, Xor };
enum class CFun { Abs, Log2 };
enum class PFun { IsSignBit, IsPowerOf2, IsPowerOf2OrZero };

struct Cexpr;
using CexprPtr = std::shared_ptr<const Cexpr>;

struct Cexpr {
  enum class Kind { Lit, SMin, SymConst, UnOp, BinOp, CFun, WidthOf };
  Kind kind;
  int64_t lit = 0;        // Lit: value, reduced modulo the context width at eval
  std::string name;       // SymConst / WidthOf
  CUnOp unop{};
  CBinOp binop{};
  CFun cfun{};
  CexprPtr a, b;
  mutable TypeRef type = -1;  // set during type checking / enumeration
};

struct Pred;
using PredPtr = std::shared_ptr<const Pred>;

struct Pred {
  enum class Kind { True, False, Cmp, PFun, Not, And, Or };
  Kind kind;
  Cond cond{};
  PFun pfun{};
  CexprPtr ca, cb;  // Cmp operands / PFun argument (ca)
  PredPtr pa, pb;
};

// --- builders ---------------------------------------------------------------
CexprPtr cLit(int64_t v, TypeRef t = -1);
CexprPtr cSMin(TypeRef t = -1);
CexprPtr cSym(const std::string &name, TypeRef t = -1);
CexprPtr cUn(CUnOp op, CexprPtr a);
CexprPtr cBin(CBinOp op, CexprPtr a, CexprPtr b);
CexprPtr cFun(CFun f, CexprPtr a);
CexprPtr cWidth(const std::string &value, TypeRef t = -1);

PredPtr pTrue();
PredPtr pFalse();
PredPtr pCmp(Cond c, CexprPtr a, CexprPtr b);
PredPtr pFun(PFun f, CexprPtr a);
PredPtr pNot(PredPtr a);
PredPtr pAnd(PredPtr a, PredPtr b);
PredPtr pOr(PredPtr a, PredPtr b);

// Conjunction/disjunction of a list; empty list yields true/false respectively.
PredPtr pAndAll(const std::vector<PredPtr> &ps);
PredPtr pOrAll(const std::vector<PredPtr> &ps);

// --- queries ----------------------------------------------------------------
int structuralCompare(const Cexpr &a, const Cexpr &b);
int structuralCompare(const Pred &a, const Pred &b);
bool structuralEqual(const PredPtr &a, const PredPtr &b);
bool mentionsSymbol(const Cexpr &e);  // contains a SymConst or width() leaf
void collectSymConsts(const Cexpr &e, std::vector<std::string> &out);
void collectSymConsts(const Pred &p, std::vector<std::string> &out);

// --- printing ---------------------------------------------------------------
std::string toString(const CexprPtr &e);
std::string toString(const PredPtr &p);

const char *condToken(Cond c);
const char *binopToken(CBinOp op);
Cond condSwap(Cond c);    // a c b  ==  b (swap c) a
Cond condNegate(Cond c);  // !(a c b) == a (negate c) b

}  // namespace pinfer

#endif  // PINFER_TERM_HPP
