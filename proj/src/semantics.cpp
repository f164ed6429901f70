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

#include "pinfer/semantics.hpp"

#include <cassert>

namespace pinfer {

int Env::widthOfName(const std::string &name) const {
  int id = opt->findNode(name);
  assert(id >= 0);
  return ta->width(opt->node(id).type);
}

std::optional<BitVec> evalCexpr(const Env &env, const Cexpr &e) {
  int w = env.width(e.type);
  switch (e.kind) {
  case Cexpr::Kind::Lit:
    return BitVec::fromSigned(w, e.lit);
  case Cexpr::Kind::SMin:
    return BitVec::signedMin(w);
  case Cexpr::Kind::SymConst: {
    auto it = env.consts.find(e.name);
    assert(it != env.consts.end());
    return it->second;
  }
  case Cexpr::Kind::WidthOf:
    return BitVec(w, static_cast<uint64_t>(env.widthOfName(e.name)));
  case Cexpr::Kind::UnOp: {
    auto a = evalCexpr(env, *e.a);
    if (!a) return std::nullopt;
    return e.unop == CUnOp::Neg ? bvNeg(*a) : bvNot(*a);
  }
  case Cexpr::Kind::CFun: {
    auto a = evalCexpr(env, *e.a);
    if (!a) return std::nullopt;
    if (e.cfun == CFun::Abs) return bvAbs(*a);
    if (a->isZero()) return std::nullopt;  // log2(0)
    return bvLog2(*a);
  }
  case Cexpr::Kind::BinOp: {
    auto a = evalCexpr(env, *e.a);
    if (!a) return std::nullopt;
    auto b = evalCexpr(env, *e.b);
    if (!b) return std::nullopt;
    switch (e.binop) {
    case CBinOp::Add: return bvAdd(*a, *b);
    case CBinOp::Sub: return bvSub(*a, *b);
    case CBinOp::Mul: return bvMul(*a, *b);
    case CBinOp::And: return bvAnd(*a, *b);
    case CBinOp::Or: return bvOr(*a, *b);
    case CBinOp::Xor: return bvXor(*a, *b);
    case CBinOp::UDiv:
      if (b->isZero()) return std::nullopt;
      return bvUDiv(*a, *b);
    case CBinOp::URem:
      if (b->isZero()) return std::nullopt;
      return bvURem(*a, *b);
    case CBinOp::SDiv:
      if (b->isZero() || (a->isSignedMin() && b->isAllOnes())) return std::nullopt;
      return bvSDiv(*a, *b);
    case CBinOp::SRem:
      if (b->isZero() || (a->isSignedMin() && b->isAllOnes())) return std::nullopt;
      return bvSRem(*a, *b);
    case CBinOp::Shl:
      if (b->bits >= static_cast<uint64_t>(w)) return std::nullopt;
      return bvShl(*a, *b);
    case CBinOp::LShr:
      if (b->bits >= static_cast<uint64_t>(w)) return std::nullopt;
      return bvLShr(*a, *b);
    case CBinOp::AShr:
      if (b->bits >= static_cast<uint64_t>(w)) return std::nullopt;
      return bvAShr(*a, *b);
    }
    return std::nullopt;
  }
  }
  return std::nullopt;
}

static bool cmpHolds(Cond c, BitVec a, BitVec b) {
  switch (c) {
  case Cond::Eq: return a.bits == b.bits;
  case Cond::Ne: return a.bits != b.bits;
  case Cond::Ugt: return a.bits > b.bits;
  case Cond::Uge: return a.bits >= b.bits;
  case Cond::Ult: return a.bits < b.bits;
  case Cond::Ule: return a.bits <= b.bits;
  case Cond::Sgt: return a.toSigned() > b.toSigned();
  case Cond::Sge: return a.toSigned() >= b.toSigned();
  case Cond::Slt: return a.toSigned() < b.toSigned();
  case Cond::Sle: return a.toSigned() <= b.toSigned();
  }
  return false;
}

static bool pfunHolds(PFun f, BitVec a) {
  switch (f) {
  case PFun::IsSignBit: return a.isSignedMin();
  case PFun::IsPowerOf2: return bvIsPowerOf2(a);
  case PFun::IsPowerOf2OrZero: return bvIsPowerOf2OrZero(a);
  }
  return false;
}

TriBool evalPred(const Env &env, const Pred &p) {
  switch (p.kind) {
  case Pred::Kind::True: return TriBool::Accept;
  case Pred::Kind::False: return TriBool::Reject;
  case Pred::Kind::Cmp: {
    auto a = evalCexpr(env, *p.ca);
    if (!a) return TriBool::Unsafe;
    auto b = evalCexpr(env, *p.cb);
    if (!b) return TriBool::Unsafe;
    return cmpHolds(p.cond, *a, *b) ? TriBool::Accept : TriBool::Reject;
  }
  case Pred::Kind::PFun: {
    auto a = evalCexpr(env, *p.ca);
    if (!a) return TriBool::Unsafe;
    return pfunHolds(p.pfun, *a) ? TriBool::Accept : TriBool::Reject;
  }
  case Pred::Kind::Not:
    return tbNot(evalPred(env, *p.pa));
  case Pred::Kind::And: {
    TriBool l = evalPred(env, *p.pa);
    if (l != TriBool::Accept) return l;
    return evalPred(env, *p.pb);
  }
  case Pred::Kind::Or: {
    TriBool l = evalPred(env, *p.pa);
    if (l != TriBool::Reject) return l;
    return evalPred(env, *p.pb);
  }
  }
  return TriBool::Unsafe;
}

bool cexprSafe(const Env &env, const Cexpr &e) {
  switch (e.kind) {
  case Cexpr::Kind::Lit:
  case Cexpr::Kind::SMin:
  case Cexpr::Kind::SymConst:
  case Cexpr::Kind::WidthOf:
    return true;
  case Cexpr::Kind::UnOp:
    return cexprSafe(env, *e.a);
  case Cexpr::Kind::CFun:
    if (!cexprSafe(env, *e.a)) return false;
    if (e.cfun == CFun::Abs) return true;
    return !evalCexpr(env, *e.a)->isZero();
  case Cexpr::Kind::BinOp: {
    if (!cexprSafe(env, *e.a) || !cexprSafe(env, *e.b)) return false;
    BitVec a = *evalCexpr(env, *e.a);
    BitVec b = *evalCexpr(env, *e.b);
    switch (e.binop) {
    case CBinOp::UDiv:
    case CBinOp::URem:
      return !b.isZero();
    case CBinOp::SDiv:
    case CBinOp::SRem:
      return !b.isZero() && !(a.isSignedMin() && b.isAllOnes());
    case CBinOp::Shl:
    case CBinOp::LShr:
    case CBinOp::AShr:
      return b.bits < static_cast<uint64_t>(a.width);
    default:
      return true;
    }
  }
  }
  return true;
}

bool predSafe(const Env &env, const Pred &p) {
  switch (p.kind) {
  case Pred::Kind::True:
  case Pred::Kind::False:
    return true;
  case Pred::Kind::Cmp:
    return cexprSafe(env, *p.ca) && cexprSafe(env, *p.cb);
  case Pred::Kind::PFun:
    return cexprSafe(env, *p.ca);
  case Pred::Kind::Not:
    return predSafe(env, *p.pa);
  case Pred::Kind::And:
    return predSafe(env, *p.pa) &&
           (evalPred(env, *p.pa) == TriBool::Reject || predSafe(env, *p.pb));
  case Pred::Kind::Or:
    return predSafe(env, *p.pa) &&
           (evalPred(env, *p.pa) == TriBool::Accept || predSafe(env, *p.pb));
  }
  return true;
}

namespace {

// Per-instruction definedness given already-computed operand values.
bool instrDefined(const Node &n, const std::vector<BitVec> &val) {
  if (n.kind != Node::Kind::Instr) return true;
  auto a = [&] { return val[n.operands[0]]; };
  auto b = [&] { return val[n.operands[1]]; };
  switch (n.op) {
  case Opcode::Add:
    if (n.flags.nuw && addOverflowU(a(), b())) return false;
    if (n.flags.nsw && addOverflowS(a(), b())) return false;
    return true;
  case Opcode::Sub:
    if (n.flags.nuw && subOverflowU(a(), b())) return false;
    if (n.flags.nsw && subOverflowS(a(), b())) return false;
    return true;
  case Opcode::Mul:
    if (n.flags.nuw && mulOverflowU(a(), b())) return false;
    if (n.flags.nsw && mulOverflowS(a(), b())) return false;
    return true;
  case Opcode::UDiv:
    if (b().isZero()) return false;
    if (n.flags.exact && !bvURem(a(), b()).isZero()) return false;
    return true;
  case Opcode::SDiv:
    if (b().isZero()) return false;
    if (a().isSignedMin() && b().isAllOnes()) return false;
    if (n.flags.exact && !bvSRem(a(), b()).isZero()) return false;
    return true;
  case Opcode::URem:
    return !b().isZero();
  case Opcode::SRem:
    return !b().isZero() && !(a().isSignedMin() && b().isAllOnes());
  case Opcode::Shl: {
    if (b().bits >= static_cast<uint64_t>(a().width)) return false;
    BitVec r = bvShl(a(), b());
    if (n.flags.nuw && !(bvLShr(r, b()) == a())) return false;
    if (n.flags.nsw && !(bvAShr(r, b()) == a())) return false;
    return true;
  }
  case Opcode::LShr:
    if (b().bits >= static_cast<uint64_t>(a().width)) return false;
    if (n.flags.exact && !(bvShl(bvLShr(a(), b()), b()) == a())) return false;
    return true;
  case Opcode::AShr:
    if (b().bits >= static_cast<uint64_t>(a().width)) return false;
    if (n.flags.exact && !(bvShl(bvAShr(a(), b()), b()) == a())) return false;
    return true;
  default:
    return true;
  }
}

BitVec instrValue(const Env &env, const Node &n, const std::vector<BitVec> &val) {
  int w = env.width(n.type);
  auto a = [&] { return val[n.operands[0]]; };
  auto b = [&] { return val[n.operands[1]]; };
  switch (n.op) {
  case Opcode::Add: return bvAdd(a(), b());
  case Opcode::Sub: return bvSub(a(), b());
  case Opcode::Mul: return bvMul(a(), b());
  case Opcode::UDiv: return bvUDiv(a(), b());
  case Opcode::SDiv: return bvSDiv(a(), b());
  case Opcode::URem: return bvURem(a(), b());
  case Opcode::SRem: return bvSRem(a(), b());
  case Opcode::Shl: return bvShl(a(), b());
  case Opcode::LShr: return bvLShr(a(), b());
  case Opcode::AShr: return bvAShr(a(), b());
  case Opcode::And: return bvAnd(a(), b());
  case Opcode::Or: return bvOr(a(), b());
  case Opcode::Xor: return bvXor(a(), b());
  case Opcode::ICmp: return BitVec(1, cmpHolds(n.cond, a(), b()) ? 1 : 0);
  case Opcode::Select: return val[n.operands[0]].bits ? val[n.operands[1]] : val[n.operands[2]];
  case Opcode::ZExt: return bvZExt(a(), w);
  case Opcode::SExt: return bvSExt(a(), w);
  case Opcode::Trunc: return bvTrunc(a(), w);
  case Opcode::Copy: return a();
  }
  return BitVec(w, 0);
}

void markReachable(const Optimization &opt, int root, std::vector<char> &mark) {
  if (mark[root]) return;
  mark[root] = 1;
  for (int op : opt.node(root).operands) markReachable(opt, op, mark);
}

}  // namespace

EvalResult evalRewrite(const Env &env) {
  const Optimization &opt = *env.opt;
  EvalResult r;
  std::vector<BitVec> val(opt.nodes.size());

  std::vector<char> inTarget(opt.nodes.size(), 0);
  markReachable(opt, opt.targetRoot, inTarget);
  std::vector<char> inSource(opt.nodes.size(), 0);
  markReachable(opt, opt.sourceRoot, inSource);

  for (size_t i = 0; i < opt.nodes.size(); ++i) {
    const Node &n = opt.nodes[i];
    int w = env.width(n.type);
    switch (n.kind) {
    case Node::Kind::InputVar: {
      auto it = env.runtime.find(n.name);
      assert(it != env.runtime.end());
      val[i] = it->second;
      break;
    }
    case Node::Kind::SymConst: {
      auto it = env.consts.find(n.name);
      assert(it != env.consts.end());
      val[i] = it->second;
      break;
    }
    case Node::Kind::ConstLiteral:
      val[i] = BitVec::fromSigned(w, n.lit);
      break;
    case Node::Kind::ConstExpr: {
      auto v = evalCexpr(env, *n.cexpr);
      if (!v) {
        if (inTarget[i]) r.sigmaT = false;
        val[i] = BitVec(w, 0);
      } else {
        val[i] = *v;
      }
      break;
    }
    case Node::Kind::Instr: {
      val[i] = instrValue(env, n, val);
      if (!instrDefined(n, val)) {
        if (inSource[i]) r.defS = false;
        if (inTarget[i]) r.defT = false;
      }
      break;
    }
    }
  }
  r.valS = val[opt.sourceRoot];
  r.valT = val[opt.targetRoot];
  return r;
}

std::string toString(const BitVec &v) {
  return std::to_string(v.bits) + ":i" + std::to_string(v.width);
}

}  // namespace pinfer
