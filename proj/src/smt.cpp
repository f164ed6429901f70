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

#include "pinfer/smt.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <sstream>

namespace pinfer {

SolverReply runSolver(const std::string &cmd, const std::string &script,
                      int timeoutMs) {
  signal(SIGPIPE, SIG_IGN);
  int toChild[2], fromChild[2];
  SolverReply reply;
  if (pipe(toChild) != 0 || pipe(fromChild) != 0) return reply;

  pid_t pid = fork();
  if (pid < 0) return reply;
  if (pid == 0) {
    dup2(toChild[0], 0);
    dup2(fromChild[1], 1);
    dup2(fromChild[1], 2);
    close(toChild[0]);
    close(toChild[1]);
    close(fromChild[0]);
    close(fromChild[1]);
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char *>(nullptr));
    _exit(127);
  }
  close(toChild[0]);
  close(fromChild[1]);

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(timeoutMs);
  auto msLeft = [&] {
    auto d = std::chrono::duration_cast<std::chrono::milliseconds>(
                 deadline - std::chrono::steady_clock::now())
                 .count();
    return d < 0 ? 0 : static_cast<int>(d);
  };

  size_t written = 0;
  bool timedOut = false;
  while (written < script.size()) {
    pollfd pfd{toChild[1], POLLOUT, 0};
    int r = poll(&pfd, 1, msLeft());
    if (r <= 0) { timedOut = true; break; }
    ssize_t n = write(toChild[1], script.data() + written, script.size() - written);
    if (n <= 0) break;  // solver closed stdin early; collect what it said
    written += static_cast<size_t>(n);
  }
  close(toChild[1]);

  std::string out;
  char buf[4096];
  while (!timedOut) {
    pollfd pfd{fromChild[0], POLLIN, 0};
    int r = poll(&pfd, 1, msLeft());
    if (r <= 0) { timedOut = true; break; }
    ssize_t n = read(fromChild[0], buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 0) break;
    out.append(buf, static_cast<size_t>(n));
  }
  close(fromChild[0]);
  if (timedOut) kill(pid, SIGKILL);
  int status = 0;
  waitpid(pid, &status, 0);

  reply.output = out;
  if (timedOut) {
    reply.status = SolverReply::Status::Timeout;
    return reply;
  }
  std::istringstream lines(out);
  std::string line;
  while (std::getline(lines, line)) {
    if (line == "sat") { reply.status = SolverReply::Status::Sat; return reply; }
    if (line == "unsat") { reply.status = SolverReply::Status::Unsat; return reply; }
    if (line == "unknown") { reply.status = SolverReply::Status::Unknown; return reply; }
  }
  return reply;
}

bool solverAvailable(const std::string &cmd, int timeoutMs) {
  SolverReply r = runSolver(
      cmd, "(set-logic QF_BV)(declare-const x (_ BitVec 4))(assert (= x #x3))(check-sat)\n",
      timeoutMs);
  return r.status == SolverReply::Status::Sat;
}

// --- script construction ----------------------------------------------------

namespace {

std::string bvConst(uint64_t bits, int w) {
  return "(_ bv" + std::to_string(bits) + " " + std::to_string(w) + ")";
}

std::string quote(const std::string &name, const std::string &suffix = "") {
  return "|" + name + suffix + "|";
}

// Emits value expressions, safety conditions, and definedness conditions for
// one optimization under one width assignment.
struct Emitter {
  const Optimization &opt;
  const TypeAssignment &ta;
  std::string runSuffix;  // distinguishes independently bound runtime copies

  int width(TypeRef t) const { return ta.width(t); }

  std::string var(int id) const {
    const Node &n = opt.node(id);
    return quote(n.name, n.kind == Node::Kind::InputVar ? runSuffix : "");
  }

  std::string cexprVal(const Cexpr &e) const {
    int w = width(e.type);
    switch (e.kind) {
    case Cexpr::Kind::Lit:
      return bvConst(BitVec::fromSigned(w, e.lit).bits, w);
    case Cexpr::Kind::SMin:
      return bvConst(BitVec::signedMin(w).bits, w);
    case Cexpr::Kind::SymConst:
      return quote(e.name);
    case Cexpr::Kind::WidthOf: {
      int wv = ta.width(opt.node(opt.findNode(e.name)).type);
      return bvConst(BitVec(w, static_cast<uint64_t>(wv)).bits, w);
    }
    case Cexpr::Kind::UnOp:
      return std::string(e.unop == CUnOp::Neg ? "(bvneg " : "(bvnot ") +
             cexprVal(*e.a) + ")";
    case Cexpr::Kind::CFun: {
      std::string a = cexprVal(*e.a);
      if (e.cfun == CFun::Abs)
        return "(ite (bvslt " + a + " " + bvConst(0, w) + ") (bvneg " + a + ") " + a + ")";
      std::string r = bvConst(0, w);
      for (int k = 1; k < w; ++k)
        r = "(ite (bvuge " + a + " " + bvConst(1ull << k, w) + ") " +
            bvConst(static_cast<uint64_t>(k), w) + " " + r + ")";
      return r;
    }
    case Cexpr::Kind::BinOp: {
      std::string a = cexprVal(*e.a), b = cexprVal(*e.b);
      const char *op = nullptr;
      switch (e.binop) {
      case CBinOp::Add: op = "bvadd"; break;
      case CBinOp::Sub: op = "bvsub"; break;
      case CBinOp::Mul: op = "bvmul"; break;
      case CBinOp::UDiv: op = "bvudiv"; break;
      case CBinOp::SDiv: op = "bvsdiv"; break;
      case CBinOp::URem: op = "bvurem"; break;
      case CBinOp::SRem: op = "bvsrem"; break;
      case CBinOp::Shl: op = "bvshl"; break;
      case CBinOp::LShr: op = "bvlshr"; break;
      case CBinOp::AShr: op = "bvashr"; break;
      case CBinOp::And: op = "bvand"; break;
      case CBinOp::Or: op = "bvor"; break;
      case CBinOp::Xor: op = "bvxor"; break;
      }
      return std::string("(") + op + " " + a + " " + b + ")";
    }
    }
    return "";
  }

  std::string cexprSafeCond(const Cexpr &e) const {
    int w = width(e.type);
    std::vector<std::string> conds;
    collectSafe(e, w, conds);
    return conjoin(conds);
  }

  void collectSafe(const Cexpr &e, int w, std::vector<std::string> &conds) const {
    switch (e.kind) {
    case Cexpr::Kind::UnOp:
      collectSafe(*e.a, w, conds);
      return;
    case Cexpr::Kind::CFun:
      collectSafe(*e.a, w, conds);
      if (e.cfun == CFun::Log2)
        conds.push_back("(distinct " + cexprVal(*e.a) + " " + bvConst(0, w) + ")");
      return;
    case Cexpr::Kind::BinOp: {
      collectSafe(*e.a, w, conds);
      collectSafe(*e.b, w, conds);
      std::string a = cexprVal(*e.a), b = cexprVal(*e.b);
      switch (e.binop) {
      case CBinOp::UDiv:
      case CBinOp::URem:
        conds.push_back("(distinct " + b + " " + bvConst(0, w) + ")");
        return;
      case CBinOp::SDiv:
      case CBinOp::SRem:
        conds.push_back("(distinct " + b + " " + bvConst(0, w) + ")");
        conds.push_back("(not (and (= " + a + " " + bvConst(BitVec::signedMin(w).bits, w) +
                        ") (= " + b + " " + bvConst(bvMask(w), w) + ")))");
        return;
      case CBinOp::Shl:
      case CBinOp::LShr:
      case CBinOp::AShr:
        conds.push_back("(bvult " + b + " " +
                        bvConst(static_cast<uint64_t>(w), w) + ")");
        return;
      default:
        return;
      }
    }
    default:
      return;
    }
  }

  static std::string conjoin(const std::vector<std::string> &cs) {
    if (cs.empty()) return "true";
    if (cs.size() == 1) return cs[0];
    std::string s = "(and";
    for (const auto &c : cs) s += " " + c;
    return s + ")";
  }

  static std::string disjoin(const std::vector<std::string> &cs) {
    if (cs.empty()) return "false";
    if (cs.size() == 1) return cs[0];
    std::string s = "(or";
    for (const auto &c : cs) s += " " + c;
    return s + ")";
  }

  // Safe evaluation (U) and safe truth (A) of a predicate.
  std::string predU(const Pred &p) const {
    switch (p.kind) {
    case Pred::Kind::True:
    case Pred::Kind::False:
      return "true";
    case Pred::Kind::Cmp:
      return conjoin({cexprSafeCond(*p.ca), cexprSafeCond(*p.cb)});
    case Pred::Kind::PFun:
      return cexprSafeCond(*p.ca);
    case Pred::Kind::Not:
      return predU(*p.pa);
    case Pred::Kind::And:
      return conjoin({predU(*p.pa),
                      disjoin({"(not " + predA(*p.pa) + ")", predU(*p.pb)})});
    case Pred::Kind::Or:
      return conjoin({predU(*p.pa), disjoin({predA(*p.pa), predU(*p.pb)})});
    }
    return "true";
  }

  std::string predA(const Pred &p) const {
    switch (p.kind) {
    case Pred::Kind::True:
      return "true";
    case Pred::Kind::False:
      return "false";
    case Pred::Kind::Cmp: {
      std::string a = cexprVal(*p.ca), b = cexprVal(*p.cb);
      std::string rel;
      switch (p.cond) {
      case Cond::Eq: rel = "(= " + a + " " + b + ")"; break;
      case Cond::Ne: rel = "(distinct " + a + " " + b + ")"; break;
      case Cond::Ugt: rel = "(bvugt " + a + " " + b + ")"; break;
      case Cond::Uge: rel = "(bvuge " + a + " " + b + ")"; break;
      case Cond::Ult: rel = "(bvult " + a + " " + b + ")"; break;
      case Cond::Ule: rel = "(bvule " + a + " " + b + ")"; break;
      case Cond::Sgt: rel = "(bvsgt " + a + " " + b + ")"; break;
      case Cond::Sge: rel = "(bvsge " + a + " " + b + ")"; break;
      case Cond::Slt: rel = "(bvslt " + a + " " + b + ")"; break;
      case Cond::Sle: rel = "(bvsle " + a + " " + b + ")"; break;
      }
      return conjoin({predU(p), rel});
    }
    case Pred::Kind::PFun: {
      std::string a = cexprVal(*p.ca);
      int w = width(p.ca->type);
      std::string rel;
      switch (p.pfun) {
      case PFun::IsSignBit:
        rel = "(= " + a + " " + bvConst(BitVec::signedMin(w).bits, w) + ")";
        break;
      case PFun::IsPowerOf2:
        rel = "(and (distinct " + a + " " + bvConst(0, w) + ") (= (bvand " + a +
              " (bvsub " + a + " " + bvConst(1, w) + ")) " + bvConst(0, w) + "))";
        break;
      case PFun::IsPowerOf2OrZero:
        rel = "(= (bvand " + a + " (bvsub " + a + " " + bvConst(1, w) + ")) " +
              bvConst(0, w) + ")";
        break;
      }
      return conjoin({predU(p), rel});
    }
    case Pred::Kind::Not:
      return conjoin({predU(*p.pa), "(not " + predA(*p.pa) + ")"});
    case Pred::Kind::And:
      return conjoin({predA(*p.pa), predA(*p.pb)});
    case Pred::Kind::Or:
      return disjoin({predA(*p.pa),
                      conjoin({predU(*p.pa), predA(*p.pb)})});
    }
    return "false";
  }

  std::string nodeVal(int id) const {
    const Node &n = opt.node(id);
    int w = width(n.type);
    switch (n.kind) {
    case Node::Kind::InputVar:
    case Node::Kind::SymConst:
      return var(id);
    case Node::Kind::ConstLiteral:
      return bvConst(BitVec::fromSigned(w, n.lit).bits, w);
    case Node::Kind::ConstExpr:
      return cexprVal(*n.cexpr);
    case Node::Kind::Instr:
      break;
    }
    auto a = [&] { return nodeVal(n.operands[0]); };
    auto b = [&] { return nodeVal(n.operands[1]); };
    switch (n.op) {
    case Opcode::Add: return "(bvadd " + a() + " " + b() + ")";
    case Opcode::Sub: return "(bvsub " + a() + " " + b() + ")";
    case Opcode::Mul: return "(bvmul " + a() + " " + b() + ")";
    case Opcode::UDiv: return "(bvudiv " + a() + " " + b() + ")";
    case Opcode::SDiv: return "(bvsdiv " + a() + " " + b() + ")";
    case Opcode::URem: return "(bvurem " + a() + " " + b() + ")";
    case Opcode::SRem: return "(bvsrem " + a() + " " + b() + ")";
    case Opcode::Shl: return "(bvshl " + a() + " " + b() + ")";
    case Opcode::LShr: return "(bvlshr " + a() + " " + b() + ")";
    case Opcode::AShr: return "(bvashr " + a() + " " + b() + ")";
    case Opcode::And: return "(bvand " + a() + " " + b() + ")";
    case Opcode::Or: return "(bvor " + a() + " " + b() + ")";
    case Opcode::Xor: return "(bvxor " + a() + " " + b() + ")";
    case Opcode::ICmp: {
      std::string rel;
      switch (n.cond) {
      case Cond::Eq: rel = "="; break;
      case Cond::Ne: rel = "distinct"; break;
      case Cond::Ugt: rel = "bvugt"; break;
      case Cond::Uge: rel = "bvuge"; break;
      case Cond::Ult: rel = "bvult"; break;
      case Cond::Ule: rel = "bvule"; break;
      case Cond::Sgt: rel = "bvsgt"; break;
      case Cond::Sge: rel = "bvsge"; break;
      case Cond::Slt: rel = "bvslt"; break;
      case Cond::Sle: rel = "bvsle"; break;
      }
      return "(ite (" + rel + " " + a() + " " + b() + ") " + bvConst(1, 1) +
             " " + bvConst(0, 1) + ")";
    }
    case Opcode::Select:
      return "(ite (= " + nodeVal(n.operands[0]) + " " + bvConst(1, 1) + ") " +
             nodeVal(n.operands[1]) + " " + nodeVal(n.operands[2]) + ")";
    case Opcode::ZExt:
      return "((_ zero_extend " +
             std::to_string(w - width(opt.node(n.operands[0]).type)) + ") " + a() + ")";
    case Opcode::SExt:
      return "((_ sign_extend " +
             std::to_string(w - width(opt.node(n.operands[0]).type)) + ") " + a() + ")";
    case Opcode::Trunc:
      return "((_ extract " + std::to_string(w - 1) + " 0) " + a() + ")";
    case Opcode::Copy:
      return a();
    }
    return "";
  }

  std::string instrDefCond(const Node &n) const {
    int w = width(n.type);
    std::string a = nodeVal(n.operands[0]);
    std::string b = n.operands.size() > 1 ? nodeVal(n.operands[1]) : "";
    std::vector<std::string> cs;
    auto sext1Distinct = [&](const char *op) {
      return "(distinct ((_ sign_extend 1) (" + std::string(op) + " " + a + " " + b +
             ")) (" + op + " ((_ sign_extend 1) " + a + ") ((_ sign_extend 1) " + b + ")))";
    };
    switch (n.op) {
    case Opcode::Add:
      if (n.flags.nuw) cs.push_back("(not (bvult (bvadd " + a + " " + b + ") " + a + "))");
      if (n.flags.nsw) cs.push_back("(not " + sext1Distinct("bvadd") + ")");
      break;
    case Opcode::Sub:
      if (n.flags.nuw) cs.push_back("(not (bvult " + a + " " + b + "))");
      if (n.flags.nsw) cs.push_back("(not " + sext1Distinct("bvsub") + ")");
      break;
    case Opcode::Mul: {
      std::string ext = std::to_string(w);
      if (n.flags.nuw)
        cs.push_back("(= ((_ zero_extend " + ext + ") (bvmul " + a + " " + b +
                     ")) (bvmul ((_ zero_extend " + ext + ") " + a +
                     ") ((_ zero_extend " + ext + ") " + b + ")))");
      if (n.flags.nsw)
        cs.push_back("(= ((_ sign_extend " + ext + ") (bvmul " + a + " " + b +
                     ")) (bvmul ((_ sign_extend " + ext + ") " + a +
                     ") ((_ sign_extend " + ext + ") " + b + ")))");
      break;
    }
    case Opcode::UDiv:
      cs.push_back("(distinct " + b + " " + bvConst(0, w) + ")");
      if (n.flags.exact)
        cs.push_back("(= (bvurem " + a + " " + b + ") " + bvConst(0, w) + ")");
      break;
    case Opcode::SDiv:
      cs.push_back("(distinct " + b + " " + bvConst(0, w) + ")");
      cs.push_back("(not (and (= " + a + " " + bvConst(BitVec::signedMin(w).bits, w) +
                   ") (= " + b + " " + bvConst(bvMask(w), w) + ")))");
      if (n.flags.exact)
        cs.push_back("(= (bvsrem " + a + " " + b + ") " + bvConst(0, w) + ")");
      break;
    case Opcode::URem:
      cs.push_back("(distinct " + b + " " + bvConst(0, w) + ")");
      break;
    case Opcode::SRem:
      cs.push_back("(distinct " + b + " " + bvConst(0, w) + ")");
      cs.push_back("(not (and (= " + a + " " + bvConst(BitVec::signedMin(w).bits, w) +
                   ") (= " + b + " " + bvConst(bvMask(w), w) + ")))");
      break;
    case Opcode::Shl:
      cs.push_back("(bvult " + b + " " + bvConst(static_cast<uint64_t>(w), w) + ")");
      if (n.flags.nuw)
        cs.push_back("(= (bvlshr (bvshl " + a + " " + b + ") " + b + ") " + a + ")");
      if (n.flags.nsw)
        cs.push_back("(= (bvashr (bvshl " + a + " " + b + ") " + b + ") " + a + ")");
      break;
    case Opcode::LShr:
      cs.push_back("(bvult " + b + " " + bvConst(static_cast<uint64_t>(w), w) + ")");
      if (n.flags.exact)
        cs.push_back("(= (bvshl (bvlshr " + a + " " + b + ") " + b + ") " + a + ")");
      break;
    case Opcode::AShr:
      cs.push_back("(bvult " + b + " " + bvConst(static_cast<uint64_t>(w), w) + ")");
      if (n.flags.exact)
        cs.push_back("(= (bvshl (bvashr " + a + " " + b + ") " + b + ") " + a + ")");
      break;
    default:
      break;
    }
    return conjoin(cs);
  }

  void reach(int id, std::vector<char> &mark) const {
    if (mark[id]) return;
    mark[id] = 1;
    for (int op : opt.node(id).operands) reach(op, mark);
  }

  std::string defCond(int root) const {
    std::vector<char> mark(opt.nodes.size(), 0);
    reach(root, mark);
    std::vector<std::string> cs;
    for (size_t i = 0; i < opt.nodes.size(); ++i)
      if (mark[i] && opt.nodes[i].kind == Node::Kind::Instr)
        cs.push_back(instrDefCond(opt.nodes[i]));
    return conjoin(cs);
  }

  std::string sigmaT() const {
    std::vector<char> mark(opt.nodes.size(), 0);
    reach(opt.targetRoot, mark);
    std::vector<std::string> cs;
    for (size_t i = 0; i < opt.nodes.size(); ++i)
      if (mark[i] && opt.nodes[i].kind == Node::Kind::ConstExpr)
        cs.push_back(cexprSafeCond(*opt.nodes[i].cexpr));
    return conjoin(cs);
  }

  // σ_t ∧ (δ_s ⇒ δ_t ∧ root_s = root_t)
  std::string correctness() const {
    return conjoin({sigmaT(),
                    "(=> " + defCond(opt.sourceRoot) + " " +
                        conjoin({defCond(opt.targetRoot),
                                 "(= " + nodeVal(opt.sourceRoot) + " " +
                                     nodeVal(opt.targetRoot) + ")"}) +
                        ")"});
  }

  std::string runtimeBinders() const {
    std::string s = "(";
    for (int id : opt.inputVars)
      s += "(" + var(id) + " (_ BitVec " +
           std::to_string(width(opt.node(id).type)) + "))";
    return s + ")";
  }
};

std::vector<std::string> tokenize(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == ')') {
      if (!cur.empty()) { out.push_back(cur); cur.clear(); }
      out.push_back(std::string(1, c));
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) { out.push_back(cur); cur.clear(); }
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::optional<uint64_t> parseBvToken(const std::vector<std::string> &toks, size_t i) {
  if (i >= toks.size()) return std::nullopt;
  const std::string &t = toks[i];
  if (t.rfind("#x", 0) == 0) return std::stoull(t.substr(2), nullptr, 16);
  if (t.rfind("#b", 0) == 0) return std::stoull(t.substr(2), nullptr, 2);
  if (t == "(" && i + 2 < toks.size() && toks[i + 1] == "_" &&
      toks[i + 2].rfind("bv", 0) == 0)
    return std::stoull(toks[i + 2].substr(2));
  return std::nullopt;
}

}  // namespace

SmtBackend::SmtBackend(const Optimization &opt, std::vector<TypeAssignment> tas,
                       std::string solverCmd, int timeoutMs)
    : opt_(opt), tas_(std::move(tas)), cmd_(std::move(solverCmd)),
      timeoutMs_(timeoutMs) {}

// Runs one satisfiability query with the constants free; extra assertions may
// bind or exclude values. Returns the model's constant valuation on sat.
std::optional<ConstValuation> SmtBackend::querySat(
    const TypeAssignment &ta, const std::string &body,
    const std::vector<std::string> &extra) {
  Emitter em{opt_, ta, ""};
  std::ostringstream s;
  s << "(set-logic BV)\n(set-option :produce-models true)\n";
  for (int id : opt_.symConsts)
    s << "(declare-const " << em.var(id) << " (_ BitVec "
      << ta.width(opt_.node(id).type) << "))\n";
  for (int id : opt_.inputVars)
    s << "(declare-const " << em.var(id) << " (_ BitVec "
      << ta.width(opt_.node(id).type) << "))\n";
  for (const auto &e : extra) s << "(assert " << e << ")\n";
  s << "(assert " << body << ")\n(check-sat)\n(get-value (";
  for (int id : opt_.symConsts) s << em.var(id) << " ";
  s << "))\n";

  SolverReply r = runSolver(cmd_, s.str(), timeoutMs_);
  if (r.status == SolverReply::Status::Timeout) sawTimeout_ = true;
  if (r.status == SolverReply::Status::Unknown) sawUnknown_ = true;
  if (r.status != SolverReply::Status::Sat) return std::nullopt;

  auto toks = tokenize(r.output);
  ConstValuation v;
  v.ta = ta;
  for (int id : opt_.symConsts) {
    const std::string &name = opt_.node(id).name;
    int w = ta.width(opt_.node(id).type);
    std::optional<uint64_t> got;
    for (size_t i = 0; i + 1 < toks.size(); ++i) {
      if (toks[i] == name || toks[i] == "|" + name + "|") {
        got = parseBvToken(toks, i + 1);
        if (got) break;
      }
    }
    if (!got) return std::nullopt;
    v.consts.push_back(BitVec(w, *got));
  }
  return v;
}

namespace {

std::string assumeCond(const Emitter &em, const Optimization &opt) {
  std::vector<std::string> cs;
  for (const PredPtr &a : opt.assumes) cs.push_back(em.predA(*a));
  return Emitter::conjoin(cs);
}

std::string blockClause(const Optimization &opt, const ConstValuation &v) {
  std::vector<std::string> eqs;
  for (size_t i = 0; i < opt.symConsts.size(); ++i) {
    int id = opt.symConsts[i];
    eqs.push_back("(= " + quote(opt.node(id).name) + " " +
                  bvConst(v.consts[i].bits, v.ta.width(opt.node(id).type)) + ")");
  }
  return "(not " + Emitter::conjoin(eqs) + ")";
}

}  // namespace

ExClass SmtBackend::classify(const ConstValuation &v) {
  Emitter em{opt_, v.ta, ""};
  std::vector<std::string> bind;
  for (size_t i = 0; i < opt_.symConsts.size(); ++i) {
    int id = opt_.symConsts[i];
    bind.push_back("(= " + em.var(id) + " " +
                   bvConst(v.consts[i].bits, v.ta.width(opt_.node(id).type)) + ")");
  }
  // Some runtime binding breaking correctness makes the example negative.
  if (querySat(v.ta, "(not " + em.correctness() + ")", bind))
    return ExClass::Negative;
  if (querySat(v.ta, em.defCond(opt_.sourceRoot), bind)) return ExClass::Positive;
  return ExClass::Trivial;
}

std::optional<ConstValuation> SmtBackend::refinementCex(const PredPtr &pre) {
  for (const TypeAssignment &ta : tas_) {
    Emitter em{opt_, ta, ""};
    std::string body = Emitter::conjoin(
        {assumeCond(em, opt_),
         Emitter::disjoin({"(not " + em.predU(*pre) + ")",
                           Emitter::conjoin({em.predA(*pre),
                                             "(not " + em.correctness() + ")"})})});
    if (auto v = querySat(ta, body, {})) return v;
  }
  return std::nullopt;
}

std::optional<ConstValuation> SmtBackend::missedPositive(const PredPtr &pre) {
  for (const TypeAssignment &ta : tas_) {
    Emitter em{opt_, ta, ""};
    Emitter em2{opt_, ta, "!w"};  // witness copy for source reachability
    std::string body = Emitter::conjoin(
        {assumeCond(em, opt_), "(not " + em.predA(*pre) + ")",
         "(exists " + em2.runtimeBinders() + " " + em2.defCond(opt_.sourceRoot) + ")",
         "(forall " + em.runtimeBinders() + " " + em.correctness() + ")"});
    // The plain runtime variables are bound by the forall; nothing free
    // except the constants and the existential witness.
    if (auto v = querySat(ta, body, {})) return v;
  }
  return std::nullopt;
}

std::optional<ConstValuation> SmtBackend::acceptedNonPositive(const PredPtr &pre) {
  for (const TypeAssignment &ta : tas_) {
    Emitter em{opt_, ta, ""};
    std::string body = Emitter::conjoin(
        {assumeCond(em, opt_), em.predA(*pre),
         Emitter::disjoin(
             {"(not " + em.correctness() + ")",
              "(forall " + em.runtimeBinders() + " (not " +
                  em.defCond(opt_.sourceRoot) + "))"})});
    if (auto v = querySat(ta, body, {})) return v;
  }
  return std::nullopt;
}

std::optional<ConstValuation> SmtBackend::weakerWitness(const PredPtr &a,
                                                        const PredPtr &b) {
  for (const TypeAssignment &ta : tas_) {
    Emitter em{opt_, ta, ""};
    std::string body = Emitter::conjoin(
        {assumeCond(em, opt_), em.predA(*a), "(not " + em.predA(*b) + ")"});
    if (auto v = querySat(ta, body, {})) return v;
  }
  return std::nullopt;
}

std::vector<ConstValuation> SmtBackend::findExamples(ExClass want, size_t k,
                                                     const ExampleSet &exclude) {
  std::vector<ConstValuation> out;
  for (const TypeAssignment &ta : tas_) {
    if (out.size() >= k) break;
    Emitter em{opt_, ta, ""};
    Emitter em2{opt_, ta, "!w"};
    std::string body;
    switch (want) {
    case ExClass::Negative:
      body = Emitter::conjoin(
          {assumeCond(em, opt_), "(not " + em.correctness() + ")"});
      break;
    case ExClass::Positive:
      body = Emitter::conjoin(
          {assumeCond(em, opt_),
           "(exists " + em2.runtimeBinders() + " " + em2.defCond(opt_.sourceRoot) + ")",
           "(forall " + em.runtimeBinders() + " " + em.correctness() + ")"});
      break;
    case ExClass::Trivial:
      body = Emitter::conjoin(
          {assumeCond(em, opt_),
           "(forall " + em.runtimeBinders() + " " +
               Emitter::conjoin({em.correctness(),
                                 "(not " + em.defCond(opt_.sourceRoot) + ")"}) +
               ")"});
      break;
    }
    std::vector<std::string> extra;
    for (const auto &have : exclude.positives())
      if (have.ta == ta) extra.push_back(blockClause(opt_, have));
    for (const auto &have : exclude.negatives())
      if (have.ta == ta) extra.push_back(blockClause(opt_, have));
    while (out.size() < k) {
      auto v = querySat(ta, body, extra);
      if (!v) break;
      extra.push_back(blockClause(opt_, *v));
      out.push_back(std::move(*v));
    }
  }
  return out;
}

}  // namespace pinfer
