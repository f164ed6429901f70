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

#include "pinfer/dsl.hpp"

#include "pinfer/bitvec.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace pinfer {

// --- TypeModel --------------------------------------------------------------

TypeRef TypeModel::fresh() {
  parent_.push_back(static_cast<TypeRef>(parent_.size()));
  return parent_.back();
}

TypeRef TypeModel::find(TypeRef t) const {
  while (parent_[t] != t) {
    parent_[t] = parent_[parent_[t]];
    t = parent_[t];
  }
  return t;
}

void TypeModel::unify(TypeRef a, TypeRef b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (a > b) std::swap(a, b);  // keep the smaller id as representative
  auto fa = fixed_.find(a), fb = fixed_.find(b);
  if (fa != fixed_.end() && fb != fixed_.end() && fa->second != fb->second)
    throw ParseError("width conflict: i" + std::to_string(fa->second) +
                     " vs i" + std::to_string(fb->second));
  if (fb != fixed_.end()) {
    fixed_[a] = fb->second;
    fixed_.erase(b);
  }
  parent_[b] = a;
}

void TypeModel::fixWidth(TypeRef t, int w) {
  if (w < 1 || w > kMaxWidth)
    throw ParseError("unsupported width i" + std::to_string(w));
  t = find(t);
  auto it = fixed_.find(t);
  if (it != fixed_.end() && it->second != w)
    throw ParseError("width conflict: i" + std::to_string(it->second) +
                     " vs i" + std::to_string(w));
  fixed_[t] = w;
}

void TypeModel::addLess(TypeRef a, TypeRef b) { less_.emplace_back(a, b); }

std::optional<int> TypeModel::fixedWidth(TypeRef t) const {
  auto it = fixed_.find(find(t));
  if (it == fixed_.end()) return std::nullopt;
  return it->second;
}

std::vector<TypeAssignment> enumerateAssignments(const TypeModel &types,
                                                 std::vector<int> widths) {
  std::sort(widths.begin(), widths.end());
  widths.erase(std::unique(widths.begin(), widths.end()), widths.end());

  std::set<TypeRef> reps;
  for (TypeRef t = 0; t < types.count(); ++t) reps.insert(types.find(t));
  std::vector<TypeRef> freeReps;
  for (TypeRef r : reps)
    if (!types.fixedWidth(r)) freeReps.push_back(r);

  std::vector<TypeAssignment> out;
  if (widths.empty() && !freeReps.empty()) return out;

  std::vector<size_t> idx(freeReps.size(), 0);
  for (;;) {
    std::vector<int> w(types.count(), 0);
    for (TypeRef r : reps)
      w[r] = types.fixedWidth(r).value_or(0);
    for (size_t i = 0; i < freeReps.size(); ++i) w[freeReps[i]] = widths[idx[i]];
    bool ok = true;
    for (auto [a, b] : types.lessPairs())
      if (w[types.find(a)] >= w[types.find(b)]) { ok = false; break; }
    if (ok) {
      TypeAssignment ta;
      ta.widths.resize(types.count());
      for (TypeRef t = 0; t < types.count(); ++t) ta.widths[t] = w[types.find(t)];
      out.push_back(std::move(ta));
    }
    // Odometer with the last variable fastest: lexicographic over the tuple.
    size_t i = freeReps.size();
    while (i > 0) {
      --i;
      if (++idx[i] < widths.size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (freeReps.empty()) return out;
  }
}

// --- lexer ------------------------------------------------------------------

namespace {

struct Token {
  enum class Kind { Id, PId, Num, Op, End };
  Kind kind;
  std::string text;
  int64_t num = 0;
  int col = 0;
};

bool identChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(const std::string &s, const std::string &where, int line) {
  static const char *kOps[] = {"u>>", "u>=", "u<=", "u>", "u<", "=>", "<<", ">>",
                               ">=", "<=", "==", "!=", "&&", "||", "/u", "%u",
                               "+",  "-",  "*",  "/",  "%",  "&",  "|",  "^",
                               "~",  "!",  "<",  ">",  "=",  "(",  ")",  ","};
  std::vector<Token> out;
  size_t i = 0;
  auto fail = [&](const std::string &msg) {
    throw ParseError(where + ":" + std::to_string(line) + ":" +
                     std::to_string(i + 1) + ": " + msg);
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == ';') break;  // comment to end of line
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    int col = static_cast<int>(i) + 1;
    if (c == '%' && i + 1 < s.size() && identChar(s[i + 1]) &&
        !(s[i + 1] == 'u' && (i + 2 >= s.size() || !identChar(s[i + 2])))) {
      size_t j = i + 1;
      while (j < s.size() && identChar(s[j])) ++j;
      out.push_back({Token::Kind::PId, s.substr(i, j - i), 0, col});
      i = j;
      continue;
    }
    bool matched = false;
    for (const char *op : kOps) {
      size_t n = std::strlen(op);
      if (s.compare(i, n, op) != 0) continue;
      // "/u" and "%u" are division tokens only when not the start of a name.
      if ((std::string_view(op) == "/u" || std::string_view(op) == "%u") &&
          i + n < s.size() && identChar(s[i + n]))
        continue;
      out.push_back({Token::Kind::Op, op, 0, col});
      i += n;
      matched = true;
      break;
    }
    if (matched) continue;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      Token t{Token::Kind::Num, s.substr(i, j - i), 0, col};
      try {
        t.num = std::stoll(t.text);
      } catch (const std::exception &) {
        fail("integer literal out of range");
      }
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && identChar(s[j])) ++j;
      out.push_back({Token::Kind::Id, s.substr(i, j - i), 0, col});
      i = j;
      continue;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::Kind::End, "", 0, static_cast<int>(s.size()) + 1});
  return out;
}

// --- expression parser ------------------------------------------------------

struct ExprParser {
  const std::vector<Token> &toks;
  size_t pos = 0;
  std::string where;
  int line;

  const Token &peek() const { return toks[pos]; }
  const Token &next() { return toks[pos++]; }
  bool eatOp(const char *op) {
    if (peek().kind == Token::Kind::Op && peek().text == op) { ++pos; return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(where + ":" + std::to_string(line) + ":" +
                     std::to_string(peek().col) + ": " + msg);
  }
  void expectOp(const char *op) {
    if (!eatOp(op)) fail(std::string("expected '") + op + "'");
  }

  CexprPtr primary() {
    const Token &t = peek();
    if (t.kind == Token::Kind::Num) { next(); return cLit(t.num); }
    if (t.kind == Token::Kind::Id) {
      if (t.text == "smin") { next(); return cSMin(); }
      if (t.text == "abs" || t.text == "log2") {
        CFun f = t.text == "abs" ? CFun::Abs : CFun::Log2;
        next();
        expectOp("(");
        CexprPtr a = cexpr();
        expectOp(")");
        return cFun(f, std::move(a));
      }
      if (t.text == "width") {
        next();
        expectOp("(");
        const Token &v = peek();
        if (v.kind != Token::Kind::PId &&
            !(v.kind == Token::Kind::Id && looksLikeSymConst(v.text)))
          fail("width() takes a value name");
        next();
        expectOp(")");
        return cWidth(v.text);
      }
      if (looksLikeSymConst(t.text)) { next(); return cSym(t.text); }
      fail("unknown identifier '" + t.text + "' in constant expression");
    }
    if (eatOp("(")) {
      CexprPtr e = cexpr();
      expectOp(")");
      return e;
    }
    fail("expected constant expression");
  }

  static bool looksLikeSymConst(const std::string &s) {
    if (s.size() < 2 || s[0] != 'C') return false;
    for (size_t i = 1; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  }

  CexprPtr unary() {
    if (eatOp("-")) {
      CexprPtr a = unary();
      if (a->kind == Cexpr::Kind::Lit) return cLit(-a->lit);
      return cUn(CUnOp::Neg, std::move(a));
    }
    if (eatOp("~")) return cUn(CUnOp::Not, unary());
    return primary();
  }

  CexprPtr mul() {
    CexprPtr e = unary();
    for (;;) {
      if (eatOp("*")) e = cBin(CBinOp::Mul, e, unary());
      else if (eatOp("/u")) e = cBin(CBinOp::UDiv, e, unary());
      else if (eatOp("/")) e = cBin(CBinOp::SDiv, e, unary());
      else if (eatOp("%u")) e = cBin(CBinOp::URem, e, unary());
      else if (eatOp("%")) e = cBin(CBinOp::SRem, e, unary());
      else return e;
    }
  }

  CexprPtr add() {
    CexprPtr e = mul();
    for (;;) {
      if (eatOp("+")) e = cBin(CBinOp::Add, e, mul());
      else if (eatOp("-")) e = cBin(CBinOp::Sub, e, mul());
      else return e;
    }
  }

  CexprPtr shift() {
    CexprPtr e = add();
    for (;;) {
      if (eatOp("<<")) e = cBin(CBinOp::Shl, e, add());
      else if (eatOp("u>>")) e = cBin(CBinOp::LShr, e, add());
      else if (eatOp(">>")) e = cBin(CBinOp::AShr, e, add());
      else return e;
    }
  }

  CexprPtr bitand_() {
    CexprPtr e = shift();
    while (eatOp("&")) e = cBin(CBinOp::And, e, shift());
    return e;
  }
  CexprPtr bitxor_() {
    CexprPtr e = bitand_();
    while (eatOp("^")) e = cBin(CBinOp::Xor, e, bitand_());
    return e;
  }
  CexprPtr cexpr() {
    CexprPtr e = bitxor_();
    while (eatOp("|")) e = cBin(CBinOp::Or, e, bitxor_());
    return e;
  }

  std::optional<Cond> peekCond() {
    if (peek().kind != Token::Kind::Op) return std::nullopt;
    const std::string &s = peek().text;
    if (s == "==") return Cond::Eq;
    if (s == "!=") return Cond::Ne;
    if (s == "u>") return Cond::Ugt;
    if (s == "u>=") return Cond::Uge;
    if (s == "u<") return Cond::Ult;
    if (s == "u<=") return Cond::Ule;
    if (s == ">") return Cond::Sgt;
    if (s == ">=") return Cond::Sge;
    if (s == "<") return Cond::Slt;
    if (s == "<=") return Cond::Sle;
    return std::nullopt;
  }

  PredPtr predAtom() {
    const Token &t = peek();
    if (t.kind == Token::Kind::Id) {
      if (t.text == "true") { next(); return pTrue(); }
      if (t.text == "false") { next(); return pFalse(); }
      PFun f;
      bool isPfun = true;
      if (t.text == "isSignBit") f = PFun::IsSignBit;
      else if (t.text == "isPowerOf2") f = PFun::IsPowerOf2;
      else if (t.text == "isPowerOf2OrZero") f = PFun::IsPowerOf2OrZero;
      else isPfun = false;
      if (isPfun) {
        next();
        expectOp("(");
        CexprPtr a = cexpr();
        expectOp(")");
        return pFun(f, std::move(a));
      }
    }
    // A leading '(' can open either a constant expression or a nested
    // predicate; try the comparison route first and backtrack.
    if (t.kind == Token::Kind::Op && t.text == "(") {
      size_t save = pos;
      try {
        CexprPtr a = cexpr();
        if (auto c = peekCond()) {
          next();
          return pCmp(*c, std::move(a), cexpr());
        }
      } catch (const ParseError &) {
      }
      pos = save;
      expectOp("(");
      PredPtr p = predOr();
      expectOp(")");
      return p;
    }
    CexprPtr a = cexpr();
    auto c = peekCond();
    if (!c) fail("expected comparison operator");
    next();
    return pCmp(*c, std::move(a), cexpr());
  }

  PredPtr predNot() {
    if (eatOp("!")) return pNot(predNot());
    return predAtom();
  }
  PredPtr predAnd() {
    PredPtr p = predNot();
    while (eatOp("&&")) p = pAnd(p, predNot());
    return p;
  }
  PredPtr predOr() {
    PredPtr p = predAnd();
    while (eatOp("||")) p = pOr(p, predAnd());
    return p;
  }
};

struct OpInfo {
  Opcode op;
  int arity;
  bool wrapFlags;   // allows nuw/nsw
  bool exactFlag;   // allows exact
};

const std::map<std::string, OpInfo> &opcodeTable() {
  static const std::map<std::string, OpInfo> table = {
      {"add", {Opcode::Add, 2, true, false}},
      {"sub", {Opcode::Sub, 2, true, false}},
      {"mul", {Opcode::Mul, 2, true, false}},
      {"udiv", {Opcode::UDiv, 2, false, true}},
      {"sdiv", {Opcode::SDiv, 2, false, true}},
      {"urem", {Opcode::URem, 2, false, false}},
      {"srem", {Opcode::SRem, 2, false, false}},
      {"shl", {Opcode::Shl, 2, true, false}},
      {"lshr", {Opcode::LShr, 2, false, true}},
      {"ashr", {Opcode::AShr, 2, false, true}},
      {"and", {Opcode::And, 2, false, false}},
      {"or", {Opcode::Or, 2, false, false}},
      {"xor", {Opcode::Xor, 2, false, false}},
      {"icmp", {Opcode::ICmp, 2, false, false}},
      {"select", {Opcode::Select, 3, false, false}},
      {"zext", {Opcode::ZExt, 1, false, false}},
      {"sext", {Opcode::SExt, 1, false, false}},
      {"trunc", {Opcode::Trunc, 1, false, false}},
  };
  return table;
}

std::optional<Cond> icmpCond(const std::string &s) {
  if (s == "eq") return Cond::Eq;
  if (s == "ne") return Cond::Ne;
  if (s == "ugt") return Cond::Ugt;
  if (s == "uge") return Cond::Uge;
  if (s == "ult") return Cond::Ult;
  if (s == "ule") return Cond::Ule;
  if (s == "sgt") return Cond::Sgt;
  if (s == "sge") return Cond::Sge;
  if (s == "slt") return Cond::Slt;
  if (s == "sle") return Cond::Sle;
  return std::nullopt;
}

std::string trim(const std::string &s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Builds the DAG while lines are parsed.
struct OptBuilder {
  Optimization opt;
  std::map<std::string, int> names;  // latest definition per name
  std::string where;

  [[noreturn]] void fail(int line, int col, const std::string &msg) {
    throw ParseError(where + ":" + std::to_string(line) + ":" +
                     std::to_string(col) + ": " + msg);
  }

  int addNode(Node n) {
    opt.nodes.push_back(std::move(n));
    return static_cast<int>(opt.nodes.size()) - 1;
  }

  int leafOperand(const Token &t, bool inTarget, int line) {
    if (t.kind == Token::Kind::PId) {
      auto it = names.find(t.text);
      if (it != names.end()) return it->second;
      if (inTarget)
        fail(line, t.col, "undefined name '" + t.text + "' in target");
      Node n;
      n.kind = Node::Kind::InputVar;
      n.name = t.text;
      n.type = opt.types.fresh();
      int id = addNode(std::move(n));
      names[t.text] = id;
      opt.inputVars.push_back(id);
      return id;
    }
    if (t.kind == Token::Kind::Id && ExprParser::looksLikeSymConst(t.text)) {
      auto it = names.find(t.text);
      if (it != names.end()) return it->second;
      if (inTarget)
        fail(line, t.col, "new constant '" + t.text + "' in target");
      Node n;
      n.kind = Node::Kind::SymConst;
      n.name = t.text;
      n.type = opt.types.fresh();
      int id = addNode(std::move(n));
      names[t.text] = id;
      opt.symConsts.push_back(id);
      return id;
    }
    fail(line, t.col, "expected operand");
  }

  int literalOperand(int64_t v) {
    Node n;
    n.kind = Node::Kind::ConstLiteral;
    n.lit = v;
    n.type = opt.types.fresh();
    return addNode(std::move(n));
  }

  // Resolves and type-checks one cexpr against the builder's current symbols.
  void checkCexpr(const Cexpr &e, TypeRef ctx, int line) {
    e.type = ctx;
    switch (e.kind) {
    case Cexpr::Kind::Lit:
    case Cexpr::Kind::SMin:
      return;
    case Cexpr::Kind::SymConst: {
      auto it = names.find(e.name);
      if (it == names.end() || opt.nodes[it->second].kind != Node::Kind::SymConst)
        fail(line, 1, "unknown constant '" + e.name + "'");
      opt.types.unify(ctx, opt.nodes[it->second].type);
      return;
    }
    case Cexpr::Kind::WidthOf: {
      auto it = names.find(e.name);
      if (it == names.end())
        fail(line, 1, "unknown value '" + e.name + "' in width()");
      return;
    }
    case Cexpr::Kind::UnOp:
    case Cexpr::Kind::CFun:
      checkCexpr(*e.a, ctx, line);
      return;
    case Cexpr::Kind::BinOp:
      checkCexpr(*e.a, ctx, line);
      checkCexpr(*e.b, ctx, line);
      return;
    }
  }

  bool cexprMentionsConst(const Cexpr &e) {
    std::vector<std::string> syms;
    collectSymConsts(e, syms);
    return !syms.empty();
  }

  void checkPred(const Pred &p, int line) {
    switch (p.kind) {
    case Pred::Kind::True:
    case Pred::Kind::False:
      return;
    case Pred::Kind::Cmp: {
      TypeRef ctx = opt.types.fresh();
      checkCexpr(*p.ca, ctx, line);
      checkCexpr(*p.cb, ctx, line);
      // Comparisons over widths and literals only have no width of their
      // own; pin them so that they do not add a free type variable.
      if (!cexprMentionsConst(*p.ca) && !cexprMentionsConst(*p.cb))
        opt.types.fixWidth(ctx, 32);
      return;
    }
    case Pred::Kind::PFun: {
      TypeRef ctx = opt.types.fresh();
      checkCexpr(*p.ca, ctx, line);
      if (!cexprMentionsConst(*p.ca)) opt.types.fixWidth(ctx, 32);
      return;
    }
    case Pred::Kind::Not:
      checkPred(*p.pa, line);
      return;
    case Pred::Kind::And:
    case Pred::Kind::Or:
      checkPred(*p.pa, line);
      checkPred(*p.pb, line);
      return;
    }
  }

  int parseOperand(ExprParser &ep, bool inTarget, TypeRef ctx, int line) {
    const Token &t = ep.peek();
    if (t.kind == Token::Kind::Num) {
      ep.next();
      int id = literalOperand(t.num);
      opt.types.unify(opt.nodes[id].type, ctx);
      return id;
    }
    if (t.kind == Token::Kind::Op && t.text == "-") {
      ep.next();
      const Token &u = ep.peek();
      if (u.kind != Token::Kind::Num) ep.fail("expected integer literal");
      ep.next();
      int id = literalOperand(-u.num);
      opt.types.unify(opt.nodes[id].type, ctx);
      return id;
    }
    if (t.kind == Token::Kind::Op && t.text == "(") {
      if (!inTarget)
        fail(line, t.col, "constant expression operands are only allowed in the target");
      ep.next();
      CexprPtr e = ep.cexpr();
      ep.expectOp(")");
      checkCexpr(*e, ctx, line);
      Node n;
      n.kind = Node::Kind::ConstExpr;
      n.cexpr = std::move(e);
      n.type = ctx;
      return addNode(std::move(n));
    }
    int id = leafOperand(t, inTarget, line);
    ep.next();
    opt.types.unify(opt.nodes[id].type, ctx);
    return id;
  }

  void defineName(const std::string &name, int id, bool inTarget, int line) {
    auto it = names.find(name);
    if (it != names.end()) {
      bool redefinesSourceRoot =
          inTarget && opt.sourceRoot >= 0 && it->second == opt.sourceRoot;
      if (!redefinesSourceRoot)
        fail(line, 1, "duplicate definition of '" + name + "'");
    }
    names[name] = id;
  }

  void parseInstrLine(const std::string &text, bool inTarget, int line) {
    auto toks = lex(text, where, line);
    ExprParser ep{toks, 0, where, line};
    const Token &nameTok = ep.peek();
    if (nameTok.kind != Token::Kind::PId)
      fail(line, nameTok.col, "expected instruction definition");
    std::string defName = nameTok.text;
    ep.next();
    ep.expectOp("=");

    Node n;
    n.kind = Node::Kind::Instr;
    n.name = defName;
    n.type = opt.types.fresh();

    const Token &head = ep.peek();
    bool isInstr = head.kind == Token::Kind::Id && opcodeTable().count(head.text);
    if (!isInstr) {
      // Copy line: the right-hand side is a single operand.
      n.op = Opcode::Copy;
      n.operands.push_back(parseOperand(ep, inTarget, n.type, line));
      if (ep.peek().kind != Token::Kind::End)
        ep.fail("trailing tokens after copy");
      finishInstr(std::move(n), inTarget, line);
      return;
    }

    const OpInfo &info = opcodeTable().at(head.text);
    n.op = info.op;
    ep.next();

    if (n.op == Opcode::ICmp) {
      const Token &c = ep.peek();
      auto cond = c.kind == Token::Kind::Id ? icmpCond(c.text) : std::nullopt;
      if (!cond) ep.fail("expected icmp predicate");
      n.cond = *cond;
      ep.next();
    }

    // Flags and an optional iN width annotation, in any order.
    for (;;) {
      const Token &t = ep.peek();
      if (t.kind != Token::Kind::Id) break;
      if (t.text == "nuw" || t.text == "nsw") {
        if (!info.wrapFlags) ep.fail("'" + t.text + "' not valid on " + head.text);
        (t.text == "nuw" ? n.flags.nuw : n.flags.nsw) = true;
        ep.next();
        continue;
      }
      if (t.text == "exact") {
        if (!info.exactFlag) ep.fail("'exact' not valid on " + head.text);
        n.flags.exact = true;
        ep.next();
        continue;
      }
      if (t.text.size() > 1 && t.text[0] == 'i' &&
          std::all_of(t.text.begin() + 1, t.text.end(),
                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        n.annotWidth = std::stoi(t.text.substr(1));
        opt.types.fixWidth(n.type, n.annotWidth);
        ep.next();
        continue;
      }
      break;
    }

    // Operand typing per opcode.
    std::vector<TypeRef> opTypes;
    switch (n.op) {
    case Opcode::ICmp: {
      TypeRef arg = opt.types.fresh();
      opTypes = {arg, arg};
      opt.types.fixWidth(n.type, 1);
      break;
    }
    case Opcode::Select: {
      TypeRef c = opt.types.fresh();
      opt.types.fixWidth(c, 1);
      opTypes = {c, n.type, n.type};
      break;
    }
    case Opcode::ZExt:
    case Opcode::SExt: {
      TypeRef arg = opt.types.fresh();
      opt.types.addLess(arg, n.type);
      opTypes = {arg};
      break;
    }
    case Opcode::Trunc: {
      TypeRef arg = opt.types.fresh();
      opt.types.addLess(n.type, arg);
      opTypes = {arg};
      break;
    }
    default:
      opTypes.assign(static_cast<size_t>(info.arity), n.type);
      break;
    }

    for (int i = 0; i < info.arity; ++i) {
      if (i) ep.expectOp(",");
      n.operands.push_back(parseOperand(ep, inTarget, opTypes[i], line));
    }
    if (ep.peek().kind != Token::Kind::End) ep.fail("trailing tokens");
    finishInstr(std::move(n), inTarget, line);
  }

  void finishInstr(Node n, bool inTarget, int line) {
    std::string name = n.name;
    int id = addNode(std::move(n));
    defineName(name, id, inTarget, line);
    (inTarget ? opt.targetOrder : opt.sourceOrder).push_back(id);
  }
};

}  // namespace

// --- public entry points ----------------------------------------------------

int Optimization::findNode(const std::string &name) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].name == name) return static_cast<int>(i);
  return -1;
}

Optimization parseOptimization(const std::string &text, const std::string &filename) {
  OptBuilder b;
  b.where = filename;

  std::istringstream in(text);
  std::string rawLine, preText;
  int preLine = 0;
  std::vector<std::pair<std::string, int>> assumeTexts;
  bool inTarget = false;
  int lineNo = 0;

  while (std::getline(in, rawLine)) {
    ++lineNo;
    std::string line = rawLine;
    if (size_t sc = line.find(';'); sc != std::string::npos) line.resize(sc);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "=>") {
      if (inTarget) b.fail(lineNo, 1, "duplicate '=>'");
      if (b.opt.sourceOrder.empty()) b.fail(lineNo, 1, "empty source");
      b.opt.sourceRoot = b.opt.sourceOrder.back();
      inTarget = true;
      continue;
    }
    if (line.rfind("Name:", 0) == 0) {
      b.opt.name = trim(line.substr(5));
      continue;
    }
    if (line.rfind("Pre:", 0) == 0) {
      if (!preText.empty()) b.fail(lineNo, 1, "duplicate Pre: line");
      preText = trim(line.substr(4));
      preLine = lineNo;
      continue;
    }
    if (line.rfind("Assume:", 0) == 0) {
      assumeTexts.emplace_back(trim(line.substr(7)), lineNo);
      continue;
    }
    b.parseInstrLine(line, inTarget, lineNo);
  }

  if (!inTarget) b.fail(lineNo + 1, 1, "missing '=>'");
  if (b.opt.targetOrder.empty()) b.fail(lineNo + 1, 1, "empty target");
  b.opt.targetRoot = b.opt.targetOrder.back();
  b.opt.types.unify(b.opt.nodes[b.opt.sourceRoot].type,
                    b.opt.nodes[b.opt.targetRoot].type);

  auto parsePredLine = [&](const std::string &s, int line) {
    auto toks = lex(s, filename, line);
    ExprParser ep{toks, 0, filename, line};
    PredPtr p = ep.predOr();
    if (ep.peek().kind != Token::Kind::End) ep.fail("trailing tokens");
    b.checkPred(*p, line);
    return p;
  };

  b.opt.pre = preText.empty() ? pTrue() : parsePredLine(preText, preLine);
  for (auto &[s, line] : assumeTexts)
    b.opt.assumes.push_back(parsePredLine(s, line));
  return b.opt;
}

Optimization parseOptimizationFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseOptimization(ss.str(), path);
}

PredPtr parsePrecondition(const std::string &text, const std::string &filename) {
  auto toks = lex(text, filename, 1);
  ExprParser ep{toks, 0, filename, 1};
  PredPtr p = ep.predOr();
  if (ep.peek().kind != Token::Kind::End) ep.fail("trailing tokens");
  return p;
}

PredPtr typecheckPred(const Optimization &opt, TypeModel &types, const PredPtr &p) {
  // Reuse the builder's checker against an existing optimization.
  OptBuilder b;
  b.where = "<pre>";
  b.opt.nodes = opt.nodes;
  for (size_t i = 0; i < opt.nodes.size(); ++i)
    if (!opt.nodes[i].name.empty()) b.names.emplace(opt.nodes[i].name, static_cast<int>(i));
  b.opt.types = types;
  b.checkPred(*p, 1);
  types = b.opt.types;
  return p;
}

// --- printing ---------------------------------------------------------------

const char *opcodeName(Opcode op) {
  switch (op) {
  case Opcode::Add: return "add";
  case Opcode::Sub: return "sub";
  case Opcode::Mul: return "mul";
  case Opcode::UDiv: return "udiv";
  case Opcode::SDiv: return "sdiv";
  case Opcode::URem: return "urem";
  case Opcode::SRem: return "srem";
  case Opcode::Shl: return "shl";
  case Opcode::LShr: return "lshr";
  case Opcode::AShr: return "ashr";
  case Opcode::And: return "and";
  case Opcode::Or: return "or";
  case Opcode::Xor: return "xor";
  case Opcode::ICmp: return "icmp";
  case Opcode::Select: return "select";
  case Opcode::ZExt: return "zext";
  case Opcode::SExt: return "sext";
  case Opcode::Trunc: return "trunc";
  case Opcode::Copy: return "copy";
  }
  return "?";
}

const char *condName(Cond c) {
  switch (c) {
  case Cond::Eq: return "eq";
  case Cond::Ne: return "ne";
  case Cond::Ugt: return "ugt";
  case Cond::Uge: return "uge";
  case Cond::Ult: return "ult";
  case Cond::Ule: return "ule";
  case Cond::Sgt: return "sgt";
  case Cond::Sge: return "sge";
  case Cond::Slt: return "slt";
  case Cond::Sle: return "sle";
  }
  return "?";
}

namespace {

void printOperand(std::ostream &os, const Optimization &opt, int id) {
  const Node &n = opt.node(id);
  switch (n.kind) {
  case Node::Kind::InputVar:
  case Node::Kind::SymConst:
  case Node::Kind::Instr: os << n.name; return;
  case Node::Kind::ConstLiteral: os << n.lit; return;
  case Node::Kind::ConstExpr: os << "(" << toString(n.cexpr) << ")"; return;
  }
}

void printInstr(std::ostream &os, const Optimization &opt, int id) {
  const Node &n = opt.node(id);
  os << n.name << " = ";
  if (n.op == Opcode::Copy) {
    printOperand(os, opt, n.operands[0]);
    os << "\n";
    return;
  }
  os << opcodeName(n.op);
  if (n.op == Opcode::ICmp) os << " " << condName(n.cond);
  if (n.flags.nuw) os << " nuw";
  if (n.flags.nsw) os << " nsw";
  if (n.flags.exact) os << " exact";
  if (n.annotWidth > 0) os << " i" << n.annotWidth;
  for (size_t i = 0; i < n.operands.size(); ++i) {
    os << (i ? ", " : " ");
    printOperand(os, opt, n.operands[i]);
  }
  os << "\n";
}

}  // namespace

std::string printOptimization(const Optimization &opt) {
  std::ostringstream os;
  if (!opt.name.empty()) os << "Name: " << opt.name << "\n";
  if (opt.pre && opt.pre->kind != Pred::Kind::True)
    os << "Pre: " << toString(opt.pre) << "\n";
  for (const auto &a : opt.assumes) os << "Assume: " << toString(a) << "\n";
  for (int id : opt.sourceOrder) printInstr(os, opt, id);
  os << "=>\n";
  for (int id : opt.targetOrder) printInstr(os, opt, id);
  return os.str();
}

}  // namespace pinfer
