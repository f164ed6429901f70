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
// The rewrite DSL: parsing, type inference, and printing for .opt files.
//
// An .opt file describes a peephole rewrite:
//
//   Name: shl of power of two
//   Pre: isPowerOf2(C1)
//   Assume: C1 != 0
//   %r = udiv %X, C1
//   =>
//   %r = lshr %X, log2(C1)
//
// The source is the instruction DAG before the `=>` line, the target after.
// Runtime values are %-prefixed, symbolic constants are C<digits>, and the
// target may also use parenthesized constant expressions. The last line of
// each side defines its root; the two roots must name the same value.

#ifndef PINFER_DSL_HPP
#define PINFER_DSL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pinfer/term.hpp"

namespace pinfer {

// Parse or type errors carry a file:line:col location in what().
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string &msg) : std::runtime_error(msg) {}
};

enum class Opcode {
  Add, Sub, Mul, UDiv, SDiv, URem, SRem,
  Shl, LShr, AShr, And, Or, Xor,
  ICmp, Select, ZExt, SExt, Trunc,
  Copy,  // %r = <operand>
};

struct Flags {
  bool nuw = false, nsw = false, exact = false;
  bool any() const { return nuw || nsw || exact; }
};

// A node in the shared source/target DAG.
struct Node {
  enum class Kind { InputVar, SymConst, ConstLiteral, ConstExpr, Instr };
  Kind kind;
  std::string name;            // InputVar (%X) / SymConst (C1) / named Instr (%r)
  int64_t lit = 0;             // ConstLiteral
  CexprPtr cexpr;              // ConstExpr (target only)
  Opcode op{};                 // Instr
  Flags flags;                 // Instr
  Cond cond{};                 // Instr, op == ICmp
  std::vector<int> operands;   // Instr: node ids
  TypeRef type = -1;
  int annotWidth = -1;         // explicit iN annotation, kept for printing
};

// Width constraints gathered from the instructions: equalities via union-find
// plus strict orderings for the casts and fixed widths (icmp results are i1).
class TypeModel {
public:
  TypeRef fresh();
  TypeRef find(TypeRef t) const;
  void unify(TypeRef a, TypeRef b);           // throws ParseError on conflict
  void fixWidth(TypeRef t, int w);            // throws ParseError on conflict
  void addLess(TypeRef a, TypeRef b);         // width(a) < width(b)

  int count() const { return static_cast<int>(parent_.size()); }
  std::optional<int> fixedWidth(TypeRef t) const;
  const std::vector<std::pair<TypeRef, TypeRef>> &lessPairs() const { return less_; }

private:
  mutable std::vector<TypeRef> parent_;
  std::map<TypeRef, int> fixed_;  // representative -> width
  std::vector<std::pair<TypeRef, TypeRef>> less_;
};

// A concrete width for every type variable.
struct TypeAssignment {
  std::vector<int> widths;  // indexed by TypeRef
  int width(TypeRef t) const { return widths[t]; }
  friend bool operator==(const TypeAssignment &a, const TypeAssignment &b) {
    return a.widths == b.widths;
  }
};

struct Optimization {
  std::string name;
  PredPtr pre;                     // from the Pre: line, defaults to true
  std::vector<PredPtr> assumes;    // Assume: lines
  std::vector<Node> nodes;
  int sourceRoot = -1;
  int targetRoot = -1;
  std::vector<int> sourceOrder;    // instr ids in file order
  std::vector<int> targetOrder;
  TypeModel types;

  // Leaves in first-mention order; these fix the layout of example vectors.
  std::vector<int> inputVars;      // node ids
  std::vector<int> symConsts;

  const Node &node(int id) const { return nodes[id]; }
  int findNode(const std::string &name) const;  // -1 if absent
};

// Throws ParseError with file:line:col diagnostics.
Optimization parseOptimization(const std::string &text, const std::string &filename = "<input>");
Optimization parseOptimizationFile(const std::string &path);

// Parses a standalone precondition ("C1 u< C2 && isPowerOf2(C1)").
PredPtr parsePrecondition(const std::string &text, const std::string &filename = "<pre>");

// Type-checks a predicate against the optimization's symbols, unifying cexpr
// type variables in place. Throws ParseError on unknown names or width
// conflicts. Returns the same predicate with types annotated.
PredPtr typecheckPred(const Optimization &opt, TypeModel &types, const PredPtr &p);

// Enumerates every feasible width assignment over the given universe, in
// lexicographic order of the free representatives' widths. The universe is
// sorted and deduplicated first.
std::vector<TypeAssignment> enumerateAssignments(const TypeModel &types,
                                                 std::vector<int> widths);

// Round-trips through parseOptimization.
std::string printOptimization(const Optimization &opt);

const char *opcodeName(Opcode op);
const char *condName(Cond c);  // icmp predicate keyword: eq, ne, ugt, ...

}  // namespace pinfer

#endif  // PINFER_DSL_HPP
