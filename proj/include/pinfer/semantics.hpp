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
// Concrete evaluation of rewrites and preconditions.
//
// Instruction values are always computed with the totalized bitvector
// operations; whether an execution hits undefined behavior is tracked
// separately as a definedness bit per side. Constant expressions instead
// evaluate to "no value" when unsafe (division by zero, over-shift, log2 of
// zero), and predicates over them come out three-valued.

#ifndef PINFER_SEMANTICS_HPP
#define PINFER_SEMANTICS_HPP

#include <map>
#include <optional>

#include "pinfer/bitvec.hpp"
#include "pinfer/dsl.hpp"
#include "pinfer/term.hpp"
#include "pinfer/tribool.hpp"

namespace pinfer {

struct Env {
  const Optimization *opt = nullptr;
  const TypeAssignment *ta = nullptr;
  std::map<std::string, BitVec> consts;   // SymConst name -> value
  std::map<std::string, BitVec> runtime;  // InputVar name -> value

  int width(TypeRef t) const { return ta->width(t); }
  int widthOfName(const std::string &name) const;
};

// Unsafe subterms yield nullopt.
std::optional<BitVec> evalCexpr(const Env &env, const Cexpr &e);

// Three-valued with left-to-right short-circuiting: Reject && x == Reject and
// Accept || x == Accept regardless of x; an Unsafe left operand poisons the
// result; negation never turns Unsafe into a definite answer.
TriBool evalPred(const Env &env, const Pred &p);

// Structural safety conditions. evalCexpr is nullopt iff cexprSafe is false,
// and evalPred is Unsafe iff predSafe is false.
bool cexprSafe(const Env &env, const Cexpr &e);
bool predSafe(const Env &env, const Pred &p);

struct EvalResult {
  bool sigmaT = true;   // every target constant expression is safe
  bool defS = true;     // source execution hits no undefined behavior
  bool defT = true;     // likewise for the target
  BitVec valS, valT;    // root values under the totalized semantics
};

// Evaluates both sides of the rewrite for one concrete binding of the input
// variables and symbolic constants. Definedness of each side ranges over the
// instructions reachable from that side's root.
EvalResult evalRewrite(const Env &env);

// The replacement-correctness condition for one binding: the target constants
// are safe, and whenever the source is defined the target is defined and
// agrees with it.
inline bool evalV(const EvalResult &r) {
  return r.sigmaT && (!r.defS || (r.defT && r.valS == r.valT));
}

}  // namespace pinfer

#endif  // PINFER_SEMANTICS_HPP
