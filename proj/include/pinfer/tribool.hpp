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

#ifndef PINFER_TRIBOOL_HPP
#define PINFER_TRIBOOL_HPP

namespace pinfer {

// Three-valued predicate outcome: accept, reject, or compile-time unsafe.
// Negation fixes Unsafe; conjunction/disjunction short-circuit on the left,
// so Reject && x == Reject and Accept || x == Accept even when x is Unsafe.
enum class TriBool { Accept, Reject, Unsafe };

inline TriBool tbNot(TriBool t) {
  switch (t) {
  case TriBool::Accept: return TriBool::Reject;
  case TriBool::Reject: return TriBool::Accept;
  default: return TriBool::Unsafe;
  }
}

inline char tbChar(TriBool t) {
  switch (t) {
  case TriBool::Accept: return 'T';
  case TriBool::Reject: return 'B';
  default: return '*';
  }
}

}  // namespace pinfer

#endif  // PINFER_TRIBOOL_HPP
