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

#ifndef PINFER_BITVEC_HPP
#define PINFER_BITVEC_HPP

#include <cassert>
#include <cstdint>
#include <string>

namespace pinfer {

constexpr int kMaxWidth = 64;

inline uint64_t bvMask(int w) {
  return w >= 64 ? ~0ull : (1ull << w) - 1;
}

// Fixed-width bitvector. Value is stored zero-extended; the signed view is
// two's complement. Operations that LLVM leaves undefined (division by zero,
// over-shift, smin/-1) are totalized with the SMT-LIB conventions so that the
// exhaustive and solver backends agree bit for bit. Definedness is tracked
// separately; callers gate on it.
struct BitVec {
  int width = 0;
  uint64_t bits = 0;

  BitVec() = default;
  BitVec(int w, uint64_t v) : width(w), bits(v & bvMask(w)) { assert(w >= 1 && w <= kMaxWidth); }

  static BitVec fromSigned(int w, int64_t v) { return BitVec(w, static_cast<uint64_t>(v)); }
  static BitVec signedMin(int w) { return BitVec(w, 1ull << (w - 1)); }
  static BitVec allOnes(int w) { return BitVec(w, bvMask(w)); }

  int64_t toSigned() const {
    if (width == 64) return static_cast<int64_t>(bits);
    uint64_t sign = 1ull << (width - 1);
    return static_cast<int64_t>((bits ^ sign)) - static_cast<int64_t>(sign);
  }
  bool isSignedMin() const { return bits == (1ull << (width - 1)); }
  bool isAllOnes() const { return bits == bvMask(width); }
  bool isZero() const { return bits == 0; }

  friend bool operator==(const BitVec &a, const BitVec &b) {
    return a.width == b.width && a.bits == b.bits;
  }
};

inline BitVec bvAdd(BitVec a, BitVec b) { return BitVec(a.width, a.bits + b.bits); }
inline BitVec bvSub(BitVec a, BitVec b) { return BitVec(a.width, a.bits - b.bits); }
inline BitVec bvMul(BitVec a, BitVec b) { return BitVec(a.width, a.bits * b.bits); }
inline BitVec bvNeg(BitVec a) { return BitVec(a.width, 0 - a.bits); }
inline BitVec bvNot(BitVec a) { return BitVec(a.width, ~a.bits); }
inline BitVec bvAnd(BitVec a, BitVec b) { return BitVec(a.width, a.bits & b.bits); }
inline BitVec bvOr(BitVec a, BitVec b) { return BitVec(a.width, a.bits | b.bits); }
inline BitVec bvXor(BitVec a, BitVec b) { return BitVec(a.width, a.bits ^ b.bits); }

inline BitVec bvUDiv(BitVec a, BitVec b) {
  if (b.bits == 0) return BitVec::allOnes(a.width);
  return BitVec(a.width, a.bits / b.bits);
}
inline BitVec bvURem(BitVec a, BitVec b) {
  if (b.bits == 0) return a;
  return BitVec(a.width, a.bits % b.bits);
}
inline BitVec bvSDiv(BitVec a, BitVec b) {
  int64_t sa = a.toSigned(), sb = b.toSigned();
  if (sb == 0) return BitVec::fromSigned(a.width, sa < 0 ? 1 : -1);
  if (a.isSignedMin() && sb == -1) return a;
  return BitVec::fromSigned(a.width, sa / sb);
}
inline BitVec bvSRem(BitVec a, BitVec b) {
  int64_t sa = a.toSigned(), sb = b.toSigned();
  if (sb == 0) return a;
  if (a.isSignedMin() && sb == -1) return BitVec(a.width, 0);
  return BitVec::fromSigned(a.width, sa % sb);
}
inline BitVec bvShl(BitVec a, BitVec s) {
  if (s.bits >= static_cast<uint64_t>(a.width)) return BitVec(a.width, 0);
  return BitVec(a.width, a.bits << s.bits);
}
inline BitVec bvLShr(BitVec a, BitVec s) {
  if (s.bits >= static_cast<uint64_t>(a.width)) return BitVec(a.width, 0);
  return BitVec(a.width, a.bits >> s.bits);
}
inline BitVec bvAShr(BitVec a, BitVec s) {
  bool neg = a.toSigned() < 0;
  if (s.bits >= static_cast<uint64_t>(a.width))
    return neg ? BitVec::allOnes(a.width) : BitVec(a.width, 0);
  return BitVec::fromSigned(a.width, a.toSigned() >> s.bits);
}

inline BitVec bvZExt(BitVec a, int w) { return BitVec(w, a.bits); }
inline BitVec bvSExt(BitVec a, int w) { return BitVec::fromSigned(w, a.toSigned()); }
inline BitVec bvTrunc(BitVec a, int w) { return BitVec(w, a.bits); }

inline BitVec bvAbs(BitVec a) {
  return a.toSigned() < 0 ? bvNeg(a) : a;  // abs(smin) wraps back to smin
}
// Floor of log2; caller must rule out zero.
inline BitVec bvLog2(BitVec a) {
  assert(a.bits != 0);
  int k = 63;
  while (!(a.bits & (1ull << k))) --k;
  return BitVec(a.width, static_cast<uint64_t>(k));
}

inline bool bvIsPowerOf2(BitVec a) { return a.bits != 0 && (a.bits & (a.bits - 1)) == 0; }
inline bool bvIsPowerOf2OrZero(BitVec a) { return (a.bits & (a.bits - 1)) == 0; }

// Overflow predicates for the nuw/nsw instruction flags.
inline bool addOverflowU(BitVec a, BitVec b) { return ((a.bits + b.bits) & bvMask(a.width)) < a.bits; }
inline bool subOverflowU(BitVec a, BitVec b) { return a.bits < b.bits; }
inline bool mulOverflowU(BitVec a, BitVec b) {
  return static_cast<unsigned __int128>(a.bits) * b.bits > bvMask(a.width);
}
inline bool addOverflowS(BitVec a, BitVec b) {
  __int128 r = static_cast<__int128>(a.toSigned()) + b.toSigned();
  return r < -(static_cast<__int128>(1) << (a.width - 1)) ||
         r >= (static_cast<__int128>(1) << (a.width - 1));
}
inline bool subOverflowS(BitVec a, BitVec b) {
  __int128 r = static_cast<__int128>(a.toSigned()) - b.toSigned();
  return r < -(static_cast<__int128>(1) << (a.width - 1)) ||
         r >= (static_cast<__int128>(1) << (a.width - 1));
}
inline bool mulOverflowS(BitVec a, BitVec b) {
  __int128 r = static_cast<__int128>(a.toSigned()) * b.toSigned();
  return r < -(static_cast<__int128>(1) << (a.width - 1)) ||
         r >= (static_cast<__int128>(1) << (a.width - 1));
}

std::string toString(const BitVec &v);

}  // namespace pinfer

#endif  // PINFER_BITVEC_HPP
