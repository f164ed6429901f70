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

#include "pinfer/verify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pinfer {

TriBool evalOn(const Optimization &opt, const PredPtr &pre, const ConstValuation &v) {
  Env env = makeEnv(opt, v);
  return evalPred(env, *pre);
}

namespace {

// Numeric-aware name order: C2 before C10.
bool nameLess(const std::string &a, const std::string &b) {
  if (a.size() != b.size() &&
      a.find_first_not_of("0123456789", 1) == std::string::npos &&
      b.find_first_not_of("0123456789", 1) == std::string::npos && a[0] == b[0])
    return a.size() < b.size();
  return a < b;
}

}  // namespace

struct ExhaustiveBackend::Impl {
  const Optimization &opt;
  std::vector<TypeAssignment> tas;
  int maxBits;

  std::vector<size_t> constOrder;  // indices into opt.symConsts, by name

  struct Table {
    std::vector<uint8_t> flags;  // bit0 allV, bit1 existsDS, bit2 assumeOk
    std::vector<int> widths;     // per constant, in constOrder
    uint64_t count = 1;
  };
  std::map<std::vector<int>, Table> tables;  // keyed by TypeAssignment widths

  Impl(const Optimization &o, std::vector<TypeAssignment> t, int mb)
      : opt(o), tas(std::move(t)), maxBits(mb) {
    for (size_t i = 0; i < opt.symConsts.size(); ++i) constOrder.push_back(i);
    std::sort(constOrder.begin(), constOrder.end(), [&](size_t a, size_t b) {
      return nameLess(opt.node(opt.symConsts[a]).name,
                      opt.node(opt.symConsts[b]).name);
    });
  }

  uint64_t linearIndex(const Table &t, const ConstValuation &v) const {
    uint64_t idx = 0;
    for (size_t i = 0; i < constOrder.size(); ++i) {
      idx <<= t.widths[i];
      idx |= v.consts[constOrder[i]].bits;
    }
    return idx;
  }

  ConstValuation valuationAt(const Table &t, const TypeAssignment &ta,
                             uint64_t idx) const {
    ConstValuation v;
    v.ta = ta;
    v.consts.resize(constOrder.size());
    for (size_t i = constOrder.size(); i-- > 0;) {
      v.consts[constOrder[i]] = BitVec(t.widths[i], idx & bvMask(t.widths[i]));
      idx >>= t.widths[i];
    }
    return v;
  }

  const Table &table(const TypeAssignment &ta) {
    auto it = tables.find(ta.widths);
    if (it != tables.end()) return it->second;

    Table t;
    int totalBits = 0;
    for (size_t i : constOrder) {
      int w = ta.width(opt.node(opt.symConsts[i]).type);
      t.widths.push_back(w);
      totalBits += w;
    }
    std::vector<int> runWidths;
    for (int id : opt.inputVars) {
      runWidths.push_back(ta.width(opt.node(id).type));
      totalBits += runWidths.back();
    }
    if (totalBits > maxBits)
      throw std::runtime_error(
          "state space of " + std::to_string(totalBits) +
          " bits exceeds the exhaustive budget of " + std::to_string(maxBits));

    for (int w : t.widths) t.count <<= w;
    uint64_t runCount = 1;
    for (int w : runWidths) runCount <<= w;

    t.flags.resize(t.count);
    Env env;
    env.opt = &opt;
    env.ta = &ta;
    std::vector<BitVec *> constSlot, runSlot;
    for (size_t i : constOrder)
      constSlot.push_back(&env.consts[opt.node(opt.symConsts[i]).name]);
    for (int id : opt.inputVars) runSlot.push_back(&env.runtime[opt.node(id).name]);

    for (uint64_t ci = 0; ci < t.count; ++ci) {
      uint64_t rest = ci;
      for (size_t i = constOrder.size(); i-- > 0;) {
        *constSlot[i] = BitVec(t.widths[i], rest & bvMask(t.widths[i]));
        rest >>= t.widths[i];
      }
      uint8_t flags = 1;  // allV until refuted
      bool existsDS = false;
      bool assumeOk = true;
      for (const PredPtr &a : opt.assumes)
        if (evalPred(env, *a) != TriBool::Accept) { assumeOk = false; break; }
      if (assumeOk) {
        for (uint64_t ri = 0; ri < runCount; ++ri) {
          uint64_t rr = ri;
          for (size_t i = runWidths.size(); i-- > 0;) {
            *runSlot[i] = BitVec(runWidths[i], rr & bvMask(runWidths[i]));
            rr >>= runWidths[i];
          }
          EvalResult r = evalRewrite(env);
          if (!evalV(r)) flags &= static_cast<uint8_t>(~1u);
          if (r.defS) existsDS = true;
          if (!(flags & 1) && existsDS) break;
        }
        if (runWidths.empty()) {
          // No runtime inputs: one empty binding.
          EvalResult r = evalRewrite(env);
          if (!evalV(r)) flags &= static_cast<uint8_t>(~1u);
          if (r.defS) existsDS = true;
        }
      }
      if (existsDS) flags |= 2;
      if (assumeOk) flags |= 4;
      t.flags[ci] = flags;
    }
    return tables.emplace(ta.widths, std::move(t)).first->second;
  }

  static ExClass classOf(uint8_t flags) {
    if (!(flags & 1)) return ExClass::Negative;
    return (flags & 2) ? ExClass::Positive : ExClass::Trivial;
  }
};

ExhaustiveBackend::ExhaustiveBackend(const Optimization &opt,
                                     std::vector<TypeAssignment> tas, int maxBits)
    : impl_(std::make_unique<Impl>(opt, std::move(tas), maxBits)) {}

ExhaustiveBackend::~ExhaustiveBackend() = default;

const std::vector<TypeAssignment> &ExhaustiveBackend::assignments() const {
  return impl_->tas;
}

ExClass ExhaustiveBackend::classify(const ConstValuation &v) {
  const auto &t = impl_->table(v.ta);
  return Impl::classOf(t.flags[impl_->linearIndex(t, v)]);
}

void ExhaustiveBackend::forEachValuation(
    const std::function<bool(const ConstValuation &, ExClass)> &fn) {
  for (const TypeAssignment &ta : impl_->tas) {
    const auto &t = impl_->table(ta);
    for (uint64_t ci = 0; ci < t.count; ++ci) {
      uint8_t flags = t.flags[ci];
      if (!(flags & 4)) continue;  // assumptions exclude this binding
      if (!fn(impl_->valuationAt(t, ta, ci), Impl::classOf(flags))) return;
    }
  }
}

std::optional<ConstValuation> ExhaustiveBackend::refinementCex(const PredPtr &pre) {
  std::optional<ConstValuation> out;
  forEachValuation([&](const ConstValuation &v, ExClass cls) {
    TriBool r = evalOn(impl_->opt, pre, v);
    if (r == TriBool::Unsafe ||
        (r == TriBool::Accept && cls == ExClass::Negative)) {
      out = v;
      return false;
    }
    return true;
  });
  return out;
}

std::optional<ConstValuation> ExhaustiveBackend::missedPositive(const PredPtr &pre) {
  std::optional<ConstValuation> out;
  forEachValuation([&](const ConstValuation &v, ExClass cls) {
    if (cls == ExClass::Positive && evalOn(impl_->opt, pre, v) != TriBool::Accept) {
      out = v;
      return false;
    }
    return true;
  });
  return out;
}

std::optional<ConstValuation> ExhaustiveBackend::acceptedNonPositive(const PredPtr &pre) {
  std::optional<ConstValuation> out;
  forEachValuation([&](const ConstValuation &v, ExClass cls) {
    if (cls != ExClass::Positive && evalOn(impl_->opt, pre, v) == TriBool::Accept) {
      out = v;
      return false;
    }
    return true;
  });
  return out;
}

std::optional<ConstValuation> ExhaustiveBackend::weakerWitness(const PredPtr &a,
                                                               const PredPtr &b) {
  std::optional<ConstValuation> out;
  forEachValuation([&](const ConstValuation &v, ExClass) {
    if (evalOn(impl_->opt, a, v) == TriBool::Accept &&
        evalOn(impl_->opt, b, v) != TriBool::Accept) {
      out = v;
      return false;
    }
    return true;
  });
  return out;
}

std::vector<ConstValuation> ExhaustiveBackend::findExamples(
    ExClass want, size_t k, const ExampleSet &exclude) {
  std::vector<ConstValuation> out;
  forEachValuation([&](const ConstValuation &v, ExClass cls) {
    if (cls == want && !exclude.contains(v)) out.push_back(v);
    return out.size() < k;
  });
  return out;
}

std::vector<std::string> acceptedKeys(ExhaustiveBackend &backend,
                                      const Optimization &opt, const PredPtr &pre) {
  std::vector<std::string> keys;
  backend.forEachValuation([&](const ConstValuation &v, ExClass) {
    if (evalOn(opt, pre, v) == TriBool::Accept) keys.push_back(valuationKey(v));
    return true;
  });
  return keys;
}

std::vector<std::string> positiveKeys(ExhaustiveBackend &backend) {
  std::vector<std::string> keys;
  backend.forEachValuation([&](const ConstValuation &v, ExClass cls) {
    if (cls == ExClass::Positive) keys.push_back(valuationKey(v));
    return true;
  });
  return keys;
}

}  // namespace pinfer
