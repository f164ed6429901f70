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

#include "pinfer/boolsynth.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pinfer {

CnfFormula cnfTrue() { return {}; }
CnfFormula cnfFalse() {
  CnfFormula f;
  f.clauses.push_back({});
  return f;
}
CnfFormula cnfBottom() {
  CnfFormula f;
  f.bottom = true;
  return f;
}

bool litAccepts(const BoolLit &l, const std::string &vec) {
  char c = vec[static_cast<size_t>(l.pred)];
  if (c == '*') return false;  // unsafe rejects under both polarities
  return l.negated ? c == 'B' : c == 'T';
}

bool clauseAccepts(const BoolClause &c, const std::string &vec) {
  for (const BoolLit &l : c.lits)
    if (litAccepts(l, vec)) return true;
  return false;
}

bool accepts(const CnfFormula &f, const std::string &vec) {
  if (f.bottom) return false;
  for (const BoolClause &c : f.clauses)
    if (!clauseAccepts(c, vec)) return false;
  return true;
}

std::string toString(const BoolLit &l) {
  return (l.negated ? "!p" : "p") + std::to_string(l.pred + 1);
}

std::string toString(const BoolClause &c) {
  if (c.lits.empty()) return "(false)";
  std::string s = "(";
  for (size_t i = 0; i < c.lits.size(); ++i) {
    if (i) s += " | ";
    s += toString(c.lits[i]);
  }
  return s + ")";
}

std::string toString(const CnfFormula &f) {
  if (f.bottom) return "<bottom>";
  if (f.clauses.empty()) return "true";
  std::string s;
  for (size_t i = 0; i < f.clauses.size(); ++i) {
    if (i) s += " & ";
    s += toString(f.clauses[i]);
  }
  return s;
}

int64_t acceptedWeight(const CnfFormula &f, const std::vector<WeightedVec> &pos) {
  int64_t w = 0;
  for (const auto &p : pos)
    if (accepts(f, p.vec)) w += p.weight;
  return w;
}

namespace {

// All clauses with exactly k distinct predicates, in combination order with
// the positive polarity enumerated before the negated one per slot.
void clausesOfSize(int npreds, int k, std::vector<BoolClause> &out) {
  std::vector<int> combo(static_cast<size_t>(k));
  auto emitPolarities = [&](auto &&self, BoolClause &cur, size_t slot) -> void {
    if (slot == combo.size()) {
      out.push_back(cur);
      return;
    }
    for (int negated = 0; negated < 2; ++negated) {
      cur.lits.push_back({combo[slot], negated == 1});
      self(self, cur, slot + 1);
      cur.lits.pop_back();
    }
  };
  auto choose = [&](auto &&self, int start, int slot) -> void {
    if (slot == k) {
      BoolClause cur;
      emitPolarities(emitPolarities, cur, 0);
      return;
    }
    for (int p = start; p <= npreds - (k - slot); ++p) {
      combo[static_cast<size_t>(slot)] = p;
      self(self, p + 1, slot + 1);
    }
  };
  if (k == 0) {
    out.push_back({});
    return;
  }
  choose(choose, 0, 0);
}

}  // namespace

CnfFormula coverClauses(const std::vector<BoolClause> &pool,
                        const std::vector<std::string> &negs) {
  std::vector<char> covered(negs.size(), 0);
  size_t uncovered = negs.size();
  CnfFormula out;
  while (uncovered > 0) {
    size_t best = pool.size();
    size_t bestCount = 0;
    for (size_t i = 0; i < pool.size(); ++i) {
      size_t count = 0;
      for (size_t j = 0; j < negs.size(); ++j)
        if (!covered[j] && !clauseAccepts(pool[i], negs[j])) ++count;
      if (count > bestCount) {
        bestCount = count;
        best = i;
      }
    }
    if (bestCount == 0) return cnfBottom();
    for (size_t j = 0; j < negs.size(); ++j)
      if (!covered[j] && !clauseAccepts(pool[best], negs[j])) {
        covered[j] = 1;
        --uncovered;
      }
    out.clauses.push_back(pool[best]);
  }
  return out;
}

CnfFormula learnComplete(const std::vector<std::string> &pos,
                         const std::vector<std::string> &neg, int npreds) {
  if (pos.empty()) return cnfFalse();
  std::vector<BoolClause> pool;  // accumulates across clause sizes
  for (int k = 0; k <= npreds; ++k) {
    double estimate = 1;
    for (int i = 0; i < k; ++i) estimate *= 2.0 * (npreds - i) / (i + 1);
    if (estimate > 2e6) return cnfBottom();
    std::vector<BoolClause> sized;
    clausesOfSize(npreds, k, sized);
    for (auto &c : sized) {
      bool keepsAll = true;
      for (const auto &v : pos)
        if (!clauseAccepts(c, v)) { keepsAll = false; break; }
      if (keepsAll) pool.push_back(std::move(c));
    }
    CnfFormula f = coverClauses(pool, neg);
    if (!f.bottom) return f;
  }
  return cnfBottom();
}

CnfFormula learnPartial(const std::vector<WeightedVec> &pos,
                        const std::vector<std::string> &neg, int npreds,
                        int maxK, const BoolClause *firstClause) {
  std::vector<BoolClause> candidates;
  for (int k = 1; k <= maxK; ++k) clausesOfSize(npreds, k, candidates);

  std::vector<char> posAlive(pos.size(), 1);
  std::vector<char> negAlive(neg.size(), 1);
  size_t negLeft = neg.size();
  CnfFormula out;
  bool first = true;

  while (negLeft > 0) {
    const BoolClause *pick = nullptr;
    if (first && firstClause) {
      pick = firstClause;
    } else {
      int64_t bestScore = -1;
      for (const auto &c : candidates) {
        bool rejectsSome = false;
        for (size_t j = 0; j < neg.size(); ++j)
          if (negAlive[j] && !clauseAccepts(c, neg[j])) { rejectsSome = true; break; }
        if (!rejectsSome) continue;
        int64_t score = 0;
        for (size_t j = 0; j < pos.size(); ++j)
          if (posAlive[j] && clauseAccepts(c, pos[j].vec)) score += pos[j].weight;
        if (score > bestScore) {
          bestScore = score;
          pick = &c;
        }
      }
      if (!pick) return cnfBottom();
    }
    first = false;
    out.clauses.push_back(*pick);
    for (size_t j = 0; j < pos.size(); ++j)
      if (posAlive[j] && !clauseAccepts(*pick, pos[j].vec)) posAlive[j] = 0;
    for (size_t j = 0; j < neg.size(); ++j)
      if (negAlive[j] && !clauseAccepts(*pick, neg[j])) {
        negAlive[j] = 0;
        --negLeft;
      }
  }
  return out;
}

CnfFormula learnPartialRestarts(const std::vector<WeightedVec> &pos,
                                const std::vector<std::string> &neg,
                                int npreds, int maxK, int restarts) {
  if (neg.empty()) return cnfTrue();
  std::vector<BoolClause> candidates;
  for (int k = 1; k <= maxK; ++k) clausesOfSize(npreds, k, candidates);

  // Score every possible first step the way learnPartial would.
  struct Scored {
    int64_t score;
    size_t order;
    const BoolClause *c;
  };
  std::vector<Scored> firsts;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const auto &c = candidates[i];
    bool rejectsSome = false;
    for (const auto &n : neg)
      if (!clauseAccepts(c, n)) { rejectsSome = true; break; }
    if (!rejectsSome) continue;
    int64_t score = 0;
    for (const auto &p : pos)
      if (clauseAccepts(c, p.vec)) score += p.weight;
    firsts.push_back({score, i, &c});
  }
  std::sort(firsts.begin(), firsts.end(), [](const Scored &a, const Scored &b) {
    return a.score != b.score ? a.score > b.score : a.order < b.order;
  });
  if (firsts.size() > static_cast<size_t>(restarts))
    firsts.resize(static_cast<size_t>(restarts));

  CnfFormula best = cnfBottom();
  int64_t bestWeight = -1;
  std::string bestKey;
  for (const Scored &s : firsts) {
    CnfFormula f = learnPartial(pos, neg, npreds, maxK, s.c);
    if (f.bottom) continue;
    int64_t w = acceptedWeight(f, pos);
    std::string key = toString(f);
    bool better = best.bottom || w > bestWeight ||
                  (w == bestWeight && f.clauses.size() < best.clauses.size()) ||
                  (w == bestWeight && f.clauses.size() == best.clauses.size() &&
                   key < bestKey);
    if (better) {
      best = std::move(f);
      bestWeight = w;
      bestKey = std::move(key);
    }
  }
  return best;
}

VecMatrix parseMatrixFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  VecMatrix m;
  std::string line;
  int lineNo = 0;
  bool haveHeader = false;
  while (std::getline(in, line)) {
    ++lineNo;
    if (size_t h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    auto fail = [&](const std::string &msg) {
      throw std::runtime_error(path + ":" + std::to_string(lineNo) + ": " + msg);
    };
    if (!haveHeader) {
      if (first != "preds") fail("expected 'preds N' header");
      if (!(ls >> m.npreds) || m.npreds <= 0) fail("bad predicate count");
      haveHeader = true;
      continue;
    }
    if (first.size() != static_cast<size_t>(m.npreds) ||
        first.find_first_not_of("TB*") != std::string::npos)
      fail("bad vector '" + first + "'");
    std::string sign;
    if (!(ls >> sign) || (sign != "+" && sign != "-")) fail("expected + or -");
    int64_t weight = 1;
    ls >> weight;
    if (sign == "+")
      m.pos.push_back({first, weight});
    else
      m.neg.push_back(first);
  }
  if (!haveHeader) throw std::runtime_error(path + ": empty matrix file");
  return m;
}

}  // namespace pinfer
