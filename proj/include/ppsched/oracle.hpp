// Copyright 2026 The ppsched Authors
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

// Exact reference solvers for small inputs: the optimal slotted makespan
// (under ResourceLock::kFlexible) and brute-force maximum weight independent
// sets.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ppsched/graph.hpp"
#include "ppsched/model.hpp"
#include "ppsched/mwis.hpp"
#include "ppsched/weights.hpp"

namespace ppsched {

struct OracleLimits {
  double max_seconds = 300;
  std::uint64_t max_states = 20'000'000;
  int max_graph_nodes = 25;
};

struct OracleResult {
  int slots = 0;
  /// False when a limit was hit; slots is then an upper bound only.
  bool optimal = false;
  Schedule certificate;
  std::uint64_t states_expanded = 0;
  double wall_ms = 0;
};

namespace internal {

struct OracleLimitHit {};

class MakespanSearch {
 public:
  MakespanSearch(const ProblemInstance& inst, const OracleLimits& lim) : inst_(inst), lim_(lim) {
    start_ = std::chrono::steady_clock::now();
    P_ = static_cast<int>(inst.parts.size());
  }

  // Per part: op, option (-1 idle), done. Finished parts have op == J.
  using State = std::vector<int>;

  State initial() const {
    State s(3 * P_, 0);
    for (int p = 0; p < P_; ++p) s[3 * p + 1] = -1;
    return s;
  }

  bool finished(const State& s) const {
    for (int p = 0; p < P_; ++p)
      if (s[3 * p] < static_cast<int>(inst_.parts[p].operations.size())) return false;
    return true;
  }

  int lower_bound(const State& s) const {
    int lb = 0;
    for (int p = 0; p < P_; ++p) {
      const int j = s[3 * p];
      if (j >= static_cast<int>(inst_.parts[p].operations.size())) continue;
      int r;
      if (s[3 * p + 1] >= 0) {
        r = remaining_slots(inst_, {p, j, s[3 * p + 1], s[3 * p + 2] + 1});
      } else {
        r = -1;
        for (int k = 0; k < static_cast<int>(inst_.parts[p].operations[j].options.size()); ++k) {
          const int x = remaining_slots(inst_, {p, j, k, 1});
          r = r < 0 ? x : std::min(r, x);
        }
      }
      lb = std::max(lb, r);
    }
    return lb;
  }

  struct Move {
    std::vector<SlotEntry> entries;
  };

  /// Every non-empty feasible slot from s, larger moves first.
  std::vector<Move> moves(const State& s) const {
    std::vector<UnitTask> fixed;
    std::vector<int> idle;
    for (int p = 0; p < P_; ++p) {
      const int j = s[3 * p];
      if (j >= static_cast<int>(inst_.parts[p].operations.size())) continue;
      if (s[3 * p + 1] >= 0) fixed.push_back({p, j, s[3 * p + 1], s[3 * p + 2] + 1});
      else idle.push_back(p);
    }
    std::vector<std::vector<UnitTask>> combos;
    std::vector<UnitTask> cur = fixed;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == idle.size()) {
        if (!cur.empty()) combos.push_back(cur);
        return;
      }
      const int p = idle[i];
      const int j = s[3 * p];
      for (int k = 0; k < static_cast<int>(inst_.parts[p].operations[j].options.size()); ++k) {
        cur.push_back({p, j, k, 1});
        rec(i + 1);
        cur.pop_back();
      }
      rec(i + 1);
    };
    rec(0);
    std::stable_sort(combos.begin(), combos.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::vector<Move> out;
    for (auto& c : combos) {
      std::sort(c.begin(), c.end());
      Move m;
      if (assign(c, m.entries)) out.push_back(std::move(m));
    }
    return out;
  }

  State apply(const State& s, const Move& m) const {
    State n = s;
    for (const auto& e : m.entries) {
      const int p = e.part;
      n[3 * p + 1] = e.option;
      n[3 * p + 2] = e.slot_index;
      if (e.slot_index == inst_.option(p, e.op, e.option).duration_slots) {
        n[3 * p] += 1;
        n[3 * p + 1] = -1;
        n[3 * p + 2] = 0;
      }
    }
    return n;
  }

  /// Minimum slots to finish from s.
  int solve(const State& s) {
    if (finished(s)) return 0;
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second.value;
    if (++expanded_ > lim_.max_states) throw OracleLimitHit{};
    if ((expanded_ & 1023) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > lim_.max_seconds)
      throw OracleLimitHit{};
    const int lb = lower_bound(s);
    auto ms = moves(s);
    int best = -1;
    int best_move = -1;
    for (int i = 0; i < static_cast<int>(ms.size()); ++i) {
      const State n = apply(s, ms[i]);
      if (best >= 0 && 1 + lower_bound(n) >= best) continue;
      const int v = 1 + solve(n);
      if (best < 0 || v < best) {
        best = v;
        best_move = i;
        if (best == lb) break;
      }
    }
    memo_.emplace(s, Entry{best, std::move(ms[best_move])});
    return best;
  }

  Schedule certificate(State s) const {
    Schedule out;
    while (!finished(s)) {
      const Entry& e = memo_.at(s);
      out.slots.push_back(e.move.entries);
      s = apply(s, e.move);
    }
    return out;
  }

  /// Always takes the largest feasible move.
  Schedule dive(State s) const {
    Schedule out;
    while (!finished(s)) {
      auto ms = moves(s);
      out.slots.push_back(ms.front().entries);
      s = apply(s, ms.front());
    }
    return out;
  }

  std::uint64_t expanded() const { return expanded_; }

 private:
  // Assigns one resource per group to every unit task with no resource used
  // twice; first feasible assignment in input order.
  bool assign(const std::vector<UnitTask>& uts, std::vector<SlotEntry>& out) const {
    out.clear();
    for (const auto& u : uts) {
      SlotEntry e{u.part, u.op, u.option, u.slot, {}};
      e.assignment.assign(inst_.option(u.part, u.op, u.option).groups.size(), -1);
      out.push_back(std::move(e));
    }
    std::vector<char> used(inst_.resources.size(), 0);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t g) -> bool {
      if (i == out.size()) return true;
      const auto& groups = inst_.option(out[i].part, out[i].op, out[i].option).groups;
      if (g == groups.size()) return rec(i + 1, 0);
      for (ResourceIndex r : groups[g]) {
        if (used[r]) continue;
        used[r] = 1;
        out[i].assignment[g] = r;
        if (rec(i, g + 1)) return true;
        used[r] = 0;
      }
      return false;
    };
    return rec(0, 0);
  }

  struct Hash {
    std::size_t operator()(const State& s) const {
      std::size_t h = 1469598103934665603ULL;
      for (int x : s) h = (h ^ static_cast<std::size_t>(x + 7)) * 1099511628211ULL;
      return h;
    }
  };
  struct Entry {
    int value;
    Move move;
  };

  const ProblemInstance& inst_;
  OracleLimits lim_;
  int P_ = 0;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t expanded_ = 0;
  std::unordered_map<State, Entry, Hash> memo_;
};

}  // namespace internal

/// Minimum number of slots over all feasible schedules, with a certificate.
/// On hitting a limit, returns a feasible schedule flagged optimal = false.
inline OracleResult optimal_makespan(const ProblemInstance& inst, const OracleLimits& lim = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  internal::MakespanSearch search(inst, lim);
  const auto s0 = search.initial();
  OracleResult out;
  try {
    out.slots = search.solve(s0);
    out.certificate = search.certificate(s0);
    out.optimal = true;
  } catch (const internal::OracleLimitHit&) {
    out.certificate = search.dive(s0);
    out.slots = out.certificate.makespan_slots();
    out.optimal = false;
  }
  out.states_expanded = search.expanded();
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

/// Exhaustive maximum weight independent set: max weight, then max
/// cardinality, then lexicographically smallest sorted id list.
template <UndirectedGraph G, class W>
IndependentSet<W> mwis_bruteforce(const G& g, const std::vector<W>& w, int max_nodes = 25) {
  const int n = g.node_count();
  if (n > max_nodes)
    throw ResourceLimitError("brute-force MWIS limited to " + std::to_string(max_nodes) + " nodes, got " +
                             std::to_string(n));
  if (static_cast<int>(w.size()) != n) throw Error("factor count does not match node count");
  W scale{};
  for (const W& x : w) scale += x < W{} ? -x : x;
  const W tol = WeightTraits<W>::tolerance(scale);
  IndependentSet<W> best;
  bool have = false;
  std::vector<int> cur;
  // Visits independent sets in lexicographic order, so the first of equal
  // value wins.
  std::function<void(int, W)> rec = [&](int from, W cw) {
    const int k = static_cast<int>(cur.size());
    const int bk = static_cast<int>(best.nodes.size());
    if (!have || cw > best.weight + tol || (cw >= best.weight - tol && k > bk)) {
      best.nodes = cur;
      best.weight = cw;
      have = true;
    }
    for (int v = from; v < n; ++v) {
      bool ok = true;
      for (int u : cur)
        if (g.neighbor_set(u).test(v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(v);
      rec(v + 1, cw + w[v]);
      cur.pop_back();
    }
  };
  rec(0, W{});
  return best;
}

}  // namespace ppsched
