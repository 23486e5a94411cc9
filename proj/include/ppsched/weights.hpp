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

// Unit-task weights and per-node weight factors.
//
//   W_connection(u, v) = e(u, v) / (n(u) * n(v))        u, v in different parts
//   W_length(u)        = LW_c * r(u)
//   W_total(u)         = W_length(u) + sum_v W_connection(u, v)
//
// where e counts conflict edges between the node sets of u and v, n counts
// nodes per unit task and r(u) is the number of slots still needed to finish
// u's part starting at u.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "ppsched/conflict_graph.hpp"
#include "ppsched/model.hpp"

namespace ppsched {

enum class LengthWeightLevel { kMedian, kHigh, kLow };

/// How r(u) prices operations that are still to come.
enum class ChainRule {
  kShortest,  ///< shortest option of each later operation
  kLongest,   ///< longest option of each later operation
};

inline std::string to_string(LengthWeightLevel l) {
  switch (l) {
    case LengthWeightLevel::kMedian: return "median";
    case LengthWeightLevel::kHigh: return "high";
    case LengthWeightLevel::kLow: return "low";
  }
  return "?";
}

inline std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline LengthWeightLevel parse_lw_level(std::string_view s) {
  const std::string l = lowercase(s);
  if (l == "median") return LengthWeightLevel::kMedian;
  if (l == "high") return LengthWeightLevel::kHigh;
  if (l == "low") return LengthWeightLevel::kLow;
  throw ConfigError("unknown length-weight level '" + std::string(s) + "' (expected median, high or low)");
}

/// Slots needed to finish u's part when u is the next unit task to run.
inline int remaining_slots(const ProblemInstance& inst, const UnitTask& u, ChainRule chain = ChainRule::kShortest) {
  int r = inst.option(u.part, u.op, u.option).duration_slots - u.slot + 1;
  const auto& ops = inst.parts[u.part].operations;
  for (std::size_t j = u.op + 1; j < ops.size(); ++j) {
    int best = ops[j].options.front().duration_slots;
    for (const auto& opt : ops[j].options)
      best = chain == ChainRule::kShortest ? std::min(best, opt.duration_slots) : std::max(best, opt.duration_slots);
    r += best;
  }
  return r;
}

/// Shortest number of slots part p needs from the start.
inline int part_chain_slots(const ProblemInstance& inst, int p, ChainRule chain = ChainRule::kShortest) {
  int best = -1;
  for (int k = 0; k < static_cast<int>(inst.parts[p].operations[0].options.size()); ++k) {
    const int r = remaining_slots(inst, {p, 0, k, 1}, chain);
    best = best < 0 ? r : (chain == ChainRule::kShortest ? std::min(best, r) : std::max(best, r));
  }
  return best;
}

/// LW_c. The high level is p_max plus the summed full-part chain lengths of
/// the instance as loaded; it does not shrink while scheduling.
inline double lw_coefficient(const ProblemInstance& inst, LengthWeightLevel level,
                             ChainRule chain = ChainRule::kShortest) {
  switch (level) {
    case LengthWeightLevel::kMedian: return 1.0;
    case LengthWeightLevel::kLow: return 0.01;
    case LengthWeightLevel::kHigh: {
      double c = static_cast<double>(inst.parts.size());
      for (int p = 0; p < static_cast<int>(inst.parts.size()); ++p) c += part_chain_slots(inst, p, chain);
      return c;
    }
  }
  return 1.0;
}

/// W_connection between unit tasks (indices into g.unit_tasks()).
inline double connection_weight(const ConflictGraph& g, int u, int v) {
  const UnitTask& a = g.unit_tasks()[u];
  const UnitTask& b = g.unit_tasks()[v];
  if (a.part == b.part) throw DomainError("connection weight is defined only across parts");
  const auto& nu = g.nodes_of(u);
  const auto& nv = g.nodes_of(v);
  if (nu.empty() || nv.empty()) return 0.0;
  NodeSet vs(g.node_count());
  for (int x : nv) vs.set(x);
  long long e = 0;
  for (int x : nu) e += g.neighbor_set(x).intersection_count(vs);
  return static_cast<double>(e) / (static_cast<double>(nu.size()) * static_cast<double>(nv.size()));
}

struct UnitTaskWeight {
  double length = 0;
  double connection = 0;
  double total = 0;
};

/// W_total for every unit task of the graph.
inline std::vector<UnitTaskWeight> total_weights(const ProblemInstance& inst, const ConflictGraph& g, double lw_c,
                                                 ChainRule chain = ChainRule::kShortest) {
  const int T = static_cast<int>(g.unit_tasks().size());
  std::vector<UnitTaskWeight> w(T);
  std::vector<long long> cross(T);
  for (int u = 0; u < T; ++u) {
    const UnitTask& ut = g.unit_tasks()[u];
    w[u].length = lw_c * remaining_slots(inst, ut, chain);
    const auto& nu = g.nodes_of(u);
    if (nu.empty()) {
      w[u].total = w[u].length;
      continue;
    }
    std::fill(cross.begin(), cross.end(), 0);
    for (int x : nu)
      for (int y : g.neighbors(x)) {
        const int t = g.node(y).unit_task;
        if (g.unit_tasks()[t].part != ut.part) ++cross[t];
      }
    // Summed in unit-task order for a reproducible result.
    double sum = 0;
    for (int v = 0; v < T; ++v)
      if (cross[v] > 0)
        sum += static_cast<double>(cross[v]) /
               (static_cast<double>(nu.size()) * static_cast<double>(g.nodes_of(v).size()));
    w[u].connection = sum;
    w[u].total = w[u].length + sum;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Arrangements

enum class Arrangement {
  kMwisA1,
  kMwisA2,
  kMwisA3,
  kAmislA1,
  kAmislA2,
  kAmislA3,
  kAmislA4,
  kAmislA5,
  kAmislA6,
  kAmislA7,
};

struct ArrangementInfo {
  Arrangement id;
  const char* name;
  int lookahead;
  /// Candidate factor is the sum over itself and its followers.
  bool aggregated;
  /// Follower unit tasks carry their own W_total instead of epsilon.
  bool weights_followers;
  /// Intended for maximal-set enumeration (epsilon is negative).
  bool amisl;
};

inline constexpr std::array<ArrangementInfo, 10> kArrangements{{
    {Arrangement::kMwisA1, "mwis_a1", 0, false, false, false},
    {Arrangement::kMwisA2, "mwis_a2", 1, true, false, false},
    {Arrangement::kMwisA3, "mwis_a3", 2, true, false, false},
    {Arrangement::kAmislA1, "amisl_a1", 0, false, false, true},
    {Arrangement::kAmislA2, "amisl_a2", 1, true, false, true},
    {Arrangement::kAmislA3, "amisl_a3", 1, true, true, true},
    {Arrangement::kAmislA4, "amisl_a4", 1, false, true, true},
    {Arrangement::kAmislA5, "amisl_a5", 2, true, false, true},
    {Arrangement::kAmislA6, "amisl_a6", 2, true, true, true},
    {Arrangement::kAmislA7, "amisl_a7", 2, false, true, true},
}};

inline const ArrangementInfo& arrangement_info(Arrangement a) {
  for (const auto& info : kArrangements)
    if (info.id == a) return info;
  throw ConfigError("unknown arrangement");
}

inline Arrangement parse_arrangement(std::string_view s) {
  const std::string l = lowercase(s);
  for (const auto& info : kArrangements)
    if (l == info.name) return info.id;
  throw ConfigError("unknown arrangement '" + std::string(s) + "'");
}

inline std::string to_string(Arrangement a) { return arrangement_info(a).name; }

inline constexpr double kDefaultEpsilon = 1e-7;

struct FactorMap {
  std::vector<double> node_factor;
  /// Factor shared by every node of a unit task.
  std::vector<double> unit_task_factor;
  /// Lookahead followers chosen for each candidate (unit-task indices).
  std::vector<std::vector<int>> followers;
};

/// Next unit task after u (index into g.unit_tasks()), or -1. Within an
/// option this is slot + 1; after an option's last slot it is the first unit
/// task of the next operation's option with the largest W_total (earliest
/// option on ties).
inline int follower_of(const ProblemInstance& inst, const ConflictGraph& g, const std::vector<UnitTaskWeight>& w,
                       int u) {
  const UnitTask& ut = g.unit_tasks()[u];
  if (ut.slot < inst.option(ut.part, ut.op, ut.option).duration_slots)
    return g.find_unit_task({ut.part, ut.op, ut.option, ut.slot + 1});
  if (ut.op + 1 >= static_cast<int>(inst.parts[ut.part].operations.size())) return -1;
  int best = -1;
  const int nopt = static_cast<int>(inst.parts[ut.part].operations[ut.op + 1].options.size());
  for (int k = 0; k < nopt; ++k) {
    const int f = g.find_unit_task({ut.part, ut.op + 1, k, 1});
    if (f >= 0 && (best < 0 || w[f].total > w[best].total)) best = f;
  }
  return best;
}

/// Assigns node factors for the candidate unit tasks (indices into
/// g.unit_tasks()). Unaddressed nodes receive +epsilon under MWIS
/// arrangements and -epsilon under AMISL arrangements.
inline FactorMap arrange_factors(const ProblemInstance& inst, const ConflictGraph& g,
                                 const std::vector<int>& candidates, Arrangement arrangement,
                                 const std::vector<UnitTaskWeight>& w, double epsilon = kDefaultEpsilon) {
  const ArrangementInfo& info = arrangement_info(arrangement);
  const double fill = info.amisl ? -epsilon : epsilon;
  const int T = static_cast<int>(g.unit_tasks().size());
  FactorMap fm;
  fm.unit_task_factor.assign(T, fill);
  fm.followers.resize(candidates.size());
  std::vector<char> is_candidate(T, 0);
  for (int c : candidates) is_candidate[c] = 1;

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    int cur = candidates[i];
    for (int step = 0; step < info.lookahead; ++step) {
      cur = follower_of(inst, g, w, cur);
      if (cur < 0) break;
      fm.followers[i].push_back(cur);
    }
    if (info.weights_followers)
      for (int f : fm.followers[i])
        if (!is_candidate[f]) fm.unit_task_factor[f] = w[f].total;
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    double v = w[candidates[i]].total;
    if (info.aggregated)
      for (int f : fm.followers[i]) v += w[f].total;
    fm.unit_task_factor[candidates[i]] = v;
  }

  fm.node_factor.assign(g.node_count(), fill);
  for (int t = 0; t < T; ++t)
    for (int v : g.nodes_of(t)) fm.node_factor[v] = fm.unit_task_factor[t];

  if (!info.amisl)
    for (double f : fm.node_factor)
      if (!(f > 0)) throw InvariantError("non-positive factor under a positive-weight arrangement");
  return fm;
}

}  // namespace ppsched
