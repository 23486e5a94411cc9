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

// Slot-by-slot scheduling loop. Each slot:
//   1. rebuild the conflict graph over the unit tasks still to run;
//   2. weigh unit tasks and arrange node factors around the candidates;
//   3. solve the independent-set problem;
//   4. commit the candidate nodes of the returned set;
//   5. drop finished unit tasks and the sibling options of newly started
//      operations.

#pragma once

#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "ppsched/conflict_graph.hpp"
#include "ppsched/model.hpp"
#include "ppsched/mwis.hpp"
#include "ppsched/weights.hpp"

namespace ppsched {

struct HeuristicConfig {
  SolverId solver = SolverId::kExact;
  Arrangement arrangement = Arrangement::kMwisA1;
  LengthWeightLevel lw = LengthWeightLevel::kMedian;
  ResourceLock lock = ResourceLock::kFlexible;
  ChainRule chain = ChainRule::kShortest;
  double epsilon = kDefaultEpsilon;
  SolverOptions solver_options;
};

/// Throws ConfigError unless MWIS arrangements go with the exact or greedy
/// solvers and AMISL arrangements go with AMISL.
inline void validate_config(const HeuristicConfig& c) {
  const bool amisl_arr = arrangement_info(c.arrangement).amisl;
  const bool amisl_solver = c.solver == SolverId::kAmisl;
  if (amisl_arr != amisl_solver)
    throw ConfigError("arrangement " + to_string(c.arrangement) + " cannot be paired with solver " +
                      to_string(c.solver));
  if (!(c.epsilon > 0)) throw ConfigError("epsilon must be positive");
}

/// Index of the configuration in the usual 28-heuristic numbering, or 0 for
/// pairings outside it.
inline int heuristic_number(SolverId s, Arrangement a) {
  const int k = static_cast<int>(a);
  switch (s) {
    case SolverId::kExact: return k <= 2 ? 1 + k : 0;
    case SolverId::kAmisl: return k >= 3 ? 1 + k : 0;
    case SolverId::kGwmin: return k <= 2 ? 11 + 3 * k : 0;
    case SolverId::kGwmin2: return k <= 2 ? 20 + 3 * k : 0;
  }
  return 0;
}

inline std::string heuristic_label(const HeuristicConfig& c) {
  const int h = heuristic_number(c.solver, c.arrangement);
  return (h ? "H" + std::to_string(h) + ":" : std::string()) + to_string(c.solver) + "/" + to_string(c.arrangement);
}

struct PartProgress {
  int op = 0;
  int option = -1;  ///< committed option of the current operation, -1 if unstarted
  int done = 0;     ///< unit tasks of the current operation already run
  std::vector<ResourceIndex> assignment;  ///< resources of the last unit task run
  bool finished = false;
};

struct SchedulingState {
  std::vector<PartProgress> parts;
  int slot = 0;

  explicit SchedulingState(const ProblemInstance& inst) : parts(inst.parts.size()) {}

  bool done() const {
    for (const auto& p : parts)
      if (!p.finished) return false;
    return true;
  }
};

/// Unit tasks still to run, canonical order.
inline UnitTaskSet remaining_unit_tasks(const ProblemInstance& inst, const SchedulingState& st) {
  UnitTaskSet out;
  for (int p = 0; p < static_cast<int>(inst.parts.size()); ++p) {
    const PartProgress& pp = st.parts[p];
    if (pp.finished) continue;
    const auto& ops = inst.parts[p].operations;
    for (int j = pp.op; j < static_cast<int>(ops.size()); ++j) {
      for (int k = 0; k < static_cast<int>(ops[j].options.size()); ++k) {
        if (j == pp.op && pp.option >= 0) {
          if (k == pp.option) append_option_units(inst, p, j, k, pp.done + 1, out);
        } else {
          append_option_units(inst, p, j, k, 1, out);
        }
      }
    }
  }
  return out;
}

/// Unit tasks that may run in the current slot.
inline UnitTaskSet candidates(const ProblemInstance& inst, const SchedulingState& st) {
  UnitTaskSet out;
  for (int p = 0; p < static_cast<int>(inst.parts.size()); ++p) {
    const PartProgress& pp = st.parts[p];
    if (pp.finished) continue;
    if (pp.option >= 0) {
      out.push_back({p, pp.op, pp.option, pp.done + 1});
    } else {
      const int nopt = static_cast<int>(inst.parts[p].operations[pp.op].options.size());
      for (int k = 0; k < nopt; ++k) out.push_back({p, pp.op, k, 1});
    }
  }
  return out;
}

struct SlotRecord {
  int slot = 0;
  std::vector<SlotEntry> entries;
  int graph_nodes = 0;
  long long graph_edges = 0;
  int set_size = 0;
  double set_weight = 0;
  std::uint64_t search_nodes = 0;
  std::uint64_t maximal_sets = 0;
  double solve_ms = 0;
  bool fallback = false;
  /// Continuing parts the solver left out, run anyway to keep operations contiguous.
  int continued = 0;
  /// Starting candidates dropped because they clashed with a continuing part.
  int dropped = 0;
  /// Optional per-unit-task weight table (see StepOptions::collect_weights).
  std::vector<std::string> weight_rows;
};

struct StepOptions {
  bool collect_weights = false;
};

namespace internal {

inline bool shares_resource(const std::vector<ResourceIndex>& a, const std::vector<ResourceIndex>& b) {
  for (ResourceIndex x : a)
    for (ResourceIndex y : b)
      if (x == y) return true;
  return false;
}

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace internal

/// Chooses this slot's entries. Does not modify the state.
inline SlotRecord step(const ProblemInstance& inst, const SchedulingState& st, const HeuristicConfig& cfg,
                       double lw_c, const StepOptions& sopt = {}) {
  SlotRecord rec;
  rec.slot = st.slot;

  NodeFilter keep;
  if (cfg.lock == ResourceLock::kStrict) {
    keep = [&](const UnitTask& u, const std::vector<ResourceIndex>& a) {
      const PartProgress& pp = st.parts[u.part];
      if (pp.option < 0 || pp.op != u.op || pp.option != u.option) return true;
      return a == pp.assignment;
    };
  }
  ConflictGraph g(inst, remaining_unit_tasks(inst, st), keep);
  rec.graph_nodes = g.node_count();
  rec.graph_edges = g.edge_count();

  const UnitTaskSet cands = candidates(inst, st);
  if (cands.empty()) throw InvariantError("step called with no candidates");
  std::vector<int> cand_idx;
  for (const auto& c : cands) {
    const int t = g.find_unit_task(c);
    if (t < 0 || g.nodes_of(t).empty()) throw InvariantError("candidate unit task has no nodes");
    cand_idx.push_back(t);
  }

  const auto w = total_weights(inst, g, lw_c, cfg.chain);
  const FactorMap fm = arrange_factors(inst, g, cand_idx, cfg.arrangement, w, cfg.epsilon);

  if (sopt.collect_weights) {
    for (int t = 0; t < static_cast<int>(g.unit_tasks().size()); ++t)
      rec.weight_rows.push_back(unit_task_label(inst, g.unit_tasks()[t]) + "," +
                                std::to_string(g.nodes_of(t).size()) + "," + internal::fmt_double(w[t].length) +
                                "," + internal::fmt_double(w[t].connection) + "," +
                                internal::fmt_double(w[t].total) + "," + internal::fmt_double(fm.unit_task_factor[t]));
  }

  SolverStats stats;
  const auto t0 = std::chrono::steady_clock::now();
  IndependentSet<double> set;
  try {
    set = solve(cfg.solver, g, fm.node_factor, cfg.solver_options, &stats);
  } catch (const ResourceLimitError& e) {
    throw ResourceLimitError("slot " + std::to_string(st.slot + 1) + ": " + e.what());
  }
  rec.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rec.search_nodes = stats.search_nodes;
  rec.maximal_sets = stats.maximal_sets;
  rec.set_size = static_cast<int>(set.nodes.size());
  rec.set_weight = set.weight;

  std::vector<char> is_cand(g.unit_tasks().size(), 0);
  for (int t : cand_idx) is_cand[t] = 1;

  // At most one pick per part: candidates of one part always conflict.
  const int P = static_cast<int>(inst.parts.size());
  std::vector<int> pick(P, -1);
  for (int v : set.nodes) {
    const int t = g.node(v).unit_task;
    if (!is_cand[t]) continue;
    const int p = g.unit_tasks()[t].part;
    if (pick[p] >= 0) throw InvariantError("independent set holds two candidates of one part");
    pick[p] = v;
  }

  // Operations never pause: a started operation runs its next unit task now.
  std::vector<char> forced(P, 0);
  std::vector<std::vector<ResourceIndex>> asg(P);
  std::vector<UnitTask> ut(P);
  for (int p = 0; p < P; ++p)
    if (pick[p] >= 0) {
      asg[p] = g.node(pick[p]).assignment;
      ut[p] = g.unit_task_of(pick[p]);
    }
  for (int p = 0; p < P; ++p) {
    const PartProgress& pp = st.parts[p];
    if (pp.finished || pp.option < 0 || pick[p] >= 0) continue;
    forced[p] = 1;
    ++rec.continued;
    ut[p] = {p, pp.op, pp.option, pp.done + 1};
    // Keep the resources if nothing chosen clashes, else take the first
    // clash-free node of the unit task.
    const int t = g.find_unit_task(ut[p]);
    std::vector<std::vector<ResourceIndex>> options{pp.assignment};
    for (int v : g.nodes_of(t)) options.push_back(g.node(v).assignment);
    asg[p] = pp.assignment;
    for (const auto& a : options) {
      bool ok = true;
      for (int q = 0; q < P && ok; ++q)
        if (q != p && !asg[q].empty() && (pick[q] >= 0 || forced[q]) && internal::shares_resource(a, asg[q]))
          ok = false;
      if (ok) {
        asg[p] = a;
        break;
      }
    }
  }
  auto running = [&](int p) { return pick[p] >= 0 || forced[p]; };
  bool clash = false;
  for (int p = 0; p < P; ++p)
    for (int q = p + 1; q < P; ++q)
      if (running(p) && running(q) && internal::shares_resource(asg[p], asg[q])) clash = true;
  if (clash) {
    // Continuing parts reuse last slot's resources, which are disjoint.
    for (int p = 0; p < P; ++p)
      if (running(p) && st.parts[p].option >= 0) asg[p] = st.parts[p].assignment;
    for (int p = 0; p < P; ++p) {
      if (!running(p) || st.parts[p].option >= 0) continue;
      for (int q = 0; q < P; ++q)
        if (q != p && running(q) && internal::shares_resource(asg[p], asg[q])) {
          pick[p] = -1;
          ++rec.dropped;
          break;
        }
    }
  }

  for (int p = 0; p < P; ++p)
    if (running(p)) rec.entries.push_back({p, ut[p].op, ut[p].option, ut[p].slot, asg[p]});

  if (rec.entries.empty()) {
    int best = -1;
    for (int t : cand_idx)
      for (int v : g.nodes_of(t))
        if (best < 0 || fm.node_factor[v] > fm.node_factor[best]) best = v;
    const UnitTask& u = g.unit_task_of(best);
    rec.entries.push_back({u.part, u.op, u.option, u.slot, g.node(best).assignment});
    rec.fallback = true;
  }
  return rec;
}

/// Applies a slot's entries and advances the slot counter.
inline void update_state(const ProblemInstance& inst, SchedulingState& st, const std::vector<SlotEntry>& entries) {
  for (const auto& e : entries) {
    PartProgress& pp = st.parts[e.part];
    if (pp.finished || e.op != pp.op || (pp.option >= 0 && e.option != pp.option) || e.slot_index != pp.done + 1)
      throw InvariantError("slot entry does not continue its part");
    pp.option = e.option;
    pp.done = e.slot_index;
    pp.assignment = e.assignment;
    if (pp.done == inst.option(e.part, e.op, e.option).duration_slots) {
      pp.option = -1;
      pp.done = 0;
      pp.assignment.clear();
      if (++pp.op == static_cast<int>(inst.parts[e.part].operations.size())) pp.finished = true;
    }
  }
  ++st.slot;
}

struct RunResult {
  HeuristicConfig config;
  Schedule schedule;
  std::vector<SlotRecord> slots;
  double lw_coefficient = 0;
  int fallbacks = 0;
  double wall_ms = 0;
  /// One line per slot describing what was chosen and any repairs.
  std::vector<std::string> trace;

  int makespan_slots() const { return schedule.makespan_slots(); }
};

inline RunResult schedule(const ProblemInstance& inst, const HeuristicConfig& cfg, const StepOptions& sopt = {}) {
  validate_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  RunResult out;
  out.config = cfg;
  out.lw_coefficient = lw_coefficient(inst, cfg.lw, cfg.chain);
  SchedulingState st(inst);
  const int cap = static_cast<int>(expand_unit_tasks(inst).size()) + 1;
  while (!st.done()) {
    if (st.slot >= cap) throw InvariantError("scheduler exceeded the slot cap of " + std::to_string(cap));
    SlotRecord rec = step(inst, st, cfg, out.lw_coefficient, sopt);
    std::ostringstream line;
    line << "slot " << st.slot + 1 << ":";
    for (const auto& e : rec.entries) {
      line << ' ' << unit_task_label(inst, e.unit_task()) << '(';
      for (std::size_t k = 0; k < e.assignment.size(); ++k) line << (k ? "," : "") << inst.resource_name(e.assignment[k]);
      line << ')';
    }
    line << " | set " << rec.set_size << " nodes, weight " << internal::fmt_double(rec.set_weight);
    if (rec.continued) line << " | continued " << rec.continued;
    if (rec.dropped) line << " | dropped " << rec.dropped;
    if (rec.fallback) line << " | fallback";
    out.trace.push_back(line.str());
    if (rec.fallback) ++out.fallbacks;
    update_state(inst, st, rec.entries);
    out.schedule.slots.push_back(rec.entries);
    out.slots.push_back(std::move(rec));
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const ValidationReport rep = validate_schedule(inst, out.schedule, cfg.lock);
  if (!rep.feasible())
    throw InvariantError("scheduler produced an infeasible schedule: " + rep.violations.front().rule + " " +
                         rep.violations.front().detail);
  return out;
}

/// Percent gap to the optimum in slots.
inline double error_rate(int ts, int ts_optimum) {
  if (ts_optimum < 1) throw DomainError("optimum must be at least one slot");
  if (ts < ts_optimum)
    throw InvariantError("schedule of " + std::to_string(ts) + " slots beats the optimum of " +
                         std::to_string(ts_optimum));
  return static_cast<double>(ts - ts_optimum) / ts_optimum * 100.0;
}

}  // namespace ppsched
