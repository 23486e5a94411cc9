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

// Conflict graph over (unit task, concrete resource assignment) nodes.
//
// Two nodes conflict when
//   1. they belong to the same unit task;
//   2. they belong to the same operation but different options;
//   3. they belong to the same option but different unit tasks and their
//      assignments differ;
//   4. they belong to different parts and share a resource.
// Nodes of different operations of one part never conflict.

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ppsched/model.hpp"
#include "ppsched/node_set.hpp"

namespace ppsched {

struct ConflictNode {
  int id = 0;
  /// Index into ConflictGraph::unit_tasks().
  int unit_task = 0;
  std::vector<ResourceIndex> assignment;
};

enum class EdgeRule : int { kNone = 0, kSameUnitTask = 1, kSameOperation = 2, kSameOption = 3, kSharedResource = 4 };

/// Keeps a node iff the predicate returns true. Used for resource locking.
using NodeFilter = std::function<bool(const UnitTask&, const std::vector<ResourceIndex>&)>;

class ConflictGraph {
 public:
  ConflictGraph() = default;

  /// Builds the graph over the given unit tasks, which must be in canonical
  /// order (see expand_unit_tasks). Node ids follow that order, then the
  /// row-major Cartesian product of the groups in input order.
  ConflictGraph(const ProblemInstance& inst, UnitTaskSet unit_tasks, const NodeFilter& keep = {})
      : unit_tasks_(std::move(unit_tasks)) {
    const int R = static_cast<int>(inst.resources.size());
    nodes_of_.resize(unit_tasks_.size());
    std::vector<NodeSet> uses;
    for (int t = 0; t < static_cast<int>(unit_tasks_.size()); ++t) {
      const UnitTask& u = unit_tasks_[t];
      const auto& groups = inst.option(u.part, u.op, u.option).groups;
      std::vector<std::size_t> idx(groups.size(), 0);
      while (true) {
        std::vector<ResourceIndex> a(groups.size());
        for (std::size_t g = 0; g < groups.size(); ++g) a[g] = groups[g][idx[g]];
        if (!keep || keep(u, a)) {
          NodeSet s(R);
          for (ResourceIndex r : a) s.set(r);
          uses.push_back(std::move(s));
          nodes_of_[t].push_back(static_cast<int>(nodes_.size()));
          nodes_.push_back({static_cast<int>(nodes_.size()), t, std::move(a)});
        }
        // Row-major: last group varies fastest.
        int g = static_cast<int>(groups.size()) - 1;
        while (g >= 0 && ++idx[g] == groups[g].size()) idx[g--] = 0;
        if (g < 0) break;
      }
    }

    const int N = node_count();
    adj_.assign(N, {});
    bits_.assign(N, NodeSet(N));
    for (int i = 0; i < N; ++i) {
      for (int j = i + 1; j < N; ++j) {
        const EdgeRule r = classify(i, j, uses);
        if (r == EdgeRule::kNone) continue;
        ++census_[static_cast<int>(r)];
        adj_[i].push_back(j);
        adj_[j].push_back(i);
        bits_[i].set(j);
        bits_[j].set(i);
        ++edges_;
      }
    }
  }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  long long edge_count() const { return edges_; }
  const std::vector<ConflictNode>& nodes() const { return nodes_; }
  const ConflictNode& node(int v) const { return nodes_[v]; }
  const UnitTaskSet& unit_tasks() const { return unit_tasks_; }
  const UnitTask& unit_task_of(int v) const { return unit_tasks_[nodes_[v].unit_task]; }
  const std::vector<int>& nodes_of(int unit_task_index) const { return nodes_of_[unit_task_index]; }

  /// Sorted neighbor list.
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  const NodeSet& neighbor_set(int v) const { return bits_[v]; }
  bool adjacent(int u, int v) const { return bits_[u].test(v); }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  /// Index of a unit task in unit_tasks(), or -1.
  int find_unit_task(const UnitTask& u) const {
    auto it = std::lower_bound(unit_tasks_.begin(), unit_tasks_.end(), u);
    if (it == unit_tasks_.end() || *it != u) return -1;
    return static_cast<int>(it - unit_tasks_.begin());
  }

  /// Edge counts by rule; index 0 unused.
  const std::array<long long, 5>& census() const { return census_; }

  double density() const {
    const double n = node_count();
    return n < 2 ? 0.0 : 2.0 * static_cast<double>(edges_) / (n * (n - 1));
  }

  /// Which rule (if any) joins u and v. Independent of stored adjacency.
  static EdgeRule rule_between(const UnitTask& a, const std::vector<ResourceIndex>& ra, const UnitTask& b,
                               const std::vector<ResourceIndex>& rb) {
    if (a.part == b.part) {
      if (a.op != b.op) return EdgeRule::kNone;
      if (a.option != b.option) return EdgeRule::kSameOperation;
      if (a.slot == b.slot) return EdgeRule::kSameUnitTask;
      return ra != rb ? EdgeRule::kSameOption : EdgeRule::kNone;
    }
    for (ResourceIndex x : ra)
      for (ResourceIndex y : rb)
        if (x == y) return EdgeRule::kSharedResource;
    return EdgeRule::kNone;
  }

 private:
  EdgeRule classify(int i, int j, const std::vector<NodeSet>& uses) const {
    const UnitTask& a = unit_task_of(i);
    const UnitTask& b = unit_task_of(j);
    if (a.part != b.part) return uses[i].intersects(uses[j]) ? EdgeRule::kSharedResource : EdgeRule::kNone;
    return rule_between(a, nodes_[i].assignment, b, nodes_[j].assignment);
  }

  UnitTaskSet unit_tasks_;
  std::vector<ConflictNode> nodes_;
  std::vector<std::vector<int>> nodes_of_;
  std::vector<std::vector<int>> adj_;
  std::vector<NodeSet> bits_;
  std::array<long long, 5> census_{};
  long long edges_ = 0;
};

inline ConflictGraph build_conflict_graph(const ProblemInstance& inst) {
  return ConflictGraph(inst, expand_unit_tasks(inst));
}

// ---------------------------------------------------------------------------
// Size statistics

struct InstanceStats {
  int parts = 0;
  int tasks = 0;
  int nodes = 0;
  long long edges = 0;
  double density = 0;
  int options = 0;
  double ici = 0;
  /// Option count of every operation, parts then sequence order.
  std::vector<int> options_per_operation;
};

/// Input Complexity Index: P^(T/P + 1) * N * O * D.
inline double input_complexity_index(int parts, int tasks, int nodes, long long edges, int options) {
  if (nodes < 2 || parts < 1) return 0.0;
  const double d = 2.0 * static_cast<double>(edges) / (static_cast<double>(nodes) * (nodes - 1));
  const double exponent = static_cast<double>(tasks) / parts + 1.0;
  return std::pow(static_cast<double>(parts), exponent) * nodes * options * d;
}

inline InstanceStats graph_stats(const ConflictGraph& g, const ProblemInstance& inst) {
  InstanceStats s;
  s.parts = static_cast<int>(inst.parts.size());
  s.tasks = inst.operation_count();
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  s.density = g.density();
  for (const auto& p : inst.parts)
    for (const auto& op : p.operations) {
      s.options_per_operation.push_back(static_cast<int>(op.options.size()));
      s.options = std::max(s.options, static_cast<int>(op.options.size()));
    }
  s.ici = input_complexity_index(s.parts, s.tasks, s.nodes, s.edges, s.options);
  return s;
}

// ---------------------------------------------------------------------------
// Dumps

/// "N M" header followed by one "u v" line per edge (u < v).
inline void write_edge_list(std::ostream& os, const ConflictGraph& g) {
  os << g.node_count() << ' ' << g.edge_count() << '\n';
  for (int u = 0; u < g.node_count(); ++u)
    for (int v : g.neighbors(u))
      if (u < v) os << u << ' ' << v << '\n';
}

inline nlohmann::json node_labels_json(const ConflictGraph& g, const ProblemInstance& inst) {
  auto out = nlohmann::json::array();
  for (const auto& n : g.nodes()) {
    const UnitTask& u = g.unit_task_of(n.id);
    auto res = nlohmann::json::array();
    for (ResourceIndex r : n.assignment) res.push_back(inst.resource_name(r));
    out.push_back({{"node", n.id},
                   {"part", inst.parts[u.part].id},
                   {"operation", inst.parts[u.part].operations[u.op].id},
                   {"option", inst.option(u.part, u.op, u.option).label},
                   {"slot_index", u.slot},
                   {"assignment", res}});
  }
  return out;
}

}  // namespace ppsched
