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

#pragma once

#include <algorithm>
#include <concepts>
#include <vector>

#include "ppsched/node_set.hpp"

namespace ppsched {

/// What the independent-set solvers need from a graph.
template <class G>
concept UndirectedGraph = requires(const G& g, int v) {
  { g.node_count() } -> std::convertible_to<int>;
  { g.neighbor_set(v) } -> std::convertible_to<const NodeSet&>;
  { g.neighbors(v) } -> std::convertible_to<const std::vector<int>&>;
};

/// Plain undirected simple graph on nodes 0..n-1.
class Graph {
 public:
  explicit Graph(int n = 0) : adj_(n), bits_(n, NodeSet(n)) {}

  int node_count() const { return static_cast<int>(adj_.size()); }
  long long edge_count() const { return edges_; }

  /// Ignores self-loops and repeated edges.
  void add_edge(int u, int v) {
    if (u == v || bits_[u].test(v)) return;
    bits_[u].set(v);
    bits_[v].set(u);
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
    ++edges_;
  }

  bool adjacent(int u, int v) const { return bits_[u].test(v); }
  const NodeSet& neighbor_set(int v) const { return bits_[v]; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<NodeSet> bits_;
  long long edges_ = 0;
};

}  // namespace ppsched
