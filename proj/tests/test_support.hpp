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

// Reference oracles shared by the test suites. Deliberately naive and
// written without the library's search code.

#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ppsched/ppsched.hpp"

namespace ppsched::testing {

/// Every independent set by bitmask; best weight, then most nodes, then the
/// lexicographically smallest sorted id list.
inline IndependentSet<double> subset_mwis(const Graph& g, const std::vector<double>& w) {
  const int n = g.node_count();
  std::vector<std::uint32_t> adj(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u)) adj[u] |= 1u << v;
  double scale = 0;
  for (double x : w) scale += x < 0 ? -x : x;
  const double tol = 1e-12 * std::max(1.0, scale);
  IndependentSet<double> best;
  bool have = false;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    bool ok = true;
    double sum = 0;
    std::vector<int> s;
    for (int v = 0; v < n && ok; ++v)
      if (m >> v & 1u) {
        if (adj[v] & m) ok = false;
        sum += w[v];
        s.push_back(v);
      }
    if (!ok) continue;
    bool better = !have || sum > best.weight + tol;
    if (!better && sum >= best.weight - tol) {
      if (s.size() > best.nodes.size()) better = true;
      if (s.size() == best.nodes.size() && s < best.nodes) better = true;
    }
    if (better) {
      best = {s, sum};
      have = true;
    }
  }
  return best;
}

/// Maximal independent sets by bitmask.
inline std::vector<std::vector<int>> subset_maximal_sets(const Graph& g) {
  const int n = g.node_count();
  std::vector<std::uint32_t> adj(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u)) adj[u] |= 1u << v;
  std::vector<std::vector<int>> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      if ((m >> v & 1u) && (adj[v] & m)) ok = false;
    if (!ok) continue;
    bool maximal = true;
    for (int v = 0; v < n && maximal; ++v)
      if (!(m >> v & 1u) && !(adj[v] & m)) maximal = false;
    if (!maximal) continue;
    std::vector<int> s;
    for (int v = 0; v < n; ++v)
      if (m >> v & 1u) s.push_back(v);
    out.push_back(s);
  }
  return out;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

inline std::vector<double> random_weights(std::mt19937_64& rng, int n, bool integral) {
  std::vector<double> w(n);
  std::uniform_int_distribution<int> small(1, 5);
  std::uniform_real_distribution<double> real(0.01, 10.0);
  for (auto& x : w) x = integral ? small(rng) : real(rng);
  return w;
}

/// The four edge rules restated on labels, for cross-checking adjacency.
inline int reference_rule(const UnitTask& a, const std::vector<std::string>& ra, const UnitTask& b,
                          const std::vector<std::string>& rb) {
  if (a == b) return 1;
  if (a.part == b.part && a.op == b.op && a.option != b.option) return 2;
  if (a.part == b.part && a.op == b.op && a.option == b.option) return ra != rb ? 3 : 0;
  if (a.part != b.part) {
    std::set<std::string> sa(ra.begin(), ra.end());
    for (const auto& r : rb)
      if (sa.count(r)) return 4;
  }
  return 0;
}

inline std::vector<std::string> names(const ProblemInstance& inst, const std::vector<ResourceIndex>& a) {
  std::vector<std::string> out;
  for (ResourceIndex r : a) out.push_back(inst.resource_name(r));
  return out;
}

/// Small random instance whose graphs stay tiny enough for maximal-set
/// enumeration.
inline GeneratorParams small_params(std::uint64_t seed) {
  GeneratorParams p;
  p.min_parts = 2;
  p.max_parts = 3;
  p.min_ops = 1;
  p.max_ops = 3;
  p.max_slots = 2;
  p.machines = 3;
  p.tools = 3;
  p.seed = seed;
  return p;
}

}  // namespace ppsched::testing
