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

// Independent-set solvers sharing one interface:
//
//   kExact   branch and bound; max weight, then max cardinality, then the
//            lexicographically smallest sorted id list.
//   kAmisl   enumerates every maximal independent set; max weight, then min
//            cardinality, then lexicographically smallest. Negative weights
//            are fine.
//   kGwmin   greedy on w(v) / (deg(v) + 1).
//   kGwmin2  greedy on w(v) / w(N[v]).
//
// All solvers are deterministic.

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "ppsched/graph.hpp"
#include "ppsched/model.hpp"
#include "ppsched/node_set.hpp"

namespace ppsched {

enum class SolverId { kExact, kAmisl, kGwmin, kGwmin2 };

inline std::string to_string(SolverId s) {
  switch (s) {
    case SolverId::kExact: return "exact";
    case SolverId::kAmisl: return "amisl";
    case SolverId::kGwmin: return "gwmin";
    case SolverId::kGwmin2: return "gwmin2";
  }
  return "?";
}

inline SolverId parse_solver(std::string_view s) {
  std::string l(s);
  for (auto& c : l) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (l == "exact" || l == "exact_mwis" || l == "mwis") return SolverId::kExact;
  if (l == "amisl") return SolverId::kAmisl;
  if (l == "gwmin") return SolverId::kGwmin;
  if (l == "gwmin2") return SolverId::kGwmin2;
  throw ConfigError("unknown solver '" + std::string(s) + "' (expected exact, amisl, gwmin or gwmin2)");
}

/// Comparison slack for weight sums.
template <class W>
struct WeightTraits {
  static W tolerance(W scale) {
    if constexpr (std::is_floating_point_v<W>) {
      return static_cast<W>(1e-12) * std::max<W>(W{1}, std::abs(scale));
    } else {
      return W{0};
    }
  }
};

template <class W = double>
struct IndependentSet {
  std::vector<int> nodes;  // ascending
  W weight{};
};

struct SolverOptions {
  /// AMISL stops with ResourceLimitError past this many maximal sets.
  std::uint64_t amisl_cap = 5'000'000;
  /// Exact search stops with ResourceLimitError past this many nodes; 0 = off.
  std::uint64_t exact_node_limit = 0;
};

struct SolverStats {
  std::uint64_t search_nodes = 0;
  std::uint64_t maximal_sets = 0;
};

namespace internal {

template <class W>
W sum_weights(const std::vector<int>& s, const std::vector<W>& w) {
  W t{};
  for (int v : s) t += w[v];
  return t;
}

template <class W>
W abs_total(const std::vector<W>& w) {
  W t{};
  for (const W& x : w) t += x < W{} ? -x : x;
  return t;
}

template <UndirectedGraph G, class W>
void check_sizes(const G& g, const std::vector<W>& w) {
  if (static_cast<int>(w.size()) != g.node_count())
    throw Error("factor count " + std::to_string(w.size()) + " does not match node count " +
                std::to_string(g.node_count()));
}

}  // namespace internal

/// True iff no two members are adjacent.
template <UndirectedGraph G>
bool is_independent(const G& g, const std::vector<int>& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] == s[j] || g.neighbor_set(s[i]).test(s[j])) return false;
  return true;
}

/// True iff independent and no outside node can be added.
template <UndirectedGraph G>
bool is_maximal_independent(const G& g, const std::vector<int>& s) {
  if (!is_independent(g, s)) return false;
  NodeSet blocked(g.node_count());
  for (int v : s) {
    blocked.set(v);
    blocked |= g.neighbor_set(v);
  }
  return blocked.count() == g.node_count();
}

// ---------------------------------------------------------------------------
// Greedy

namespace internal {

template <UndirectedGraph G, class W, class Score>
IndependentSet<W> greedy(const G& g, const std::vector<W>& w, Score score) {
  check_sizes(g, w);
  const int n = g.node_count();
  NodeSet alive = NodeSet::full(n);
  IndependentSet<W> out;
  while (!alive.empty()) {
    int best = -1;
    double best_score = 0;
    alive.for_each([&](int v) {
      const double s = score(v, alive);
      if (best < 0 || s > best_score || (s == best_score && (w[v] > w[best] || (w[v] == w[best] && v < best)))) {
        best = v;
        best_score = s;
      }
    });
    out.nodes.push_back(best);
    alive.reset(best);
    alive.subtract(g.neighbor_set(best));
  }
  std::sort(out.nodes.begin(), out.nodes.end());
  out.weight = sum_weights(out.nodes, w);
  return out;
}

}  // namespace internal

template <UndirectedGraph G, class W>
IndependentSet<W> solve_gwmin(const G& g, const std::vector<W>& w) {
  return internal::greedy(g, w, [&](int v, const NodeSet& alive) {
    const int deg = g.neighbor_set(v).intersection_count(alive);
    return static_cast<double>(w[v]) / (deg + 1);
  });
}

template <UndirectedGraph G, class W>
IndependentSet<W> solve_gwmin2(const G& g, const std::vector<W>& w) {
  return internal::greedy(g, w, [&](int v, const NodeSet& alive) {
    double denom = static_cast<double>(w[v]);
    const NodeSet& nb = g.neighbor_set(v);
    alive.for_each([&](int u) {
      if (nb.test(u)) denom += static_cast<double>(w[u]);
    });
    return denom == 0 ? 0.0 : static_cast<double>(w[v]) / denom;
  });
}

// ---------------------------------------------------------------------------
// Exact branch and bound

namespace internal {

template <UndirectedGraph G, class W>
class ExactSearch {
 public:
  ExactSearch(const G& g, const std::vector<W>& w, const SolverOptions& opt, SolverStats& stats)
      : g_(g), w_(w), n_(g.node_count()), opt_(opt), stats_(stats), tol_(WeightTraits<W>::tolerance(abs_total(w))) {
    // Heavy nodes open colour classes first, so every class maximum is its
    // first member.
    rank_.resize(n_);
    std::iota(rank_.begin(), rank_.end(), 0);
    std::stable_sort(rank_.begin(), rank_.end(), [&](int a, int b) {
      if (w_[a] != w_[b]) return w_[a] > w_[b];
      return g_.neighbors(a).size() > g_.neighbors(b).size();
    });
  }

  W tolerance() const { return tol_; }

  /// Best (weight, cardinality) over independent subsets of P.
  void optimize(const NodeSet& P, const IndependentSet<W>& seed) {
    target_mode_ = false;
    best_w_ = seed.weight;
    best_k_ = static_cast<int>(seed.nodes.size());
    best_ = seed.nodes;
    cur_.clear();
    expand(P, W{}, 0);
  }

  /// Whether some independent subset of P reaches exactly (tw, tk), which
  /// must be an optimum of P.
  bool reaches(const NodeSet& P, W tw, int tk) {
    target_mode_ = true;
    found_ = false;
    target_w_ = tw;
    target_k_ = tk;
    cur_.clear();
    expand(P, W{}, 0);
    return found_;
  }

  W best_weight() const { return best_w_; }
  int best_card() const { return best_k_; }

 private:
  bool improves(W w, int k) const {
    if (w > best_w_ + tol_) return true;
    return w >= best_w_ - tol_ && k > best_k_;
  }

  /// Whether bounds (ub_w, ub_k) leave room for a better or target value.
  bool promising(W ub_w, int ub_k) const {
    if (target_mode_) return ub_w >= target_w_ - tol_ && ub_k >= target_k_;
    if (ub_w < best_w_ - tol_) return false;
    if (ub_w <= best_w_ + tol_ && ub_k <= best_k_) return false;
    return true;
  }

  void leaf(W w, int k) {
    if (target_mode_) {
      if (w >= target_w_ - tol_ && k == target_k_) found_ = true;
      return;
    }
    if (improves(w, k)) {
      best_w_ = w;
      best_k_ = k;
      best_ = cur_;
    }
  }

  void expand(NodeSet P, W cw, int ck) {
    if (found_) return;
    if (opt_.exact_node_limit && ++stats_.search_nodes > opt_.exact_node_limit)
      throw ResourceLimitError("exact MWIS search exceeded node limit " + std::to_string(opt_.exact_node_limit));
    if (!opt_.exact_node_limit) ++stats_.search_nodes;

    // Nodes with no neighbour left in P belong to some optimum.
    std::size_t forced_from = cur_.size();
    P.for_each([&](int v) {
      if (!g_.neighbor_set(v).intersects(P)) {
        cur_.push_back(v);
        cw += w_[v];
        ++ck;
      }
    });
    for (std::size_t i = forced_from; i < cur_.size(); ++i) P.reset(cur_[i]);

    if (P.empty()) {
      leaf(cw, ck);
      cur_.resize(forced_from);
      return;
    }

    // Greedy clique cover of P in rank order.
    std::vector<int> order;
    std::vector<W> ub_w;
    std::vector<int> ub_k;
    {
      std::vector<NodeSet> common;
      std::vector<std::vector<int>> members;
      std::vector<W> cls_max;
      for (int v : rank_) {
        if (!P.test(v)) continue;
        std::size_t c = 0;
        while (c < common.size() && !common[c].test(v)) ++c;
        if (c == common.size()) {
          common.push_back(g_.neighbor_set(v));
          members.push_back({v});
          cls_max.push_back(w_[v]);
        } else {
          common[c] &= g_.neighbor_set(v);
          members[c].push_back(v);
          cls_max[c] = std::max(cls_max[c], w_[v]);
        }
      }
      W acc{};
      for (std::size_t c = 0; c < members.size(); ++c) {
        acc += std::max(cls_max[c], W{});
        for (int v : members[c]) {
          order.push_back(v);
          ub_w.push_back(acc);
          ub_k.push_back(static_cast<int>(c) + 1);
        }
      }
    }

    for (int i = static_cast<int>(order.size()) - 1; i >= 0 && !found_; --i) {
      if (!promising(cw + ub_w[i], ck + ub_k[i])) break;
      const int v = order[i];
      NodeSet next = P;
      next.subtract(g_.neighbor_set(v));
      next.reset(v);
      cur_.push_back(v);
      expand(std::move(next), cw + w_[v], ck + 1);
      cur_.pop_back();
      P.reset(v);
    }
    cur_.resize(forced_from);
  }

  const G& g_;
  const std::vector<W>& w_;
  int n_;
  const SolverOptions& opt_;
  SolverStats& stats_;
  W tol_;
  std::vector<int> rank_;

  bool target_mode_ = false;
  bool found_ = false;
  W target_w_{};
  int target_k_ = 0;

  W best_w_{};
  int best_k_ = 0;
  std::vector<int> best_;
  std::vector<int> cur_;
};

}  // namespace internal

/// Requires strictly positive weights.
template <UndirectedGraph G, class W>
IndependentSet<W> solve_exact(const G& g, const std::vector<W>& w, const SolverOptions& opt = {},
                              SolverStats* stats = nullptr) {
  internal::check_sizes(g, w);
  for (const W& x : w)
    if (!(x > W{})) throw DomainError("exact MWIS requires strictly positive weights");
  SolverStats local;
  SolverStats& st = stats ? *stats : local;
  const int n = g.node_count();
  if (n == 0) return {};

  internal::ExactSearch<G, W> search(g, w, opt, st);
  search.optimize(NodeSet::full(n), solve_gwmin(g, w));
  const W opt_w = search.best_weight();
  const int opt_k = search.best_card();

  // Lexicographically smallest optimum: fix members in ascending id order.
  IndependentSet<W> out;
  NodeSet P = NodeSet::full(n);
  W acc{};
  int k = 0;
  for (int v = P.first(); v != NodeSet::npos && k < opt_k; v = P.next(v)) {
    NodeSet rest = P;
    rest.subtract(g.neighbor_set(v));
    for (int u = rest.first(); u != NodeSet::npos && u <= v; u = rest.next(u)) rest.reset(u);
    if (search.reaches(rest, opt_w - acc - w[v], opt_k - k - 1)) {
      out.nodes.push_back(v);
      acc += w[v];
      ++k;
      P = std::move(rest);
      P.set(v);  // keep the cursor valid; v itself is already chosen
    }
  }
  out.weight = internal::sum_weights(out.nodes, w);
  if (static_cast<int>(out.nodes.size()) != opt_k || out.weight < opt_w - search.tolerance())
    throw InvariantError("exact MWIS failed to reconstruct its optimum");
  return out;
}

// ---------------------------------------------------------------------------
// Maximal independent set enumeration

namespace internal {

template <UndirectedGraph G, class W>
class MisEnumerator {
 public:
  MisEnumerator(const G& g, const std::vector<W>& w, const SolverOptions& opt, SolverStats& stats)
      : g_(g), w_(w), opt_(opt), stats_(stats), tol_(WeightTraits<W>::tolerance(abs_total(w))) {}

  IndependentSet<W> run() {
    const int n = g_.node_count();
    cur_.clear();
    visit(NodeSet::full(n), NodeSet(n), W{});
    IndependentSet<W> out;
    out.nodes = best_;
    std::sort(out.nodes.begin(), out.nodes.end());
    out.weight = sum_weights(out.nodes, w_);
    return out;
  }

 private:
  void report(W cw) {
    if (++stats_.maximal_sets > opt_.amisl_cap)
      throw ResourceLimitError("maximal independent set enumeration exceeded cap of " +
                               std::to_string(opt_.amisl_cap) + " sets");
    std::vector<int> s = cur_;
    std::sort(s.begin(), s.end());
    const int k = static_cast<int>(s.size());
    bool take = !have_;
    if (!take) {
      if (cw > best_w_ + tol_) {
        take = true;
      } else if (cw >= best_w_ - tol_) {
        if (k < static_cast<int>(best_.size())) take = true;
        else if (k == static_cast<int>(best_.size()) && s < best_) take = true;
      }
    }
    if (take) {
      have_ = true;
      best_w_ = cw;
      best_ = std::move(s);
    }
  }

  // Bron-Kerbosch with pivoting on the complement graph.
  void visit(NodeSet P, NodeSet X, W cw) {
    if (P.empty()) {
      if (X.empty()) report(cw);
      return;
    }
    int pivot = -1;
    int pivot_hits = std::numeric_limits<int>::max();
    auto consider = [&](int u) {
      const int hits = g_.neighbor_set(u).intersection_count(P) + (P.test(u) ? 1 : 0);
      if (hits < pivot_hits) {
        pivot_hits = hits;
        pivot = u;
      }
    };
    P.for_each(consider);
    X.for_each(consider);
    NodeSet branch = P & g_.neighbor_set(pivot);
    if (P.test(pivot)) branch.set(pivot);
    for (int v = branch.first(); v != NodeSet::npos; v = branch.next(v)) {
      NodeSet np = P;
      np.subtract(g_.neighbor_set(v));
      np.reset(v);
      NodeSet nx = X;
      nx.subtract(g_.neighbor_set(v));
      nx.reset(v);
      cur_.push_back(v);
      visit(std::move(np), std::move(nx), cw + w_[v]);
      cur_.pop_back();
      P.reset(v);
      X.set(v);
    }
  }

  const G& g_;
  const std::vector<W>& w_;
  const SolverOptions& opt_;
  SolverStats& stats_;
  W tol_;
  bool have_ = false;
  W best_w_{};
  std::vector<int> best_;
  std::vector<int> cur_;
};

}  // namespace internal

template <UndirectedGraph G, class W>
IndependentSet<W> solve_amisl(const G& g, const std::vector<W>& w, const SolverOptions& opt = {},
                              SolverStats* stats = nullptr) {
  internal::check_sizes(g, w);
  SolverStats local;
  SolverStats& st = stats ? *stats : local;
  if (g.node_count() == 0) {
    ++st.maximal_sets;
    return {};
  }
  return internal::MisEnumerator<G, W>(g, w, opt, st).run();
}

/// Dispatches to the selected solver and checks the result is independent.
template <UndirectedGraph G, class W>
IndependentSet<W> solve(SolverId id, const G& g, const std::vector<W>& w, const SolverOptions& opt = {},
                        SolverStats* stats = nullptr) {
  IndependentSet<W> s;
  switch (id) {
    case SolverId::kExact: s = solve_exact(g, w, opt, stats); break;
    case SolverId::kAmisl: s = solve_amisl(g, w, opt, stats); break;
    case SolverId::kGwmin: s = solve_gwmin(g, w); break;
    case SolverId::kGwmin2: s = solve_gwmin2(g, w); break;
  }
  if (!is_independent(g, s.nodes)) throw InvariantError(to_string(id) + " returned a dependent set");
  return s;
}

}  // namespace ppsched
