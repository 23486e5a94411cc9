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

// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures. Targets and tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ppsched/ppsched.hpp"

namespace {

using namespace ppsched;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> log = {};
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string census_line(const ConflictGraph& g) {
  const auto& c = g.census();
  std::ostringstream os;
  os << "rule1=" << c[1] << " rule2=" << c[2] << " rule3=" << c[3] << " rule4=" << c[4];
  return os.str();
}

// ---------------------------------------------------------------------------

constexpr int kExampleUnitTasks = 47;
constexpr int kExampleNodes = 161;
constexpr long long kExampleEdges = 4718;
// Nodes per unit task of the example, canonical order.
constexpr int kNodesPerUnitTask[kExampleUnitTasks] = {4, 4, 4, 4, 2, 2, 2, 4, 4, 4, 4, 2, 2, 2, 6, 6,
                                                      1, 1, 3, 3, 1, 1, 3, 3, 9, 9, 6, 6, 6, 6, 6, 6,
                                                      2, 2, 2, 2, 2, 4, 4, 4, 4, 4, 1, 1, 1, 1, 1};
constexpr double kIciTolerance = 0.005;
constexpr int kExampleOptimum = 10;
constexpr int kSlotTolerance = 1;
constexpr int kRandomGraphs = 500;
constexpr int kRandomGraphMaxNodes = 20;
constexpr int kRandomInstances = 1000;
constexpr int kJobShopUnitTasks = 119;
constexpr int kJobShopNodes = 580;
constexpr int kJobShopLiteNodes = 292;
constexpr long long kJobShopEdges = 47525;
constexpr long long kJobShopLiteEdges = 8771;

Outcome expansion() {
  const auto n = expand_unit_tasks(builtin_example()).size();
  return {n == kExampleUnitTasks, "unit_tasks=" + std::to_string(n) + " target=" + std::to_string(kExampleUnitTasks)};
}

Outcome graph_size() {
  const auto g = build_conflict_graph(builtin_example());
  bool grouping = static_cast<int>(g.unit_tasks().size()) == kExampleUnitTasks;
  for (int t = 0; grouping && t < kExampleUnitTasks; ++t)
    grouping = static_cast<int>(g.nodes_of(t).size()) == kNodesPerUnitTask[t];
  Outcome o;
  o.pass = g.node_count() == kExampleNodes && grouping && g.edge_count() == kExampleEdges;
  o.detail = "nodes=" + std::to_string(g.node_count()) + " edges=" + std::to_string(g.edge_count()) +
             " grouping=" + (grouping ? "match" : "mismatch") + " target nodes=161 edges=4718";
  if (g.edge_count() != kExampleEdges) o.log.push_back("census " + census_line(g));
  return o;
}

Outcome ici() {
  struct Row {
    int p, t, n;
    long long e;
    int o;
    double target;
  };
  const Row rows[] = {{2, 7, 24, 111, 1, 218.40}, {4, 12, 41, 315, 2, 8064.0}};
  Outcome o{true, "", {}};
  for (const auto& r : rows) {
    const double v = input_complexity_index(r.p, r.t, r.n, r.e, r.o);
    const double rel = std::abs(v - r.target) / r.target;
    o.pass = o.pass && rel <= kIciTolerance;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%sici=%.3f(target %.2f) ", o.detail.empty() ? "" : "", v, r.target);
    o.detail += buf;
  }
  return o;
}

Outcome oracle() {
  const auto inst = builtin_example();
  const auto r = optimal_makespan(inst);
  const bool valid = validate_schedule(inst, r.certificate).feasible() && r.certificate.makespan_slots() == r.slots;
  return {r.optimal && r.slots == kExampleOptimum && valid,
          "optimum_slots=" + std::to_string(r.slots) + " optimal=" + (r.optimal ? "yes" : "no") +
              " certificate=" + (valid ? "valid" : "invalid") + " states=" + std::to_string(r.states_expanded)};
}

Outcome heuristics() {
  struct Target {
    SolverId solver;
    Arrangement arrangement;
    int published;
    double limit_s;
  };
  const Target targets[] = {{SolverId::kExact, Arrangement::kMwisA1, 11, 4 * 3600.0},
                            {SolverId::kGwmin, Arrangement::kMwisA2, 11, 60.0},
                            {SolverId::kGwmin2, Arrangement::kMwisA1, 14, 60.0}};
  const auto inst = builtin_example();
  Outcome o{true, "", {}};
  for (const auto& t : targets) {
    int best = 1 << 30;
    RunResult best_run;
    const auto t0 = Clock::now();
    std::string per_level;
    for (auto lw : {LengthWeightLevel::kMedian, LengthWeightLevel::kHigh, LengthWeightLevel::kLow}) {
      HeuristicConfig c;
      c.solver = t.solver;
      c.arrangement = t.arrangement;
      c.lw = lw;
      RunResult r = schedule(inst, c);
      per_level += " " + to_string(lw) + "=" + std::to_string(r.makespan_slots());
      if (r.makespan_slots() < best) {
        best = r.makespan_slots();
        best_run = std::move(r);
      }
    }
    const double secs = seconds_since(t0);
    const bool feasible = validate_schedule(inst, best_run.schedule).feasible();
    const bool exact_hit = best <= t.published;
    const bool within = best <= t.published + kSlotTolerance;
    const bool ok = feasible && within && best >= kExampleOptimum && secs < t.limit_s;
    o.pass = o.pass && ok;
    std::string label = heuristic_label(best_run.config);
    label = label.substr(0, label.find(':'));
    o.detail += label + " best=" + std::to_string(best) + "/" + std::to_string(t.published) +
                (exact_hit ? "" : "(+1 tolerance)") + " ";
    o.log.push_back(heuristic_label(best_run.config) + " per level:" + per_level);
    if (!exact_hit) {
      o.log.push_back("slot trace of " + heuristic_label(best_run.config) + " lw=" + to_string(best_run.config.lw) +
                      ":");
      for (const auto& line : best_run.trace) o.log.push_back("  " + line);
    }
  }
  return o;
}

Outcome solvers() {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> size(1, kRandomGraphMaxNodes);
  std::uniform_real_distribution<double> dens(0.05, 0.8), weight(0.01, 10.0);
  int bad_exact = 0, bad_amisl = 0, bad_greedy = 0;
  for (int trial = 0; trial < kRandomGraphs; ++trial) {
    const int n = size(rng);
    Graph g(n);
    std::bernoulli_distribution coin(dens(rng));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng)) g.add_edge(u, v);
    std::vector<double> w(n);
    for (auto& x : w) x = trial % 2 ? weight(rng) : std::floor(weight(rng) / 2) + 1;
    const double tol = 1e-9 * std::max(1.0, std::abs(std::accumulate(w.begin(), w.end(), 0.0)));
    const auto bf = mwis_bruteforce(g, w);
    const auto ex = solve_exact(g, w);
    if (std::abs(ex.weight - bf.weight) > tol || !is_independent(g, ex.nodes)) ++bad_exact;
    if (std::abs(solve_amisl(g, w).weight - ex.weight) > tol) ++bad_amisl;
    for (const auto& s : {solve_gwmin(g, w), solve_gwmin2(g, w)})
      if (!is_maximal_independent(g, s.nodes) || s.weight > ex.weight + tol) ++bad_greedy;
  }
  return {bad_exact + bad_amisl + bad_greedy == 0,
          "graphs=" + std::to_string(kRandomGraphs) + " exact_mismatch=" + std::to_string(bad_exact) +
              " amisl_mismatch=" + std::to_string(bad_amisl) + " greedy_violations=" + std::to_string(bad_greedy)};
}

Outcome feasibility() {
  const SolverId families[] = {SolverId::kExact, SolverId::kAmisl, SolverId::kGwmin, SolverId::kGwmin2};
  const LengthWeightLevel levels[] = {LengthWeightLevel::kMedian, LengthWeightLevel::kHigh, LengthWeightLevel::kLow};
  int runs = 0, infeasible = 0, over_cap = 0, errors = 0;
  Outcome o;
  for (int i = 0; i < kRandomInstances; ++i) {
    GeneratorParams p;
    p.min_parts = 2;
    p.max_parts = 4;
    p.min_ops = 1;
    p.max_ops = 3;
    p.max_slots = 2;
    p.seed = 1000 + static_cast<std::uint64_t>(i);
    const auto inst = generate_random(p);
    const int cap = static_cast<int>(expand_unit_tasks(inst).size());
    for (SolverId s : families) {
      std::vector<Arrangement> arrs;
      for (const auto& info : kArrangements)
        if (heuristic_number(s, info.id)) arrs.push_back(info.id);
      for (std::size_t l = 0; l < 3; ++l) {
        HeuristicConfig c;
        c.solver = s;
        c.arrangement = arrs[(static_cast<std::size_t>(i) * 3 + l) % arrs.size()];
        c.lw = levels[l];
        ++runs;
        try {
          const auto r = schedule(inst, c);
          if (!validate_schedule(inst, r.schedule).feasible()) ++infeasible;
          if (r.makespan_slots() > cap) ++over_cap;
        } catch (const std::exception& e) {
          ++errors;
          if (o.log.size() < 5) o.log.push_back("seed " + std::to_string(p.seed) + " " + heuristic_label(c) + ": " + e.what());
        }
      }
    }
  }
  o.pass = infeasible + over_cap + errors == 0;
  o.detail = "runs=" + std::to_string(runs) + " infeasible=" + std::to_string(infeasible) +
             " over_cap=" + std::to_string(over_cap) + " errors=" + std::to_string(errors);
  return o;
}

Outcome error_rates() {
  const double a = error_rate(11, 10), b = error_rate(14, 10);
  char buf[64];
  std::snprintf(buf, sizeof buf, "(11,10)=%.6g%% (14,10)=%.6g%%", a, b);
  return {a == 10.0 && b == 40.0, buf};
}

Outcome jobshop() {
  const auto full = builtin_jobshop();
  const auto lite = builtin_jobshop(jobshop_default_sequence(), true);
  const auto units = expand_unit_tasks(full).size();
  const auto g = build_conflict_graph(full);
  const auto gl = build_conflict_graph(lite);
  Outcome o;
  o.pass = static_cast<int>(units) == kJobShopUnitTasks && g.node_count() == kJobShopNodes &&
           gl.node_count() == kJobShopLiteNodes;
  o.detail = "unit_tasks=" + std::to_string(units) + "/" + std::to_string(kJobShopUnitTasks) +
             " nodes=" + std::to_string(g.node_count()) + "/" + std::to_string(kJobShopNodes) +
             " lite_nodes=" + std::to_string(gl.node_count()) + "/" + std::to_string(kJobShopLiteNodes);
  o.log.push_back("full edges=" + std::to_string(g.edge_count()) + " (reference " + std::to_string(kJobShopEdges) +
                  ") census " + census_line(g));
  o.log.push_back("lite edges=" + std::to_string(gl.edge_count()) + " (reference " +
                  std::to_string(kJobShopLiteEdges) + ") census " + census_line(gl));
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "fixture expansion", 1.0, expansion},
      {2, "example graph size", 1.0, graph_size},
      {3, "input complexity index", 1.0, ici},
      {4, "oracle optimum", 300.0, oracle},
      {5, "heuristic makespans", 4 * 3600.0, heuristics},
      {6, "solver correctness", 120.0, solvers},
      {7, "feasibility property", 1800.0, feasibility},
      {8, "error-rate formula", 1.0, error_rates},
      {9, "job-shop fixture", 10.0, jobshop},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    const bool pass = o.pass && secs < c.limit_s;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d %s: %s [%.2fs, limit %.0fs]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_s);
    for (const auto& line : o.log) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
