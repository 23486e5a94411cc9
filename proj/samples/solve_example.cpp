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

// Schedules the built-in four-part example with the GWMIN greedy and
// compares the result against the exact optimum.

#include <iostream>

#include "ppsched/ppsched.hpp"

int main() {
  const ppsched::ProblemInstance inst = ppsched::builtin_example();
  const ppsched::ConflictGraph g = ppsched::build_conflict_graph(inst);
  std::cout << "conflict graph: " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";

  ppsched::HeuristicConfig cfg;
  cfg.solver = ppsched::SolverId::kGwmin;
  cfg.arrangement = ppsched::Arrangement::kMwisA2;
  cfg.lw = ppsched::LengthWeightLevel::kHigh;
  const ppsched::RunResult run = ppsched::schedule(inst, cfg);
  for (const auto& line : run.trace) std::cout << line << "\n";

  const ppsched::OracleResult best = ppsched::optimal_makespan(inst);
  std::cout << ppsched::render_gantt_text(inst, run.schedule);
  std::cout << ppsched::heuristic_label(cfg) << ": " << run.makespan_slots() << " slots, optimum " << best.slots
            << ", error " << ppsched::error_rate(run.makespan_slots(), best.slots) << "%\n";
  return 0;
}
