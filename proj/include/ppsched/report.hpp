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

// JSON run reports and RFC 4180 CSV helpers.

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ppsched/model.hpp"
#include "ppsched/scheduler.hpp"

namespace ppsched {

inline nlohmann::json slot_entry_json(const ProblemInstance& inst, const SlotEntry& e) {
  auto res = nlohmann::json::array();
  for (ResourceIndex r : e.assignment) res.push_back(inst.resource_name(r));
  return {{"part", inst.parts[e.part].id},
          {"operation", inst.parts[e.part].operations[e.op].id},
          {"option", inst.option(e.part, e.op, e.option).label},
          {"slot_index", e.slot_index},
          {"assignment", res}};
}

inline nlohmann::json schedule_json(const ProblemInstance& inst, const Schedule& s) {
  auto slots = nlohmann::json::array();
  for (const auto& slot : s.slots) {
    auto entries = nlohmann::json::array();
    for (const auto& e : slot) entries.push_back(slot_entry_json(inst, e));
    slots.push_back(std::move(entries));
  }
  return {{"slots", slots},
          {"makespan_slots", s.makespan_slots()},
          {"makespan_units", s.makespan_units(inst.slot_length)}};
}

/// Wall-time fields are "wall_ms" and "solve_ms"; everything else is
/// reproducible.
inline nlohmann::json run_report_json(const ProblemInstance& inst, const RunResult& r) {
  nlohmann::json j;
  j["config"] = {{"solver", to_string(r.config.solver)},
                 {"arrangement", to_string(r.config.arrangement)},
                 {"lw", to_string(r.config.lw)},
                 {"lw_coefficient", r.lw_coefficient},
                 {"resource_lock", r.config.lock == ResourceLock::kStrict ? "strict" : "flexible"},
                 {"heuristic", heuristic_label(r.config)}};
  j["schedule"] = schedule_json(inst, r.schedule);
  j["makespan_slots"] = r.makespan_slots();
  j["makespan_units"] = r.schedule.makespan_units(inst.slot_length);
  j["fallbacks"] = r.fallbacks;
  j["wall_ms"] = r.wall_ms;
  auto stats = nlohmann::json::array();
  for (const auto& s : r.slots)
    stats.push_back({{"slot", s.slot + 1},
                     {"graph_nodes", s.graph_nodes},
                     {"graph_edges", s.graph_edges},
                     {"set_size", s.set_size},
                     {"set_weight", s.set_weight},
                     {"search_nodes", s.search_nodes},
                     {"maximal_sets", s.maximal_sets},
                     {"continued", s.continued},
                     {"dropped", s.dropped},
                     {"fallback", s.fallback},
                     {"solve_ms", s.solve_ms}});
  j["slot_stats"] = stats;
  j["trace"] = r.trace;
  return j;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// One CSV record terminated by CRLF.
inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
  return out + "\r\n";
}

}  // namespace ppsched
