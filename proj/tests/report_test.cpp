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

#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include <gtest/gtest.h>

#include "ppsched/ppsched.hpp"

namespace ppsched {
namespace {

int count_of(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

RunResult example_run() {
  HeuristicConfig c;
  c.solver = SolverId::kGwmin;
  c.arrangement = Arrangement::kMwisA2;
  c.lw = LengthWeightLevel::kHigh;
  return schedule(builtin_example(), c);
}

TEST(GanttTest, BarsCoverScheduleExactly) {
  const auto inst = builtin_example();
  const auto r = example_run();
  const auto bars = gantt_bars(inst, r.schedule);
  // Every (resource, slot) cell of the schedule lies in exactly one bar.
  std::map<std::pair<ResourceIndex, int>, int> cells;
  for (int t = 0; t < static_cast<int>(r.schedule.slots.size()); ++t)
    for (const auto& e : r.schedule.slots[t])
      for (ResourceIndex res : e.assignment) cells[{res, t}] = 0;
  for (const auto& b : bars) {
    EXPECT_LT(b.start, b.end);
    for (int t = b.start; t < b.end; ++t) {
      auto it = cells.find({b.resource, t});
      ASSERT_NE(it, cells.end());
      ++it->second;
    }
  }
  for (const auto& [cell, n] : cells) EXPECT_EQ(n, 1);
  // Bars on one resource for one operation never touch: they would have merged.
  for (std::size_t i = 1; i < bars.size(); ++i) {
    const auto& a = bars[i - 1];
    const auto& b = bars[i];
    if (a.resource == b.resource && a.part == b.part && a.op == b.op) {
      EXPECT_LT(a.end, b.start);
    }
  }
}

TEST(GanttTest, TextHasOneRowPerResource) {
  const auto inst = builtin_example();
  const auto r = example_run();
  const std::string text = render_gantt_text(inst, r.schedule);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("slot", 0), 0u);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(line.rfind(inst.resources[rows].name, 0), 0u);
    ++rows;
  }
  EXPECT_EQ(rows, inst.resources.size());
  EXPECT_NE(text.find("P1/O11"), std::string::npos);
}

TEST(GanttTest, SvgHasOneRectPerBar) {
  const auto inst = builtin_example();
  const auto r = example_run();
  const std::string svg = render_gantt_svg(inst, r.schedule);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(count_of(svg, "<rect class=\"bar\""), static_cast<int>(gantt_bars(inst, r.schedule).size()));
  EXPECT_EQ(xml_escape("a<b&\"c\">"), "a&lt;b&amp;&quot;c&quot;&gt;");
}

TEST(ReportTest, FieldsAndReproducibility) {
  const auto inst = builtin_example();
  const auto a = run_report_json(inst, example_run());
  auto b = run_report_json(inst, example_run());
  EXPECT_EQ(a["config"]["heuristic"], "H14:gwmin/mwis_a2");
  EXPECT_EQ(a["config"]["lw"], "high");
  EXPECT_EQ(a["makespan_slots"], a["schedule"]["makespan_slots"]);
  EXPECT_EQ(a["makespan_units"].get<double>(), a["makespan_slots"].get<int>() * 10.0);
  EXPECT_EQ(a["slot_stats"].size(), a["schedule"]["slots"].size());
  const auto& first = a["schedule"]["slots"][0][0];
  EXPECT_TRUE(first.contains("assignment"));
  EXPECT_EQ(first["slot_index"], 1);
  // Identical apart from wall-time fields.
  auto strip = [](nlohmann::json j) {
    j.erase("wall_ms");
    for (auto& s : j["slot_stats"]) s.erase("solve_ms");
    return j;
  };
  EXPECT_EQ(strip(a).dump(), strip(b).dump());
}

TEST(CsvTest, QuotingAndLineEnds) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_row({"x", "y,z", ""}), "x,\"y,z\",\r\n");
}

}  // namespace
}  // namespace ppsched
