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

// Gantt charts: one row per resource, one column per slot.

#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ppsched/model.hpp"

namespace ppsched {

/// A resource busy with one operation over slots [start, end).
struct GanttBar {
  ResourceIndex resource = 0;
  int part = 0;
  int op = 0;
  int option = 0;
  int start = 0;
  int end = 0;

  friend bool operator==(const GanttBar&, const GanttBar&) = default;
};

/// Maximal runs of consecutive slots in which a resource serves the same
/// operation, ordered by resource then start.
inline std::vector<GanttBar> gantt_bars(const ProblemInstance& inst, const Schedule& s) {
  std::vector<std::tuple<ResourceIndex, int, int, int, int>> cells;  // r, slot, part, op, option
  for (int t = 0; t < static_cast<int>(s.slots.size()); ++t)
    for (const auto& e : s.slots[t])
      for (ResourceIndex r : e.assignment) cells.emplace_back(r, t, e.part, e.op, e.option);
  std::sort(cells.begin(), cells.end());
  std::vector<GanttBar> bars;
  for (const auto& [r, t, p, j, k] : cells) {
    if (!bars.empty()) {
      GanttBar& b = bars.back();
      if (b.resource == r && b.part == p && b.op == j && b.end == t) {
        b.end = t + 1;
        continue;
      }
    }
    bars.push_back({r, p, j, k, t, t + 1});
  }
  (void)inst;
  return bars;
}

inline std::string operation_label(const ProblemInstance& inst, int part, int op, int option) {
  const auto& p = inst.parts[part];
  return p.id + "/" + p.operations[op].id + p.operations[op].options[option].label;
}

/// Monospace chart; idle cells are '.'.
inline std::string render_gantt_text(const ProblemInstance& inst, const Schedule& s) {
  const int T = s.makespan_slots();
  const int R = static_cast<int>(inst.resources.size());
  std::vector<std::vector<std::string>> grid(R, std::vector<std::string>(T, "."));
  std::size_t cell = 3;
  for (const auto& b : gantt_bars(inst, s))
    for (int t = b.start; t < b.end; ++t) {
      grid[b.resource][t] = operation_label(inst, b.part, b.op, b.option);
      cell = std::max(cell, grid[b.resource][t].size());
    }
  std::size_t name_w = 4;
  for (const auto& r : inst.resources) name_w = std::max(name_w, r.name.size());
  auto pad = [](const std::string& x, std::size_t w) { return x + std::string(w > x.size() ? w - x.size() : 0, ' '); };

  std::ostringstream os;
  os << pad("slot", name_w);
  for (int t = 0; t < T; ++t) os << ' ' << pad(std::to_string(t + 1), cell);
  os << '\n';
  for (int r = 0; r < R; ++r) {
    std::string line = pad(inst.resources[r].name, name_w);
    for (int t = 0; t < T; ++t) line += ' ' + pad(grid[r][t], cell);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Standalone SVG; one <rect class="bar"> per GanttBar.
inline std::string render_gantt_svg(const ProblemInstance& inst, const Schedule& s) {
  constexpr int kCol = 48, kRow = 22, kLeft = 60, kTop = 24;
  static constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                             "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  const int T = s.makespan_slots();
  const int R = static_cast<int>(inst.resources.size());
  const int width = kLeft + T * kCol + 10;
  const int height = kTop + R * kRow + 10;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"monospace\" font-size=\"10\">\n";
  for (int t = 0; t < T; ++t)
    os << "  <text x=\"" << kLeft + t * kCol + kCol / 2 << "\" y=\"" << kTop - 8
       << "\" text-anchor=\"middle\">" << t + 1 << "</text>\n";
  for (int r = 0; r < R; ++r) {
    const int y = kTop + r * kRow;
    os << "  <text x=\"4\" y=\"" << y + kRow / 2 + 4 << "\">" << xml_escape(inst.resources[r].name) << "</text>\n";
    os << "  <line x1=\"" << kLeft << "\" y1=\"" << y + kRow << "\" x2=\"" << kLeft + T * kCol << "\" y2=\""
       << y + kRow << "\" stroke=\"#ddd\"/>\n";
  }
  for (const auto& b : gantt_bars(inst, s)) {
    const int x = kLeft + b.start * kCol;
    const int y = kTop + b.resource * kRow + 2;
    const int w = (b.end - b.start) * kCol - 2;
    const std::string label = xml_escape(operation_label(inst, b.part, b.op, b.option));
    os << "  <rect class=\"bar\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << kRow - 4
       << "\" fill=\"" << kPalette[b.part % 10] << "\"><title>" << label << "</title></rect>\n";
    os << "  <text x=\"" << x + 3 << "\" y=\"" << y + kRow / 2 + 2 << "\" fill=\"#fff\">" << label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace ppsched
