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

// Instance and schedule data model for slotted process planning and
// scheduling. A part is a chain of operations; each operation offers one or
// more options; an option is a list of "choose exactly one" resource groups
// plus a processing time that is sliced into unit tasks of one slot each.

#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ppsched {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent instance data.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Unknown solver, arrangement, or an invalid pairing of the two.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A configured search or enumeration cap was hit.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// Internal contract broken (e.g. a heuristic beating the exact oracle).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

using ResourceIndex = int;

struct ResourceId {
  std::string category;
  std::string name;

  friend auto operator<=>(const ResourceId&, const ResourceId&) = default;
};

struct OptionSpec {
  std::string label;
  /// Each group means "choose exactly one of these resources".
  std::vector<std::vector<ResourceIndex>> groups;
  double duration_units = 0;
  int duration_slots = 0;

  friend bool operator==(const OptionSpec&, const OptionSpec&) = default;
};

struct Operation {
  std::string id;
  std::vector<OptionSpec> options;
  /// Optional precedence DAG edges (operation ids of the same part). Only
  /// checked for consistency with the sequence; never used for scheduling.
  std::vector<std::string> successors;

  friend bool operator==(const Operation&, const Operation&) = default;
};

struct Part {
  std::string id;
  /// Operations in their processing sequence.
  std::vector<Operation> operations;

  friend bool operator==(const Part&, const Part&) = default;
};

struct ProblemInstance {
  double slot_length = 1;
  std::vector<ResourceId> resources;
  std::vector<Part> parts;

  const OptionSpec& option(int part, int op, int opt) const {
    return parts[part].operations[op].options[opt];
  }

  const std::string& resource_name(ResourceIndex r) const { return resources[r].name; }

  ResourceIndex find_resource(std::string_view name) const {
    for (std::size_t i = 0; i < resources.size(); ++i)
      if (resources[i].name == name) return static_cast<ResourceIndex>(i);
    return -1;
  }

  int operation_count() const {
    int n = 0;
    for (const auto& p : parts) n += static_cast<int>(p.operations.size());
    return n;
  }

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

/// ceil(units / slot_length), guarded against representation error so that
/// exact multiples (e.g. 0.3 / 0.1) do not round up to an extra slot.
inline int duration_to_slots(double units, double slot_length) {
  const double q = units / slot_length;
  const int slots = static_cast<int>(std::ceil(q - 1e-9));
  return std::max(slots, 1);
}

/// Throws ParseError naming the first offending entity.
inline void validate_instance(const ProblemInstance& inst) {
  if (!(inst.slot_length > 0)) throw ParseError("slot_length must be positive");
  if (inst.parts.empty()) throw ParseError("instance has no parts");
  std::set<std::string> names;
  for (const auto& r : inst.resources)
    if (!names.insert(r.name).second) throw ParseError("duplicate resource '" + r.name + "'");
  std::set<std::string> part_ids;
  for (const auto& part : inst.parts) {
    if (!part_ids.insert(part.id).second) throw ParseError("duplicate part id '" + part.id + "'");
    if (part.operations.empty()) throw ParseError("part '" + part.id + "' has no operations");
    std::map<std::string, std::size_t> position;
    for (std::size_t j = 0; j < part.operations.size(); ++j) {
      const auto& op = part.operations[j];
      const std::string where = "part '" + part.id + "' operation '" + op.id + "'";
      if (!position.emplace(op.id, j).second) throw ParseError("duplicate operation id in " + where);
      if (op.options.empty()) throw ParseError(where + " has no options");
      std::set<std::string> labels;
      for (const auto& opt : op.options) {
        const std::string ow = where + " option '" + opt.label + "'";
        if (!labels.insert(opt.label).second) throw ParseError("duplicate option label in " + ow);
        if (!(opt.duration_units > 0)) throw ParseError("non-positive duration in " + ow);
        if (opt.duration_slots != duration_to_slots(opt.duration_units, inst.slot_length))
          throw ParseError("duration_slots inconsistent with duration_units in " + ow);
        if (opt.groups.empty()) throw ParseError(ow + " has no resource groups");
        std::set<ResourceIndex> in_option;
        for (const auto& g : opt.groups) {
          if (g.empty()) throw ParseError("empty resource group in " + ow);
          for (ResourceIndex r : g)
            if (r >= 0 && r < static_cast<int>(inst.resources.size()) && in_option.count(r) &&
                std::count(g.begin(), g.end(), r) == 1)
              throw ParseError("resource '" + inst.resources[r].name + "' appears in two groups of " + ow);
          for (ResourceIndex r : g) in_option.insert(r);
          std::set<ResourceIndex> seen;
          for (ResourceIndex r : g) {
            if (r < 0 || r >= static_cast<int>(inst.resources.size()))
              throw ParseError("unknown resource in " + ow);
            if (!seen.insert(r).second)
              throw ParseError("resource '" + inst.resources[r].name + "' repeated in a group of " + ow);
          }
        }
      }
    }
    for (std::size_t j = 0; j < part.operations.size(); ++j) {
      for (const auto& s : part.operations[j].successors) {
        auto it = position.find(s);
        if (it == position.end())
          throw ParseError("part '" + part.id + "' operation '" + part.operations[j].id +
                           "' names unknown successor '" + s + "'");
        if (it->second <= j)
          throw ParseError("part '" + part.id + "' sequence places '" + s + "' before its predecessor '" +
                           part.operations[j].id + "'");
      }
    }
  }
}

/// One option of one operation sliced to a single slot. slot is 1-based.
struct UnitTask {
  int part = 0;
  int op = 0;
  int option = 0;
  int slot = 1;

  friend auto operator<=>(const UnitTask&, const UnitTask&) = default;
};

using UnitTaskSet = std::vector<UnitTask>;

/// Unit tasks of one option, slot_index ascending.
inline void append_option_units(const ProblemInstance& inst, int p, int j, int k, int from_slot,
                                UnitTaskSet& out) {
  const int dur = inst.option(p, j, k).duration_slots;
  for (int s = from_slot; s <= dur; ++s) out.push_back({p, j, k, s});
}

/// Every unit task of the instance in canonical order: parts as given,
/// operations in sequence, options in input order, slot_index ascending.
inline UnitTaskSet expand_unit_tasks(const ProblemInstance& inst) {
  UnitTaskSet out;
  for (int p = 0; p < static_cast<int>(inst.parts.size()); ++p) {
    const auto& ops = inst.parts[p].operations;
    for (int j = 0; j < static_cast<int>(ops.size()); ++j)
      for (int k = 0; k < static_cast<int>(ops[j].options.size()); ++k)
        append_option_units(inst, p, j, k, 1, out);
  }
  return out;
}

/// Human-readable unit task label, e.g. "P1/O11/a-2".
inline std::string unit_task_label(const ProblemInstance& inst, const UnitTask& u) {
  const auto& part = inst.parts[u.part];
  const auto& op = part.operations[u.op];
  return part.id + "/" + op.id + "/" + op.options[u.option].label + "-" + std::to_string(u.slot);
}

// ---------------------------------------------------------------------------
// Schedules

struct SlotEntry {
  int part = 0;
  int op = 0;
  int option = 0;
  int slot_index = 1;
  /// One resource per group of the option, in group order.
  std::vector<ResourceIndex> assignment;

  UnitTask unit_task() const { return {part, op, option, slot_index}; }

  friend bool operator==(const SlotEntry&, const SlotEntry&) = default;
};

struct Schedule {
  /// slots[t] holds the entries processed in slot t (0-based).
  std::vector<std::vector<SlotEntry>> slots;

  int makespan_slots() const {
    for (int t = static_cast<int>(slots.size()); t > 0; --t)
      if (!slots[t - 1].empty()) return t;
    return 0;
  }
  double makespan_units(double slot_length) const { return makespan_slots() * slot_length; }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

enum class ResourceLock {
  kFlexible,  ///< resources may change between unit tasks of one operation
  kStrict,    ///< resources are fixed once an operation starts
};

struct Violation {
  std::string rule;
  int slot = -1;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool feasible() const { return violations.empty(); }
};

namespace rules {
inline constexpr const char* kResourceConflict = "resource-conflict";
inline constexpr const char* kSequence = "sequence";
inline constexpr const char* kOptionAssignment = "option-assignment";
inline constexpr const char* kContiguity = "contiguity";
inline constexpr const char* kCoverage = "coverage";
inline constexpr const char* kUnknownEntity = "unknown-entity";
}  // namespace rules

/// Checks a schedule against every constraint of the slotted model:
///   resource-conflict  no resource used twice in one slot
///   sequence           one entry per part per slot; operations in order
///   option-assignment  one option per operation; one member per group
///                      (and a fixed assignment under ResourceLock::kStrict)
///   contiguity         an operation's unit tasks run in consecutive slots
///   coverage           every unit task of every chosen option runs once
inline ValidationReport validate_schedule(const ProblemInstance& inst, const Schedule& sched,
                                          ResourceLock lock = ResourceLock::kFlexible) {
  ValidationReport rep;
  auto add = [&](const char* rule, int slot, std::string detail) {
    rep.violations.push_back({rule, slot, std::move(detail)});
  };

  struct Run {
    int slot;
    const SlotEntry* e;
  };
  // (part, op) -> entries in slot order
  std::map<std::pair<int, int>, std::vector<Run>> per_op;

  for (int t = 0; t < static_cast<int>(sched.slots.size()); ++t) {
    std::map<ResourceIndex, int> used;
    std::set<int> parts_here;
    for (const auto& e : sched.slots[t]) {
      if (e.part < 0 || e.part >= static_cast<int>(inst.parts.size()) || e.op < 0 ||
          e.op >= static_cast<int>(inst.parts[e.part].operations.size()) || e.option < 0 ||
          e.option >= static_cast<int>(inst.parts[e.part].operations[e.op].options.size())) {
        add(rules::kUnknownEntity, t, "entry references a missing part/operation/option");
        continue;
      }
      const auto& opt = inst.option(e.part, e.op, e.option);
      const std::string label = unit_task_label(inst, e.unit_task());
      if (e.slot_index < 1 || e.slot_index > opt.duration_slots) {
        add(rules::kUnknownEntity, t, label + " slot_index out of range");
        continue;
      }
      if (e.assignment.size() != opt.groups.size()) {
        add(rules::kOptionAssignment, t, label + " assigns " + std::to_string(e.assignment.size()) +
                                             " resources for " + std::to_string(opt.groups.size()) +
                                             " groups");
      } else {
        for (std::size_t g = 0; g < opt.groups.size(); ++g) {
          const auto& grp = opt.groups[g];
          if (std::find(grp.begin(), grp.end(), e.assignment[g]) == grp.end())
            add(rules::kOptionAssignment, t, label + " uses a resource outside group " + std::to_string(g));
        }
      }
      for (ResourceIndex r : e.assignment) {
        if (++used[r] == 2)
          add(rules::kResourceConflict, t,
              "resource " + (r >= 0 && r < static_cast<int>(inst.resources.size()) ? inst.resource_name(r)
                                                                                   : std::to_string(r)) +
                  " assigned twice");
      }
      if (!parts_here.insert(e.part).second)
        add(rules::kSequence, t, "part " + inst.parts[e.part].id + " appears twice in one slot");
      per_op[{e.part, e.op}].push_back({t, &e});
    }
  }

  for (int p = 0; p < static_cast<int>(inst.parts.size()); ++p) {
    const auto& part = inst.parts[p];
    int prev_last = -1;
    for (int j = 0; j < static_cast<int>(part.operations.size()); ++j) {
      const std::string opname = part.id + "/" + part.operations[j].id;
      auto it = per_op.find({p, j});
      if (it == per_op.end()) {
        add(rules::kCoverage, -1, opname + " is never scheduled");
        continue;
      }
      const auto& runs = it->second;
      const int option = runs.front().e->option;
      bool single_option = true;
      for (const auto& r : runs)
        if (r.e->option != option) single_option = false;
      if (!single_option) {
        add(rules::kOptionAssignment, runs.front().slot, opname + " mixes options");
      }
      const int dur = part.operations[j].options[option].duration_slots;
      std::vector<int> seen(dur + 1, 0);
      for (const auto& r : runs)
        if (r.e->option == option) ++seen[r.e->slot_index];
      for (int s = 1; s <= dur; ++s)
        if (seen[s] != 1)
          add(rules::kCoverage, -1,
              opname + " unit task " + std::to_string(s) + " scheduled " + std::to_string(seen[s]) + " times");
      if (single_option && static_cast<int>(runs.size()) == dur) {
        const int start = runs.front().slot;
        for (std::size_t k = 0; k < runs.size(); ++k) {
          if (runs[k].slot != start + static_cast<int>(k) || runs[k].e->slot_index != static_cast<int>(k) + 1) {
            add(rules::kContiguity, runs[k].slot, opname + " does not run in consecutive slots");
            break;
          }
        }
        if (lock == ResourceLock::kStrict) {
          for (const auto& r : runs)
            if (r.e->assignment != runs.front().e->assignment) {
              add(rules::kOptionAssignment, r.slot, opname + " changes resources mid-operation");
              break;
            }
        }
      }
      if (runs.front().slot <= prev_last)
        add(rules::kSequence, runs.front().slot, opname + " starts before its predecessor finishes");
      prev_last = std::max(prev_last, runs.back().slot);
    }
  }
  return rep;
}

}  // namespace ppsched
