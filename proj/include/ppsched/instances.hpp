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

// Built-in instances and a seeded random instance generator.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ppsched/instance_io.hpp"
#include "ppsched/model.hpp"

namespace ppsched {

/// Incremental construction with resources referenced by name.
class InstanceBuilder {
 public:
  explicit InstanceBuilder(double slot_length) { inst_.slot_length = slot_length; }

  InstanceBuilder& resource(const std::string& name, const std::string& category) {
    if (inst_.find_resource(name) >= 0) throw ParseError("duplicate resource '" + name + "'");
    inst_.resources.push_back({category, name});
    return *this;
  }

  InstanceBuilder& part(const std::string& id) {
    inst_.parts.push_back({id, {}});
    return *this;
  }

  InstanceBuilder& operation(const std::string& id, std::vector<std::string> successors = {}) {
    if (inst_.parts.empty()) throw ParseError("operation '" + id + "' added before any part");
    inst_.parts.back().operations.push_back({id, {}, std::move(successors)});
    return *this;
  }

  InstanceBuilder& option(const std::string& label, double duration_units,
                          const std::vector<std::vector<std::string>>& groups) {
    if (inst_.parts.empty() || inst_.parts.back().operations.empty())
      throw ParseError("option '" + label + "' added before any operation");
    OptionSpec opt;
    opt.label = label;
    opt.duration_units = duration_units;
    opt.duration_slots = duration_to_slots(duration_units, inst_.slot_length);
    for (const auto& g : groups) {
      std::vector<ResourceIndex> ids;
      for (const auto& name : g) {
        ResourceIndex r = inst_.find_resource(name);
        if (r < 0) {
          r = static_cast<ResourceIndex>(inst_.resources.size());
          inst_.resources.push_back({infer_category(name), name});
        }
        ids.push_back(r);
      }
      opt.groups.push_back(std::move(ids));
    }
    inst_.parts.back().operations.back().options.push_back(std::move(opt));
    return *this;
  }

  ProblemInstance build() const {
    validate_instance(inst_);
    return inst_;
  }

 private:
  ProblemInstance inst_;
};

/// Four-part example: 14 operations, 47 unit tasks at slot length 10.
inline ProblemInstance builtin_example() {
  const std::vector<std::string> m23{"M2", "M3"}, m234{"M2", "M3", "M4"}, t67{"T6", "T7"}, t78{"T7", "T8"};
  InstanceBuilder b(10);
  for (int i = 1; i <= 4; ++i) b.resource("M" + std::to_string(i), "machine");
  for (int i = 1; i <= 12; ++i) b.resource("T" + std::to_string(i), "tool");
  b.part("P1");
  b.operation("O11").option("a", 40, {m23, t67}).option("b", 30, {{"M4"}, t67});
  b.operation("O12").option("a", 40, {m23, t67}).option("b", 30, {{"M4"}, t67});
  b.operation("O13").option("a", 20, {m234, t67});
  b.operation("O14").option("a", 12, {{"M1"}, {"T2"}}).option("b", 10, {m234, {"T2"}});
  b.part("P2");
  b.operation("O21").option("a", 10, {m234, {"T1"}}).option("b", 12, {{"M1"}, {"T1"}});
  b.operation("O22").option("a", 20, {m234, {"T12"}});
  b.operation("O23").option("a", 18, {m234, {"T6", "T7", "T11"}});
  b.part("P3");
  b.operation("O33").option("a", 15, {m234, t78});
  b.operation("O31").option("a", 20, {m234, t78});
  b.operation("O32").option("a", 20, {m234, t78});
  b.part("P4");
  b.operation("O42").option("b", 18, {{"M3"}, {"T9", "T10"}}).option("a", 21, {{"M2"}, {"T9", "T10"}});
  b.operation("O44").option("a", 27, {m23, {"T1", "T3"}});
  b.operation("O41").option("a", 15, {m23, {"T6", "T9"}});
  b.operation("O43").option("b", 25, {{"M3"}, {"T3"}}).option("a", 18, {{"M2"}, {"T3"}});
  return b.build();
}

/// Two single-slot parts that both need the only machine.
inline ProblemInstance builtin_two_parts_one_machine() {
  InstanceBuilder b(10);
  b.resource("M1", "machine");
  b.part("P1").operation("O1").option("a", 10, {{"M1"}});
  b.part("P2").operation("O1").option("a", 10, {{"M1"}});
  return b.build();
}

// ---------------------------------------------------------------------------
// Job shop: five machines, twelve tools, four parts, slot length 15.

struct JobShopOperation {
  std::vector<std::string> machines;
  std::vector<std::string> tools;
  /// Processing time on each machine, same order.
  std::vector<double> times;
};

/// Per part, operations "O1".."On" as tabulated.
inline std::vector<std::vector<JobShopOperation>> jobshop_tables() {
  const std::vector<std::string> A{"M1", "M2", "M3", "M4"}, B{"M2", "M3", "M4"}, C{"M2", "M3", "M4", "M5"},
      M24{"M2", "M4"}, M124{"M1", "M2", "M4"}, T678{"T6", "T7", "T8"}, T67{"T6", "T7"}, T78{"T7", "T8"},
      T234{"T2", "T3", "T4"};
  std::vector<std::vector<JobShopOperation>> p(4);
  p[0] = {
      {B, T678, {40, 40, 30}},          {B, T678, {40, 40, 30}},           {B, T678, {20, 20, 15}},
      {A, {"T2"}, {12, 10, 10, 7.5}},   {B, T67, {35, 35, 26.25}},         {B, T78, {15, 15, 11.25}},
      {B, T78, {30, 30, 22.5}},         {A, T234, {21.6, 18, 18, 13.5}},   {B, {"T9"}, {10, 10, 7.5}},
      {C, {"T10"}, {10, 10, 7.5, 12}},  {B, T78, {15, 15, 11.25}},         {A, T234, {48, 40, 40, 30}},
      {B, {"T9"}, {25, 25, 18.75}},     {C, {"T10"}, {25, 25, 18.75, 30}}, {A, {"T1"}, {26.4, 22, 22, 16.5}},
      {B, {"T5"}, {20, 20, 15}},        {B, T78, {16, 16, 12}},            {B, T67, {35, 35, 26.25}},
      {B, {"T9"}, {12, 12, 9}},         {C, {"T10"}, {12, 12, 9, 14.4}},
  };
  p[1] = {
      {A, {"T1"}, {12, 10, 10, 7.5}},   {B, {"T12"}, {20, 20, 15}},          {B, {"T5", "T6", "T11"}, {18, 18, 13.5}},
      {B, T678, {16, 16, 12}},          {B, T678, {15, 15, 11.25}},          {A, {"T2"}, {30, 25, 25, 18.75}},
      {B, {"T9"}, {25, 25, 18.75}},     {A, {"T1"}, {14.4, 12, 12, 9}},      {B, T678, {15, 15, 11.25}},
      {A, {"T1"}, {9.6, 8, 8, 6}},      {B, T678, {10, 10, 7.5}},            {B, T678, {10, 10, 7.5}},
      {A, {"T1"}, {9.6, 8, 8, 6}},      {B, T678, {16, 16, 12}},             {A, {"T1"}, {9.6, 8, 8, 6}},
      {A, T678, {36, 30, 30, 22.5}},
  };
  p[2] = {
      {B, T678, {20, 15, 20}},
      {B, T678, {20, 15, 20}},
      {B, T678, {15, 15, 11.25}},
      {A, {"T2"}, {15, 15, 11.25, 18}},
      {B, T678, {15, 15, 11.25}},
      {B, T78, {15, 15, 11.25}},
      {B, {"T7", "T8", "T11"}, {15, 15, 11.25}},
      {B, {"T6", "T7", "T8", "T11"}, {25, 25, 18.75}},
      {A, T234, {30, 25, 25, 18.75}},
      {B, {"T9"}, {20, 20, 15}},
      {C, {"T10"}, {20, 20, 15, 24}},
      {A, {"T1"}, {9.6, 8, 8, 6}},
      {B, {"T5"}, {8, 8, 6}},
      {A, {"T9"}, {6, 5, 5, 3.75}},
  };
  p[3] = {
      {M24, {"T6", "T9"}, {12, 12}}, {M24, {"T9", "T10"}, {21, 21}}, {M24, {"T9"}, {18, 18}},
      {M24, {"T1", "T9"}, {27, 27}}, {M124, {"T2"}, {20, 20, 20}},   {M24, {"T1", "T9"}, {18, 18}},
      {M124, {"T2"}, {20, 20, 20}},
  };
  return p;
}

/// Operation ids per part, in processing order.
using SequenceOverride = std::map<std::string, std::vector<std::string>>;

inline SequenceOverride jobshop_default_sequence() {
  SequenceOverride seq;
  for (int x : {1, 2, 3, 5, 6, 11, 18, 4, 7, 12, 13, 14, 15, 16, 17, 8, 9, 10, 19, 20})
    seq["P1"].push_back("O" + std::to_string(x));
  const int counts[] = {0, 16, 14, 7};
  for (int p = 1; p < 4; ++p)
    for (int j = 1; j <= counts[p]; ++j) seq["P" + std::to_string(p + 1)].push_back("O" + std::to_string(j));
  return seq;
}

/// Job-shop instance. Machines whose times round up to the same slot count
/// form one option (labelled a, b, ... by first appearance) whose duration
/// is the longest of their times. The lite variant drops the tool groups.
inline ProblemInstance builtin_jobshop(const SequenceOverride& sequence = jobshop_default_sequence(),
                                       bool lite = false) {
  constexpr double kSlot = 15;
  const auto tables = jobshop_tables();
  InstanceBuilder b(kSlot);
  for (int i = 1; i <= 5; ++i) b.resource("M" + std::to_string(i), "machine");
  if (!lite)
    for (int i = 1; i <= 12; ++i) b.resource("T" + std::to_string(i), "tool");
  for (std::size_t p = 0; p < tables.size(); ++p) {
    const std::string pid = "P" + std::to_string(p + 1);
    auto it = sequence.find(pid);
    if (it == sequence.end()) throw ParseError("sequence override has no entry for part " + pid);
    std::vector<std::string> order = it->second;
    std::set<std::string> all, given(order.begin(), order.end());
    for (std::size_t j = 1; j <= tables[p].size(); ++j) all.insert("O" + std::to_string(j));
    std::string missing, unknown;
    for (const auto& id : all)
      if (!given.count(id)) missing += (missing.empty() ? "" : ", ") + id;
    for (const auto& id : given)
      if (!all.count(id)) unknown += (unknown.empty() ? "" : ", ") + id;
    if (!missing.empty()) throw ParseError("sequence override for " + pid + " omits " + missing);
    if (!unknown.empty()) throw ParseError("sequence override for " + pid + " names unknown " + unknown);
    if (given.size() != order.size()) throw ParseError("sequence override for " + pid + " repeats an operation");

    b.part(pid);
    for (const auto& oid : order) {
      const JobShopOperation& op = tables[p][std::stoi(oid.substr(1)) - 1];
      b.operation(oid);
      std::vector<std::pair<int, std::pair<std::vector<std::string>, double>>> groups;
      for (std::size_t m = 0; m < op.machines.size(); ++m) {
        const int s = duration_to_slots(op.times[m], kSlot);
        auto g = std::find_if(groups.begin(), groups.end(), [&](const auto& x) { return x.first == s; });
        if (g == groups.end()) {
          groups.push_back({s, {{op.machines[m]}, op.times[m]}});
        } else {
          g->second.first.push_back(op.machines[m]);
          g->second.second = std::max(g->second.second, op.times[m]);
        }
      }
      for (std::size_t k = 0; k < groups.size(); ++k) {
        std::vector<std::vector<std::string>> rg{groups[k].second.first};
        if (!lite) rg.push_back(op.tools);
        b.option(std::string(1, static_cast<char>('a' + k)), groups[k].second.second, rg);
      }
    }
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Random instances

struct GeneratorParams {
  int min_parts = 2, max_parts = 4;
  int min_ops = 1, max_ops = 4;
  int min_options = 1, max_options = 2;
  /// 1 = machine group only, 2 = machine and tool groups.
  int min_groups = 1, max_groups = 2;
  int machines = 4, tools = 4;
  int min_group_size = 1, max_group_size = 2;
  int min_slots = 1, max_slots = 3;
  double slot_length = 10;
  std::uint64_t seed = 1;
};

inline void check_params(const GeneratorParams& g) {
  auto range = [](int lo, int hi, int floor, const char* name) {
    if (lo < floor || hi < lo)
      throw DomainError(std::string("invalid generator range for ") + name + ": [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
  };
  range(g.min_parts, g.max_parts, 1, "parts");
  range(g.min_ops, g.max_ops, 1, "operations");
  range(g.min_options, g.max_options, 1, "options");
  range(g.min_groups, g.max_groups, 1, "groups");
  range(g.min_group_size, g.max_group_size, 1, "group size");
  range(g.min_slots, g.max_slots, 1, "slots");
  if (g.max_groups > 2) throw DomainError("at most two groups (machine, tool) per option");
  if (!(g.slot_length > 0)) throw DomainError("slot_length must be positive");
  if (g.machines < g.max_group_size)
    throw DomainError("machine pool of " + std::to_string(g.machines) + " is smaller than group size " +
                      std::to_string(g.max_group_size));
  if (g.max_groups == 2 && g.tools < g.max_group_size)
    throw DomainError("tool pool of " + std::to_string(g.tools) + " is smaller than group size " +
                      std::to_string(g.max_group_size));
}

/// Same params and seed give the same instance.
inline ProblemInstance generate_random(const GeneratorParams& g) {
  check_params(g);
  std::mt19937_64 rng(g.seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto sample = [&](const std::string& prefix, int pool, int k) {
    std::vector<int> ids(pool);
    for (int i = 0; i < pool; ++i) ids[i] = i + 1;
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(k);
    std::sort(ids.begin(), ids.end());
    std::vector<std::string> out;
    for (int i : ids) out.push_back(prefix + std::to_string(i));
    return out;
  };
  static constexpr double kFractions[] = {0.25, 0.5, 0.75, 1.0};

  InstanceBuilder b(g.slot_length);
  for (int i = 1; i <= g.machines; ++i) b.resource("M" + std::to_string(i), "machine");
  if (g.max_groups == 2)
    for (int i = 1; i <= g.tools; ++i) b.resource("T" + std::to_string(i), "tool");
  const int parts = uni(g.min_parts, g.max_parts);
  for (int p = 1; p <= parts; ++p) {
    b.part("P" + std::to_string(p));
    const int ops = uni(g.min_ops, g.max_ops);
    for (int j = 1; j <= ops; ++j) {
      b.operation("O" + std::to_string(j));
      const int nopt = uni(g.min_options, g.max_options);
      for (int k = 0; k < nopt; ++k) {
        const int slots = uni(g.min_slots, g.max_slots);
        const double units = (slots - 1 + kFractions[uni(0, 3)]) * g.slot_length;
        std::vector<std::vector<std::string>> groups;
        groups.push_back(sample("M", g.machines, uni(g.min_group_size, g.max_group_size)));
        if (uni(g.min_groups, g.max_groups) == 2)
          groups.push_back(sample("T", g.tools, uni(g.min_group_size, g.max_group_size)));
        b.option(std::string(1, static_cast<char>('a' + k)), units, groups);
      }
    }
  }
  return b.build();
}

}  // namespace ppsched
