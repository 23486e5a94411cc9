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

// JSON instance format:
//
//   { "slot_length": 10,
//     "resources": [ {"name": "M2", "category": "machine"}, ... ],   optional
//     "parts": [ { "id": "P1",
//                  "operations": [ { "id": "O11",
//                                    "position": 0,                  optional
//                                    "successors": ["O12"],          optional
//                                    "options": [ { "label": "a",
//                                                   "duration_units": 40,
//                                                   "groups": [["M2","M3"],["T6","T7"]] } ] } ] } ] }
//
// Without "resources" the catalog is inferred from the groups in order of
// first appearance; names starting with 'M' are machines, 'T' tools.

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "ppsched/model.hpp"

namespace ppsched {

inline std::string infer_category(const std::string& name) {
  if (!name.empty() && name[0] == 'M') return "machine";
  if (!name.empty() && name[0] == 'T') return "tool";
  return "other";
}

namespace internal {

inline const nlohmann::json& require(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::string require_string(const nlohmann::json& j, const char* key, const std::string& where) {
  const auto& v = require(j, key, where);
  if (!v.is_string()) throw ParseError(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace internal

inline ProblemInstance instance_from_json(const nlohmann::json& doc) {
  using internal::require;
  using internal::require_string;
  ProblemInstance inst;
  const auto& sl = require(doc, "slot_length", "instance");
  if (!sl.is_number()) throw ParseError("instance: slot_length must be a number");
  inst.slot_length = sl.get<double>();
  if (!(inst.slot_length > 0)) throw ParseError("instance: slot_length must be positive");

  std::map<std::string, ResourceIndex> index;
  const bool explicit_catalog = doc.contains("resources");
  if (explicit_catalog) {
    const auto& rs = doc.at("resources");
    if (!rs.is_array()) throw ParseError("instance: resources must be an array");
    for (const auto& r : rs) {
      ResourceId id;
      id.name = require_string(r, "name", "resource");
      id.category = r.contains("category") ? require_string(r, "category", "resource '" + id.name + "'")
                                           : infer_category(id.name);
      if (!index.emplace(id.name, static_cast<ResourceIndex>(inst.resources.size())).second)
        throw ParseError("duplicate resource '" + id.name + "'");
      inst.resources.push_back(std::move(id));
    }
  }

  const auto& parts = require(doc, "parts", "instance");
  if (!parts.is_array()) throw ParseError("instance: parts must be an array");
  for (const auto& pj : parts) {
    Part part;
    part.id = require_string(pj, "id", "part");
    const std::string pw = "part '" + part.id + "'";
    const auto& ops = require(pj, "operations", pw);
    if (!ops.is_array()) throw ParseError(pw + ": operations must be an array");
    std::vector<std::pair<long long, Operation>> staged;
    bool any_position = false;
    bool all_position = true;
    for (const auto& oj : ops) {
      Operation op;
      op.id = require_string(oj, "id", pw + " operation");
      const std::string ow = pw + " operation '" + op.id + "'";
      long long pos = static_cast<long long>(staged.size());
      if (oj.contains("position")) {
        if (!oj.at("position").is_number_integer()) throw ParseError(ow + ": position must be an integer");
        pos = oj.at("position").get<long long>();
        any_position = true;
      } else {
        all_position = false;
      }
      if (oj.contains("successors")) {
        for (const auto& s : oj.at("successors")) {
          if (!s.is_string()) throw ParseError(ow + ": successors must be strings");
          op.successors.push_back(s.get<std::string>());
        }
      }
      const auto& opts = require(oj, "options", ow);
      if (!opts.is_array()) throw ParseError(ow + ": options must be an array");
      for (const auto& xj : opts) {
        OptionSpec opt;
        opt.label = require_string(xj, "label", ow + " option");
        const std::string xw = ow + " option '" + opt.label + "'";
        const auto& du = require(xj, "duration_units", xw);
        if (!du.is_number()) throw ParseError(xw + ": duration_units must be a number");
        opt.duration_units = du.get<double>();
        if (!(opt.duration_units > 0)) throw ParseError(xw + ": non-positive duration");
        opt.duration_slots = duration_to_slots(opt.duration_units, inst.slot_length);
        const auto& groups = require(xj, "groups", xw);
        if (!groups.is_array() || groups.empty()) throw ParseError(xw + ": groups must be a non-empty array");
        for (const auto& gj : groups) {
          if (!gj.is_array() || gj.empty()) throw ParseError(xw + ": empty resource group");
          std::vector<ResourceIndex> g;
          for (const auto& rj : gj) {
            if (!rj.is_string()) throw ParseError(xw + ": resource names must be strings");
            const std::string name = rj.get<std::string>();
            auto it = index.find(name);
            if (it == index.end()) {
              if (explicit_catalog) throw ParseError(xw + ": unknown resource '" + name + "'");
              it = index.emplace(name, static_cast<ResourceIndex>(inst.resources.size())).first;
              inst.resources.push_back({infer_category(name), name});
            }
            g.push_back(it->second);
          }
          opt.groups.push_back(std::move(g));
        }
        op.options.push_back(std::move(opt));
      }
      staged.emplace_back(pos, std::move(op));
    }
    if (any_position && !all_position) throw ParseError(pw + ": position given for some operations only");
    if (any_position) {
      std::stable_sort(staged.begin(), staged.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t k = 0; k < staged.size(); ++k) {
        if (k > 0 && staged[k].first == staged[k - 1].first)
          throw ParseError(pw + ": duplicate operation position " + std::to_string(staged[k].first) +
                           " ('" + staged[k - 1].second.id + "', '" + staged[k].second.id + "')");
        if (staged[k].first != static_cast<long long>(k))
          throw ParseError(pw + ": operation positions must be 0.." + std::to_string(staged.size() - 1));
      }
    }
    for (auto& [pos, op] : staged) part.operations.push_back(std::move(op));
    inst.parts.push_back(std::move(part));
  }
  validate_instance(inst);
  return inst;
}

inline ProblemInstance load_instance_string(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

inline ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_instance_string(ss.str());
}

inline nlohmann::json instance_to_json(const ProblemInstance& inst) {
  nlohmann::json doc;
  doc["slot_length"] = inst.slot_length;
  auto& rs = doc["resources"] = nlohmann::json::array();
  for (const auto& r : inst.resources) rs.push_back({{"name", r.name}, {"category", r.category}});
  auto& parts = doc["parts"] = nlohmann::json::array();
  for (const auto& part : inst.parts) {
    nlohmann::json pj;
    pj["id"] = part.id;
    auto& ops = pj["operations"] = nlohmann::json::array();
    for (std::size_t j = 0; j < part.operations.size(); ++j) {
      const auto& op = part.operations[j];
      nlohmann::json oj;
      oj["id"] = op.id;
      oj["position"] = j;
      if (!op.successors.empty()) oj["successors"] = op.successors;
      auto& opts = oj["options"] = nlohmann::json::array();
      for (const auto& opt : op.options) {
        nlohmann::json xj;
        xj["label"] = opt.label;
        xj["duration_units"] = opt.duration_units;
        auto& groups = xj["groups"] = nlohmann::json::array();
        for (const auto& g : opt.groups) {
          auto names = nlohmann::json::array();
          for (ResourceIndex r : g) names.push_back(inst.resource_name(r));
          groups.push_back(std::move(names));
        }
        opts.push_back(std::move(xj));
      }
      ops.push_back(std::move(oj));
    }
    parts.push_back(std::move(pj));
  }
  return doc;
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string serialize_instance(const ProblemInstance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

inline void save_instance(const ProblemInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize_instance(inst);
}

/// 64-bit FNV-1a of the canonical serialization.
inline std::uint64_t content_hash(const ProblemInstance& inst) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize_instance(inst)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace ppsched
