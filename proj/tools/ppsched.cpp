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

// ppsched command-line driver.
//
//   ppsched stats  --instance F [--edges OUT]
//   ppsched solve  --instance F --solver S --arrangement A --lw L [--report R.json] [--gantt G.svg|G.txt]
//   ppsched oracle --instance F
//   ppsched gen    --builtin NAME --out F | --seed N --count K --out-dir D
//   ppsched bench  --instances DIR --all-heuristics --lw-sweep --csv OUT
//   ppsched gantt  --instance F --solver S --arrangement A --lw L --out G.svg|G.txt
//
// Exit status: 0 success, 1 usage or input error, 2 infeasible run or limit hit.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ppsched/ppsched.hpp"

namespace fs = std::filesystem;
using namespace ppsched;

namespace {

#ifndef PPSCHED_FIXTURE_DIR
#define PPSCHED_FIXTURE_DIR "fixtures"
#endif

constexpr int kExitUsage = 1;
constexpr int kExitLimit = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string fixture_dir() {
  if (const char* env = std::getenv("PPS_FIXTURES"); env && *env) return env;
  return PPSCHED_FIXTURE_DIR;
}

// Plain paths are tried first, then relative to the fixture directory.
std::string resolve_instance_path(const std::string& path) {
  if (fs::exists(path)) return path;
  const fs::path alt = fs::path(fixture_dir()) / path;
  if (fs::path(path).is_relative() && fs::exists(alt)) return alt.string();
  const fs::path base = fs::path(fixture_dir()) / fs::path(path).filename();
  if (fs::exists(base)) return base.string();
  throw ParseError("instance file '" + path + "' not found (fixture directory: " + fixture_dir() + ")");
}

ProblemInstance builtin_by_name(const std::string& name) {
  if (name == "example") return builtin_example();
  if (name == "jobshop") return builtin_jobshop();
  if (name == "jobshop_lite") return builtin_jobshop(jobshop_default_sequence(), true);
  if (name == "two_parts_one_machine") return builtin_two_parts_one_machine();
  throw UsageError("unknown builtin '" + name + "' (example, jobshop, jobshop_lite, two_parts_one_machine)");
}

struct InstanceArg {
  std::string path;
  std::string builtin;

  void add(CLI::App* cmd) {
    auto* i = cmd->add_option("--instance,-i", path, "instance JSON file");
    auto* b = cmd->add_option("--builtin", builtin, "built-in instance name");
    i->excludes(b);
  }

  ProblemInstance load() const {
    if (!builtin.empty()) return builtin_by_name(builtin);
    if (path.empty()) throw UsageError("one of --instance or --builtin is required");
    return load_instance(resolve_instance_path(path));
  }
};

struct ConfigArgs {
  std::string solver = "exact";
  std::string arrangement;
  std::string lw = "median";
  std::string chain = "shortest";
  bool strict = false;
  double epsilon = kDefaultEpsilon;
  std::uint64_t amisl_cap = SolverOptions{}.amisl_cap;

  void add(CLI::App* cmd) {
    cmd->add_option("--solver,-s", solver, "exact | amisl | gwmin | gwmin2")->capture_default_str();
    cmd->add_option("--arrangement,-a", arrangement, "mwis_a1..a3 | amisl_a1..a7 (default: *_a1 for the solver)");
    cmd->add_option("--lw", lw, "median | high | low")->capture_default_str();
    cmd->add_option("--chain", chain, "remaining-slot chain: shortest | longest")->capture_default_str();
    cmd->add_flag("--strict-lock", strict, "keep an operation's first resources until it ends");
    cmd->add_option("--epsilon", epsilon, "factor of unaddressed nodes")->capture_default_str();
    cmd->add_option("--amisl-cap", amisl_cap, "maximal-set enumeration cap")->capture_default_str();
  }

  HeuristicConfig build() const {
    HeuristicConfig c;
    c.solver = parse_solver(solver);
    c.arrangement = arrangement.empty() ? (c.solver == SolverId::kAmisl ? Arrangement::kAmislA1 : Arrangement::kMwisA1)
                                        : parse_arrangement(arrangement);
    c.lw = parse_lw_level(lw);
    const std::string ch = lowercase(chain);
    if (ch == "shortest") {
      c.chain = ChainRule::kShortest;
    } else if (ch == "longest") {
      c.chain = ChainRule::kLongest;
    } else {
      throw ConfigError("unknown chain rule '" + chain + "' (expected shortest or longest)");
    }
    c.lock = strict ? ResourceLock::kStrict : ResourceLock::kFlexible;
    c.epsilon = epsilon;
    c.solver_options.amisl_cap = amisl_cap;
    validate_config(c);
    return c;
  }
};

void make_parent(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

void write_file(const std::string& path, const std::string& text) {
  make_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_gantt(const ProblemInstance& inst, const Schedule& s, const std::string& path) {
  if (ends_with(path, ".svg")) {
    write_file(path, render_gantt_svg(inst, s));
  } else if (ends_with(path, ".txt")) {
    write_file(path, render_gantt_text(inst, s));
  } else {
    throw UsageError("gantt output must end in .svg or .txt: '" + path + "'");
  }
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_stats(const InstanceArg& ia, const std::string& edges_out) {
  const ProblemInstance inst = ia.load();
  const ConflictGraph g = build_conflict_graph(inst);
  const InstanceStats s = graph_stats(g, inst);
  const auto& c = g.census();
  std::cout << "nodes=" << s.nodes << " edges=" << s.edges << " parts=" << s.parts << " tasks=" << s.tasks
            << " unit_tasks=" << g.unit_tasks().size() << " density=" << fixed(s.density, 6)
            << " options=" << s.options << " ici=" << fixed(s.ici, 3) << "\n";
  std::cout << "census rule1=" << c[1] << " rule2=" << c[2] << " rule3=" << c[3] << " rule4=" << c[4] << "\n";
  if (!edges_out.empty()) {
    std::ostringstream os;
    write_edge_list(os, g);
    write_file(edges_out, os.str());
    write_file(edges_out + ".labels.json", node_labels_json(g, inst).dump(2) + "\n");
  }
  return 0;
}

int cmd_solve(const InstanceArg& ia, const ConfigArgs& ca, const std::string& report, const std::string& gantt,
              const std::string& weights_csv, bool trace) {
  const ProblemInstance inst = ia.load();
  const HeuristicConfig cfg = ca.build();
  StepOptions sopt;
  sopt.collect_weights = !weights_csv.empty();
  const RunResult r = schedule(inst, cfg, sopt);
  if (trace)
    for (const auto& line : r.trace) std::cout << line << "\n";
  std::cout << "makespan_slots=" << r.makespan_slots() << " makespan_units=" << r.schedule.makespan_units(inst.slot_length)
            << " fallbacks=" << r.fallbacks << " heuristic=" << heuristic_label(cfg) << " lw=" << to_string(cfg.lw)
            << "\n";
  if (!report.empty()) write_file(report, run_report_json(inst, r).dump(2) + "\n");
  if (!gantt.empty()) write_gantt(inst, r.schedule, gantt);
  if (!weights_csv.empty()) {
    std::string out = csv_row({"slot", "unit_task", "nodes", "W_length", "W_connection", "W_total", "factor"});
    for (const auto& rec : r.slots)
      for (const auto& row : rec.weight_rows) {
        std::vector<std::string> fields{std::to_string(rec.slot + 1)};
        std::stringstream ss(row);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        out += csv_row(fields);
      }
    write_file(weights_csv, out);
  }
  return 0;
}

int cmd_oracle(const InstanceArg& ia, const OracleLimits& lim, bool show_certificate) {
  const ProblemInstance inst = ia.load();
  const OracleResult r = optimal_makespan(inst, lim);
  std::cout << (r.optimal ? "optimum_slots=" : "upper_bound_slots=") << r.slots
            << " states=" << r.states_expanded << " wall_ms=" << fixed(r.wall_ms, 1) << "\n";
  if (show_certificate) {
    for (std::size_t t = 0; t < r.certificate.slots.size(); ++t) {
      std::cout << "slot " << t + 1 << ":";
      for (const auto& e : r.certificate.slots[t]) {
        std::cout << ' ' << unit_task_label(inst, e.unit_task()) << '(';
        for (std::size_t k = 0; k < e.assignment.size(); ++k)
          std::cout << (k ? "," : "") << inst.resource_name(e.assignment[k]);
        std::cout << ')';
      }
      std::cout << "\n";
    }
  }
  return r.optimal ? 0 : kExitLimit;
}

struct GenArgs {
  std::string builtin;
  std::string out;
  std::string out_dir;
  std::string sequence;
  int count = 1;
  GeneratorParams params;
  std::vector<int> parts{2, 4}, ops{1, 4}, options{1, 2}, slots{1, 3}, group_size{1, 2};
};

int cmd_gen(GenArgs a) {
  if (!a.builtin.empty()) {
    if (a.out.empty()) throw UsageError("--builtin needs --out");
    ProblemInstance inst;
    if (!a.sequence.empty()) {
      if (a.builtin != "jobshop" && a.builtin != "jobshop_lite")
        throw UsageError("--sequence applies to the job-shop builtins only");
      std::ifstream in(a.sequence);
      if (!in) throw ParseError("cannot open sequence file '" + a.sequence + "'");
      SequenceOverride seq;
      try {
        seq = nlohmann::json::parse(in).get<SequenceOverride>();
      } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid sequence file: " + std::string(e.what()));
      }
      inst = builtin_jobshop(seq, a.builtin == "jobshop_lite");
    } else {
      inst = builtin_by_name(a.builtin);
    }
    make_parent(a.out);
    save_instance(inst, a.out);
    std::cout << a.out << " hash=" << std::hex << std::setw(16) << std::setfill('0') << content_hash(inst)
              << std::dec << "\n";
    return 0;
  }
  auto range = [](const std::vector<int>& v, int& lo, int& hi, const char* flag) {
    if (v.size() != 2) throw UsageError(std::string(flag) + " takes two values: MIN MAX");
    lo = v[0];
    hi = v[1];
  };
  GeneratorParams& g = a.params;
  range(a.parts, g.min_parts, g.max_parts, "--parts");
  range(a.ops, g.min_ops, g.max_ops, "--ops");
  range(a.options, g.min_options, g.max_options, "--options");
  range(a.slots, g.min_slots, g.max_slots, "--slots");
  range(a.group_size, g.min_group_size, g.max_group_size, "--group-size");
  if (a.count < 1) throw UsageError("--count must be positive");
  if (a.out_dir.empty() && (a.out.empty() || a.count != 1)) throw UsageError("use --out for one instance or --out-dir");
  const std::uint64_t seed0 = g.seed;
  for (int i = 0; i < a.count; ++i) {
    g.seed = seed0 + static_cast<std::uint64_t>(i);
    const ProblemInstance inst = generate_random(g);
    std::string path = a.out;
    if (!a.out_dir.empty()) {
      fs::create_directories(a.out_dir);
      std::ostringstream name;
      name << "rand_" << std::setw(4) << std::setfill('0') << i << "_s" << g.seed << ".json";
      path = (fs::path(a.out_dir) / name.str()).string();
    }
    save_instance(inst, path);
    std::cout << path << "\n";
  }
  return 0;
}

struct BenchArgs {
  std::string dir;
  std::string csv;
  bool all = false;
  bool lw_sweep = false;
  bool with_oracle = true;
  int jobs = 1;
  double oracle_seconds = 60;
  ConfigArgs single;
};

struct BenchCell {
  std::string instance;
  int inst_index = 0;
  HeuristicConfig cfg;
  int order = 0;
  std::optional<int> slots;
  double wall_ms = 0;
  std::string status = "ok";
};

int cmd_bench(const BenchArgs& a) {
  const std::string dir = a.dir.empty() ? fixture_dir() : a.dir;
  if (!fs::is_directory(dir)) throw ParseError("instance directory '" + dir + "' not found");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ParseError("no .json instances in '" + dir + "'");

  std::vector<HeuristicConfig> configs;
  const HeuristicConfig base = a.single.build();
  if (a.all) {
    for (SolverId s : {SolverId::kExact, SolverId::kAmisl, SolverId::kGwmin, SolverId::kGwmin2})
      for (const auto& info : kArrangements)
        if (heuristic_number(s, info.id)) {
          HeuristicConfig c = base;
          c.solver = s;
          c.arrangement = info.id;
          configs.push_back(c);
        }
  } else {
    configs.push_back(base);
  }
  std::vector<LengthWeightLevel> levels{base.lw};
  if (a.lw_sweep) levels = {LengthWeightLevel::kMedian, LengthWeightLevel::kHigh, LengthWeightLevel::kLow};

  std::vector<ProblemInstance> insts;
  for (const auto& f : files) insts.push_back(load_instance(f.string()));

  std::vector<BenchCell> cells;
  for (std::size_t i = 0; i < files.size(); ++i) {
    int order = 0;
    for (const auto& c : configs)
      for (auto lw : levels) {
        BenchCell cell;
        cell.instance = files[i].filename().string();
        cell.inst_index = static_cast<int>(i);
        cell.cfg = c;
        cell.cfg.lw = lw;
        cell.order = order++;
        cells.push_back(cell);
      }
  }
  std::vector<std::optional<int>> optimum(files.size());
  std::vector<std::string> oracle_status(files.size(), "skipped");

  // Tasks: oracle runs first (one per instance), then every cell.
  const std::size_t n_oracle = a.with_oracle ? files.size() : 0;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < n_oracle + cells.size();) {
      if (k < n_oracle) {
        OracleLimits lim;
        lim.max_seconds = a.oracle_seconds;
        const OracleResult r = optimal_makespan(insts[k], lim);
        if (r.optimal) optimum[k] = r.slots;
        oracle_status[k] = r.optimal ? "ok" : "limit";
        continue;
      }
      BenchCell& c = cells[k - n_oracle];
      try {
        const RunResult r = schedule(insts[c.inst_index], c.cfg);
        c.slots = r.makespan_slots();
        c.wall_ms = r.wall_ms;
      } catch (const ResourceLimitError&) {
        c.status = "limit";
      } catch (const InvariantError&) {
        c.status = "infeasible";
      }
    }
  };
  const int jobs = std::max(1, a.jobs);
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::sort(cells.begin(), cells.end(), [](const BenchCell& x, const BenchCell& y) {
    return std::tie(x.inst_index, x.order) < std::tie(y.inst_index, y.order);
  });

  auto error_field = [&](const BenchCell& c) -> std::string {
    const auto& opt = optimum[c.inst_index];
    if (!opt || !c.slots) return "";
    return fixed(error_rate(*c.slots, *opt), 2);
  };
  std::string out = csv_row({"instance", "heuristic", "lw", "slots", "optimum", "error_rate", "wall_ms", "status"});
  bool any_bad = false;
  for (std::size_t i = 0; i < cells.size();) {
    // Rows of one (instance, heuristic) are adjacent.
    std::size_t j = i;
    const BenchCell* best = nullptr;
    for (; j < cells.size() && cells[j].inst_index == cells[i].inst_index &&
           cells[j].cfg.solver == cells[i].cfg.solver && cells[j].cfg.arrangement == cells[i].cfg.arrangement;
         ++j) {
      const BenchCell& c = cells[j];
      if (c.status != "ok") any_bad = true;
      const auto& opt = optimum[c.inst_index];
      out += csv_row({c.instance, heuristic_label(c.cfg), to_string(c.cfg.lw), c.slots ? std::to_string(*c.slots) : "",
                      opt ? std::to_string(*opt) : "", error_field(c), fixed(c.wall_ms, 3), c.status});
      if (c.slots && (!best || *c.slots < *best->slots)) best = &c;
    }
    if (a.lw_sweep && best) {
      const auto& opt = optimum[best->inst_index];
      out += csv_row({best->instance, heuristic_label(best->cfg), "best", std::to_string(*best->slots),
                      opt ? std::to_string(*opt) : "", error_field(*best), fixed(best->wall_ms, 3), "ok"});
    }
    i = j;
  }
  if (a.csv.empty() || a.csv == "-") {
    std::cout << out;
  } else {
    write_file(a.csv, out);
    std::cout << "wrote " << cells.size() << " runs over " << files.size() << " instances to " << a.csv << "\n";
  }
  for (std::size_t i = 0; i < files.size(); ++i)
    if (a.with_oracle && oracle_status[i] != "ok")
      std::cerr << "note: oracle hit its limit on " << files[i].filename().string() << "\n";
  return any_bad ? kExitLimit : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slot-based process planning and scheduling on weighted conflict graphs"};
  app.require_subcommand(1);

  InstanceArg inst_arg;
  ConfigArgs cfg_args;

  auto* stats = app.add_subcommand("stats", "print instance and conflict-graph size figures");
  inst_arg.add(stats);
  std::string edges_out;
  stats->add_option("--edges", edges_out, "write the edge list here and node labels to <file>.labels.json");

  auto* solve = app.add_subcommand("solve", "schedule an instance with one heuristic");
  inst_arg.add(solve);
  cfg_args.add(solve);
  std::string report, gantt_out, weights_csv;
  bool trace = false;
  solve->add_option("--report", report, "write the JSON run report");
  solve->add_option("--gantt", gantt_out, "write a Gantt chart (.svg or .txt)");
  solve->add_option("--dump-weights", weights_csv, "write per-slot unit-task weights as CSV");
  solve->add_flag("--trace", trace, "print one line per slot");

  auto* oracle = app.add_subcommand("oracle", "compute the optimal slotted makespan");
  inst_arg.add(oracle);
  OracleLimits lim;
  bool certificate = false;
  oracle->add_option("--max-seconds", lim.max_seconds, "wall-time limit")->capture_default_str();
  oracle->add_option("--max-states", lim.max_states, "expanded-state limit")->capture_default_str();
  oracle->add_flag("--certificate", certificate, "print the optimal schedule");

  auto* gen = app.add_subcommand("gen", "write built-in or random instances");
  GenArgs ga;
  gen->add_option("--builtin", ga.builtin, "example | jobshop | jobshop_lite | two_parts_one_machine");
  gen->add_option("--sequence", ga.sequence, "JSON map part id -> operation ids (job-shop builtins)");
  gen->add_option("--out,-o", ga.out, "output file");
  gen->add_option("--out-dir", ga.out_dir, "output directory for --count instances");
  gen->add_option("--count", ga.count, "number of random instances")->capture_default_str();
  gen->add_option("--seed", ga.params.seed, "seed of the first instance")->capture_default_str();
  gen->add_option("--parts", ga.parts, "MIN MAX parts")->expected(2);
  gen->add_option("--ops", ga.ops, "MIN MAX operations per part")->expected(2);
  gen->add_option("--options", ga.options, "MIN MAX options per operation")->expected(2);
  gen->add_option("--slots", ga.slots, "MIN MAX slots per option")->expected(2);
  gen->add_option("--group-size", ga.group_size, "MIN MAX resources per group")->expected(2);
  gen->add_option("--machines", ga.params.machines, "machine pool size")->capture_default_str();
  gen->add_option("--tools", ga.params.tools, "tool pool size")->capture_default_str();
  gen->add_option("--slot-length", ga.params.slot_length, "time units per slot")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "run heuristics over a directory of instances");
  BenchArgs ba;
  bench->add_option("--instances", ba.dir, "directory of .json instances (default: fixture directory)");
  bench->add_option("--csv", ba.csv, "CSV output file, '-' for stdout");
  bench->add_flag("--all-heuristics", ba.all, "run every solver/arrangement pairing");
  bench->add_flag("--lw-sweep", ba.lw_sweep, "run median, high and low and add a best row");
  bench->add_option("--jobs,-j", ba.jobs, "worker threads")->capture_default_str();
  bench->add_option("--oracle-seconds", ba.oracle_seconds, "oracle time limit per instance")->capture_default_str();
  bench->add_flag("!--no-oracle", ba.with_oracle, "skip the optimum column");
  ba.single.add(bench);

  auto* gantt = app.add_subcommand("gantt", "render a heuristic or optimal schedule");
  inst_arg.add(gantt);
  cfg_args.add(gantt);
  std::string gantt_file;
  bool gantt_oracle = false;
  gantt->add_option("--out,-o", gantt_file, "output (.svg or .txt); text to stdout when omitted");
  gantt->add_flag("--oracle", gantt_oracle, "render the oracle's optimal schedule");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*stats) return cmd_stats(inst_arg, edges_out);
    if (*solve) return cmd_solve(inst_arg, cfg_args, report, gantt_out, weights_csv, trace);
    if (*oracle) return cmd_oracle(inst_arg, lim, certificate);
    if (*gen) return cmd_gen(ga);
    if (*bench) return cmd_bench(ba);
    if (*gantt) {
      const ProblemInstance inst = inst_arg.load();
      Schedule s;
      if (gantt_oracle) {
        s = optimal_makespan(inst).certificate;
      } else {
        s = schedule(inst, cfg_args.build()).schedule;
      }
      if (gantt_file.empty()) {
        std::cout << render_gantt_text(inst, s);
      } else {
        write_gantt(inst, s, gantt_file);
      }
      return 0;
    }
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const InvariantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
