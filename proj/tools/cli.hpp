// Copyright 2026 The csgq Authors
//
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

#pragma once

// Command-line front end: gen, solve, export, analyze, bench.
//
// Exit codes: 0 success, 2 configuration/input error, 3 resource limit,
// 4 infeasible instance. Failures print one JSON line on stderr:
//   {"error":"<kind>","message":"..."}

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "csgq/csgq.hpp"

namespace csgq::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kResourceLimit = 3,
  kInfeasible = 4,
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::resource_limit: return kResourceLimit;
    case ErrorKind::infeasible: return kInfeasible;
    default: return kConfigError;
  }
}

struct AgentRange {
  int lo = 0;
  int hi = 0;
};

/// "N" or "A..B".
inline AgentRange parse_agent_range(const std::string& text) {
  AgentRange r;
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string a = text.substr(0, dots);
      const std::string b = text.substr(dots + 2);
      r.lo = std::stoi(a, &used);
      if (used != a.size()) throw std::invalid_argument(text);
      r.hi = std::stoi(b, &used);
      if (used != b.size()) throw std::invalid_argument(text);
    }
  } catch (const std::exception&) {
    fail(ErrorKind::config, "--agents expects N or A..B, got '" + text + "'");
  }
  if (r.lo < 1 || r.hi < r.lo) fail(ErrorKind::config, "--agents range '" + text + "' is empty");
  return r;
}

inline std::vector<DistributionKind> parse_distribution_list(const std::vector<std::string>& names) {
  std::vector<DistributionKind> out;
  for (const auto& name : names) {
    if (name == "all") {
      out.assign(std::begin(kAllDistributions), std::end(kAllDistributions));
      return out;
    }
    out.push_back(parse_distribution(name));
  }
  if (out.empty()) fail(ErrorKind::config, "no distribution given");
  return out;
}

struct Options {
  std::string agents;
  std::vector<std::string> dists{"normal"};
  std::uint64_t seed = 0;
  int seeds = 1;
  std::string method;
  std::vector<std::string> methods;
  std::optional<double> lambda;
  std::optional<int> p;
  int p_max = 12;
  std::vector<int> p_list;
  std::int64_t shots = kDefaultShots;
  std::string out;
  std::string format;
  std::string game_path;
  std::string circuit_path;
  std::string s_mode = "min";
  std::vector<CoalitionIndex> exclude;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) fail(ErrorKind::config, "cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

inline CoalitionGame input_game(const Options& o) {
  if (!o.game_path.empty()) return load_game(o.game_path);
  if (o.agents.empty()) fail(ErrorKind::config, "give --game PATH or --agents N");
  const auto range = parse_agent_range(o.agents);
  if (range.lo != range.hi) fail(ErrorKind::config, "this command takes a single agent count");
  const auto kinds = parse_distribution_list(o.dists);
  if (kinds.size() != 1) fail(ErrorKind::config, "this command takes a single distribution");
  return generate_game(range.lo, kinds.front(), o.seed);
}

/// Optimal value by the subset dynamic programme; used to grade QAOA and SA.
inline bool matches(double value, double reference) {
  return std::fabs(value - reference) <= 1e-9 * std::max(1.0, std::fabs(reference));
}

struct SolveOutcome {
  SolveReport report;
  std::optional<QaoaResult> qaoa;
  std::optional<Circuit> circuit;
};

inline SolveOutcome solve_with(const std::string& method, const CoalitionGame& game, const Options& o) {
  SolveOutcome out;
  const bool uses_qubo = method == "qubo-brute" || method == "sa" || method == "qaoa";
  if (!uses_qubo && !o.exclude.empty()) {
    fail(ErrorKind::config, "--exclude applies to the QUBO-based methods only");
  }
  if (method == "enum") {
    out.report = solve_enum(game);
    return out;
  }
  if (method == "dp") {
    out.report = solve_dp(game);
    return out;
  }
  if (!uses_qubo) fail(ErrorKind::config, "unknown method '" + method + "'");

  const auto bilp = build_bilp(game, o.exclude);
  const auto qubo = build_qubo(bilp, o.lambda);
  if (method == "qubo-brute") {
    out.report = solve_qubo_exhaustive(qubo, bilp);
    return out;
  }
  if (method == "sa") {
    out.report = solve_qubo_sa(qubo, bilp, default_schedule(bilp, o.seed));
    return out;
  }

  detail::Stopwatch clock;
  const auto ising = qubo_to_ising(qubo);
  QaoaConfig config;
  config.shots = o.shots;
  QaoaResult chosen;
  std::optional<int> found_p;
  if (o.p) {
    chosen = optimize(ising, *o.p, config, o.seed);
  } else {
    auto search = search_layers(ising, o.p_max, config, o.seed);
    found_p = search.found_p;
    chosen = std::move(search.runs.back());
  }
  const auto x = bits_from_mask(chosen.best_state, qubo.size());
  const auto decoded = decode_solution(x, bilp);
  SolveReport& r = out.report;
  r.method = "qaoa";
  r.best_x = x;
  r.feasible = decoded.feasible;
  r.best_cs = decoded.cs.canonical();
  r.best_value = decoded.feasible ? detail::selected_value(bilp, x) : 0.0;
  const auto p = static_cast<std::int64_t>(chosen.best_params.layers());
  const auto s = static_cast<std::int64_t>(interaction_count(qubo));
  r.metadata["p"] = p;
  r.metadata["s"] = s;
  r.metadata["m"] = static_cast<std::int64_t>(qubo.size());
  r.metadata["lambda"] = qubo.lambda;
  r.metadata["shots"] = chosen.shots;
  r.metadata["seed"] = static_cast<std::int64_t>(o.seed);
  r.metadata["expectation"] = chosen.expectation;
  r.metadata["energy"] = qubo_energy(qubo, x);
  r.metadata["constant"] = qubo.constant;
  r.metadata["converged"] = chosen.converged;
  r.metadata["gates"] = static_cast<std::int64_t>(build_circuit(ising, chosen.best_params).gates.size());
  if (!o.p) r.metadata["optimal_p_found"] = found_p.has_value();
  out.circuit = build_circuit(ising, chosen.best_params);
  out.qaoa = std::move(chosen);
  r.wall_ms = clock.elapsed_ms();
  return out;
}

inline Json outcome_to_json(const SolveOutcome& outcome) {
  Json j = report_to_json(outcome.report);
  if (outcome.qaoa) {
    auto timing = j["timing"];
    j.erase("timing");
    j["qaoa"] = qaoa_result_to_json(*outcome.qaoa);
    j["timing"] = std::move(timing);
  }
  return j;
}

inline int cmd_gen(const Options& o, std::ostream& stdout_stream) {
  const auto game = input_game(o);
  Output out(o.out, stdout_stream);
  out.stream() << game_to_json(game).dump(2) << '\n';
  return kSuccess;
}

inline int cmd_solve(const Options& o, std::ostream& stdout_stream) {
  if (o.method.empty()) fail(ErrorKind::config, "--method is required");
  const auto game = input_game(o);
  const auto outcome = solve_with(o.method, game, o);
  if (!o.circuit_path.empty()) {
    if (!outcome.circuit) fail(ErrorKind::config, "--circuit applies to --method qaoa only");
    Output circuit_out(o.circuit_path, stdout_stream);
    write_circuit(circuit_out.stream(), *outcome.circuit);
  }
  Output out(o.out, stdout_stream);
  out.stream() << outcome_to_json(outcome).dump(2) << '\n';
  return kSuccess;
}

inline int cmd_export(const Options& o, std::ostream& stdout_stream) {
  const auto game = input_game(o);
  const auto bilp = build_bilp(game, o.exclude);
  const auto qubo = build_qubo(bilp, o.lambda);
  Output out(o.out, stdout_stream);
  if (o.format == "qubo-json") {
    out.stream() << qubo_to_json(qubo, &bilp).dump(2) << '\n';
  } else if (o.format == "qubo-text") {
    write_qubo_text(out.stream(), qubo);
  } else if (o.format == "ising-json") {
    out.stream() << ising_to_json(qubo_to_ising(qubo)).dump(2) << '\n';
  } else {
    fail(ErrorKind::config, "unknown --format '" + o.format + "'");
  }
  return kSuccess;
}

inline int cmd_analyze(const Options& o, std::ostream& stdout_stream) {
  const auto range = parse_agent_range(o.agents.empty() ? "2..20" : o.agents);
  const auto p_list = o.p_list.empty() ? default_layer_sweep() : o.p_list;
  const auto rows = complexity_table(range.lo, range.hi, p_list, parse_sparsity_mode(o.s_mode));
  Output out(o.out, stdout_stream);
  write_complexity_csv(out.stream(), rows);
  return kSuccess;
}

inline int cmd_bench(const Options& o, std::ostream& stdout_stream) {
  namespace fs = std::filesystem;
  const auto range = parse_agent_range(o.agents.empty() ? "2..4" : o.agents);
  const auto kinds = parse_distribution_list(o.dists);
  auto methods = o.methods;
  if (methods.empty()) methods = {o.method.empty() ? "sa" : o.method};
  if (o.seeds < 1) fail(ErrorKind::config, "--seeds must be positive");
  const fs::path dir = o.out.empty() ? fs::path("bench-out") : fs::path(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::config, "cannot create '" + dir.string() + "'");

  std::ofstream summary(dir / "summary.csv", std::ios::binary);
  if (!summary) fail(ErrorKind::config, "cannot write the bench summary");
  summary << "method,dist,n,seed,best_value,dp_value,optimal,feasible,p,wall_ms\n";
  std::size_t cells = 0;
  for (const auto& method : methods) {
    for (const auto kind : kinds) {
      for (int n = range.lo; n <= range.hi; ++n) {
        for (int k = 0; k < o.seeds; ++k) {
          Options cell = o;
          cell.seed = o.seed + static_cast<std::uint64_t>(k);
          const auto game = generate_game(n, kind, cell.seed);
          const auto outcome = solve_with(method, game, cell);
          const double reference = solve_dp(game).best_value;
          const std::string name = method + "-" + std::string(to_string(kind)) + "-n" +
                                   std::to_string(n) + "-seed" + std::to_string(cell.seed) + ".json";
          std::ofstream file(dir / name, std::ios::binary);
          file << outcome_to_json(outcome).dump(2) << '\n';
          const auto& r = outcome.report;
          std::string p;
          if (auto it = r.metadata.find("p"); it != r.metadata.end()) {
            p = std::to_string(std::get<std::int64_t>(it->second));
          }
          summary << method << ',' << to_string(kind) << ',' << n << ',' << cell.seed << ','
                  << detail::format_real(r.best_value) << ',' << detail::format_real(reference) << ','
                  << (r.feasible && matches(r.best_value, reference)) << ',' << r.feasible << ','
                  << p << ',' << detail::format_real(r.wall_ms) << '\n';
          summary.flush();
          ++cells;
        }
      }
    }
  }
  stdout_stream << Json{{"cells", cells}, {"out", dir.string()}}.dump() << '\n';
  return kSuccess;
}

inline void report_error(std::ostream& err, std::string_view kind, const std::string& message) {
  err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

/// Parses `args` (without the program name) and runs one command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coalition structure generation through QUBO/Ising reformulation", "csgq"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_game_flags = [&](CLI::App* sub) {
    sub->add_option("--agents", o.agents, "agent count N (or A..B for analyze/bench)");
    sub->add_option("--dist", o.dists, "distribution name, or 'all'")->delimiter(',');
    sub->add_option("--seed", o.seed, "seed (default 0)");
    sub->add_option("--game", o.game_path, "read the game from a JSON file instead");
    sub->add_option("--out", o.out, "output path (stdout when omitted)");
  };

  auto* gen = app.add_subcommand("gen", "sample a benchmark game");
  add_game_flags(gen);

  auto* solve = app.add_subcommand("solve", "solve a game and print a report");
  add_game_flags(solve);
  solve->add_option("--method", o.method, "enum | dp | qubo-brute | sa | qaoa")->required();
  solve->add_option("--lambda", o.lambda, "penalty (default 1 + 2 sum|v|)");
  solve->add_option("--p", o.p, "fixed QAOA layer count");
  solve->add_option("--p-max", o.p_max, "largest layer count tried by the p search (default 12)");
  solve->add_option("--shots", o.shots, "measurement shots (default 1024)");
  solve->add_option("--exclude", o.exclude, "forbidden coalition indices")->delimiter(',');
  solve->add_option("--circuit", o.circuit_path, "write the optimized QAOA circuit here");

  auto* exp = app.add_subcommand("export", "write the QUBO or Ising instance of a game");
  add_game_flags(exp);
  exp->add_option("--format", o.format, "qubo-json | qubo-text | ising-json")->required();
  exp->add_option("--lambda", o.lambda, "penalty (default 1 + 2 sum|v|)");
  exp->add_option("--exclude", o.exclude, "forbidden coalition indices")->delimiter(',');

  auto* analyze = app.add_subcommand("analyze", "gate-count versus classical cost table (CSV)");
  analyze->add_option("--agents", o.agents, "agent range A..B (default 2..20)");
  analyze->add_option("--p", o.p_list, "layer counts (default 1,10,25,50)")->delimiter(',');
  analyze->add_option("--s-mode", o.s_mode, "min | max | actual (default min)");
  analyze->add_option("--out", o.out, "output path (stdout when omitted)");

  auto* bench = app.add_subcommand("bench", "run methods over distributions x agents x seeds");
  bench->add_option("--methods", o.methods, "comma-separated methods")->delimiter(',');
  bench->add_option("--method", o.method, "single method");
  bench->add_option("--agents", o.agents, "agent range A..B (default 2..4)");
  bench->add_option("--dists", o.dists, "distributions, or 'all'")->delimiter(',');
  bench->add_option("--dist", o.dists, "alias of --dists")->delimiter(',');
  bench->add_option("--seed", o.seed, "base seed (default 0)");
  bench->add_option("--seeds", o.seeds, "seeds per cell (default 1)");
  bench->add_option("--lambda", o.lambda, "penalty (default 1 + 2 sum|v|)");
  bench->add_option("--p", o.p, "fixed QAOA layer count");
  bench->add_option("--p-max", o.p_max, "largest layer count tried by the p search");
  bench->add_option("--shots", o.shots, "measurement shots (default 1024)");
  bench->add_option("--out", o.out, "output directory (default bench-out)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    report_error(err, "config", e.what());
    return kConfigError;
  }

  try {
    if (o.shots < 1) fail(ErrorKind::config, "--shots must be positive");
    if (o.p && *o.p < 1) fail(ErrorKind::config, "--p must be positive");
    if (*gen) return cmd_gen(o, out);
    if (*solve) return cmd_solve(o, out);
    if (*exp) return cmd_export(o, out);
    if (*analyze) return cmd_analyze(o, out);
    if (*bench) return cmd_bench(o, out);
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return 1;
  }
  return kConfigError;
}

}  // namespace csgq::cli
