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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "csgq/error.hpp"
#include "csgq/game.hpp"
#include "csgq/qaoa.hpp"
#include "csgq/solvers.hpp"
#include "csgq/transform.hpp"

namespace csgq {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::config, "cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::config, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) fail(ErrorKind::config, "failed writing '" + path + "'");
}

inline Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    fail(ErrorKind::parse, origin + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

// %.17g: enough digits to round-trip any double.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
T require(const Json& obj, const char* key, const std::string& what) {
  if (!obj.is_object() || !obj.contains(key)) {
    fail(ErrorKind::schema, what + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::schema, what + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Game files: {"n", "dist", "seed", "values": {"1": v, ..., "2^n-1": v}}

inline Json game_to_json(const CoalitionGame& game) {
  Json j;
  j["n"] = game.agents();
  j["dist"] = game.dist_label() ? Json(*game.dist_label()) : Json(nullptr);
  j["seed"] = game.seed() ? Json(*game.seed()) : Json(nullptr);
  Json values = Json::object();
  for (CoalitionIndex c = 1; c <= game.grand(); ++c) values[std::to_string(c)] = game.value(c);
  j["values"] = std::move(values);
  return j;
}

inline CoalitionGame game_from_json(const Json& j) {
  const std::string what = "game";
  if (!j.is_object()) fail(ErrorKind::schema, "game: expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    fail(ErrorKind::schema, "game: 'n' must be an integer");
  }
  const auto n = j["n"].get<std::int64_t>();
  if (n < 1 || n > kMaxAgents) {
    fail(ErrorKind::schema, "game: n = " + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxAgents) + "]");
  }
  std::optional<std::string> dist;
  if (j.contains("dist") && !j["dist"].is_null()) dist = detail::require<std::string>(j, "dist", what);
  std::optional<std::uint64_t> seed;
  if (j.contains("seed") && !j["seed"].is_null()) {
    if (!j["seed"].is_number_integer()) fail(ErrorKind::schema, "game: 'seed' must be an integer");
    seed = j["seed"].get<std::uint64_t>();
  }
  if (!j.contains("values") || !j["values"].is_object()) {
    fail(ErrorKind::schema, "game: 'values' must be an object");
  }
  const CoalitionIndex grand = grand_coalition(static_cast<int>(n));
  std::vector<double> values(grand);
  std::vector<std::uint8_t> seen(grand, 0);
  for (const auto& [key, value] : j["values"].items()) {
    CoalitionIndex c = 0;
    const auto* first = key.data();
    const auto* last = key.data() + key.size();
    const auto [ptr, ec] = std::from_chars(first, last, c);
    if (ec != std::errc{} || ptr != last || c < 1 || c > grand) {
      fail(ErrorKind::schema, "game: '" + key + "' is not a coalition index in [1, " +
                                  std::to_string(grand) + "]");
    }
    if (!value.is_number()) fail(ErrorKind::schema, "game: value of coalition " + key + " is not a number");
    values[c - 1] = value.get<double>();
    seen[c - 1] = 1;
  }
  for (CoalitionIndex c = 1; c <= grand; ++c) {
    if (!seen[c - 1]) fail(ErrorKind::schema, "game: missing value for coalition " + std::to_string(c));
  }
  return CoalitionGame(static_cast<int>(n), std::move(values), std::move(dist), seed);
}

inline void save_game(const CoalitionGame& game, const std::string& path) {
  detail::spill(path, game_to_json(game).dump(2) + "\n");
}

inline CoalitionGame load_game(const std::string& path) {
  return game_from_json(detail::parse_json(detail::slurp(path), path));
}

// ---------------------------------------------------------------------------
// QUBO and Ising instances

inline Json qubo_to_json(const QuboInstance& qubo, const BilpInstance* bilp = nullptr) {
  Json j;
  j["m"] = qubo.size();
  j["lambda"] = qubo.lambda;
  j["constant"] = qubo.constant;
  if (bilp) j["columns"] = bilp->columns;
  j["diag"] = qubo.diag;
  Json off = Json::array();
  for (const auto& c : qubo.offdiag) off.push_back(Json::array({c.i, c.j, c.value}));
  j["offdiag"] = std::move(off);
  return j;
}

inline QuboInstance qubo_from_json(const Json& j) {
  const std::string what = "qubo";
  QuboInstance q;
  const auto m = detail::require<std::size_t>(j, "m", what);
  q.lambda = detail::require<double>(j, "lambda", what);
  q.constant = detail::require<double>(j, "constant", what);
  q.diag = detail::require<std::vector<double>>(j, "diag", what);
  if (q.diag.size() != m) fail(ErrorKind::schema, "qubo: diag length differs from m");
  for (const auto& t : detail::require<std::vector<std::tuple<std::size_t, std::size_t, double>>>(
           j, "offdiag", what)) {
    q.offdiag.push_back({std::get<0>(t), std::get<1>(t), std::get<2>(t)});
  }
  q.validate();
  return q;
}

inline Json ising_to_json(const IsingInstance& ising) {
  Json j;
  j["m"] = ising.size();
  j["h"] = ising.h;
  Json couplings = Json::array();
  for (const auto& c : ising.couplings) couplings.push_back(Json::array({c.i, c.j, c.value}));
  j["J"] = std::move(couplings);
  j["offset"] = ising.offset;
  j["constant"] = ising.constant;
  return j;
}

inline IsingInstance ising_from_json(const Json& j) {
  const std::string what = "ising";
  IsingInstance ising;
  const auto m = detail::require<std::size_t>(j, "m", what);
  ising.h = detail::require<std::vector<double>>(j, "h", what);
  if (ising.h.size() != m) fail(ErrorKind::schema, "ising: h length differs from m");
  for (const auto& t :
       detail::require<std::vector<std::tuple<std::size_t, std::size_t, double>>>(j, "J", what)) {
    const auto [a, b, v] = t;
    if (!(a < b && b < m)) fail(ErrorKind::schema, "ising: coupling indices must satisfy i < j < m");
    ising.couplings.push_back({a, b, v});
  }
  ising.offset = detail::require<double>(j, "offset", what);
  if (j.contains("constant")) ising.constant = detail::require<double>(j, "constant", what);
  return ising;
}

/// Line-oriented QUBO text:
///   # comment lines (the writer records `# lambda <x>` and `# constant <c>`)
///   n <m>
///   <i> <i> <diag_i>        diagonal terms
///   <i> <j> <q_ij>          folded off-diagonal terms, i < j
/// Indices are 0-based; values carry 17 significant digits.
inline void write_qubo_text(std::ostream& out, const QuboInstance& qubo) {
  out << "# csgq qubo, minimize sum x_i Q_ij x_j + constant\n";
  out << "# lambda " << detail::format_real(qubo.lambda) << '\n';
  out << "# constant " << detail::format_real(qubo.constant) << '\n';
  out << "n " << qubo.size() << '\n';
  for (std::size_t i = 0; i < qubo.size(); ++i) {
    out << i << ' ' << i << ' ' << detail::format_real(qubo.diag[i]) << '\n';
  }
  for (const auto& c : qubo.offdiag) {
    out << c.i << ' ' << c.j << ' ' << detail::format_real(c.value) << '\n';
  }
}

inline QuboInstance read_qubo_text(std::istream& in, const std::string& origin = "<qubo>") {
  QuboInstance q;
  std::optional<std::size_t> m;
  std::vector<std::uint8_t> diag_seen;
  std::string line;
  std::size_t line_no = 0;
  auto bad = [&](const std::string& why) {
    fail(ErrorKind::parse, origin + ":" + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::istringstream fields(line.substr(first));
    if (line[first] == '#') {
      std::string hash, key;
      double value = 0.0;
      fields >> hash >> key;
      if ((key == "lambda" || key == "constant") && (fields >> value)) {
        (key == "lambda" ? q.lambda : q.constant) = value;
      }
      continue;
    }
    if (line[first] == 'n') {
      std::string tag;
      std::size_t count = 0;
      if (m) bad("duplicate size line");
      if (!(fields >> tag >> count) || tag != "n") bad("expected 'n <m>'");
      m = count;
      q.diag.assign(count, 0.0);
      diag_seen.assign(count, 0);
      continue;
    }
    if (!m) bad("term before the 'n <m>' line");
    std::size_t i = 0;
    std::size_t j = 0;
    double value = 0.0;
    std::string trailing;
    if (!(fields >> i >> j >> value) || (fields >> trailing)) bad("expected '<i> <j> <value>'");
    if (i >= *m || j >= *m) bad("index out of range");
    if (i == j) {
      if (diag_seen[i]) bad("duplicate diagonal term");
      diag_seen[i] = 1;
      q.diag[i] = value;
    } else {
      if (i > j) bad("off-diagonal terms must have i < j");
      if (!q.offdiag.empty() && !(std::pair{q.offdiag.back().i, q.offdiag.back().j} < std::pair{i, j})) {
        bad("off-diagonal terms must be listed in increasing (i, j) order without repeats");
      }
      if (value != 0.0) q.offdiag.push_back({i, j, value});
    }
  }
  if (!m) fail(ErrorKind::parse, origin + ": missing 'n <m>' line");
  q.validate();
  return q;
}

// ---------------------------------------------------------------------------
// Reports

inline Json meta_to_json(const MetaValue& v) {
  return std::visit([](const auto& x) { return Json(x); }, v);
}

/// Everything except wall time sits outside the "timing" block, so two
/// reports from identical inputs match once "timing" is removed.
inline Json report_to_json(const SolveReport& report) {
  Json j;
  j["method"] = report.method;
  j["feasible"] = report.feasible;
  j["best_value"] = report.best_value;
  const auto cs = report.best_cs.canonical();
  j["best_cs"] = cs.blocks;
  Json agents = Json::array();
  for (CoalitionIndex b : cs.blocks) {
    Json members = Json::array();
    for (int i = 0; i < 32; ++i) {
      if ((b >> i) & 1U) members.push_back(i + 1);
    }
    agents.push_back(std::move(members));
  }
  j["best_cs_agents"] = std::move(agents);
  if (!report.best_x.empty()) j["best_x"] = to_bitstring(report.best_x);
  Json meta = Json::object();
  for (const auto& [k, v] : report.metadata) meta[k] = meta_to_json(v);
  j["metadata"] = std::move(meta);
  if (!report.energy_trace.empty()) j["energy_trace"] = report.energy_trace;
  j["timing"] = Json{{"wall_ms", report.wall_ms}};
  return j;
}

inline Json without_timing(Json j) {
  if (j.is_object()) {
    j.erase("timing");
    for (auto& [key, value] : j.items()) value = without_timing(value);
  }
  return j;
}

inline Json qaoa_result_to_json(const QaoaResult& r) {
  Json j;
  j["p"] = r.best_params.layers();
  j["qubits"] = r.qubits;
  j["seed"] = r.seed;
  j["betas"] = r.best_params.betas;
  j["gammas"] = r.best_params.gammas;
  j["expectation"] = r.expectation;
  j["shots"] = r.shots;
  Json counts = Json::object();
  for (const auto& [b, n] : r.counts) counts[to_bitstring(bits_from_mask(b, r.qubits))] = n;
  j["counts"] = std::move(counts);
  j["best_bitstring"] = r.best_bitstring();
  j["best_energy"] = r.best_energy;
  j["iterations"] = r.iterations;
  j["evaluations"] = r.evaluations;
  j["converged"] = r.converged;
  Json trace = Json::array();
  for (const auto& t : r.optimizer_trace) {
    trace.push_back(Json{{"betas", t.params.betas}, {"gammas", t.params.gammas}, {"value", t.value}});
  }
  j["optimizer_trace"] = std::move(trace);
  return j;
}

// ---------------------------------------------------------------------------
// Circuit dump: one gate per line, `H q`, `RX q angle`, `RZ q angle`, `CX c t`.

inline void write_circuit(std::ostream& out, const Circuit& circuit) {
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::h: out << "H " << g.target << '\n'; break;
      case GateKind::rx: out << "RX " << g.target << ' ' << detail::format_real(g.angle) << '\n'; break;
      case GateKind::rz: out << "RZ " << g.target << ' ' << detail::format_real(g.angle) << '\n'; break;
      case GateKind::cx: out << "CX " << g.control << ' ' << g.target << '\n'; break;
    }
  }
}

inline Circuit read_circuit(std::istream& in, std::size_t qubits) {
  Circuit circuit;
  circuit.qubits = qubits;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string op;
    fields >> op;
    Gate g;
    bool ok = false;
    if (op == "H") {
      g.kind = GateKind::h;
      ok = static_cast<bool>(fields >> g.target);
    } else if (op == "RX" || op == "RZ") {
      g.kind = op == "RX" ? GateKind::rx : GateKind::rz;
      ok = static_cast<bool>(fields >> g.target >> g.angle);
    } else if (op == "CX") {
      g.kind = GateKind::cx;
      ok = static_cast<bool>(fields >> g.control >> g.target) && g.control != g.target &&
           g.control < qubits;
    }
    if (!ok || g.target >= qubits) {
      fail(ErrorKind::parse, "circuit:" + std::to_string(line_no) + ": cannot read '" + line + "'");
    }
    circuit.gates.push_back(g);
  }
  return circuit;
}

}  // namespace csgq
