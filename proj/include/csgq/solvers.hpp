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
#include <bit>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "csgq/error.hpp"
#include "csgq/game.hpp"
#include "csgq/rng.hpp"
#include "csgq/transform.hpp"

namespace csgq {

using MetaValue = std::variant<std::int64_t, double, bool, std::string>;

struct SolveReport {
  std::string method;
  CoalitionStructure best_cs;
  double best_value = 0.0;
  bool feasible = false;
  std::map<std::string, MetaValue> metadata;
  /// Winning assignment for the QUBO-based methods; empty otherwise.
  Bits best_x;
  /// Best-seen energy after each sweep of the winning annealing restart.
  std::vector<double> energy_trace;
  /// Wall time is kept apart from everything else so reports can be
  /// compared byte-for-byte with it stripped.
  double wall_ms = 0.0;
};

namespace detail {

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Sum of selected column values in ascending column order; identical to
// cs_value on the decoded structure.
inline double selected_value(const BilpInstance& bilp, std::span<const std::uint8_t> x) {
  double total = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j]) total += bilp.values[j];
  }
  return total;
}

/// Symmetric adjacency of the folded couplings, CSR layout.
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> neighbors;
  std::vector<double> weights;

  explicit Adjacency(const QuboInstance& qubo) {
    const std::size_t m = qubo.size();
    offsets.assign(m + 1, 0);
    for (const auto& c : qubo.offdiag) {
      ++offsets[c.i + 1];
      ++offsets[c.j + 1];
    }
    for (std::size_t i = 0; i < m; ++i) offsets[i + 1] += offsets[i];
    neighbors.resize(offsets[m]);
    weights.resize(offsets[m]);
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (const auto& c : qubo.offdiag) {
      neighbors[fill[c.i]] = c.j;
      weights[fill[c.i]++] = c.value;
      neighbors[fill[c.j]] = c.i;
      weights[fill[c.j]++] = c.value;
    }
  }
};

// Incremental single-flip state: local field_i = sum_j q_ij x_j.
class FlipState {
 public:
  FlipState(const QuboInstance& qubo, const Adjacency& adj, Bits x)
      : qubo_(qubo), adj_(adj), x_(std::move(x)), field_(qubo.size(), 0.0) {
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (!x_[i]) continue;
      for (std::size_t k = adj_.offsets[i]; k < adj_.offsets[i + 1]; ++k) {
        field_[adj_.neighbors[k]] += adj_.weights[k];
      }
    }
    energy_ = qubo_energy(qubo_, x_);
  }

  double delta(std::size_t i) const {
    return (x_[i] ? -1.0 : 1.0) * (qubo_.diag[i] + field_[i]);
  }

  void flip(std::size_t i, double d) {
    const double sign = x_[i] ? -1.0 : 1.0;
    x_[i] ^= 1U;
    energy_ += d;
    for (std::size_t k = adj_.offsets[i]; k < adj_.offsets[i + 1]; ++k) {
      field_[adj_.neighbors[k]] += sign * adj_.weights[k];
    }
  }

  const Bits& bits() const noexcept { return x_; }
  double energy() const noexcept { return energy_; }

 private:
  const QuboInstance& qubo_;
  const Adjacency& adj_;
  Bits x_;
  std::vector<double> field_;
  double energy_ = 0.0;
};

struct Candidate {
  Bits x;
  double energy = std::numeric_limits<double>::infinity();
  DecodedSolution decoded;
};

// Order on exact energies; ties go to feasible assignments, then to the
// lexicographically smaller structure, then to the smaller bit pattern read
// from the highest variable down (i.e. the smaller integer).
inline bool better(const Candidate& a, const Candidate& b) {
  if (a.energy != b.energy) return a.energy < b.energy;
  if (a.decoded.feasible != b.decoded.feasible) return a.decoded.feasible;
  if (a.decoded.feasible && !(a.decoded.cs == b.decoded.cs)) {
    return precedes(a.decoded.cs, b.decoded.cs);
  }
  return std::lexicographical_compare(a.x.rbegin(), a.x.rend(), b.x.rbegin(), b.x.rend());
}

inline Candidate make_candidate(const QuboInstance& qubo, const BilpInstance& bilp, Bits x) {
  Candidate c;
  c.energy = qubo_energy(qubo, x);
  c.decoded = decode_solution(x, bilp);
  c.x = std::move(x);
  return c;
}

inline void fill_from_candidate(SolveReport& report, const Candidate& best,
                                const QuboInstance& qubo, const BilpInstance& bilp) {
  report.best_x = best.x;
  report.feasible = best.decoded.feasible;
  report.best_cs = best.decoded.cs.canonical();
  report.best_value = best.decoded.feasible ? selected_value(bilp, best.x) : 0.0;
  report.metadata["energy"] = best.energy;
  report.metadata["constant"] = qubo.constant;
  report.metadata["lambda"] = qubo.lambda;
  report.metadata["s"] = static_cast<std::int64_t>(interaction_count(qubo));
  report.metadata["m"] = static_cast<std::int64_t>(qubo.size());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact oracles on the game

inline constexpr int kMaxEnumAgents = 12;
inline constexpr int kMaxDpAgents = 20;

/// Enumerates every set partition through restricted-growth strings
/// a[0] = 0, a[k] <= 1 + max(a[0..k-1]); agent k goes to block a[k].
inline SolveReport solve_enum(const CoalitionGame& game) {
  const int n = game.agents();
  if (n > kMaxEnumAgents) {
    fail(ErrorKind::resource_limit, "enumeration limited to " +
                                        std::to_string(kMaxEnumAgents) + " agents");
  }
  detail::Stopwatch clock;
  std::vector<int> growth(n, 0);
  std::vector<int> prefix_max(n, 0);
  std::vector<CoalitionIndex> blocks;
  CoalitionStructure best;
  double best_value = -std::numeric_limits<double>::infinity();
  std::int64_t examined = 0;

  for (;;) {
    blocks.assign(static_cast<std::size_t>(prefix_max[n - 1]) + 1, 0);
    for (int k = 0; k < n; ++k) blocks[growth[k]] |= CoalitionIndex{1} << k;
    CoalitionStructure cs{blocks};
    cs = cs.canonical();
    double value = 0.0;
    for (CoalitionIndex b : cs.blocks) value += game.value(b);
    ++examined;
    if (value > best_value || (value == best_value && precedes(cs, best))) {
      best_value = value;
      best = std::move(cs);
    }

    // Next string: bump the rightmost position that may still grow.
    int k = n - 1;
    while (k > 0 && growth[k] > prefix_max[k - 1]) --k;
    if (k == 0) break;
    ++growth[k];
    prefix_max[k] = std::max(prefix_max[k - 1], growth[k]);
    for (int r = k + 1; r < n; ++r) {
      growth[r] = 0;
      prefix_max[r] = prefix_max[k];
    }
  }

  SolveReport report;
  report.method = "enum";
  report.best_cs = best;
  report.best_value = cs_value(game, best);
  report.feasible = true;
  report.metadata["partitions"] = examined;
  report.wall_ms = clock.elapsed_ms();
  return report;
}

/// Subset dynamic programme:
///   f(T) = max( v(T), max_{T' u T'' = T} f(T') + f(T'') )
/// where T' ranges over proper subsets holding T's lowest agent. The
/// `splits` counter tallies every (T, T') pair visited, T' = T included.
inline SolveReport solve_dp(const CoalitionGame& game) {
  const int n = game.agents();
  if (n > kMaxDpAgents) {
    fail(ErrorKind::resource_limit, "dynamic programme limited to " +
                                        std::to_string(kMaxDpAgents) + " agents");
  }
  detail::Stopwatch clock;
  const CoalitionIndex grand = game.grand();
  std::vector<double> best(std::size_t{grand} + 1, 0.0);
  std::vector<CoalitionIndex> choice(std::size_t{grand} + 1, 0);
  std::int64_t splits = 0;

  auto blocks_of = [&](CoalitionIndex t) {
    std::vector<CoalitionIndex> out;
    std::vector<CoalitionIndex> stack{t};
    while (!stack.empty()) {
      const CoalitionIndex u = stack.back();
      stack.pop_back();
      if (choice[u] == u) {
        out.push_back(u);
      } else {
        stack.push_back(choice[u]);
        stack.push_back(u ^ choice[u]);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  for (CoalitionIndex t = 1; t <= grand; ++t) {
    best[t] = game.value(t);
    choice[t] = t;
    ++splits;
    const CoalitionIndex low = t & (~t + 1);
    const CoalitionIndex rest = t ^ low;
    if (rest == 0) continue;
    // Proper subsets low | r with r a strict subset of rest.
    for (CoalitionIndex r = (rest - 1) & rest;; r = (r - 1) & rest) {
      const CoalitionIndex part = low | r;
      ++splits;
      const double candidate = best[part] + best[t ^ part];
      if (candidate > best[t]) {
        best[t] = candidate;
        choice[t] = part;
      } else if (candidate == best[t]) {
        const CoalitionIndex incumbent = choice[t];
        choice[t] = part;
        const auto challenger = blocks_of(t);
        choice[t] = incumbent;
        const auto held = blocks_of(t);
        if (challenger < held) choice[t] = part;
      }
      if (r == 0) break;
    }
  }

  SolveReport report;
  report.method = "dp";
  report.best_cs.blocks = blocks_of(grand);
  report.best_value = cs_value(game, report.best_cs);
  report.feasible = true;
  report.metadata["splits"] = splits;
  report.wall_ms = clock.elapsed_ms();
  return report;
}

// ---------------------------------------------------------------------------
// QUBO solvers

inline constexpr std::size_t kMaxExhaustiveVariables = 24;

/// Scans all 2^m assignments in Gray-code order with incremental energies;
/// near-ties are re-evaluated exactly before the tie-break is applied.
inline SolveReport solve_qubo_exhaustive(const QuboInstance& qubo, const BilpInstance& bilp) {
  const std::size_t m = qubo.size();
  if (m != bilp.variable_count()) {
    fail(ErrorKind::dimension, "QUBO and set-partitioning program sizes differ");
  }
  if (m > kMaxExhaustiveVariables) {
    fail(ErrorKind::resource_limit, "exhaustive scan limited to " +
                                        std::to_string(kMaxExhaustiveVariables) +
                                        " variables");
  }
  detail::Stopwatch clock;
  const detail::Adjacency adj(qubo);
  detail::FlipState state(qubo, adj, Bits(m, 0));

  double scale = 1.0;
  for (double d : qubo.diag) scale += std::fabs(d);
  for (const auto& c : qubo.offdiag) scale += std::fabs(c.value);
  const double tie_window = 1e-9 * scale;

  std::uint64_t gray = 0;
  double best_running = 0.0;
  detail::Candidate best = detail::make_candidate(qubo, bilp, Bits(m, 0));
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(k));
    state.flip(bit, state.delta(bit));
    gray ^= std::uint64_t{1} << bit;
    const double e = state.energy();
    if (e < best_running - tie_window) {
      best_running = e;
      best = detail::make_candidate(qubo, bilp, bits_from_mask(gray, m));
    } else if (e <= best_running + tie_window) {
      auto challenger = detail::make_candidate(qubo, bilp, bits_from_mask(gray, m));
      if (detail::better(challenger, best)) {
        best = std::move(challenger);
          best_running = std::min(best_running, e);
      }
    }
  }

  SolveReport report;
  report.method = "qubo-brute";
  detail::fill_from_candidate(report, best, qubo, bilp);
  report.metadata["assignments"] = static_cast<std::int64_t>(total);
  report.wall_ms = clock.elapsed_ms();
  return report;
}

/// Geometric cooling from temp_hi to temp_lo over `sweeps` sweeps; each
/// restart r uses its own stream seeded with seed + r.
struct AnnealSchedule {
  std::int64_t sweeps = 1000;
  double temp_hi = 10.0;
  double temp_lo = 1e-3;
  std::int64_t restarts = 10;
  std::uint64_t seed = 0;

  void validate() const {
    if (sweeps < 1) fail(ErrorKind::config, "annealing needs at least one sweep");
    if (restarts < 1) fail(ErrorKind::config, "annealing needs at least one restart");
    if (!(temp_lo > 0.0 && temp_hi > temp_lo && std::isfinite(temp_hi))) {
      fail(ErrorKind::config, "temperatures must satisfy temp_hi > temp_lo > 0");
    }
  }
};

/// temp_hi = 2 sum|v_j| (at least 1), temp_lo = 1e-3, 100 m sweeps, 10 restarts.
inline AnnealSchedule default_schedule(const BilpInstance& bilp, std::uint64_t seed) {
  double total = 0.0;
  for (double v : bilp.values) total += std::fabs(v);
  AnnealSchedule s;
  s.temp_hi = std::max(2.0 * total, 1.0);
  s.temp_lo = 1e-3;
  s.sweeps = 100 * static_cast<std::int64_t>(std::max<std::size_t>(bilp.variable_count(), 1));
  s.restarts = 10;
  s.seed = seed;
  return s;
}

/// Single-flip Metropolis annealing over the sparse couplings. Returns the
/// best assignment seen across all restarts.
inline SolveReport solve_qubo_sa(const QuboInstance& qubo, const BilpInstance& bilp,
                                 const AnnealSchedule& sched) {
  sched.validate();
  const std::size_t m = qubo.size();
  if (m != bilp.variable_count()) {
    fail(ErrorKind::dimension, "QUBO and set-partitioning program sizes differ");
  }
  detail::Stopwatch clock;
  const detail::Adjacency adj(qubo);
  const double ratio = sched.sweeps > 1
                           ? std::pow(sched.temp_lo / sched.temp_hi, 1.0 / double(sched.sweeps - 1))
                           : 1.0;

  detail::Candidate overall;
  std::vector<double> overall_trace;
  for (std::int64_t restart = 0; restart < sched.restarts; ++restart) {
    Random rng(sched.seed + static_cast<std::uint64_t>(restart));
    Bits start(m);
    for (auto& b : start) b = static_cast<std::uint8_t>(rng.next() >> 63);
    detail::FlipState state(qubo, adj, std::move(start));

    Bits best_bits = state.bits();
    double best_energy = state.energy();
    std::vector<double> trace;
    trace.reserve(static_cast<std::size_t>(sched.sweeps));
    double temperature = sched.temp_hi;
    for (std::int64_t sweep = 0; sweep < sched.sweeps; ++sweep) {
      for (std::size_t i = 0; i < m; ++i) {
        const double d = state.delta(i);
        if (d <= 0.0 || rng.uniform01() < std::exp(-d / temperature)) {
          state.flip(i, d);
          if (state.energy() < best_energy) {
            best_energy = state.energy();
            best_bits = state.bits();
          }
        }
      }
      trace.push_back(best_energy);
      temperature *= ratio;
    }

    auto candidate = detail::make_candidate(qubo, bilp, std::move(best_bits));
    if (restart == 0 || detail::better(candidate, overall)) {
      overall = std::move(candidate);
      overall_trace = std::move(trace);
    }
  }

  SolveReport report;
  report.method = "sa";
  detail::fill_from_candidate(report, overall, qubo, bilp);
  report.energy_trace = std::move(overall_trace);
  report.metadata["sweeps"] = sched.sweeps;
  report.metadata["restarts"] = sched.restarts;
  report.metadata["temp_hi"] = sched.temp_hi;
  report.metadata["temp_lo"] = sched.temp_lo;
  report.metadata["seed"] = static_cast<std::int64_t>(sched.seed);
  report.wall_ms = clock.elapsed_ms();
  return report;
}

}  // namespace csgq
