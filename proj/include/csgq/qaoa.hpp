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
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "csgq/error.hpp"
#include "csgq/rng.hpp"
#include "csgq/simplex.hpp"
#include "csgq/transform.hpp"

namespace csgq {

inline constexpr std::size_t kMaxQubits = 20;

enum class GateKind { h, rx, rz, cx };

struct Gate {
  GateKind kind = GateKind::h;
  std::size_t target = 0;
  std::size_t control = 0;  // cx only
  double angle = 0.0;       // rx / rz only
};

struct GateTally {
  std::size_t h = 0;
  std::size_t rx = 0;
  std::size_t rz = 0;
  std::size_t cx = 0;

  std::size_t total() const noexcept { return h + rx + rz + cx; }
  friend bool operator==(const GateTally&, const GateTally&) = default;
};

struct Circuit {
  std::size_t qubits = 0;
  std::vector<Gate> gates;

  GateTally tally() const {
    GateTally t;
    for (const auto& g : gates) {
      switch (g.kind) {
        case GateKind::h: ++t.h; break;
        case GateKind::rx: ++t.rx; break;
        case GateKind::rz: ++t.rz; break;
        case GateKind::cx: ++t.cx; break;
      }
    }
    return t;
  }
};

struct QaoaParams {
  std::vector<double> betas;
  std::vector<double> gammas;

  std::size_t layers() const noexcept { return betas.size(); }

  void validate() const {
    if (betas.empty() || betas.size() != gammas.size()) {
      fail(ErrorKind::config, "QAOA needs p >= 1 mixer and cost angles of equal count");
    }
  }
};

/// (2^n - 1)(2p + 1) + 3ps for any integer-like type.
template <typename Int>
Int gate_count_as(int n, const Int& p, const Int& s) {
  const Int m = (Int(1) << n) - 1;
  return m * (2 * p + 1) + 3 * p * s;
}

/// Word-sized gate count; throws a range error instead of wrapping.
inline std::uint64_t gate_count(int n, std::uint64_t p, std::uint64_t s) {
  if (n < 1 || n > 63) fail(ErrorKind::range, "agent count outside [1, 63]");
  const std::uint64_t m = (std::uint64_t{1} << n) - 1;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(p, std::uint64_t{2}, &a) || __builtin_add_overflow(a, 1, &a) ||
      __builtin_mul_overflow(m, a, &a) || __builtin_mul_overflow(p, s, &b) ||
      __builtin_mul_overflow(b, std::uint64_t{3}, &c) || __builtin_add_overflow(a, c, &out)) {
    fail(ErrorKind::range, "gate count overflows 64 bits");
  }
  return out;
}

/// Layout: H on every qubit, then per layer the cost block (an RZ on every
/// qubit, then CX-RZ-CX on each interacting pair in ascending order) and the
/// mixer block (an RX on every qubit).
///
/// Spin z_i = +1 is basis bit i = 1, where Pauli Z reads -1, so field terms
/// take angle -2 gamma h_i while pair terms take +2 gamma J_ik; the cost block
/// is then exactly exp(-i gamma E) on computational basis states.
inline Circuit build_circuit(const IsingInstance& ising, const QaoaParams& params) {
  params.validate();
  const std::size_t m = ising.size();
  if (m > kMaxQubits) {
    fail(ErrorKind::resource_limit,
         std::to_string(m) + " qubits exceed the simulator ceiling of " +
             std::to_string(kMaxQubits));
  }
  Circuit circuit;
  circuit.qubits = m;
  circuit.gates.reserve(m + params.layers() * (2 * m + 3 * ising.couplings.size()));
  for (std::size_t q = 0; q < m; ++q) circuit.gates.push_back({GateKind::h, q, 0, 0.0});
  for (std::size_t layer = 0; layer < params.layers(); ++layer) {
    const double gamma = params.gammas[layer];
    const double beta = params.betas[layer];
    for (std::size_t q = 0; q < m; ++q) {
      circuit.gates.push_back({GateKind::rz, q, 0, -2.0 * gamma * ising.h[q]});
    }
    for (const auto& c : ising.couplings) {
      circuit.gates.push_back({GateKind::cx, c.j, c.i, 0.0});
      circuit.gates.push_back({GateKind::rz, c.j, 0, 2.0 * gamma * c.value});
      circuit.gates.push_back({GateKind::cx, c.j, c.i, 0.0});
    }
    for (std::size_t q = 0; q < m; ++q) {
      circuit.gates.push_back({GateKind::rx, q, 0, 2.0 * beta});
    }
  }
  return circuit;
}

// ---------------------------------------------------------------------------
// State-vector simulation. Basis index bit q is qubit q.

using Amplitude = std::complex<double>;
using StateVector = std::vector<Amplitude>;

inline void apply_gate(StateVector& state, const Gate& gate) {
  const std::size_t dim = state.size();
  const std::size_t bit = std::size_t{1} << gate.target;
  switch (gate.kind) {
    case GateKind::h: {
      const double r = std::numbers::sqrt2 / 2.0;
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Amplitude a = state[i];
        const Amplitude b = state[i | bit];
        state[i] = r * (a + b);
        state[i | bit] = r * (a - b);
      }
      break;
    }
    case GateKind::rx: {
      const double c = std::cos(0.5 * gate.angle);
      const Amplitude s(0.0, -std::sin(0.5 * gate.angle));
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Amplitude a = state[i];
        const Amplitude b = state[i | bit];
        state[i] = c * a + s * b;
        state[i | bit] = s * a + c * b;
      }
      break;
    }
    case GateKind::rz: {
      const Amplitude lower = std::polar(1.0, -0.5 * gate.angle);
      const Amplitude upper = std::polar(1.0, 0.5 * gate.angle);
      for (std::size_t i = 0; i < dim; ++i) state[i] *= (i & bit) ? upper : lower;
      break;
    }
    case GateKind::cx: {
      const std::size_t control = std::size_t{1} << gate.control;
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & control) && !(i & bit)) std::swap(state[i], state[i | bit]);
      }
      break;
    }
  }
}

/// Runs the circuit from |0...0>.
inline StateVector simulate(const Circuit& circuit) {
  if (circuit.qubits > kMaxQubits) {
    fail(ErrorKind::resource_limit, "circuit exceeds the simulator ceiling");
  }
  StateVector state(std::size_t{1} << circuit.qubits, Amplitude(0.0, 0.0));
  state[0] = 1.0;
  for (const auto& g : circuit.gates) apply_gate(state, g);
  return state;
}

/// E(z) for every basis state, z_q = +1 iff bit q is set.
inline std::vector<double> energy_table(const IsingInstance& ising) {
  const std::size_t m = ising.size();
  if (m > kMaxQubits) fail(ErrorKind::resource_limit, "model too large to tabulate");
  std::vector<double> table(std::size_t{1} << m);
  for (std::size_t b = 0; b < table.size(); ++b) table[b] = ising_energy(ising, b);
  return table;
}

inline double expectation(const StateVector& state, const std::vector<double>& energies) {
  if (state.size() != energies.size()) {
    fail(ErrorKind::dimension, "state and energy table sizes differ");
  }
  double total = 0.0;
  for (std::size_t b = 0; b < state.size(); ++b) total += std::norm(state[b]) * energies[b];
  return total;
}

/// <psi| E |psi> with E diagonal in the computational basis.
inline double expectation(const StateVector& state, const IsingInstance& ising) {
  if (state.size() != (std::size_t{1} << ising.size())) {
    fail(ErrorKind::dimension, "state does not match the model's qubit count");
  }
  return expectation(state, energy_table(ising));
}

using Counts = std::map<std::uint64_t, std::int64_t>;

inline constexpr std::int64_t kDefaultShots = 1024;

/// Independent computational-basis measurements via inverse-CDF lookup.
inline Counts sample(const StateVector& state, std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) fail(ErrorKind::config, "shot count must be positive");
  std::vector<double> cumulative(state.size());
  double running = 0.0;
  for (std::size_t b = 0; b < state.size(); ++b) {
    running += std::norm(state[b]);
    cumulative[b] = running;
  }
  Random rng(seed);
  Counts counts;
  for (std::int64_t k = 0; k < shots; ++k) {
    const double u = rng.uniform01() * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
      // u rounded up to the total; take the last state with positive mass.
      it = std::lower_bound(cumulative.begin(), cumulative.end(), running);
    }
    ++counts[static_cast<std::uint64_t>(it - cumulative.begin())];
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Variational loop

struct QaoaConfig {
  int restarts = 10;
  int max_iterations = 500;
  double tolerance = 1e-8;
  double initial_step = 0.1;
  std::int64_t shots = kDefaultShots;
};

struct TracePoint {
  QaoaParams params;
  double value = 0.0;
};

struct QaoaResult {
  QaoaParams best_params;
  double expectation = 0.0;
  Counts counts;
  std::uint64_t best_state = 0;
  double best_energy = 0.0;
  std::size_t qubits = 0;
  std::vector<TracePoint> optimizer_trace;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;

  std::string best_bitstring() const { return to_bitstring(bits_from_mask(best_state, qubits)); }
};

inline QaoaParams split_angles(const std::vector<double>& theta) {
  const std::size_t p = theta.size() / 2;
  return {std::vector<double>(theta.begin(), theta.begin() + p),
          std::vector<double>(theta.begin() + p, theta.end())};
}

/// F_p at the given angles, simulated gate by gate.
inline double layered_expectation(const IsingInstance& ising, const QaoaParams& params,
                                  const std::vector<double>& energies) {
  return expectation(simulate(build_circuit(ising, params)), energies);
}

/// Multi-start Nelder-Mead on the exact expectation. Start points draw
/// betas from [0, pi) then gammas from [0, 2 pi) off one stream seeded with
/// `seed`; the final measurement uses the next word of that stream as its
/// seed. The trace is the winning start's.
inline QaoaResult optimize(const IsingInstance& ising, int p, const QaoaConfig& config,
                           std::uint64_t seed) {
  if (p < 1) fail(ErrorKind::config, "QAOA needs at least one layer");
  if (config.restarts < 1) fail(ErrorKind::config, "QAOA needs at least one start");
  if (ising.size() > kMaxQubits) {
    fail(ErrorKind::resource_limit,
         std::to_string(ising.size()) + " qubits exceed the simulator ceiling of " +
             std::to_string(kMaxQubits));
  }
  const auto energies = energy_table(ising);
  auto objective = [&](const std::vector<double>& theta) {
    return layered_expectation(ising, split_angles(theta), energies);
  };

  Random rng(seed);
  std::vector<std::vector<double>> starts(static_cast<std::size_t>(config.restarts));
  for (auto& theta : starts) {
    theta.resize(2 * static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) theta[k] = rng.uniform(0.0, std::numbers::pi);
    for (int k = 0; k < p; ++k) theta[p + k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }

  SimplexOptions options;
  options.max_iterations = config.max_iterations;
  options.tolerance = config.tolerance;
  options.initial_step = config.initial_step;

  QaoaResult result;
  std::optional<SimplexResult> best;
  for (const auto& theta : starts) {
    auto run = minimize_simplex(objective, theta, options);
    result.evaluations += run.evaluations;
    if (!best || run.value < best->value) best = std::move(run);
  }

  result.best_params = split_angles(best->point);
  result.expectation = best->value;
  result.iterations = best->iterations;
  result.converged = best->converged;
  for (const auto& step : best->trace) {
    result.optimizer_trace.push_back({split_angles(step.point), step.value});
  }

  const auto state = simulate(build_circuit(ising, result.best_params));
  result.qubits = ising.size();
  result.shots = config.shots;
  result.seed = seed;
  result.counts = sample(state, config.shots, rng.next());
  result.best_energy = std::numeric_limits<double>::infinity();
  for (const auto& [b, count] : result.counts) {
    if (energies[b] < result.best_energy) {
      result.best_energy = energies[b];
      result.best_state = b;
    }
  }
  return result;
}

/// Smallest Ising energy over all basis states.
inline double ground_energy(const IsingInstance& ising) {
  const auto table = energy_table(ising);
  return *std::min_element(table.begin(), table.end());
}

struct LayerSearch {
  std::optional<int> found_p;
  std::vector<QaoaResult> runs;  // runs[k] used p = k + 1
};

/// Tries p = 1 ... p_max and stops at the first p whose best sampled state
/// reaches the ground energy (relative tolerance `rel_tol`).
inline LayerSearch search_layers(const IsingInstance& ising, int p_max, const QaoaConfig& config,
                                 std::uint64_t seed, double rel_tol = 1e-9) {
  if (p_max < 1) fail(ErrorKind::config, "p_max must be at least 1");
  const double target = ground_energy(ising);
  const double window = rel_tol * std::max(1.0, std::fabs(target));
  LayerSearch search;
  for (int p = 1; p <= p_max; ++p) {
    search.runs.push_back(optimize(ising, p, config, seed));
    if (search.runs.back().best_energy <= target + window) {
      search.found_p = p;
      break;
    }
  }
  return search;
}

}  // namespace csgq
