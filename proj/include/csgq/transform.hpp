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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csgq/error.hpp"
#include "csgq/game.hpp"

namespace csgq {

/// Binary assignment, one byte per variable (0 or 1). Textual form is
/// little-endian in the sense that character k is variable k.
using Bits = std::vector<std::uint8_t>;

inline std::string to_bitstring(std::span<const std::uint8_t> x) {
  std::string s(x.size(), '0');
  for (std::size_t k = 0; k < x.size(); ++k) s[k] = x[k] ? '1' : '0';
  return s;
}

inline Bits parse_bitstring(std::string_view s) {
  Bits x(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] != '0' && s[k] != '1') {
      fail(ErrorKind::parse, "bitstring contains '" + std::string(1, s[k]) + "'");
    }
    x[k] = s[k] == '1';
  }
  return x;
}

/// Bit k of `mask` becomes variable k.
inline Bits bits_from_mask(std::uint64_t mask, std::size_t m) {
  Bits x(m);
  for (std::size_t k = 0; k < m; ++k) x[k] = (mask >> k) & 1U;
  return x;
}

// ---------------------------------------------------------------------------
// Set-partitioning program

/// max v.x  subject to  S x = 1, x binary.
///
/// The membership matrix is kept column-wise: variable j stands for
/// coalition `columns[j]`, and S[i][j] is bit i of that mask. With no
/// exclusions the columns are 1 ... 2^n - 1 in order.
struct BilpInstance {
  int n = 0;
  std::vector<CoalitionIndex> columns;
  std::vector<double> values;
  std::vector<CoalitionIndex> excluded;

  std::size_t variable_count() const noexcept { return columns.size(); }

  bool entry(int agent_row, std::size_t column) const {
    return (columns.at(column) >> agent_row) & 1U;
  }

  /// Variables covering agent a_{agent_row + 1}.
  std::vector<std::size_t> row(int agent_row) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if ((columns[j] >> agent_row) & 1U) out.push_back(j);
    }
    return out;
  }

  std::vector<int> rhs() const { return std::vector<int>(static_cast<std::size_t>(n), 1); }
};

inline constexpr int kMaxBilpAgents = 20;

namespace detail {

// Exact test: does some partition of all agents use only allowed coalitions?
inline bool partition_exists(int n, const std::vector<std::uint8_t>& allowed) {
  const CoalitionIndex grand = grand_coalition(n);
  std::vector<std::uint8_t> ok(std::size_t{grand} + 1, 0);
  ok[0] = 1;
  for (CoalitionIndex t = 1; t <= grand; ++t) {
    const CoalitionIndex low = t & (~t + 1);
    const CoalitionIndex rest = t ^ low;
    // Enumerate sub = low | r over all subsets r of rest.
    for (CoalitionIndex r = rest;; r = (r - 1) & rest) {
      const CoalitionIndex sub = low | r;
      if (allowed[sub] && ok[t ^ sub]) {
        ok[t] = 1;
        break;
      }
      if (r == 0) break;
    }
  }
  return ok[grand] != 0;
}

}  // namespace detail

inline BilpInstance build_bilp(const CoalitionGame& game,
                               std::span<const CoalitionIndex> excluded = {}) {
  const int n = game.agents();
  if (n > kMaxBilpAgents) {
    fail(ErrorKind::resource_limit, "set-partitioning program limited to " +
                                        std::to_string(kMaxBilpAgents) + " agents");
  }
  const CoalitionIndex grand = game.grand();
  std::vector<std::uint8_t> allowed(std::size_t{grand} + 1, 1);
  allowed[0] = 0;
  BilpInstance bilp;
  bilp.n = n;
  for (CoalitionIndex c : excluded) {
    if (c < 1 || c > grand) {
      fail(ErrorKind::range, "excluded coalition " + std::to_string(c) + " out of range");
    }
    allowed[c] = 0;
  }
  for (CoalitionIndex c = 1; c <= grand; ++c) {
    if (allowed[c]) {
      bilp.columns.push_back(c);
      bilp.values.push_back(game.value(c));
    } else {
      bilp.excluded.push_back(c);
    }
  }
  if (!bilp.excluded.empty() && !detail::partition_exists(n, allowed)) {
    fail(ErrorKind::infeasible,
         "excluded coalitions leave no coalition structure covering every agent");
  }
  return bilp;
}

// ---------------------------------------------------------------------------
// QUBO

/// One folded upper-triangular coefficient, i < j.
struct Coupling {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// minimize  sum_i diag[i] x_i + sum_{i<j} q_ij x_i x_j  (+ constant).
///
/// Only nonzero i<j couplings are stored, sorted by (i, j); their count is
/// the interaction count that drives the circuit size.
struct QuboInstance {
  std::vector<double> diag;
  std::vector<Coupling> offdiag;
  double constant = 0.0;
  double lambda = 0.0;

  std::size_t size() const noexcept { return diag.size(); }

  double coupling(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(offdiag.begin(), offdiag.end(), std::pair{i, j},
                               [](const Coupling& c, const std::pair<std::size_t, std::size_t>& key) {
                                 return std::pair{c.i, c.j} < key;
                               });
    if (it != offdiag.end() && it->i == i && it->j == j) return it->value;
    return 0.0;
  }

  void validate() const {
    const std::size_t m = size();
    for (std::size_t k = 0; k < offdiag.size(); ++k) {
      const auto& c = offdiag[k];
      if (!(c.i < c.j && c.j < m)) {
        fail(ErrorKind::schema, "coupling (" + std::to_string(c.i) + ", " +
                                    std::to_string(c.j) + ") is not an i<j pair below " +
                                    std::to_string(m));
      }
      if (c.value == 0.0) fail(ErrorKind::schema, "zero-valued coupling stored");
      if (k > 0 && !(std::pair{offdiag[k - 1].i, offdiag[k - 1].j} < std::pair{c.i, c.j})) {
        fail(ErrorKind::schema, "couplings not strictly sorted by (i, j)");
      }
    }
  }
};

/// 1 + 2 * sum |v_j|: one unit of constraint violation outweighs every
/// achievable change in total value, negative values included.
inline double default_penalty(const BilpInstance& bilp) {
  double total = 0.0;
  for (double v : bilp.values) total += std::fabs(v);
  return 1.0 + 2.0 * total;
}

inline constexpr double kMaxQuboPairs = 5.0e7;

/// Folds the objective and lambda * |S x - b|^2 into QUBO form:
/// diag_j = -v_j - lambda |C_j|, q_ij = 2 lambda |C_i & C_j|, c = lambda n.
inline QuboInstance build_qubo(const BilpInstance& bilp, std::optional<double> lambda = std::nullopt) {
  if (lambda && !(*lambda > 0.0 && std::isfinite(*lambda))) {
    fail(ErrorKind::config, "penalty must be a positive finite number");
  }
  const std::size_t m = bilp.variable_count();
  if (0.5 * double(m) * double(m) > kMaxQuboPairs) {
    fail(ErrorKind::resource_limit,
         "QUBO with " + std::to_string(m) + " variables exceeds the pair budget");
  }
  QuboInstance qubo;
  qubo.lambda = lambda.value_or(default_penalty(bilp));
  qubo.constant = qubo.lambda * bilp.n;
  qubo.diag.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    qubo.diag[j] = -bilp.values[j] - qubo.lambda * coalition_size(bilp.columns[j]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const int shared = coalition_size(bilp.columns[i] & bilp.columns[j]);
      if (shared > 0) qubo.offdiag.push_back({i, j, 2.0 * qubo.lambda * shared});
    }
  }
  return qubo;
}

/// x^T Q x without the constant.
inline double qubo_energy(const QuboInstance& qubo, std::span<const std::uint8_t> x) {
  if (x.size() != qubo.size()) {
    fail(ErrorKind::dimension, "assignment has " + std::to_string(x.size()) +
                                   " variables, QUBO has " + std::to_string(qubo.size()));
  }
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) e += qubo.diag[i];
  }
  for (const auto& c : qubo.offdiag) {
    if (x[c.i] && x[c.j]) e += c.value;
  }
  return e;
}

/// Same as qubo_energy with the assignment packed into a word (m <= 64).
inline double qubo_energy(const QuboInstance& qubo, std::uint64_t mask) {
  double e = 0.0;
  for (std::size_t i = 0; i < qubo.size(); ++i) {
    if ((mask >> i) & 1U) e += qubo.diag[i];
  }
  for (const auto& c : qubo.offdiag) {
    if (((mask >> c.i) & 1U) && ((mask >> c.j) & 1U)) e += c.value;
  }
  return e;
}

inline std::size_t interaction_count(const QuboInstance& qubo) noexcept {
  return qubo.offdiag.size();
}

// ---------------------------------------------------------------------------
// Ising

/// E(z) = sum_i h_i z_i + sum_{(i,j)} J_ij z_i z_j with z in {-1, +1}.
/// `offset` satisfies E(z) + offset == qubo_energy(x(z)) under x = (1 + z) / 2;
/// `constant` carries the QUBO constant through unchanged.
struct IsingInstance {
  std::vector<double> h;
  std::vector<Coupling> couplings;
  double offset = 0.0;
  double constant = 0.0;

  std::size_t size() const noexcept { return h.size(); }
};

inline IsingInstance qubo_to_ising(const QuboInstance& qubo) {
  IsingInstance ising;
  const std::size_t m = qubo.size();
  ising.h.resize(m);
  ising.constant = qubo.constant;
  double diag_sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    ising.h[i] = 0.5 * qubo.diag[i];
    diag_sum += qubo.diag[i];
  }
  double coupling_sum = 0.0;
  ising.couplings.reserve(qubo.offdiag.size());
  for (const auto& c : qubo.offdiag) {
    ising.h[c.i] += 0.25 * c.value;
    ising.h[c.j] += 0.25 * c.value;
    ising.couplings.push_back({c.i, c.j, 0.25 * c.value});
    coupling_sum += c.value;
  }
  ising.offset = 0.5 * diag_sum + 0.25 * coupling_sum;
  return ising;
}

/// Spins as +1/-1 bytes.
inline double ising_energy(const IsingInstance& ising, std::span<const std::int8_t> z) {
  if (z.size() != ising.size()) {
    fail(ErrorKind::dimension, "spin vector has " + std::to_string(z.size()) +
                                   " entries, model has " + std::to_string(ising.size()));
  }
  double e = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) e += ising.h[i] * z[i];
  for (const auto& c : ising.couplings) e += c.value * z[c.i] * z[c.j];
  return e;
}

/// Spin i is +1 iff bit i of `mask` is set (x_i = 1).
inline double ising_energy(const IsingInstance& ising, std::uint64_t mask) {
  auto spin = [mask](std::size_t i) { return ((mask >> i) & 1U) ? 1.0 : -1.0; };
  double e = 0.0;
  for (std::size_t i = 0; i < ising.size(); ++i) e += ising.h[i] * spin(i);
  for (const auto& c : ising.couplings) e += c.value * spin(c.i) * spin(c.j);
  return e;
}

// ---------------------------------------------------------------------------
// Decoding

struct DecodedSolution {
  Bits x;
  bool feasible = false;
  CoalitionStructure cs;
  /// Per agent: (number of selected columns covering it) - 1.
  std::vector<int> violation;
};

inline DecodedSolution decode_solution(std::span<const std::uint8_t> x, const BilpInstance& bilp) {
  if (x.size() != bilp.variable_count()) {
    fail(ErrorKind::dimension, "assignment has " + std::to_string(x.size()) +
                                   " variables, program has " +
                                   std::to_string(bilp.variable_count()));
  }
  DecodedSolution out;
  out.x.assign(x.begin(), x.end());
  out.violation.assign(static_cast<std::size_t>(bilp.n), -1);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!x[j]) continue;
    out.cs.blocks.push_back(bilp.columns[j]);
    for (int i = 0; i < bilp.n; ++i) {
      if ((bilp.columns[j] >> i) & 1U) ++out.violation[i];
    }
  }
  out.feasible = std::all_of(out.violation.begin(), out.violation.end(),
                             [](int v) { return v == 0; });
  if (!out.feasible) out.cs.blocks.clear();
  return out;
}

}  // namespace csgq
