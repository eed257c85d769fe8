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

// Independent reference computations used only by the tests. None of these
// call into the code paths they are used to check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "csgq/game.hpp"
#include "csgq/transform.hpp"

namespace csgq::oracle {

/// Bell numbers through the Bell triangle.
inline std::uint64_t bell(int n) {
  std::vector<std::uint64_t> row{1};
  for (int k = 0; k < n; ++k) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

/// Every set partition of {0..n-1}, built by inserting agents one at a time
/// into an existing block or a fresh one.
inline std::vector<std::vector<CoalitionIndex>> all_partitions(int n) {
  std::vector<std::vector<CoalitionIndex>> out;
  std::vector<CoalitionIndex> blocks;
  std::function<void(int)> place = [&](int agent) {
    if (agent == n) {
      out.push_back(blocks);
      return;
    }
    const CoalitionIndex bit = CoalitionIndex{1} << agent;
    // Indexed loop: the recursion grows `blocks`, which would invalidate references.
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      blocks[k] |= bit;
      place(agent + 1);
      blocks[k] ^= bit;
    }
    blocks.push_back(bit);
    place(agent + 1);
    blocks.pop_back();
  };
  place(0);
  return out;
}

inline double best_partition_value(const CoalitionGame& game) {
  double best = -INFINITY;
  for (const auto& blocks : all_partitions(game.agents())) {
    double total = 0.0;
    for (auto b : blocks) total += game.values()[b - 1];
    best = std::max(best, total);
  }
  return best;
}

/// -v.x + lambda |S x - b|^2 evaluated straight from the definition, with
/// S read off the coalition bitmasks of `columns`.
inline double penalized_objective(const std::vector<CoalitionIndex>& columns,
                                  const std::vector<double>& values, int n, double lambda,
                                  const std::vector<std::uint8_t>& x) {
  double objective = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) objective -= values[j] * x[j];
  double penalty = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = -1.0;
    for (std::size_t j = 0; j < x.size(); ++j) row += ((columns[j] >> i) & 1U) * x[j];
    penalty += row * row;
  }
  return objective + lambda * penalty;
}

/// Unordered pairs of distinct nonempty coalitions that share no agent.
inline std::uint64_t disjoint_pairs(int n) {
  const CoalitionIndex grand = (CoalitionIndex{1} << n) - 1;
  std::uint64_t count = 0;
  for (CoalitionIndex a = 1; a <= grand; ++a) {
    for (CoalitionIndex b = a + 1; b <= grand; ++b) count += (a & b) == 0;
  }
  return count;
}

/// The two-agent example game: v({a1}) = 1, v({a2}) = 2, v({a1, a2}) = 4.
inline CoalitionGame g2() { return CoalitionGame(2, {1.0, 2.0, 4.0}); }

}  // namespace csgq::oracle
