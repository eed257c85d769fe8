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

#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "csgq/error.hpp"
#include "csgq/qaoa.hpp"

namespace csgq {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxAnalysisAgents = 64;

struct SparsityBounds {
  BigInt s_min;     // 2^n - 1
  BigInt s_max;     // 2^(n-1) (2^n - 3) + 1, every off-diagonal pair
  BigInt s_actual;  // intersecting coalition pairs of the unconstrained game
};

/// s_actual = C(2^n - 1, 2) - (3^n - 2^(n+1) + 1) / 2, the second term
/// counting unordered pairs of disjoint nonempty coalitions.
inline SparsityBounds sparsity_bounds(int n) {
  if (n < 2 || n > kMaxAnalysisAgents) {
    fail(ErrorKind::range, "sparsity bounds need 2 <= n <= " +
                               std::to_string(kMaxAnalysisAgents));
  }
  const BigInt two_n = BigInt(1) << n;
  const BigInt m = two_n - 1;
  const BigInt three_n = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(n));
  SparsityBounds b;
  b.s_min = m;
  b.s_max = (BigInt(1) << (n - 1)) * (two_n - 3) + 1;
  b.s_actual = m * (m - 1) / 2 - (three_n - 2 * two_n + 1) / 2;
  return b;
}

enum class SparsityMode { min, max, actual };

inline std::string_view to_string(SparsityMode mode) noexcept {
  switch (mode) {
    case SparsityMode::min: return "min";
    case SparsityMode::max: return "max";
    case SparsityMode::actual: return "actual";
  }
  return "?";
}

inline SparsityMode parse_sparsity_mode(std::string_view name) {
  if (name == "min") return SparsityMode::min;
  if (name == "max") return SparsityMode::max;
  if (name == "actual") return SparsityMode::actual;
  fail(ErrorKind::config, "unknown sparsity mode '" + std::string(name) + "'");
}

struct ComplexityRow {
  int n = 0;
  int p = 0;
  SparsityMode mode = SparsityMode::min;
  BigInt s;
  BigInt ip_cost;        // n^n
  BigInt idp_boss_cost;  // 3^n
  BigInt bilpq_gates;    // gate count at s
  BigInt bilpq_min;      // gate count at s_min
  BigInt bilpq_max;      // gate count at s_max
};

inline std::vector<int> default_layer_sweep() { return {1, 10, 25, 50}; }

inline std::vector<ComplexityRow> complexity_table(int n_lo, int n_hi, std::span<const int> p_list,
                                                   SparsityMode mode) {
  if (n_lo < 2 || n_hi > kMaxAnalysisAgents || n_lo > n_hi) {
    fail(ErrorKind::range, "agent range must lie within [2, " +
                               std::to_string(kMaxAnalysisAgents) + "]");
  }
  std::vector<ComplexityRow> rows;
  for (int p : p_list) {
    if (p < 1) fail(ErrorKind::config, "layer counts must be positive");
  }
  for (int n = n_lo; n <= n_hi; ++n) {
    const auto bounds = sparsity_bounds(n);
    for (int p : p_list) {
      ComplexityRow row;
      row.n = n;
      row.p = p;
      row.mode = mode;
      switch (mode) {
        case SparsityMode::min: row.s = bounds.s_min; break;
        case SparsityMode::max: row.s = bounds.s_max; break;
        case SparsityMode::actual: row.s = bounds.s_actual; break;
      }
      row.ip_cost = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(n));
      row.idp_boss_cost = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(n));
      const BigInt layers(p);
      row.bilpq_gates = gate_count_as<BigInt>(n, layers, row.s);
      row.bilpq_min = gate_count_as<BigInt>(n, layers, bounds.s_min);
      row.bilpq_max = gate_count_as<BigInt>(n, layers, bounds.s_max);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline double log10_of(const BigInt& value) {
  return std::log10(value.convert_to<double>());
}

inline constexpr std::string_view kComplexityCsvHeader =
    "n,p,s_mode,s,ip_cost,idp_boss_cost,bilpq_gates,log10_ip,log10_idp,log10_bilpq";

inline void write_complexity_csv(std::ostream& out, std::span<const ComplexityRow> rows) {
  auto log_field = [](const BigInt& v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", log10_of(v));
    return std::string(buf);
  };
  out << kComplexityCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.p << ',' << to_string(r.mode) << ',' << r.s << ',' << r.ip_cost << ','
        << r.idp_boss_cost << ',' << r.bilpq_gates << ',' << log_field(r.ip_cost) << ','
        << log_field(r.idp_boss_cost) << ',' << log_field(r.bilpq_gates) << '\n';
  }
}

}  // namespace csgq
