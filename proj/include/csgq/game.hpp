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
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csgq/error.hpp"
#include "csgq/rng.hpp"

namespace csgq {

/// Coalitions are bitmasks over agents: agent a_i (1-based) is a member of
/// coalition `c` iff bit (i - 1) of `c` is set. Index 0 is the empty set and
/// never names a coalition. This ordering fixes the column order of the
/// membership matrix, the QUBO variable order and the qubit order.
using CoalitionIndex = std::uint32_t;

inline constexpr int kMaxAgents = 24;

inline CoalitionIndex grand_coalition(int n) {
  return static_cast<CoalitionIndex>((std::uint64_t{1} << n) - 1);
}

inline int coalition_size(CoalitionIndex c) { return std::popcount(c); }

/// Agent ids (1-based, ascending) belonging to coalition `index`.
inline std::vector<int> coalition_members(CoalitionIndex index, int n) {
  if (n < 1 || n > kMaxAgents) {
    fail(ErrorKind::range, "agent count " + std::to_string(n) + " outside [1, " +
                               std::to_string(kMaxAgents) + "]");
  }
  if (index < 1 || index > grand_coalition(n)) {
    fail(ErrorKind::range, "coalition index " + std::to_string(index) +
                               " outside [1, " + std::to_string(grand_coalition(n)) +
                               "]");
  }
  std::vector<int> members;
  for (int i = 0; i < n; ++i) {
    if ((index >> i) & 1U) members.push_back(i + 1);
  }
  return members;
}

/// A characteristic-function game over n agents. Values are stored densely,
/// `values()[c - 1]` holding v(c).
class CoalitionGame {
 public:
  CoalitionGame(int n, std::vector<double> values,
                std::optional<std::string> dist_label = std::nullopt,
                std::optional<std::uint64_t> seed = std::nullopt)
      : n_(n),
        values_(std::move(values)),
        dist_label_(std::move(dist_label)),
        seed_(seed) {
    if (n_ < 1 || n_ > kMaxAgents) {
      fail(ErrorKind::schema, "agent count " + std::to_string(n_) +
                                  " outside [1, " + std::to_string(kMaxAgents) + "]");
    }
    if (values_.size() != grand_coalition(n_)) {
      fail(ErrorKind::schema, "expected " + std::to_string(grand_coalition(n_)) +
                                  " coalition values, got " +
                                  std::to_string(values_.size()));
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (!std::isfinite(values_[k])) {
        fail(ErrorKind::schema,
             "coalition " + std::to_string(k + 1) + " has a non-finite value");
      }
    }
  }

  int agents() const noexcept { return n_; }
  std::size_t coalition_count() const noexcept { return values_.size(); }
  CoalitionIndex grand() const noexcept { return grand_coalition(n_); }

  double value(CoalitionIndex c) const {
    if (c < 1 || c > grand()) {
      fail(ErrorKind::range, "coalition index " + std::to_string(c) + " out of range");
    }
    return values_[c - 1];
  }

  const std::vector<double>& values() const noexcept { return values_; }
  const std::optional<std::string>& dist_label() const noexcept { return dist_label_; }
  const std::optional<std::uint64_t>& seed() const noexcept { return seed_; }

  friend bool operator==(const CoalitionGame&, const CoalitionGame&) = default;

 private:
  int n_;
  std::vector<double> values_;
  std::optional<std::string> dist_label_;
  std::optional<std::uint64_t> seed_;
};

/// A partition of the agent set into coalitions.
struct CoalitionStructure {
  std::vector<CoalitionIndex> blocks;

  /// Blocks in ascending index order; the canonical form used for
  /// comparison and tie-breaking.
  CoalitionStructure canonical() const {
    CoalitionStructure out{blocks};
    std::sort(out.blocks.begin(), out.blocks.end());
    return out;
  }

  friend bool operator==(const CoalitionStructure& a, const CoalitionStructure& b) {
    return a.canonical().blocks == b.canonical().blocks;
  }
};

/// Lexicographic order on the canonical block lists.
inline bool precedes(const CoalitionStructure& a, const CoalitionStructure& b) {
  const auto ca = a.canonical();
  const auto cb = b.canonical();
  return std::lexicographical_compare(ca.blocks.begin(), ca.blocks.end(),
                                      cb.blocks.begin(), cb.blocks.end());
}

inline bool is_partition(const CoalitionStructure& cs, int n) {
  if (n < 1 || n > kMaxAgents) return false;
  CoalitionIndex covered = 0;
  for (CoalitionIndex b : cs.blocks) {
    if (b == 0 || b > grand_coalition(n)) return false;
    if (covered & b) return false;
    covered |= b;
  }
  return covered == grand_coalition(n);
}

inline void check_partition(const CoalitionStructure& cs, int n) {
  if (!is_partition(cs, n)) {
    std::string listing;
    for (CoalitionIndex b : cs.blocks) {
      if (!listing.empty()) listing += ",";
      listing += std::to_string(b);
    }
    fail(ErrorKind::invalid_structure,
         "blocks {" + listing + "} do not partition " + std::to_string(n) + " agents");
  }
}

/// v(CS): the sum of block values, accumulated in canonical block order so
/// the result does not depend on how the blocks were listed.
inline double cs_value(const CoalitionGame& game, const CoalitionStructure& cs) {
  check_partition(cs, game.agents());
  double total = 0.0;
  for (CoalitionIndex b : cs.canonical().blocks) total += game.value(b);
  return total;
}

// ---------------------------------------------------------------------------
// Benchmark value distributions

enum class DistributionKind {
  abu,
  abn,
  modified_uniform,
  normal,
  sva_beta,
  weibull,
  rayleigh,
  wrc,
  fisher_f,
  laplace,
};

inline constexpr DistributionKind kAllDistributions[] = {
    DistributionKind::abu,      DistributionKind::abn,     DistributionKind::modified_uniform,
    DistributionKind::normal,   DistributionKind::sva_beta, DistributionKind::weibull,
    DistributionKind::rayleigh, DistributionKind::wrc,     DistributionKind::fisher_f,
    DistributionKind::laplace,
};

inline std::string_view to_string(DistributionKind kind) noexcept {
  switch (kind) {
    case DistributionKind::abu: return "ABU";
    case DistributionKind::abn: return "ABN";
    case DistributionKind::modified_uniform: return "MU";
    case DistributionKind::normal: return "Normal";
    case DistributionKind::sva_beta: return "SVA_Beta";
    case DistributionKind::weibull: return "Weibull";
    case DistributionKind::rayleigh: return "Rayleigh";
    case DistributionKind::wrc: return "WRC";
    case DistributionKind::fisher_f: return "F";
    case DistributionKind::laplace: return "Laplace";
  }
  return "?";
}

/// Case-insensitive; accepts the canonical names plus a few spellings
/// (`sva`, `sva-beta`, `n`, `w`, `r`, `lap`).
inline DistributionKind parse_distribution(std::string_view name) {
  std::string key;
  for (char ch : name) {
    key += ch == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  static const std::pair<std::string_view, DistributionKind> table[] = {
      {"abu", DistributionKind::abu},
      {"abn", DistributionKind::abn},
      {"mu", DistributionKind::modified_uniform},
      {"normal", DistributionKind::normal},
      {"n", DistributionKind::normal},
      {"sva_beta", DistributionKind::sva_beta},
      {"sva", DistributionKind::sva_beta},
      {"weibull", DistributionKind::weibull},
      {"w", DistributionKind::weibull},
      {"rayleigh", DistributionKind::rayleigh},
      {"r", DistributionKind::rayleigh},
      {"wrc", DistributionKind::wrc},
      {"f", DistributionKind::fisher_f},
      {"laplace", DistributionKind::laplace},
      {"lap", DistributionKind::laplace},
  };
  for (const auto& [label, kind] : table) {
    if (key == label) return kind;
  }
  fail(ErrorKind::config, "unknown distribution '" + std::string(name) + "'");
}

/// Default parameters per distribution. The shapes are this library's
/// conventions for the named benchmark families; every entry can be
/// overridden through DistributionSpec::params. Variances are given as
/// variances (the normal draws use their square root).
inline std::map<std::string, double> default_params(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::abu:
      return {{"agent_lo", 0.0}, {"agent_hi", 10.0}, {"noise_lo", 0.0}, {"noise_hi", 10.0}};
    case DistributionKind::abn:
      return {{"agent_mean", 10.0}, {"agent_var", 0.01}, {"noise_mean", 0.0}, {"noise_var", 0.01}};
    case DistributionKind::modified_uniform:
      return {{"scale", 10.0}, {"bonus_prob", 0.2}, {"bonus_hi", 50.0}};
    case DistributionKind::normal:
      return {{"mean_per_agent", 10.0}, {"var", 0.01}};
    case DistributionKind::sva_beta:
      return {{"alpha", 2.0}, {"beta", 5.0}, {"scale", 10.0}, {"bonus", 9.0}};
    case DistributionKind::weibull:
      return {{"scale", 10.0}};
    case DistributionKind::rayleigh:
      return {{"scale", 10.0}};
    case DistributionKind::wrc:
      return {{"k", 4.0}};
    case DistributionKind::fisher_f:
      return {{"d1", 5.0}, {"d2", 2.0}, {"cap", 1000.0}};
    case DistributionKind::laplace:
      return {{"loc_per_agent", 10.0}, {"scale", std::sqrt(0.1)}};
  }
  return {};
}

struct DistributionSpec {
  DistributionKind kind = DistributionKind::normal;
  std::map<std::string, double> params;

  /// Override if present, default otherwise; unknown names are rejected.
  double param(const std::string& name) const {
    const auto defaults = default_params(kind);
    if (!defaults.contains(name)) {
      fail(ErrorKind::config, "distribution " + std::string(to_string(kind)) +
                                  " has no parameter '" + name + "'");
    }
    if (auto it = params.find(name); it != params.end()) return it->second;
    return defaults.at(name);
  }

  void validate() const {
    const auto defaults = default_params(kind);
    for (const auto& [name, value] : params) {
      if (!defaults.contains(name)) {
        fail(ErrorKind::config, "distribution " + std::string(to_string(kind)) +
                                    " has no parameter '" + name + "'");
      }
      if (!std::isfinite(value)) {
        fail(ErrorKind::config, "parameter '" + name + "' is not finite");
      }
    }
  }
};

/// Samples a game. Values are drawn in ascending coalition-index order from
/// a single stream seeded with `seed`, so the result is a pure function of
/// (n, spec, seed).
inline CoalitionGame generate_game(int n, const DistributionSpec& spec, std::uint64_t seed) {
  if (n < 1 || n > kMaxAgents) {
    fail(ErrorKind::range, "agent count " + std::to_string(n) + " outside [1, " +
                               std::to_string(kMaxAgents) + "]");
  }
  spec.validate();
  Random rng(seed);
  const CoalitionIndex grand = grand_coalition(n);
  std::vector<double> values(grand);
  auto p = [&](const char* name) { return spec.param(name); };

  switch (spec.kind) {
    case DistributionKind::abu:
    case DistributionKind::abn: {
      const bool uniform = spec.kind == DistributionKind::abu;
      std::vector<double> agent_value(n);
      for (auto& a : agent_value) {
        a = uniform ? rng.uniform(p("agent_lo"), p("agent_hi"))
                    : rng.normal(p("agent_mean"), std::sqrt(p("agent_var")));
      }
      for (CoalitionIndex c = 1; c <= grand; ++c) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
          if (!((c >> i) & 1U)) continue;
          const double noise = uniform ? rng.uniform(p("noise_lo"), p("noise_hi"))
                                       : rng.normal(p("noise_mean"), std::sqrt(p("noise_var")));
          total += agent_value[i] + noise;
        }
        values[c - 1] = total;
      }
      break;
    }
    case DistributionKind::modified_uniform:
      for (CoalitionIndex c = 1; c <= grand; ++c) {
        double v = rng.uniform(0.0, p("scale") * coalition_size(c));
        if (rng.bernoulli(p("bonus_prob"))) v += rng.uniform(0.0, p("bonus_hi"));
        values[c - 1] = v;
      }
      break;
    case DistributionKind::normal:
      for (CoalitionIndex c = 1; c <= grand; ++c) {
        values[c - 1] = rng.normal(p("mean_per_agent") * coalition_size(c), std::sqrt(p("var")));
      }
      break;
    case DistributionKind::sva_beta:
      // Agent a1 is the valuable agent.
      for (CoalitionIndex c = 1; c <= grand; ++c) {
        const double weight = coalition_size(c) + ((c & 1U) ? p("bonus") : 0.0);
        values[c - 1] = p("scale") * rng.beta(p("alpha"), p("beta")) * weight;
      }
      break;
    case DistributionKind::weibull:
      for (CoalitionIndex c = 1; c <= grand; ++c) {
        values[c - 1] = rng.weibull(coalition_size(c), p("scale"));
      }
      break;
    case DistributionKind::rayleigh:
      for (CoalitionIndex c = 1; c <= grand; ++c) {
        values[c - 1] = rng.rayleigh(p("scale") * std::sqrt(double(coalition_size(c))));
      }
      break;
    case DistributionKind::wrc:
      for (CoalitionIndex c = 1; c <= grand; ++c) {
        const double weighted = rng.uniform01() * coalition_size(c);
        values[c - 1] = weighted + rng.chi_squared(p("k"));
      }
      break;
    case DistributionKind::fisher_f:
      for (CoalitionIndex c = 1; c <= grand; ++c) {
        double draw = 0.0;
        do {
          draw = rng.fisher_f(p("d1"), p("d2"));
        } while (draw > p("cap"));
        values[c - 1] = draw * coalition_size(c);
      }
      break;
    case DistributionKind::laplace:
      for (CoalitionIndex c = 1; c <= grand; ++c) {
        values[c - 1] = rng.laplace(p("loc_per_agent") * coalition_size(c), p("scale"));
      }
      break;
  }
  return CoalitionGame(n, std::move(values), std::string(to_string(spec.kind)), seed);
}

inline CoalitionGame generate_game(int n, DistributionKind kind, std::uint64_t seed) {
  return generate_game(n, DistributionSpec{kind, {}}, seed);
}

}  // namespace csgq
