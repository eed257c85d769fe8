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

#include <gtest/gtest.h>

#include <cmath>

#include "csgq/solvers.hpp"
#include "oracles.hpp"

namespace csgq {
namespace {

bool same_value(double a, double b) { return std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b)); }

std::int64_t meta_int(const SolveReport& r, const std::string& key) {
  return std::get<std::int64_t>(r.metadata.at(key));
}

TEST(SolveEnum, PartitionCountsAreBellNumbers) {
  EXPECT_EQ(meta_int(solve_enum(oracle::g2()), "partitions"), 2);
  EXPECT_EQ(meta_int(solve_enum(generate_game(4, DistributionKind::normal, 0)), "partitions"), 15);
  for (int n = 1; n <= 9; ++n) {
    const auto r = solve_enum(generate_game(n, DistributionKind::abu, 0));
    EXPECT_EQ(static_cast<std::uint64_t>(meta_int(r, "partitions")), oracle::bell(n)) << n;
  }
}

TEST(SolveEnum, TwoAgentGame) {
  const auto r = solve_enum(oracle::g2());
  EXPECT_EQ(r.best_cs.blocks, (std::vector<CoalitionIndex>{3}));
  EXPECT_EQ(r.best_value, 4.0);
  EXPECT_TRUE(r.feasible);
}

TEST(SolveEnum, TieBreakPicksSmallestBlockList) {
  const CoalitionGame zero(3, std::vector<double>(7, 0.0));
  EXPECT_EQ(solve_enum(zero).best_cs.blocks, (std::vector<CoalitionIndex>{1, 2, 4}));
}

TEST(SolveEnum, Guard) {
  try {
    solve_enum(CoalitionGame(13, std::vector<double>((1U << 13) - 1, 1.0)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource_limit);
  }
}

TEST(SolveDp, Examples) {
  const auto g2 = solve_dp(oracle::g2());
  EXPECT_EQ(g2.best_value, 4.0);
  EXPECT_EQ(g2.best_cs.blocks, (std::vector<CoalitionIndex>{3}));

  const auto split = solve_dp(CoalitionGame(2, {3.0, 3.0, 4.0}));
  EXPECT_EQ(split.best_value, 6.0);
  EXPECT_EQ(split.best_cs.blocks, (std::vector<CoalitionIndex>{1, 2}));

  const auto g6 = generate_game(6, DistributionKind::normal, 11);
  EXPECT_TRUE(same_value(solve_dp(g6).best_value, solve_enum(g6).best_value));
}

TEST(SolveDp, MatchesIndependentPartitionScan) {
  for (int n = 1; n <= 7; ++n) {
    for (auto kind : kAllDistributions) {
      const auto game = generate_game(n, kind, 31);
      const auto dp = solve_dp(game);
      EXPECT_TRUE(is_partition(dp.best_cs, n));
      EXPECT_TRUE(same_value(dp.best_value, oracle::best_partition_value(game)))
          << to_string(kind) << " n=" << n;
      EXPECT_EQ(dp.best_value, cs_value(game, dp.best_cs));
    }
  }
}

TEST(SolveDp, SplitCounterMatchesBruteForceCount) {
  for (int n = 1; n <= 5; ++n) {
    const CoalitionIndex grand = (1U << n) - 1;
    std::int64_t expected = 0;
    for (CoalitionIndex t = 1; t <= grand; ++t) {
      const CoalitionIndex low = t & (~t + 1);
      for (CoalitionIndex part = 1; part <= grand; ++part) {
        if ((part & ~t) == 0 && (part & low)) ++expected;
      }
    }
    const auto r = solve_dp(generate_game(n, DistributionKind::wrc, 0));
    EXPECT_EQ(meta_int(r, "splits"), expected) << n;
  }
}

TEST(SolveDp, ZeroGameStillPartitions) {
  const CoalitionGame zero(4, std::vector<double>(15, 0.0));
  const auto r = solve_dp(zero);
  EXPECT_EQ(r.best_value, 0.0);
  EXPECT_TRUE(is_partition(r.best_cs, 4));
}

TEST(SolveQuboExhaustive, TwoAgentGame) {
  const auto bilp = build_bilp(oracle::g2());
  const auto qubo = build_qubo(bilp, 10.0);
  const auto r = solve_qubo_exhaustive(qubo, bilp);
  EXPECT_EQ(to_bitstring(r.best_x), "001");
  EXPECT_EQ(std::get<double>(r.metadata.at("energy")), -24.0);
  EXPECT_EQ(r.best_value, 4.0);
  EXPECT_EQ(meta_int(r, "assignments"), 8);
}

TEST(SolveQuboExhaustive, AgreesWithOraclesAndStaysFeasible) {
  for (int n = 2; n <= 4; ++n) {
    for (auto kind : kAllDistributions) {
      const auto game = generate_game(n, kind, 6);
      const auto bilp = build_bilp(game);
      const auto r = solve_qubo_exhaustive(build_qubo(bilp), bilp);
      ASSERT_TRUE(r.feasible);
      EXPECT_TRUE(same_value(r.best_value, solve_dp(game).best_value)) << to_string(kind) << n;
      EXPECT_EQ(r.best_value, cs_value(game, r.best_cs));
    }
  }
}

TEST(SolveQuboExhaustive, ExactTiesUseStructureOrder) {
  const CoalitionGame zero(3, std::vector<double>(7, 0.0));
  const auto bilp = build_bilp(zero);
  const auto r = solve_qubo_exhaustive(build_qubo(bilp), bilp);
  EXPECT_EQ(r.best_cs.blocks, (std::vector<CoalitionIndex>{1, 2, 4}));
}

TEST(SolveQuboExhaustive, Guard) {
  const auto bilp = build_bilp(generate_game(5, DistributionKind::normal, 0));
  try {
    solve_qubo_exhaustive(build_qubo(bilp), bilp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource_limit);
  }
}

TEST(SolveQuboSa, TwoAgentGame) {
  const auto bilp = build_bilp(oracle::g2());
  const auto qubo = build_qubo(bilp, 10.0);
  AnnealSchedule s;
  s.sweeps = 100;
  s.temp_hi = 20.0;
  s.temp_lo = 1e-3;
  s.restarts = 3;
  s.seed = 4;
  const auto r = solve_qubo_sa(qubo, bilp, s);
  EXPECT_EQ(to_bitstring(r.best_x), "001");
  EXPECT_EQ(r.best_value, 4.0);
}

TEST(SolveQuboSa, FiveAgentsAgreeWithDp) {
  const auto game = generate_game(5, DistributionKind::modified_uniform, 5);
  const auto bilp = build_bilp(game);
  const auto qubo = build_qubo(bilp);
  const double optimum = solve_dp(game).best_value;
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = solve_qubo_sa(qubo, bilp, default_schedule(bilp, seed));
    hits += r.feasible && same_value(r.best_value, optimum);
  }
  EXPECT_GE(hits, 9);
}

TEST(SolveQuboSa, ZeroGameYieldsFeasibleState) {
  const CoalitionGame zero(3, std::vector<double>(7, 0.0));
  const auto bilp = build_bilp(zero);
  const auto r = solve_qubo_sa(build_qubo(bilp), bilp, default_schedule(bilp, 0));
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.best_value, 0.0);
}

TEST(SolveQuboSa, TraceNonIncreasingAndDeterministic) {
  const auto bilp = build_bilp(generate_game(4, DistributionKind::rayleigh, 3));
  const auto qubo = build_qubo(bilp);
  auto sched = default_schedule(bilp, 9);
  sched.sweeps = 200;
  const auto a = solve_qubo_sa(qubo, bilp, sched);
  const auto b = solve_qubo_sa(qubo, bilp, sched);
  ASSERT_EQ(a.energy_trace.size(), 200U);
  for (std::size_t k = 1; k < a.energy_trace.size(); ++k) {
    EXPECT_LE(a.energy_trace[k], a.energy_trace[k - 1]);
  }
  EXPECT_EQ(a.best_x, b.best_x);
  EXPECT_EQ(a.energy_trace, b.energy_trace);
  EXPECT_EQ(a.metadata, b.metadata);
}

TEST(SolveQuboSa, IncrementalEnergyMatchesRecomputation) {
  const auto bilp = build_bilp(generate_game(4, DistributionKind::laplace, 2));
  const auto qubo = build_qubo(bilp);
  const detail::Adjacency adj(qubo);
  Random rng(1);
  detail::FlipState state(qubo, adj, bits_from_mask(0x1234, qubo.size()));
  for (int k = 0; k < 500; ++k) {
    const auto i = static_cast<std::size_t>(rng.next() % qubo.size());
    state.flip(i, state.delta(i));
    ASSERT_NEAR(state.energy(), qubo_energy(qubo, state.bits()), 1e-6);
  }
}

TEST(AnnealSchedule, Validation) {
  const auto bilp = build_bilp(oracle::g2());
  const auto qubo = build_qubo(bilp);
  AnnealSchedule s;
  s.temp_hi = 1e-4;
  EXPECT_THROW(solve_qubo_sa(qubo, bilp, s), Error);
  s = AnnealSchedule{};
  s.sweeps = 0;
  EXPECT_THROW(solve_qubo_sa(qubo, bilp, s), Error);
  s = AnnealSchedule{};
  s.restarts = 0;
  EXPECT_THROW(solve_qubo_sa(qubo, bilp, s), Error);

  const auto d = default_schedule(bilp, 3);
  EXPECT_EQ(d.temp_hi, 14.0);
  EXPECT_EQ(d.temp_lo, 1e-3);
  EXPECT_EQ(d.sweeps, 300);
  EXPECT_EQ(d.restarts, 10);
}

}  // namespace
}  // namespace csgq
