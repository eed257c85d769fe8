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

// Walks one three-agent game through every representation and solver.

#include <iostream>

#include "csgq/csgq.hpp"

int main() {
  using namespace csgq;

  const auto game = generate_game(3, DistributionKind::sva_beta, 42);
  const auto bilp = build_bilp(game);
  const auto qubo = build_qubo(bilp);
  const auto ising = qubo_to_ising(qubo);

  std::cout << "variables " << qubo.size() << ", interactions " << interaction_count(qubo)
            << ", penalty " << qubo.lambda << "\n";

  for (const auto& report : {solve_dp(game), solve_qubo_exhaustive(qubo, bilp),
                             solve_qubo_sa(qubo, bilp, default_schedule(bilp, 42))}) {
    std::cout << report.method << ": value " << report.best_value << " blocks";
    for (auto b : report.best_cs.blocks) std::cout << ' ' << b;
    std::cout << '\n';
  }

  QaoaConfig config;
  const auto search = search_layers(ising, 6, config, 42);
  const auto& run = search.runs.back();
  const auto decoded = decode_solution(bits_from_mask(run.best_state, qubo.size()), bilp);
  std::cout << "qaoa p=" << run.best_params.layers() << " best " << run.best_bitstring()
            << (decoded.feasible ? " value " + std::to_string(cs_value(game, decoded.cs)) : " infeasible")
            << '\n';
}
