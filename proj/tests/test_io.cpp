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

#include <filesystem>
#include <sstream>

#include "csgq/io.hpp"
#include "oracles.hpp"

namespace csgq {
namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::config;
}

TEST(GameJson, RoundTrip) {
  for (const auto kind : kAllDistributions) {
    const auto game = generate_game(4, kind, 17);
    const auto path = std::filesystem::temp_directory_path() / "csgq_game_roundtrip.json";
    save_game(game, path.string());
    EXPECT_EQ(load_game(path.string()), game);
    std::filesystem::remove(path);
  }
}

TEST(GameJson, Layout) {
  const auto j = game_to_json(oracle::g2());
  EXPECT_EQ(j.dump(), R"({"n":2,"dist":null,"seed":null,"values":{"1":1.0,"2":2.0,"3":4.0}})");
}

TEST(GameJson, SchemaErrors) {
  auto good = game_to_json(oracle::g2());
  auto missing = good;
  missing["values"].erase("3");
  EXPECT_EQ(kind_of([&] { game_from_json(missing); }), ErrorKind::schema);
  auto zero = good;
  zero["n"] = 0;
  zero["values"] = Json::object();
  EXPECT_EQ(kind_of([&] { game_from_json(zero); }), ErrorKind::schema);
  auto extra = good;
  extra["values"]["4"] = 1.0;
  EXPECT_EQ(kind_of([&] { game_from_json(extra); }), ErrorKind::schema);
  auto no_values = good;
  no_values.erase("values");
  EXPECT_EQ(kind_of([&] { game_from_json(no_values); }), ErrorKind::schema);
}

TEST(GameJson, MalformedReportsLine) {
  try {
    detail::parse_json("{\n  \"n\": 2,\n  \"values\": [\n", "game.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos) << e.what();
  }
}

TEST(QuboText, RoundTripIsExact) {
  const auto bilp = build_bilp(generate_game(3, DistributionKind::laplace, 9));
  const auto qubo = build_qubo(bilp);
  std::stringstream text;
  write_qubo_text(text, qubo);
  const auto back = read_qubo_text(text);
  EXPECT_EQ(back.diag, qubo.diag);
  EXPECT_EQ(back.offdiag, qubo.offdiag);
  EXPECT_EQ(back.lambda, qubo.lambda);
  EXPECT_EQ(back.constant, qubo.constant);
}

TEST(QuboText, ParseErrorsCarryLineNumbers) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"0 0 1\n", ":1:"},
      {"n 2\n0 0 1\n0 5 1\n", ":3:"},
      {"n 2\n1 0 1\n", ":2:"},
      {"n 2\n0 1 x\n", ":2:"},
      {"# nothing\n", "missing"},
  };
  for (const auto& [text, needle] : cases) {
    std::istringstream in(text);
    try {
      read_qubo_text(in, "q.txt");
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::parse);
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  }
}

TEST(ModelJson, QuboAndIsingRoundTrip) {
  const auto bilp = build_bilp(generate_game(3, DistributionKind::wrc, 2));
  const auto qubo = build_qubo(bilp);
  const auto j = qubo_to_json(qubo, &bilp);
  EXPECT_EQ(j["columns"].size(), 7U);
  const auto q2 = qubo_from_json(Json::parse(j.dump()));
  EXPECT_EQ(q2.diag, qubo.diag);
  EXPECT_EQ(q2.offdiag, qubo.offdiag);

  const auto ising = qubo_to_ising(qubo);
  const auto i2 = ising_from_json(Json::parse(ising_to_json(ising).dump()));
  EXPECT_EQ(i2.h, ising.h);
  EXPECT_EQ(i2.couplings, ising.couplings);
  EXPECT_EQ(i2.offset, ising.offset);
  EXPECT_EQ(i2.constant, ising.constant);

  auto broken = ising_to_json(ising);
  broken["J"][0][0] = 6;
  EXPECT_EQ(kind_of([&] { ising_from_json(broken); }), ErrorKind::schema);
}

TEST(Circuit, DumpRoundTrip) {
  const auto ising = qubo_to_ising(build_qubo(build_bilp(oracle::g2())));
  const auto c = build_circuit(ising, {{0.3, 0.1}, {0.02, 0.04}});
  std::stringstream text;
  write_circuit(text, c);
  const auto back = read_circuit(text, 3);
  ASSERT_EQ(back.gates.size(), c.gates.size());
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    EXPECT_EQ(back.gates[k].kind, c.gates[k].kind);
    EXPECT_EQ(back.gates[k].target, c.gates[k].target);
    EXPECT_EQ(back.gates[k].angle, c.gates[k].angle);
    if (c.gates[k].kind == GateKind::cx) EXPECT_EQ(back.gates[k].control, c.gates[k].control);
  }
  std::istringstream bad("H 0\nCX 1 1\n");
  EXPECT_EQ(kind_of([&] { read_circuit(bad, 3); }), ErrorKind::parse);
}

TEST(Report, TimingIsSeparable) {
  const auto bilp = build_bilp(oracle::g2());
  auto a = report_to_json(solve_qubo_exhaustive(build_qubo(bilp), bilp));
  auto b = report_to_json(solve_qubo_exhaustive(build_qubo(bilp), bilp));
  ASSERT_TRUE(a.contains("timing"));
  a["timing"]["wall_ms"] = 1.0;
  b["timing"]["wall_ms"] = 2.0;
  EXPECT_NE(a.dump(), b.dump());
  EXPECT_EQ(without_timing(a).dump(), without_timing(b).dump());
  EXPECT_EQ(a["best_cs_agents"].dump(), "[[1,2]]");
  EXPECT_EQ(a["best_x"], "001");
}

}  // namespace
}  // namespace csgq
