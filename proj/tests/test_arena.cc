// Copyright 2026 The bidgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <set>

#include "bidgame/arena.h"
#include "bidgame/errors.h"
#include "bidgame/meanpayoff.h"
#include "bidgame/parity.h"
#include "bidgame/richman.h"
#include "doctest.h"
#include "support/oracles.h"

using namespace bidgame;
using testsupport::LoadFixture;

namespace {

std::set<std::set<std::string>> NamedComponents(
    const Arena& a, const std::vector<std::vector<int>>& comps) {
  std::set<std::set<std::string>> out;
  for (const auto& c : comps) {
    std::set<std::string> names;
    for (int v : c) names.insert(a.name(v));
    out.insert(names);
  }
  return out;
}

std::vector<Arena> AllFixtures() {
  std::vector<Arena> out;
  for (const char* f :
       {"biased-loop.game", "buchi.game", "fig1-reach.game", "fig1-richman.game",
        "fig3.game", "general3.game", "mp-connector.game", "mp-fig1.game",
        "parity-connector.game", "parity-fig1.game", "pos-loop.game",
        "two-loop.game"}) {
    out.push_back(LoadFixture(f));
  }
  return out;
}

}  // namespace

TEST_CASE("loading the reachability fixture") {
  Arena a = LoadFixture("fig1-reach.game");
  CHECK(a.objective() == Objective::kReachability);
  CHECK(a.num_vertices() == 4);
  CHECK(a.num_edges() == 4);
  CHECK(a.is_target(a.Vertex("t")));
  CHECK_FALSE(a.is_target(a.Vertex("v0")));
  CHECK(a.edge(1).name == "b");
}

TEST_CASE("loading the two-loop fixture keeps parallel edges") {
  Arena a = LoadFixture("two-loop.game");
  REQUIRE(a.num_vertices() == 1);
  REQUIRE(a.num_edges() == 2);
  CHECK(a.edge(0).weight == 1);
  CHECK(a.edge(1).weight == -1);
  CHECK(a.edge(0).src == 0);
  CHECK(a.edge(1).dst == 0);
}

TEST_CASE("dead ends are rejected in mean-payoff games") {
  CHECK_THROWS_AS(LoadArena("objective meanpayoff\nvertex a\nvertex b\nedge a b\n"),
                  ValidationError);
}

TEST_CASE("parse errors carry the line number") {
  try {
    LoadArena("objective richman\nvertex a target=1\nvertex b target=2\nedge a zz\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(LoadArena("vertex a\n"), ParseError);
  CHECK_THROWS_AS(LoadArena("objective chess\n"), ParseError);
  CHECK_THROWS_AS(LoadArena("objective parity\nvertex a parity=-1\nedge a a\n"),
                  ParseError);
  CHECK_THROWS_AS(LoadArena("objective meanpayoff\nvertex a\nedge a a weight=x\n"),
                  ParseError);
  CHECK_THROWS_AS(LoadArena("objective reachability\nvertex a target=2\nedge a a\n"),
                  ParseError);
  CHECK_THROWS_AS(LoadArenaFile("/nonexistent/file.game"), IoError);
}

TEST_CASE("weights are exact rationals, decimals included") {
  Arena a = LoadArena(
      "objective meanpayoff\nvertex a\nedge a a weight=0.1\nedge a a weight=-2/3\n");
  CHECK(a.edge(0).weight == Rational(1, 10));
  CHECK(a.edge(1).weight == Rational(-2, 3));
}

TEST_CASE("vertex weights move onto outgoing edges") {
  Arena a = LoadArena(
      "objective meanpayoff\nvertex a weight=2\nvertex b\n"
      "edge a b weight=1\nedge b a\nedge a a weight=-1\n");
  CHECK(a.edge(0).weight == 3);
  CHECK(a.edge(1).weight == 0);
  CHECK(a.edge(2).weight == 1);
}

TEST_CASE("tie rules") {
  CHECK(ParseTieRule("player1").Winner(5) == 1);
  CHECK(ParseTieRule("player2").Winner(0) == 2);
  TieRule alt = ParseTieRule("alternate=2");
  CHECK(alt.Winner(0) == 2);
  CHECK(alt.Winner(1) == 1);
  CHECK(alt.Winner(2) == 2);
  CHECK_THROWS_AS(ParseTieRule("coin"), std::invalid_argument);
  Arena a = LoadArena("objective meanpayoff\ntiebreak alternate=1\nvertex a\nedge a a\n");
  CHECK(a.tie_rule() == TieRule::Alternate(1));
}

TEST_CASE("serialization round trips") {
  for (const Arena& a : AllFixtures()) {
    CHECK(LoadArena(SerializeArena(a)) == a);
  }
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Arena r = testsupport::RandomRichman(seed, 10);
    CHECK(LoadArena(SerializeArena(r)) == r);
    Arena m = testsupport::RandomMeanPayoffScc(seed, 6);
    m.set_tie_rule(TieRule::Alternate(2));
    CHECK(LoadArena(SerializeArena(m)) == m);
  }
}

TEST_CASE("strongly connected components of the examples") {
  Arena a = LoadFixture("fig1-reach.game");
  SccDecomposition d = SccDecompose(a);
  CHECK(NamedComponents(a, d.components) ==
        std::set<std::set<std::string>>{{"t"}, {"v1"}, {"v0", "v2"}});
  for (size_t c = 0; c < d.components.size(); ++c) {
    bool single = d.components[c].size() == 1;
    CHECK(d.bottom[c] == single);
  }

  Arena loop = LoadFixture("two-loop.game");
  SccDecomposition dl = SccDecompose(loop);
  REQUIRE(dl.components.size() == 1);
  CHECK(dl.bottom[0]);

  Arena dag = LoadArena(
      "objective reachability\nvertex a\nvertex b\nvertex c target=1\n"
      "edge a b\nedge b c\n");
  SccDecomposition dd = SccDecompose(dag);
  REQUIRE(dd.components.size() == 3);
  for (size_t c = 0; c < 3; ++c) {
    CHECK(dd.bottom[c] == (dd.components[c][0] == dag.Vertex("c")));
  }
}

TEST_CASE("component partition agrees with the transitive closure") {
  std::vector<Arena> arenas = AllFixtures();
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    arenas.push_back(testsupport::RandomRichman(seed, 12));
  }
  for (const Arena& a : arenas) {
    SccDecomposition d = SccDecompose(a);
    std::vector<std::vector<int>> sorted = d.components;
    for (auto& c : sorted) std::sort(c.begin(), c.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<int>> want = testsupport::ClosureSccs(a);
    std::sort(want.begin(), want.end());
    CHECK(sorted == want);
    for (size_t c = 0; c < d.components.size(); ++c) {
      CHECK(d.bottom[c] == testsupport::IsClosed(a, d.components[c]));
      for (int v : d.components[c]) CHECK(d.component_of[v] == static_cast<int>(c));
    }
    // Edges only lead into the same or an earlier component.
    for (const Edge& e : a.edges()) {
      CHECK(d.component_of[e.dst] <= d.component_of[e.src]);
    }
  }
}

TEST_CASE("vertices without a path to the target") {
  Arena a = LoadFixture("fig1-reach.game");
  CHECK(UnreachableFromTarget(a, a.TargetSet()) == std::vector<int>{a.Vertex("v1")});
  CHECK(UnreachableFromTarget(a, std::vector<bool>(4, true)).empty());
  Arena scc = LoadFixture("general3.game");
  std::vector<bool> one(scc.num_vertices(), false);
  one[1] = true;
  CHECK(UnreachableFromTarget(scc, one).empty());
}

TEST_CASE("solver outputs do not depend on the tie rule") {
  for (const Arena& base : AllFixtures()) {
    for (TieRule t : {TieRule::Player1(), TieRule::Player2(), TieRule::Alternate(2)}) {
      Arena a = base;
      a.set_tie_rule(t);
      switch (a.objective()) {
        case Objective::kRichman:
          CHECK(RichmanExact(a).values == RichmanExact(base).values);
          break;
        case Objective::kReachability:
          CHECK(RichmanExact(ReachToRichman(a)).values ==
                RichmanExact(ReachToRichman(base)).values);
          break;
        case Objective::kParity:
          CHECK(ParityThresholds(a).values == ParityThresholds(base).values);
          break;
        case Objective::kMeanPayoff:
          CHECK(MpThresholds(a).values == MpThresholds(base).values);
          break;
      }
    }
  }
}
