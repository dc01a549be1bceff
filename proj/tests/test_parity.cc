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

#include "bidgame/arena.h"
#include "bidgame/errors.h"
#include "bidgame/oracle.h"
#include "bidgame/parity.h"
#include "bidgame/richman.h"
#include "bidgame/sim.h"
#include "bidgame/strategy.h"
#include "doctest.h"
#include "support/oracles.h"

using namespace bidgame;
using testsupport::LoadFixture;

namespace {

Arena TwoVertexBscc(unsigned pa, unsigned pb) {
  Arena a(Objective::kParity);
  a.AddVertex("a");
  a.AddVertex("b");
  a.set_parity(0, pa);
  a.set_parity(1, pb);
  a.AddEdge(0, 1);
  a.AddEdge(1, 0);
  a.Validate();
  return a;
}

}  // namespace

TEST_CASE("bottom components are won by the parity of their maximum") {
  auto one = [](const Arena& a) {
    std::vector<BsccClass> c = ClassifyBsccs(a);
    REQUIRE(c.size() == 1);
    return c[0];
  };
  BsccClass even = one(TwoVertexBscc(2, 1));
  CHECK(even.winner == 2);
  CHECK(even.witness == 0);
  CHECK(even.max_parity == 2);
  BsccClass odd = one(TwoVertexBscc(1, 0));
  CHECK(odd.winner == 1);
  CHECK(odd.witness == 0);
  Arena self = LoadArena("objective parity\nvertex a parity=3\nedge a a\n");
  CHECK(one(self).winner == 1);
}

TEST_CASE("classification of random bottom components") {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    Arena a = testsupport::RandomParityScc(seed, 8);
    std::vector<BsccClass> c = ClassifyBsccs(a);
    REQUIRE(c.size() == 1);
    unsigned top = 0;
    for (int v = 0; v < a.num_vertices(); ++v) top = std::max(top, a.parity(v));
    CHECK(c[0].max_parity == top);
    CHECK(c[0].winner == (top % 2 == 1 ? 1 : 2));
    CHECK(a.parity(c[0].witness) == top);
    for (int v = 0; v < c[0].witness; ++v) CHECK(a.parity(v) < top);
  }
}

TEST_CASE("parity thresholds of the examples") {
  Arena conn = LoadFixture("parity-connector.game");
  RichmanValues rc = ParityThresholds(conn);
  CHECK(rc.values[conn.Vertex("c")] == Rational(1, 2));
  CHECK(rc.values[conn.Vertex("w")] == 0);
  CHECK(rc.values[conn.Vertex("l")] == 1);

  Arena odd = LoadArena(
      "objective parity\nvertex a\nvertex b parity=1\nvertex c parity=3\n"
      "edge a b\nedge a c\nedge b b\nedge c c\n");
  for (const Rational& x : ParityThresholds(odd).values) CHECK(x == 0);

  Arena fig = LoadFixture("parity-fig1.game");
  RichmanValues rf = ParityThresholds(fig);
  CHECK(rf.values[fig.Vertex("v0")] == Rational(2, 3));
  CHECK(rf.values[fig.Vertex("v2")] == Rational(1, 3));
}

TEST_CASE("parity thresholds agree with the grid oracle") {
  for (const char* f : {"parity-connector.game", "parity-fig1.game"}) {
    Arena a = LoadFixture(f);
    RichmanValues rv = ParityThresholds(a);
    DiscreteTable t = DiscreteBackwardInduction(ParityReduction(a).richman, 32, 64);
    for (int v = 0; v < a.num_vertices(); ++v) {
      ThresholdBracket b = t.Bracket(v);
      CHECK(b.lo <= rv.values[v]);
      CHECK(rv.values[v] <= b.hi);
    }
  }
}

TEST_CASE("memoryless parity strategy on the example") {
  Arena a = LoadFixture("parity-fig1.game");
  int v0 = a.Vertex("v0");
  ParityStrategy s(a, 1, Rational(7, 10), v0);
  CHECK(s.eps() == Rational(7, 10) - Rational(2, 3));
  Action first = s.Act(v0, Rational(7, 10), 0, 0);
  CHECK(first.bid > Rational(1, 3));
  CHECK(first.bid <= Rational(7, 10));
  CHECK(a.edge(first.edge).dst == a.Vertex("v2"));

  CHECK_THROWS_AS(ParityStrategy(a, 1, Rational(2, 3), v0), DomainError);
  CHECK_THROWS_AS(ParityStrategy(a, 1, Rational(1, 2), v0), DomainError);
  // Player 2 needs more than 1/3 at v0.
  CHECK_THROWS_AS(ParityStrategy(a, 2, Rational(1, 3), v0), DomainError);
  CHECK_NOTHROW(ParityStrategy(a, 2, Rational(2, 5), v0));
}

TEST_CASE("inside a winning component any positive budget is enough") {
  Arena a = TwoVertexBscc(1, 0);
  for (const Rational& b : {Rational(1, 1000), Rational(1, 2), Rational(1)}) {
    ParityStrategy s(a, 1, b, 1);
    Action act = s.Act(1, b, 0, 0);
    CHECK(act.bid >= 0);
    CHECK(act.bid <= b);
  }
}

TEST_CASE("parity strategy stays legal and wins the tail against baselines") {
  struct Case {
    const char* fixture;
    const char* start;
  };
  for (const Case& c : {Case{"parity-fig1.game", "v0"}, Case{"parity-connector.game", "c"},
                        Case{"buchi.game", "f"}}) {
    Arena a = LoadFixture(c.fixture);
    int start = a.Vertex(c.start);
    Rational budget = ParityThresholds(a).values[start] + Rational(1, 20);
    if (budget > 1) continue;
    for (const char* adv : {"random:seed=3", "random:seed=11", "greedy", "allin"}) {
      BatchConfig bc;
      bc.p1 = "parity";
      bc.p2 = adv;
      bc.seeds = {0};
      bc.episode.init = {start, budget, 1 - budget, 0, 0};
      bc.episode.horizon = 100000;
      bc.episode.monitors = {"legality", "budget-conservation"};
      bc.episode.keep_records = false;
      BatchReport rep = RunBatch(a, bc);
      const EpisodeTrace& t = rep.episodes[0];
      INFO(c.fixture << " vs " << adv);
      CHECK(t.summary.end == "horizon");
      CHECK(t.monitors_pass());
      CHECK(t.summary.tail_max_parity % 2 == 1);
    }
  }
}

TEST_CASE("unwinding the Buchi example") {
  Arena g = LoadFixture("buchi.game");
  std::vector<bool> acc(g.num_vertices(), false);
  acc[g.Vertex("f")] = true;
  std::vector<int> cycle = {g.Vertex("c1"), g.Vertex("c2")};
  CHECK(CycleClosingEdge(g, cycle) == g.edges().size() - 2);

  for (int k : {1, 3}) {
    Arena u = UnwindBuchi(g, acc, cycle, k);
    CHECK(u.objective() == Objective::kRichman);
    int base = 0;
    for (int v = 0; v < u.num_vertices(); ++v) {
      base += u.name(v).find('@') != std::string::npos;
    }
    CHECK(base == 3 * (k + 1));
    RichmanValues rv = RichmanExact(u);
    for (const char* n : {"f@0", "c1@0", "c2@0"}) CHECK(rv.values[u.Vertex(n)] == 1);
    // Edges into f return to level 0; the closing edge climbs.
    int c2 = u.Vertex("c2@0");
    bool to_f0 = false, to_c1_1 = false;
    for (int e : u.out(c2)) {
      to_f0 = to_f0 || u.edge(e).dst == u.Vertex("f@0");
      to_c1_1 = to_c1_1 || u.edge(e).dst == u.Vertex("c1@1");
    }
    CHECK(to_f0);
    CHECK(to_c1_1);
  }
  CHECK_THROWS_AS(UnwindBuchi(g, acc, {g.Vertex("f"), g.Vertex("c1"), g.Vertex("c2")}, 2),
                  DomainError);
  CHECK_THROWS_AS(UnwindBuchi(g, acc, {g.Vertex("c1"), g.Vertex("f")}, 2), DomainError);
  CHECK_THROWS_AS(UnwindBuchi(g, acc, cycle, 0), DomainError);
}
