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

#include <cmath>

#include "bidgame/arena.h"
#include "bidgame/errors.h"
#include "bidgame/meanpayoff.h"
#include "bidgame/richman.h"
#include "bidgame/strategy.h"
#include "doctest.h"
#include "support/oracles.h"

using namespace bidgame;
using testsupport::LoadFixture;

namespace {

RoundRecord Round(int winner, const Rational& bid1, const Rational& bid2) {
  RoundRecord r;
  r.winner = winner;
  r.bid1 = bid1;
  r.bid2 = bid2;
  return r;
}

}  // namespace

TEST_CASE("richman countdown strategy on the example") {
  Arena a = LoadFixture("fig1-richman.game");
  int v0 = a.Vertex("v0");
  RichmanWinnerStrategy s(a, 1, Rational(19, 25), v0);
  CHECK(s.rounds() == 2);
  CHECK(s.threshold() == Rational(2, 3));
  CHECK(s.level(2)[v0] == Rational(3, 4));
  Action act = s.Act(v0, Rational(19, 25), 0, 0);
  CHECK(act.bid >= 0);
  CHECK(act.bid <= Rational(19, 25));
  CHECK_THROWS_AS(RichmanWinnerStrategy(a, 1, Rational(2, 3), v0, 200), DomainError);
  // Player 2 plays the complementary game and wins above 1/3.
  CHECK_NOTHROW(RichmanWinnerStrategy(a, 2, Rational(2, 5), v0));
}

TEST_CASE("segment length of the Min strategy") {
  Arena a = LoadFixture("two-loop.game");
  MinMpStrategy s(a, 0, Rational(1, 5), 10);
  CHECK(s.bm() == 1);
  CHECK(s.wm() == 0);
  CHECK(s.reserve() == Rational(1, 10));
  // 0.18 > 11 / N first holds at N = 62.
  CHECK(s.n_initial() == 62);
  CHECK(s.n_initial() ==
        testsupport::SearchMinN(Rational(1, 5), 10, s.bm(), s.wm(), Rational(1, 10)));
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    Rational budget(static_cast<long>(seed % 9 + 1), 10 + static_cast<long>(seed));
    Rational energy(static_cast<long>(seed * 7 % 23));
    Rational bm(static_cast<long>(seed % 4), 3);
    Rational wm(static_cast<long>(seed % 5));
    budget.canonicalize();
    bm.canonicalize();
    CHECK(MinMpStrategy::ChooseN(budget, energy, bm, wm, Rational(1, 10)) ==
          testsupport::SearchMinN(budget, energy, bm, wm, Rational(1, 10)));
  }
}

TEST_CASE("Min strategy bids") {
  Arena two = LoadFixture("two-loop.game");
  MinMpStrategy s(two, 0, Rational(1, 5), 10);
  Action act = s.Act(0, Rational(1, 5), 10, 0);
  CHECK(s.phase() == MinMpStrategy::Phase::kActive);
  CHECK(act.bid == Rational(1, 62));
  CHECK(two.edge(act.edge).weight == -1);

  // Out of energy the strategy idles with zero bids.
  MinMpStrategy idle(two, 0, Rational(1, 5), 10);
  Action zero = idle.Act(0, Rational(1, 5), 0, 0);
  CHECK(idle.phase() == MinMpStrategy::Phase::kIdle);
  CHECK(zero.bid == 0);

  Arena biased = LoadFixture("biased-loop.game");
  MinMpStrategy b(biased, 0, Rational(1, 2), 4);
  CHECK(b.bm() == Rational(3, 2));
  Action bb = b.Act(0, Rational(1, 2), 4, 0);
  CHECK(bb.bid == Rational(3, 2) / Rational(b.n()));
  CHECK(biased.edge(bb.edge).weight == -2);
}

TEST_CASE("Min strategy preconditions") {
  Arena pos = LoadFixture("pos-loop.game");
  CHECK_THROWS_AS(MinMpStrategy(pos, 0, Rational(1, 2), 1), DomainError);
  Arena two = LoadFixture("two-loop.game");
  CHECK_THROWS(MinMpStrategy(two, 0, 0, 1));
  CHECK_THROWS(MinMpStrategy(two, 0, Rational(1, 2), -1));
}

TEST_CASE("Max strategy parameters") {
  Arena pos = LoadFixture("pos-loop.game");
  MaxRecurrentStrategy r(pos, Rational(9, 10));
  CHECK(r.root() == 0);
  CHECK(r.z() == doctest::Approx(2));
  CHECK_FALSE(r.degenerate());
  CHECK(r.wm() == doctest::Approx(2));
  // M is the least integer with (bM + 3 wM) / (1 - 1/z) <= M.
  CHECK(r.m() == static_cast<long>(std::ceil((r.bm() + 3 * r.wm()) / (1 - 1 / r.z()))));
  CHECK(r.m() == 16);
  CHECK(r.ki() == 80);
  CHECK(r.ki() == Rational(r.m()) * (r.currency() - 1));
  // Less budget needs a higher starting currency.
  MaxRecurrentStrategy poor(pos, Rational(1, 10));
  CHECK(poor.currency() >= r.currency());

  Arena g3 = LoadFixture("general3.game");
  MaxGeneralStrategy g(g3, g3.Vertex("a"), Rational(9, 10));
  CHECK(g.z() == doctest::Approx(std::sqrt(2.0)));
  CHECK(g.m() == 14);
  CHECK(g.ki() == 378);
  CHECK(g.m() == MaxGeneralStrategy::ChooseM(g.z(), g.wm(), g.bm(), g.omega()));
}

TEST_CASE("Max strategy without negative weight") {
  Arena up = LoadArena(
      "objective meanpayoff\nvertex u\nedge u u weight=1\nedge u u weight=2\n");
  MaxRecurrentStrategy s(up, Rational(1, 2));
  CHECK(s.degenerate());
  Action act = s.Act(0, Rational(1, 2), 1, 0);
  CHECK(act.bid == 0);
  CHECK(up.edge(act.edge).weight == 2);
}

TEST_CASE("Max strategy preconditions") {
  Arena two = LoadFixture("two-loop.game");
  CHECK_THROWS_AS(MaxRecurrentStrategy(two, Rational(1, 2)), DomainError);
  CHECK_THROWS_AS(MaxGeneralStrategy(two, 0, Rational(1, 2)), DomainError);
  Arena pos = LoadFixture("pos-loop.game");
  CHECK_THROWS_AS(MaxRecurrentStrategy(pos, 0), DomainError);
  CHECK_THROWS_AS(MaxRecurrentStrategy(pos, Rational(3, 2)), DomainError);
  // general3 has no vertex lying on every cycle.
  Arena g3 = LoadFixture("general3.game");
  CHECK_THROWS_AS(MaxRecurrentStrategy(g3, Rational(1, 2)), DomainError);
}

TEST_CASE("tit-for-tat matches the smallest unmatched bid") {
  Arena two = LoadFixture("two-loop.game");
  TitForTatStrategy s(two);
  Action first = s.Act(0, Rational(1, 2), 0, 0);
  CHECK(first.bid == 0);
  CHECK(two.edge(first.edge).weight == -1);

  s.Observe(Round(2, 0, Rational(1, 8)));
  s.Observe(Round(2, 0, Rational(1, 16)));
  CHECK(s.unmatched().size() == 2);
  CHECK(s.Act(0, Rational(1, 2), 2, 2).bid == Rational(1, 16));
  // The bid is capped by the budget.
  CHECK(s.Act(0, Rational(1, 32), 2, 2).bid == Rational(1, 32));
  s.Observe(Round(1, Rational(1, 16), 0));
  CHECK(s.unmatched().size() == 1);
  CHECK(*s.unmatched().begin() == Rational(1, 8));
  s.Observe(Round(1, Rational(1, 8), 0));
  s.Observe(Round(1, 0, 0));
  CHECK(s.unmatched().empty());
  CHECK(s.free_wins() == 1);

  CHECK_THROWS_AS(TitForTatStrategy(LoadFixture("pos-loop.game")), DomainError);
  CHECK_THROWS_AS(TitForTatStrategy(LoadFixture("general3.game")), DomainError);
}

TEST_CASE("baseline strategies") {
  Arena two = LoadFixture("two-loop.game");
  GreedyStrategy g(two, 2, 0.5, EdgeRule::kMaxWeight);
  Action ga = g.Act(0, Rational(1, 2), 0, 0);
  CHECK(ga.bid == Rational(1, 4));
  CHECK(two.edge(ga.edge).weight == 1);
  AllInStrategy all(two, 1, EdgeRule::kMinWeight);
  Action aa = all.Act(0, Rational(3, 7), 0, 0);
  CHECK(aa.bid == Rational(3, 7));
  CHECK(two.edge(aa.edge).weight == -1);

  CHECK_THROWS_AS(GreedyStrategy(two, 1, 1.5, EdgeRule::kMinWeight), DomainError);
  CHECK_THROWS_AS(GreedyStrategy(two, 1, -0.1, EdgeRule::kMinWeight), DomainError);
  CHECK_THROWS_AS(GreedyStrategy(two, 1, 0.5, EdgeRule::kUniform), DomainError);
  CHECK_THROWS_AS(AllInStrategy(two, 1, EdgeRule::kUniform), DomainError);

  // Random bids stay within the budget and replay under the same seed.
  RandomStrategy r1(two, 1, 42), r2(two, 1, 42);
  for (int i = 0; i < 200; ++i) {
    Rational b(i + 1, 211);
    Action x = r1.Act(0, b, 0, i), y = r2.Act(0, b, 0, i);
    CHECK(x.bid == y.bid);
    CHECK(x.edge == y.edge);
    CHECK(x.bid >= 0);
    CHECK(x.bid <= b);
  }
}

TEST_CASE("edge rules") {
  CHECK(ParseEdgeRule("max") == EdgeRule::kMaxWeight);
  CHECK(ParseEdgeRule("min") == EdgeRule::kMinWeight);
  CHECK(ParseEdgeRule("uniform") == EdgeRule::kUniform);
  CHECK_THROWS_AS(ParseEdgeRule("up"), std::invalid_argument);
  for (EdgeRule r : {EdgeRule::kUniform, EdgeRule::kMaxWeight, EdgeRule::kMinWeight}) {
    CHECK(ParseEdgeRule(EdgeRuleName(r)) == r);
  }
  Arena two = LoadFixture("two-loop.game");
  CHECK(ExtremeWeightEdge(two, 0, true) == 0);
  CHECK(ExtremeWeightEdge(two, 0, false) == 1);
  Arena tie = LoadArena("objective meanpayoff\nvertex u\nedge u u\nedge u u\n");
  CHECK(ExtremeWeightEdge(tie, 0, true) == 0);
  CHECK(ExtremeWeightEdge(tie, 0, false) == 0);
}

TEST_CASE("strategy specifications") {
  Arena two = LoadFixture("two-loop.game");
  StrategyContext p1{1, Rational(1, 5), 0, 10, 7};
  StrategyContext p2{2, Rational(4, 5), 0, 10, 7};
  CHECK(MakeStrategy("min", two, p1)->kind() == "min");
  CHECK(MakeStrategy("min:reserve=1/5", two, p1)->Params()["reserve"] == "1/5");
  CHECK(MakeStrategy("tft", two, p1)->kind() == "tft");
  CHECK(MakeStrategy("random:seed=3,edge=max", two, p2)->Params()["seed"] == 3);
  CHECK(MakeStrategy("random", two, p2)->Params()["seed"] == 7);
  CHECK(MakeStrategy("greedy", two, p2)->Params()["dir"] == "max");
  CHECK(MakeStrategy("greedy", two, p1)->Params()["dir"] == "min");
  CHECK(MakeStrategy("allin:dir=max", two, p1)->Params()["dir"] == "max");

  CHECK_THROWS_AS(MakeStrategy("chess", two, p1), std::invalid_argument);
  CHECK_THROWS_AS(MakeStrategy("random:seed", two, p1), std::invalid_argument);
  CHECK_THROWS_AS(MakeStrategy("random:color=red", two, p1), std::invalid_argument);
  CHECK_THROWS_AS(MakeStrategy("min", two, p2), DomainError);
  CHECK_THROWS_AS(MakeStrategy("tft", two, p2), DomainError);
  CHECK_THROWS_AS(MakeStrategy("max-recurrent", two, p1), DomainError);
  CHECK_THROWS(MakeStrategy("min:u=nowhere", two, p1));
}
