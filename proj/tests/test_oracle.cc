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
#include <random>

#include "bidgame/arena.h"
#include "bidgame/errors.h"
#include "bidgame/meanpayoff.h"
#include "bidgame/oracle.h"
#include "bidgame/richman.h"
#include "doctest.h"
#include "support/oracles.h"

using namespace bidgame;
using testsupport::LoadFixture;

namespace {

Rational Frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Player 1 holding i wins the step when some bid b1 beats every answer b2.
bool StepByEnumeration(const std::vector<uint8_t>& e, const std::vector<uint8_t>& a,
                       int i, bool tie_to_p1) {
  const int d = static_cast<int>(e.size()) - 1;
  for (int b1 = 0; b1 <= i; ++b1) {
    bool all = true;
    for (int b2 = 0; b2 <= d - i && all; ++b2) {
      bool p1 = b1 > b2 || (b1 == b2 && tie_to_p1);
      all = p1 ? e[i - b1] : a[i + b2];
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("grid bracket of the example") {
  Arena a = LoadFixture("fig1-richman.game");
  DiscreteTable t = DiscreteBackwardInduction(a, 12, 30);
  CHECK(t.grid() == 12);
  CHECK(t.horizon() == 30);
  ThresholdBracket b = t.Bracket(a.Vertex("v0"));
  CHECK(b.any_win);
  CHECK(b.lo <= Rational(2, 3));
  CHECK(Rational(2, 3) <= b.hi);
  CHECK(b.hi - b.lo == Rational(1, 12));
  CHECK(b.estimate == Frac(b.index, 12));
  for (int i = 0; i <= 12; ++i) {
    for (int s = 0; s <= 30; ++s) {
      CHECK(t.Win1(a.vr(), i, s));
      CHECK_FALSE(t.Win1(a.vs(), i, s));
    }
  }
  ThresholdBracket lost = t.Bracket(a.vs());
  CHECK_FALSE(lost.any_win);
  CHECK(lost.index == 13);
  CHECK(lost.estimate == 1);
}

TEST_CASE("grid table agrees with exhaustive play") {
  std::vector<Arena> games{LoadFixture("fig1-richman.game")};
  for (uint64_t seed = 1; seed <= 12; ++seed) games.push_back(testsupport::RandomRichman(seed, 6));
  for (Arena& g : games) {
    for (TieRule rule : {TieRule::Player1(), TieRule::Player2(), TieRule::Alternate(1)}) {
      g.set_tie_rule(rule);
      for (int d : {2, 4}) {
        for (int steps : {1, 2, 4}) {
          DiscreteTable t = DiscreteBackwardInduction(g, d, steps);
          for (int v = 0; v < g.num_vertices(); ++v) {
            for (int i = 0; i <= d; ++i) {
              CHECK(t.Win1(v, i, steps) == testsupport::BruteGridWin(g, d, v, i, steps));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("grid estimates approach the exact thresholds") {
  // The tie advantage and the bid granularity move the grid threshold by
  // at most two grid steps on these games.
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    Arena g = testsupport::RandomRichman(seed, 8);
    RichmanValues rv = RichmanExact(g);
    for (TieRule rule : {TieRule::Player1(), TieRule::Player2()}) {
      g.set_tie_rule(rule);
      for (int d : {8, 16, 32}) {
        DiscreteTable t = DiscreteBackwardInduction(g, d, 4 * d);
        for (int v = 0; v < g.num_vertices(); ++v) {
          ThresholdBracket b = t.Bracket(v);
          CHECK(Abs(b.estimate - rv.values[v]) <= Frac(2, d));
          if (!b.any_win) CHECK(rv.values[v] > Frac(d - 2, d));
        }
      }
    }
  }
}

TEST_CASE("more budget never hurts on the grid") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Arena g = testsupport::RandomRichman(seed, 8);
    for (TieRule rule : {TieRule::Player1(), TieRule::Player2(), TieRule::Alternate(2)}) {
      g.set_tie_rule(rule);
      DiscreteTable t = DiscreteBackwardInduction(g, 16, 24);
      for (int s = 0; s <= 24; ++s) {
        for (int v = 0; v < g.num_vertices(); ++v) {
          for (int i = 0; i < 16; ++i) {
            if (t.Win1(v, i, s)) CHECK(t.Win1(v, i + 1, s));
          }
        }
      }
    }
  }
}

TEST_CASE("one grid step by enumeration") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 9);
    std::vector<uint8_t> e(d + 1), a(d + 1);
    // Winning sets are upward closed in the budget.
    int ce = static_cast<int>(rng() % (d + 2)), ca = static_cast<int>(rng() % (d + 2));
    for (int j = 0; j <= d; ++j) {
      e[j] = j >= ce;
      a[j] = j >= ca;
    }
    for (int i = 0; i <= d; ++i) {
      for (bool tie : {true, false}) {
        CHECK(GridStepWins(e, a, i, tie) == StepByEnumeration(e, a, i, tie));
      }
    }
  }
}

TEST_CASE("grid oracle limits") {
  Arena a = LoadFixture("fig1-richman.game");
  CHECK_THROWS_AS(DiscreteBackwardInduction(a, 32, 64, 1000), DomainError);
  CHECK_THROWS_AS(DiscreteBackwardInduction(a, 1, 8), DomainError);
  CHECK_THROWS_AS(DiscreteBackwardInduction(a, 8, 0), DomainError);
  CHECK_THROWS_AS(DiscreteBackwardInduction(LoadFixture("two-loop.game"), 8, 8), DomainError);
  // Reachability arenas are reduced first with the vertex ids kept.
  Arena reach = LoadFixture("fig1-reach.game");
  DiscreteTable t = DiscreteBackwardInduction(reach, 12, 30);
  ThresholdBracket b = t.Bracket(reach.Vertex("v0"));
  CHECK(b.lo <= Rational(2, 3));
  CHECK(Rational(2, 3) <= b.hi);
  CHECK_THROWS_AS(DiscreteParityOracle(LoadFixture("parity-fig1.game"), 32, 200, 16, 100),
                  DomainError);
}

TEST_CASE("parity grid oracle on bottom components") {
  Arena a = LoadArena("objective parity\nvertex a parity=1\nvertex b\nedge a b\nedge b a\n");
  CHECK(DiscreteParityOracle(a, 8, 40, 4).winner == 1);
  Arena b = LoadArena("objective parity\nvertex a parity=2\nvertex b parity=1\nedge a b\nedge b a\n");
  ParityOracleResult r = DiscreteParityOracle(b, 8, 40, 4);
  CHECK(r.winner == 2);
  CHECK(r.win1 == std::vector<bool>{false, false});
}

TEST_CASE("sampled absorption matches the exact probability") {
  Arena a = LoadFixture("fig1-richman.game");
  RichmanValues rv = RichmanExact(a);
  MarkovReport exact = MarkovReachCheck(a, rv);
  for (const char* name : {"v0", "v2"}) {
    int v = a.Vertex(name);
    McEstimate est = MonteCarloAbsorption(a, rv, v, 20000, 5);
    CHECK(est.samples == 20000);
    CHECK(est.used + est.censored == est.samples);
    REQUIRE(est.std_error_defined);
    CHECK(std::abs(est.mean - ToDouble(exact.absorb_vs[v])) <= 4 * est.std_error);
  }
  // The same seed gives the same estimate with any number of workers.
  McEstimate one = MonteCarloAbsorption(a, rv, 0, 3000, 9, 1000000, 1);
  McEstimate three = MonteCarloAbsorption(a, rv, 0, 3000, 9, 1000000, 3);
  CHECK(one.mean == three.mean);

  McEstimate single = MonteCarloAbsorption(a, rv, 0, 1, 5);
  CHECK_FALSE(single.std_error_defined);
  CHECK(std::isnan(single.std_error));
  CHECK_THROWS_AS(MonteCarloAbsorption(a, rv, 99, 10, 5), DomainError);
}

TEST_CASE("sampled loop reward matches W") {
  for (const char* f : {"two-loop.game", "biased-loop.game", "pos-loop.game", "general3.game"}) {
    Arena a = LoadFixture(f);
    WeightedRichmanValues w = WeightedRichman(a, 0);
    McEstimate est = MonteCarloLoopReward(a, w, 20000, 3);
    INFO(f);
    REQUIRE(est.std_error_defined);
    CHECK(est.censored == 0);
    CHECK(std::abs(est.mean - ToDouble(w.w_of_u())) <= 4 * est.std_error + 1e-12);
  }
}
