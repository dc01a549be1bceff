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
#include "doctest.h"
#include "support/oracles.h"

using namespace bidgame;
using testsupport::LoadFixture;

namespace {

const char* const kSccFixtures[] = {"two-loop.game", "biased-loop.game",
                                    "pos-loop.game", "fig3.game",
                                    "general3.game"};

// Random strongly connected arenas whose W is well defined for every u.
std::vector<Arena> RandomSccs(int count, int max_n) {
  std::vector<Arena> out;
  for (uint64_t seed = 1; static_cast<int>(out.size()) < count; ++seed) {
    Arena a = testsupport::RandomMeanPayoffScc(seed, max_n);
    try {
      ClassifyScc(a);
    } catch (const DomainError&) {
      continue;
    }
    out.push_back(a);
  }
  return out;
}

}  // namespace

TEST_CASE("W of the single-vertex loops") {
  CHECK(WeightedRichman(LoadFixture("two-loop.game"), 0).w_of_u() == 0);
  CHECK(WeightedRichman(LoadFixture("biased-loop.game"), 0).w_of_u() == Rational(-1, 2));
  CHECK(WeightedRichman(LoadFixture("pos-loop.game"), 0).w_of_u() == Rational(1, 2));
}

TEST_CASE("W needs a strongly connected arena and a vertex") {
  Arena a = LoadFixture("mp-connector.game");
  CHECK_THROWS_AS(WeightedRichman(a, 0), DomainError);
  CHECK_THROWS_AS(WeightedRichman(LoadFixture("pos-loop.game"), 3), DomainError);
}

TEST_CASE("W is reported as not unique when the optimal walk avoids u") {
  // From m1 the optimal walk settles in {m2, m4, m6} with zero drift.
  Arena a = LoadArena(
      "objective meanpayoff\n"
      "vertex m0\nvertex m1\nvertex m2\nvertex m3\nvertex m4\nvertex m5\nvertex m6\n"
      "edge m4 m6 weight=2\nedge m6 m1 weight=-1\nedge m1 m3 weight=3\n"
      "edge m3 m0 weight=-3\nedge m0 m5 weight=-2\nedge m5 m2 weight=2\n"
      "edge m2 m4 weight=-1\nedge m1 m6 weight=-3\nedge m6 m2\n"
      "edge m1 m2 weight=-1\nedge m6 m4 weight=-3\n");
  CHECK_THROWS_AS(WeightedRichman(a, a.Vertex("m1")), DomainError);
}

TEST_CASE("W is a fixed point with a consistent policy") {
  std::vector<Arena> arenas;
  for (const char* f : kSccFixtures) arenas.push_back(LoadFixture(f));
  for (const Arena& a : RandomSccs(30, 6)) arenas.push_back(a);
  for (const Arena& a : arenas) {
    const int n = a.num_vertices();
    for (int u = 0; u < n; ++u) {
      WeightedRichmanValues w = WeightedRichman(a, u);
      REQUIRE(w.values.size() == static_cast<size_t>(n + 1));
      CHECK(w.values[n] == 0);
      for (int v = 0; v < n; ++v) {
        Rational hi = w.EdgeValue(a, w.e_plus[v]);
        Rational lo = w.EdgeValue(a, w.e_minus[v]);
        CHECK(w.values[v] == (hi + lo) / 2);
        for (int e : a.out(v)) {
          CHECK(lo <= w.EdgeValue(a, e));
          CHECK(w.EdgeValue(a, e) <= hi);
        }
      }
      double vi = testsupport::WeightedValueIteration(a, u, 20000);
      CHECK(std::abs(vi - ToDouble(w.w_of_u())) < 1e-6);
    }
  }
}

TEST_CASE("contributions of the loops") {
  Arena pos = LoadFixture("pos-loop.game");
  WeightedRichmanValues w = WeightedRichman(pos, 0);
  ContributionVector c = Contributions(pos, w);
  CHECK(c.edge_mass[0] == Rational(1, 2));
  CHECK(c.edge_mass[1] == Rational(1, 2));
  CHECK(c.pos == 1);
  CHECK(c.neg == Rational(1, 2));
  CHECK(c.pos - c.neg == w.w_of_u());
  CHECK(c.residual == 0);

  Arena two = LoadFixture("two-loop.game");
  ContributionVector c2 = Contributions(two, WeightedRichman(two, 0));
  CHECK(c2.pos - c2.neg == 0);
  CHECK(c2.residual == 0);
}

TEST_CASE("contributions satisfy the flow equations and the identity") {
  std::vector<Arena> arenas;
  for (const char* f : kSccFixtures) arenas.push_back(LoadFixture(f));
  for (const Arena& a : RandomSccs(30, 6)) arenas.push_back(a);
  for (const Arena& a : arenas) {
    const int n = a.num_vertices();
    for (int u = 0; u < n; ++u) {
      WeightedRichmanValues w = WeightedRichman(a, u);
      ContributionVector c = Contributions(a, w);
      CHECK(c.residual == 0);
      CHECK(c.cont[u] == 1);
      // Inflow along policy edges, u_s having none.
      std::vector<Rational> inflow(n + 1);
      for (int v = 0; v < n; ++v) {
        for (int e : {w.e_plus[v], w.e_minus[v]}) {
          inflow[w.SplitDst(a.edge(e).dst)] += c.cont[v] / 2;
        }
      }
      for (int x = 0; x <= n; ++x) {
        if (x != u) CHECK(c.cont[x] == inflow[x]);
      }
      Rational total = 0;
      for (int e = 0; e < a.num_edges(); ++e) total += c.edge_mass[e] * a.edge(e).weight;
      CHECK(total == w.w_of_u());
    }
  }
}

TEST_CASE("classification of strongly connected games") {
  SccClass two = ClassifyScc(LoadFixture("two-loop.game"));
  CHECK(two.tau == 0);
  SccClass pos = ClassifyScc(LoadFixture("pos-loop.game"));
  CHECK(pos.tau == 1);
  CHECK(pos.witness_u == 0);
  Arena zero = LoadArena(
      "objective meanpayoff\nvertex a\nvertex b\nedge a b\nedge b a\nedge a a\n");
  SccClass z = ClassifyScc(zero);
  CHECK(z.tau == 0);
  for (const Rational& w : z.all_w) CHECK(w == 0);

  for (const Arena& a : RandomSccs(40, 8)) {
    SccClass c = ClassifyScc(a);
    Rational least = c.all_w[0];
    int arg = 0;
    for (int u = 0; u < a.num_vertices(); ++u) {
      CHECK(c.all_w[u] == WeightedRichman(a, u).w_of_u());
      if (c.all_w[u] < least) {
        least = c.all_w[u];
        arg = u;
      }
    }
    CHECK(c.witness_u == arg);
    CHECK(c.tau == (least <= 0 ? 0 : 1));
  }
}

TEST_CASE("classification agrees with the grid energy game") {
  // Alternating ties keep the 1/32 grid from handing every zero bid to
  // one side.
  auto agrees = [](Arena a) {
    a.set_tie_rule(TieRule::Alternate(1));
    SccClass c = ClassifyScc(a);
    std::vector<double> v = testsupport::GridEnergyValue(a, 32, 200, 16);
    bool ok = true;
    for (double x : v) ok = ok && (c.tau == 1 ? x > 0 : x <= 0);
    return ok;
  };
  for (const char* f : kSccFixtures) {
    INFO(f);
    CHECK(agrees(LoadFixture(f)));
  }
  // Random games away from the W = 0 boundary, where a bounded energy is
  // indistinguishable from a small positive one at this horizon.
  int used = 0;
  for (const Arena& a : RandomSccs(60, 8)) {
    SccClass c = ClassifyScc(a);
    if (c.all_w[c.witness_u] == 0) continue;
    ++used;
    CHECK(agrees(a));
  }
  CHECK(used >= 50);
}

TEST_CASE("mean-payoff thresholds") {
  Arena conn = LoadFixture("mp-connector.game");
  RichmanValues rc = MpThresholds(conn);
  CHECK(rc.values[conn.Vertex("c")] == Rational(1, 2));
  CHECK(rc.values[conn.Vertex("a")] == 0);
  CHECK(rc.values[conn.Vertex("b")] == 1);

  for (const Rational& x : MpThresholds(LoadFixture("two-loop.game")).values) CHECK(x == 0);
  for (const Rational& x : MpThresholds(LoadFixture("biased-loop.game")).values) CHECK(x == 0);
  for (const Rational& x : MpThresholds(LoadFixture("pos-loop.game")).values) CHECK(x == 1);

  Arena fig = LoadFixture("mp-fig1.game");
  RichmanValues rf = MpThresholds(fig);
  CHECK(rf.values[fig.Vertex("v0")] == Rational(2, 3));
  CHECK(rf.values[fig.Vertex("v2")] == Rational(1, 3));
}

TEST_CASE("weight scaling") {
  Arena pos = LoadFixture("pos-loop.game");
  Arena s = ScaleZ(pos, 2);
  CHECK(s.edge(0).weight == 2);
  CHECK(s.edge(1).weight == -2);
  CHECK(WeightedRichman(s, 0).w_of_u() == 0);
  CHECK(pos.edge(1).weight == -1);

  const double r2 = std::sqrt(2.0);
  Arena t = ScaleZTilde(pos, r2);
  CHECK(std::abs(ToDouble(t.edge(0).weight) - r2) < 1e-15);
  CHECK(std::abs(ToDouble(t.edge(1).weight) + r2) < 1e-15);
  CHECK(std::abs(ToDouble(WeightedRichman(t, 0).w_of_u())) < 1e-12);

  CHECK_THROWS_AS(ScaleZ(pos, 1.0), DomainError);
  CHECK_THROWS_AS(ScaleZTilde(pos, 0.5), DomainError);
}

TEST_CASE("scaling factors") {
  Arena pos = LoadFixture("pos-loop.game");
  WeightedRichmanValues w = WeightedRichman(pos, 0);
  ContributionVector c = Contributions(pos, w);
  CHECK(ZRecurrent(w, c) == doctest::Approx(2));
  CHECK(ZGeneral(w, c) == doctest::Approx(std::sqrt(2.0)));

  Arena fig3 = LoadFixture("fig3.game");
  WeightedRichmanValues w3 = WeightedRichman(fig3, fig3.Vertex("u"));
  CHECK(ZRecurrent(w3, Contributions(fig3, w3)) == doctest::Approx(2));

  Arena up = LoadArena("objective meanpayoff\nvertex a\nedge a a weight=1\nedge a a weight=2\n");
  WeightedRichmanValues wu = WeightedRichman(up, 0);
  ContributionVector cu = Contributions(up, wu);
  CHECK(ZRecurrent(wu, cu) == 0);
  CHECK(ZGeneral(wu, cu) == 0);

  Arena two = LoadFixture("two-loop.game");
  WeightedRichmanValues w2 = WeightedRichman(two, 0);
  CHECK_THROWS_AS(ZRecurrent(w2, Contributions(two, w2)), DomainError);
}

TEST_CASE("scaled fixtures have W(u) = 0 at their scaling factor") {
  int scaled = 0;
  for (const char* f : kSccFixtures) {
    Arena a = LoadFixture(f);
    for (int u = 0; u < a.num_vertices(); ++u) {
      WeightedRichmanValues w = WeightedRichman(a, u);
      if (w.w_of_u() <= 0) continue;
      ContributionVector c = Contributions(a, w);
      double z = ZRecurrent(w, c);
      if (z == 0) continue;
      ++scaled;
      INFO(f << " u=" << u);
      CHECK(std::abs(ToDouble(WeightedRichman(ScaleZ(a, z), u).w_of_u())) < 1e-12);
      double zg = ZGeneral(w, c);
      CHECK(std::abs(ToDouble(WeightedRichman(ScaleZTilde(a, zg), u).w_of_u())) < 1e-12);
    }
  }
  CHECK(scaled >= 3);
}

TEST_CASE("scaling factors exceed 1 whenever W(u) > 0") {
  for (const Arena& a : RandomSccs(40, 6)) {
    for (int u = 0; u < a.num_vertices(); ++u) {
      WeightedRichmanValues w = WeightedRichman(a, u);
      if (w.w_of_u() <= 0) continue;
      ContributionVector c = Contributions(a, w);
      double z = ZRecurrent(w, c);
      if (z == 0) {
        CHECK(c.neg == 0);
        continue;
      }
      CHECK(z > 1);
      CHECK(z == doctest::Approx(ToDouble(c.pos) / ToDouble(c.neg)));
      CHECK(ZGeneral(w, c) == doctest::Approx(std::sqrt(z)));
    }
  }
}

TEST_CASE("recurrent roots") {
  CHECK(IsRecurrentScc(LoadFixture("pos-loop.game")) == 0);
  Arena eight = LoadArena(
      "objective meanpayoff\nvertex a\nvertex u\nvertex b\n"
      "edge u a\nedge a u\nedge u b\nedge b u\n");
  CHECK(IsRecurrentScc(eight) == eight.Vertex("u"));
  Arena apart = LoadArena(
      "objective meanpayoff\nvertex a\nvertex b\nvertex e\nvertex c\nvertex d\n"
      "edge a b\nedge b a\nedge b e\nedge e c\nedge c d\nedge d c\nedge d a\n");
  CHECK_FALSE(IsRecurrentScc(apart).has_value());
  CHECK(IsRecurrentScc(LoadFixture("general3.game")) == std::nullopt);
  CHECK(MaxCycleEnergy(LoadFixture("pos-loop.game"), 0) == 2);
}
