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

#ifndef BIDGAME_MEANPAYOFF_H_
#define BIDGAME_MEANPAYOFF_H_

#include <optional>
#include <vector>

#include "bidgame/arena.h"
#include "bidgame/rational.h"
#include "bidgame/richman.h"

namespace bidgame {

// Fixed point on the u-split graph. Index v < n is the original vertex
// (for v = u this is the departure copy u_s); index n is the arrival copy
// u_t, fixed at 0. Edges into u arrive at u_t.
struct WeightedRichmanValues {
  int u = -1;
  int n = 0;
  std::vector<Rational> values;  // size n + 1
  std::vector<int> e_plus;       // original edge ids, size n
  std::vector<int> e_minus;

  const Rational& w_of_u() const { return values[u]; }
  int SplitDst(int dst) const { return dst == u ? n : dst; }
  // Value of the vertex when the play arrives at it.
  const Rational& Arrival(int v) const { return values[SplitDst(v)]; }
  Rational EdgeValue(const Arena& arena, int e) const {
    return arena.edge(e).weight + Arrival(arena.edge(e).dst);
  }
  // Half the gap between the extreme edges at v.
  Rational HalfGap(const Arena& arena, int v) const {
    return (EdgeValue(arena, e_plus[v]) - EdgeValue(arena, e_minus[v])) / 2;
  }
};

struct WeightedRichmanOptions {
  int max_policy_iterations = 1000;
  long seed_sweeps = 200000;
  // Policy seeding tolerance of the first attempt.
  double tie_tol = 0.0;
};

// Requires a strongly connected arena.
WeightedRichmanValues WeightedRichman(const Arena& arena, int u,
                                      const WeightedRichmanOptions& opts = {});

struct ContributionVector {
  std::vector<Rational> cont;       // split-graph vertex, size n + 1
  std::vector<Rational> edge_mass;  // original edge id
  Rational pos;                     // sum of mass * w over w(e) >= 0
  Rational neg;                     // sum of mass * |w| over w(e) < 0
  Rational residual;                // sum mass * w - W(u), always 0
};

// Solves the flow system under the policy of `wrv` and checks
// W(u) = sum over edges of mass(e) * w(e). Throws InternalError when the
// identity fails.
ContributionVector Contributions(const Arena& arena,
                                 const WeightedRichmanValues& wrv);

struct SccClass {
  int tau = 0;
  int witness_u = -1;
  std::vector<Rational> all_w;  // W(u) for every vertex u
};

SccClass ClassifyScc(const Arena& arena);

// The Richman game with tau = 0 bottom components as Min's target and
// tau = 1 ones as Max's.
TargetReduction MpReduction(const Arena& arena);

// Player-1 (Min) thresholds on the original vertices.
RichmanValues MpThresholds(const Arena& arena);

// Copies of the arena with negative weights multiplied by z; the tilde form
// also divides non-negative weights by z. Requires z > 1.
Arena ScaleZ(const Arena& arena, double z);
Arena ScaleZTilde(const Arena& arena, double z);

// pos / neg and its square root. Both return 0 when neg = 0, meaning the
// energy can never decrease. Require W(u) > 0.
double ZRecurrent(const WeightedRichmanValues& wrv,
                  const ContributionVector& cont);
double ZGeneral(const WeightedRichmanValues& wrv,
                const ContributionVector& cont);

// Smallest vertex whose removal leaves an acyclic graph.
std::optional<int> IsRecurrentScc(const Arena& arena);

// Largest |E(c)| over simple cycles c through u.
Rational MaxCycleEnergy(const Arena& arena, int u);

}  // namespace bidgame

#endif  // BIDGAME_MEANPAYOFF_H_
