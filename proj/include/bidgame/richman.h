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

#ifndef BIDGAME_RICHMAN_H_
#define BIDGAME_RICHMAN_H_

#include <optional>
#include <string>
#include <vector>

#include "bidgame/arena.h"
#include "bidgame/rational.h"

namespace bidgame {

// Threshold values R(v) with the certifying successor edges. e_plus and
// e_minus are -1 at the two sinks.
struct RichmanValues {
  std::vector<Rational> values;
  std::vector<int> e_plus;
  std::vector<int> e_minus;
};

struct RichmanOptions {
  int max_policy_iterations = 1000;
  long seed_sweeps = 100000;
};

// Adds fresh sinks vR, vS. Target vertices get a single edge to vR and
// vertices with no path to the target set get a single edge to vS.
Arena ReachToRichman(const Arena& reach);

// R(., 0): 0 at vR and 1 elsewhere.
std::vector<Rational> RichmanStart(const Arena& arena);

// R(., i + 1) from R(., i).
std::vector<Rational> RichmanStep(const Arena& arena,
                                  const std::vector<Rational>& prev);

// R(., steps) by the exact finite-horizon recursion.
std::vector<Rational> RichmanIterate(const Arena& arena, int steps);

// Exact fixed point by policy iteration over rationals.
RichmanValues RichmanExact(const Arena& arena, const RichmanOptions& opts = {});

// Value of edge e: R(dst(e)).
inline const Rational& EdgeValue(const Arena& arena, const RichmanValues& rv,
                                 int e) {
  return rv.values[arena.edge(e).dst];
}

struct MarkovReport {
  // Probability of absorbing at vS / vR in the chain that moves along
  // e_plus and e_minus with probability 1/2 each.
  std::vector<Rational> absorb_vs;
  std::vector<Rational> absorb_vr;
  // absorb_vs[v] - values[v]
  std::vector<Rational> residual;
  // Vertices in closed classes that contain neither sink.
  std::vector<int> non_absorbing;
  bool ok = false;
};

MarkovReport MarkovReachCheck(const Arena& arena, const RichmanValues& rv);

struct SsgInstance {
  enum class Kind { kChance, kMax, kMin, kWin, kLose };
  std::vector<std::string> names;
  std::vector<Kind> kinds;
  std::vector<std::vector<int>> succ;
  std::vector<int> chance_of;  // original vertex -> its chance vertex
};

SsgInstance BuildSsg(const Arena& arena);

// Value iteration; val is the maximizer's probability of reaching vR.
std::vector<double> SolveSsg(const SsgInstance& ssg, double tol,
                             long max_sweeps = 1000000);

std::string SerializeSsg(const SsgInstance& ssg);

// Least t with R(v, t) < budget, or nullopt when none within cap.
std::optional<int> MinWinRounds(const Arena& arena, int v,
                                const Rational& budget, int cap = 100000);

// Richman game whose Player-1 target is `p1_target` and Player-2 target is
// `p2_target`: edges into either set are redirected to fresh sinks and the
// target vertices themselves get a single edge to their sink. Vertex ids
// of the original arena are preserved.
struct TargetReduction {
  Arena richman;
  std::vector<int> original_edge;  // -1 for added edges
};

TargetReduction ReduceToRichman(const Arena& arena,
                                const std::vector<bool>& p1_target,
                                const std::vector<bool>& p2_target);

// Values and policy on the original vertices. Target vertices keep their
// smallest-id outgoing edge as a placeholder policy.
RichmanValues MapBack(const Arena& arena, const TargetReduction& red,
                      const RichmanValues& reduced);

// The same arena with the roles of vR and vS swapped.
Arena SwapRichmanTargets(const Arena& arena);

}  // namespace bidgame

#endif  // BIDGAME_RICHMAN_H_
