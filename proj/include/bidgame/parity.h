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

#ifndef BIDGAME_PARITY_H_
#define BIDGAME_PARITY_H_

#include <string>
#include <vector>

#include "bidgame/arena.h"
#include "bidgame/richman.h"

namespace bidgame {

struct BsccClass {
  int component = -1;         // index into SccDecomposition::components
  std::vector<int> vertices;  // ascending
  int winner = 1;             // 1 or 2
  int witness = -1;           // smallest-id vertex of maximal parity
  unsigned max_parity = 0;
};

// One entry per bottom component, in decomposition order.
std::vector<BsccClass> ClassifyBsccs(const Arena& arena);

// The Richman game whose Player-1 target is the union of odd-max bottom
// components and whose Player-2 target is the rest.
TargetReduction ParityReduction(const Arena& arena);

// Thresholds of Player 1 on the original vertices, solved on
// ParityReduction.
RichmanValues ParityThresholds(const Arena& arena);

// The k-unwinding of a strongly connected arena around the cycle `cycle`
// (vertex ids in order, closed by an edge from the last to the first).
// Vertex (v, i) is named "v@i". Edges into `accepting` drop to level 0, the
// cycle-closing edge climbs one level, and level-k vertices lead to the
// Player-2 sink. Player 1 gets an unreachable sink.
Arena UnwindBuchi(const Arena& arena, const std::vector<bool>& accepting,
                  const std::vector<int>& cycle, int k);

// Id of the smallest edge from `cycle.back()` to `cycle.front()`, or -1.
int CycleClosingEdge(const Arena& arena, const std::vector<int>& cycle);

}  // namespace bidgame

#endif  // BIDGAME_PARITY_H_
