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

#include "bidgame/parity.h"

#include <algorithm>
#include <set>

namespace bidgame {

std::vector<BsccClass> ClassifyBsccs(const Arena& arena) {
  SccDecomposition scc = SccDecompose(arena);
  std::vector<BsccClass> out;
  for (size_t c = 0; c < scc.components.size(); ++c) {
    if (!scc.bottom[c]) continue;
    BsccClass cls;
    cls.component = static_cast<int>(c);
    cls.vertices = scc.components[c];
    for (int v : cls.vertices) {
      if (cls.witness < 0 || arena.parity(v) > cls.max_parity) {
        cls.witness = v;
        cls.max_parity = arena.parity(v);
      }
    }
    cls.winner = cls.max_parity % 2 == 1 ? 1 : 2;
    out.push_back(std::move(cls));
  }
  return out;
}

TargetReduction ParityReduction(const Arena& arena) {
  if (arena.objective() != Objective::kParity) {
    throw DomainError("parity_thresholds: arena objective is not parity");
  }
  const int n = arena.num_vertices();
  std::vector<bool> p1(n, false), p2(n, false);
  for (const BsccClass& cls : ClassifyBsccs(arena)) {
    for (int v : cls.vertices) (cls.winner == 1 ? p1 : p2)[v] = true;
  }
  return ReduceToRichman(arena, p1, p2);
}

RichmanValues ParityThresholds(const Arena& arena) {
  TargetReduction red = ParityReduction(arena);
  return MapBack(arena, red, RichmanExact(red.richman));
}

int CycleClosingEdge(const Arena& arena, const std::vector<int>& cycle) {
  if (cycle.empty()) return -1;
  for (int e : arena.out(cycle.back())) {
    if (arena.edge(e).dst == cycle.front()) return e;
  }
  return -1;
}

Arena UnwindBuchi(const Arena& arena, const std::vector<bool>& accepting,
                  const std::vector<int>& cycle, int k) {
  if (k < 1) throw DomainError("unwind: k must be at least 1");
  if (!IsStronglyConnected(arena)) {
    throw DomainError("unwind: arena is not strongly connected");
  }
  if (cycle.empty()) throw DomainError("unwind: empty cycle");
  std::set<int> seen;
  for (size_t i = 0; i < cycle.size(); ++i) {
    int v = cycle[i];
    if (!seen.insert(v).second) {
      throw DomainError("unwind: cycle repeats vertex " + arena.name(v));
    }
    if (accepting[v]) {
      throw DomainError("unwind: cycle passes through accepting vertex " +
                        arena.name(v));
    }
    if (i + 1 < cycle.size()) {
      const auto& out = arena.out(v);
      bool linked = std::any_of(out.begin(), out.end(), [&](int e) {
        return arena.edge(e).dst == cycle[i + 1];
      });
      if (!linked) {
        throw DomainError("unwind: no edge " + arena.name(v) + " -> " +
                          arena.name(cycle[i + 1]));
      }
    }
  }
  const int closing = CycleClosingEdge(arena, cycle);
  if (closing < 0) {
    throw DomainError("unwind: cycle is not closed by an edge " +
                      arena.name(cycle.back()) + " -> " +
                      arena.name(cycle.front()));
  }

  const int n = arena.num_vertices();
  Arena out(Objective::kRichman);
  out.set_tie_rule(arena.tie_rule());
  for (int level = 0; level <= k; ++level) {
    for (int v = 0; v < n; ++v) {
      int id = out.AddVertex(arena.name(v) + "@" + std::to_string(level));
      out.set_parity(id, arena.parity(v));
    }
  }
  auto at = [n](int v, int level) { return level * n + v; };
  std::string vr = "vR", vs = "vS";
  while (out.Find(vr) >= 0) vr += "_";
  while (out.Find(vs) >= 0) vs += "_";
  out.set_vr(out.AddVertex(vr));
  out.set_vs(out.AddVertex(vs));
  for (int level = 0; level < k; ++level) {
    for (int e = 0; e < arena.num_edges(); ++e) {
      const Edge& ed = arena.edge(e);
      int dst_level = e == closing ? level + 1
                      : accepting[ed.dst] ? 0
                                          : level;
      out.AddEdge(at(ed.src, level), at(ed.dst, dst_level), ed.weight,
                  ed.name + "@" + std::to_string(level));
    }
  }
  for (int v = 0; v < n; ++v) {
    out.AddEdge(at(v, k), out.vs(), 0, "done_" + arena.name(v));
  }
  out.Validate();
  return out;
}

}  // namespace bidgame
