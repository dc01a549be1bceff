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

#include "bidgame/meanpayoff.h"

#include <array>
#include <cmath>
#include <string>

#include "average_game.h"
#include "bidgame/linear.h"

namespace bidgame {
namespace {

void RequireScc(const Arena& arena, const char* op) {
  if (!IsStronglyConnected(arena)) {
    throw DomainError(std::string(op) + ": arena is not strongly connected");
  }
}

// True when the graph restricted to `keep` has a cycle.
bool HasCycle(const Arena& arena, const std::vector<bool>& keep) {
  const int n = arena.num_vertices();
  std::vector<int> indeg(n, 0);
  for (const Edge& e : arena.edges()) {
    if (keep[e.src] && keep[e.dst]) ++indeg[e.dst];
  }
  std::vector<int> queue;
  int kept = 0;
  for (int v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    ++kept;
    if (indeg[v] == 0) queue.push_back(v);
  }
  for (size_t i = 0; i < queue.size(); ++i) {
    for (int e : arena.out(queue[i])) {
      int d = arena.edge(e).dst;
      if (keep[d] && --indeg[d] == 0) queue.push_back(d);
    }
  }
  return static_cast<int>(queue.size()) < kept;
}

Arena ScaleWeights(const Arena& arena, const Rational& neg_factor,
                   const Rational& pos_factor) {
  Arena out = arena;
  for (int e = 0; e < out.num_edges(); ++e) {
    const Rational& w = arena.edge(e).weight;
    out.set_weight(e, w < 0 ? Rational(w * neg_factor)
                            : Rational(w * pos_factor));
  }
  return out;
}

}  // namespace

WeightedRichmanValues WeightedRichman(const Arena& arena, int u,
                                      const WeightedRichmanOptions& opts) {
  RequireScc(arena, "weighted_richman");
  const int n = arena.num_vertices();
  if (u < 0 || u >= n) throw DomainError("weighted_richman: bad vertex");

  internal::AverageSystem sys;
  sys.Resize(n + 1);
  sys.fixed[n] = Rational(0);
  for (int v = 0; v < n; ++v) {
    for (int e : arena.out(v)) {
      int d = arena.edge(e).dst;
      sys.AddOption(v, e, d == u ? n : d, arena.edge(e).weight);
    }
  }

  std::optional<internal::AverageSolution> sol;
  std::string why;
  long sweeps = std::max<long>(opts.seed_sweeps / 100, 100);
  for (int attempt = 0; attempt < 3 && !sol; ++attempt) {
    std::vector<double> seed(n + 1, 0.0);
    internal::ValueIterate(sys, &seed, sweeps, 1e-13);
    double tol = attempt == 0 ? opts.tie_tol : 1e-9;
    sol = internal::PolicyIterate(sys, seed, opts.max_policy_iterations, tol,
                                  &why);
    sweeps = opts.seed_sweeps;
  }
  if (!sol && why == internal::kSingularPolicy) {
    // The optimal walk from u has a closed class avoiding u, so the fixed
    // point is only determined up to a constant on that class.
    throw DomainError("weighted_richman: W is not unique for u = " +
                      arena.name(u) +
                      ": the optimal random-turn walk never returns to u");
  }
  if (!sol) throw InternalError("weighted_richman: " + why);
  if (!internal::IsFixedPoint(sys, *sol)) {
    throw InternalError("weighted_richman: result is not a fixed point");
  }
  WeightedRichmanValues wrv;
  wrv.u = u;
  wrv.n = n;
  wrv.values = sol->value;
  wrv.e_plus.resize(n);
  wrv.e_minus.resize(n);
  for (int v = 0; v < n; ++v) {
    wrv.e_plus[v] = sys.options[v][sol->plus[v]].edge;
    wrv.e_minus[v] = sys.options[v][sol->minus[v]].edge;
  }
  return wrv;
}

ContributionVector Contributions(const Arena& arena,
                                 const WeightedRichmanValues& wrv) {
  const int n = wrv.n;
  const int u = wrv.u;
  // Policy successors in the split graph; index n is u_t.
  auto policy = [&](int v) {
    return std::array<int, 2>{wrv.e_plus[v], wrv.e_minus[v]};
  };
  std::vector<bool> reached(n + 1, false);
  std::vector<int> queue = {u};
  reached[u] = true;
  for (size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    if (v == n) continue;
    for (int e : policy(v)) {
      int d = wrv.SplitDst(arena.edge(e).dst);
      if (!reached[d]) {
        reached[d] = true;
        queue.push_back(d);
      }
    }
  }
  // cont(x) - sum over policy edges y -> x of cont(y) / 2 = [x == u_s].
  std::vector<int> var(n + 1, -1);
  int m = 0;
  for (int x = 0; x <= n; ++x) {
    if (reached[x]) var[x] = m++;
  }
  Matrix a(m, std::vector<Rational>(m));
  std::vector<Rational> b(m);
  for (int x = 0; x <= n; ++x) {
    if (var[x] < 0) continue;
    a[var[x]][var[x]] += 1;
    if (x == u) b[var[x]] = 1;
  }
  for (int y = 0; y < n; ++y) {
    if (var[y] < 0) continue;
    for (int e : policy(y)) {
      int d = wrv.SplitDst(arena.edge(e).dst);
      if (d == u) continue;  // u_s has no incoming edges
      a[var[d]][var[y]] -= Rational(1, 2);
    }
  }
  auto x = SolveExact(std::move(a), std::move(b));
  if (!x) throw InternalError("contributions: flow system is singular");

  ContributionVector cv;
  cv.cont.assign(n + 1, Rational(0));
  for (int v = 0; v <= n; ++v) {
    if (var[v] >= 0) cv.cont[v] = (*x)[var[v]];
  }
  cv.edge_mass.assign(arena.num_edges(), Rational(0));
  for (int v = 0; v < n; ++v) {
    for (int e : policy(v)) cv.edge_mass[e] += cv.cont[v] / 2;
  }
  Rational total;
  for (int e = 0; e < arena.num_edges(); ++e) {
    const Rational& w = arena.edge(e).weight;
    Rational contrib = cv.edge_mass[e] * w;
    total += contrib;
    if (w < 0) cv.neg -= contrib;
    else cv.pos += contrib;
  }
  cv.residual = total - wrv.w_of_u();
  if (cv.residual != 0) {
    throw InternalError("contributions: sum of mass * weight is " +
                        ToString(total) + " but W(u) is " +
                        ToString(wrv.w_of_u()));
  }
  return cv;
}

SccClass ClassifyScc(const Arena& arena) {
  RequireScc(arena, "classify_scc");
  SccClass cls;
  for (int u = 0; u < arena.num_vertices(); ++u) {
    cls.all_w.push_back(WeightedRichman(arena, u).w_of_u());
    if (cls.witness_u < 0 || cls.all_w[u] < cls.all_w[cls.witness_u]) {
      cls.witness_u = u;
    }
  }
  cls.tau = cls.all_w[cls.witness_u] <= 0 ? 0 : 1;
  return cls;
}

TargetReduction MpReduction(const Arena& arena) {
  if (arena.objective() != Objective::kMeanPayoff) {
    throw DomainError("mp_thresholds: arena objective is not meanpayoff");
  }
  const int n = arena.num_vertices();
  SccDecomposition scc = SccDecompose(arena);
  std::vector<bool> p1(n, false), p2(n, false);
  for (size_t c = 0; c < scc.components.size(); ++c) {
    if (!scc.bottom[c]) continue;
    Arena sub = InducedSubArena(arena, scc.components[c]);
    int tau = ClassifyScc(sub).tau;
    for (int v : scc.components[c]) (tau == 0 ? p1 : p2)[v] = true;
  }
  return ReduceToRichman(arena, p1, p2);
}

RichmanValues MpThresholds(const Arena& arena) {
  TargetReduction red = MpReduction(arena);
  return MapBack(arena, red, RichmanExact(red.richman));
}

Arena ScaleZ(const Arena& arena, double z) {
  if (!(z > 1) || !std::isfinite(z)) {
    throw DomainError("scale_z: z must be a finite number above 1");
  }
  return ScaleWeights(arena, FromDouble(z), Rational(1));
}

Arena ScaleZTilde(const Arena& arena, double z) {
  if (!(z > 1) || !std::isfinite(z)) {
    throw DomainError("scale_z_tilde: z must be a finite number above 1");
  }
  Rational zq = FromDouble(z);
  return ScaleWeights(arena, zq, Rational(1 / zq));
}

double ZRecurrent(const WeightedRichmanValues& wrv,
                  const ContributionVector& cont) {
  if (wrv.w_of_u() <= 0) throw DomainError("z: requires W(u) > 0");
  if (cont.neg == 0) return 0.0;
  return ToDouble(Rational(cont.pos / cont.neg));
}

double ZGeneral(const WeightedRichmanValues& wrv,
                const ContributionVector& cont) {
  return std::sqrt(ZRecurrent(wrv, cont));
}

std::optional<int> IsRecurrentScc(const Arena& arena) {
  RequireScc(arena, "is_recurrent_scc");
  const int n = arena.num_vertices();
  for (int u = 0; u < n; ++u) {
    std::vector<bool> keep(n, true);
    keep[u] = false;
    if (!HasCycle(arena, keep)) return u;
  }
  return std::nullopt;
}

Rational MaxCycleEnergy(const Arena& arena, int u) {
  // Depth-first enumeration of simple paths from u back to u.
  const int n = arena.num_vertices();
  Rational best = 0;
  bool any = false;
  std::vector<bool> on_path(n, false);
  struct Frame {
    int v;
    size_t next;
    Rational energy;
  };
  std::vector<Frame> stack = {{u, 0, Rational(0)}};
  on_path[u] = true;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == arena.out(f.v).size()) {
      if (stack.size() > 1) on_path[f.v] = false;
      stack.pop_back();
      continue;
    }
    const Edge& e = arena.edge(arena.out(f.v)[f.next++]);
    Rational energy = f.energy + e.weight;
    if (e.dst == u) {
      if (!any || Abs(energy) > best) best = Abs(energy);
      any = true;
    } else if (!on_path[e.dst]) {
      on_path[e.dst] = true;
      stack.push_back({e.dst, 0, energy});
    }
  }
  return best;
}

}  // namespace bidgame
