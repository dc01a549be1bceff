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

#include "bidgame/richman.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "average_game.h"
#include "bidgame/linear.h"

namespace bidgame {
namespace {

void RequireRichman(const Arena& arena, const char* op) {
  if (arena.objective() != Objective::kRichman) {
    throw DomainError(std::string(op) + " requires a richman arena");
  }
}

std::string FreshName(const Arena& arena, const std::string& base) {
  std::string name = base;
  for (int i = 1; arena.Find(name) >= 0; ++i) {
    name = base + "_" + std::to_string(i);
  }
  return name;
}

// Smallest-id edges attaining max and min of value(dst).
void ExtremeEdges(const Arena& arena, const std::vector<Rational>& value,
                  int v, int* plus, int* minus) {
  *plus = *minus = -1;
  for (int e : arena.out(v)) {
    const Rational& x = value[arena.edge(e).dst];
    if (*plus < 0 || x > value[arena.edge(*plus).dst]) *plus = e;
    if (*minus < 0 || x < value[arena.edge(*minus).dst]) *minus = e;
  }
}

// Absorption probability at `sink` in the policy chain; 0 on vertices
// that cannot absorb.
std::vector<Rational> Absorb(const Arena& arena, const RichmanValues& rv,
                             const std::vector<bool>& absorbing, int sink) {
  const int n = arena.num_vertices();
  std::vector<int> var(n, -1);
  int m = 0;
  for (int v = 0; v < n; ++v) {
    if (!arena.IsTerminal(v) && absorbing[v]) var[v] = m++;
  }
  Matrix a(m, std::vector<Rational>(m));
  std::vector<Rational> b(m);
  for (int v = 0; v < n; ++v) {
    if (var[v] < 0) continue;
    a[var[v]][var[v]] += 1;
    for (int e : {rv.e_plus[v], rv.e_minus[v]}) {
      int d = arena.edge(e).dst;
      if (var[d] >= 0) a[var[v]][var[d]] -= Rational(1, 2);
      else if (d == sink) b[var[v]] += Rational(1, 2);
    }
  }
  auto x = SolveExact(std::move(a), std::move(b));
  if (!x) throw InternalError("absorption system is singular");
  std::vector<Rational> p(n);
  for (int v = 0; v < n; ++v) {
    if (v == sink) p[v] = 1;
    else if (var[v] >= 0) p[v] = (*x)[var[v]];
  }
  return p;
}

// BFS distance to `sink` that does not pass through other terminals; -1
// when unreachable.
std::vector<int> DistanceTo(const Arena& arena, int sink) {
  const int n = arena.num_vertices();
  std::vector<std::vector<int>> pred(n);
  for (const Edge& e : arena.edges()) {
    if (!arena.IsTerminal(e.src)) pred[e.dst].push_back(e.src);
  }
  std::vector<int> dist(n, -1);
  std::vector<int> queue = {sink};
  dist[sink] = 0;
  for (size_t i = 0; i < queue.size(); ++i) {
    for (int p : pred[queue[i]]) {
      if (dist[p] < 0) {
        dist[p] = dist[queue[i]] + 1;
        queue.push_back(p);
      }
    }
  }
  return dist;
}

}  // namespace

Arena SwapRichmanTargets(const Arena& arena) {
  RequireRichman(arena, "swap");
  Arena out = arena;
  int vr = arena.vr(), vs = arena.vs();
  out.set_target(vr, false);
  out.set_vr(vs);
  out.set_vs(vr);
  return out;
}

Arena ReachToRichman(const Arena& reach) {
  if (reach.objective() != Objective::kReachability) {
    throw DomainError("reach_to_richman requires a reachability arena");
  }
  std::vector<bool> target = reach.TargetSet();
  if (std::none_of(target.begin(), target.end(), [](bool b) { return b; })) {
    throw DomainError("reachability target set is empty");
  }
  std::vector<bool> lost(reach.num_vertices(), false);
  for (int v : UnreachableFromTarget(reach, target)) lost[v] = true;

  Arena out(Objective::kRichman);
  out.set_tie_rule(reach.tie_rule());
  for (int v = 0; v < reach.num_vertices(); ++v) {
    int id = out.AddVertex(reach.name(v));
    out.set_parity(id, reach.parity(v));
  }
  int vr = out.AddVertex(FreshName(reach, "vR"));
  int vs = out.AddVertex(FreshName(reach, "vS"));
  out.set_vr(vr);
  out.set_vs(vs);
  for (const Edge& e : reach.edges()) {
    if (target[e.src] || lost[e.src]) continue;
    out.AddEdge(e.src, e.dst, e.weight, e.name);
  }
  int k = 0;
  auto fresh_edge = [&](const std::string& stem) {
    std::string name;
    do {
      name = stem + std::to_string(k++);
    } while (std::any_of(out.edges().begin(), out.edges().end(),
                         [&](const Edge& e) { return e.name == name; }) ||
             std::any_of(reach.edges().begin(), reach.edges().end(),
                         [&](const Edge& e) { return e.name == name; }));
    return name;
  };
  for (int v = 0; v < reach.num_vertices(); ++v) {
    if (target[v]) out.AddEdge(v, vr, 0, fresh_edge("toR"));
    else if (lost[v]) out.AddEdge(v, vs, 0, fresh_edge("toS"));
  }
  out.Validate();
  return out;
}

TargetReduction ReduceToRichman(const Arena& arena,
                                const std::vector<bool>& p1_target,
                                const std::vector<bool>& p2_target) {
  const int n = arena.num_vertices();
  TargetReduction red;
  Arena& out = red.richman;
  out.set_objective(Objective::kRichman);
  out.set_tie_rule(arena.tie_rule());
  for (int v = 0; v < n; ++v) {
    int id = out.AddVertex(arena.name(v));
    out.set_parity(id, arena.parity(v));
  }
  int vr = out.AddVertex(FreshName(arena, "vR"));
  int vs = out.AddVertex(FreshName(arena, "vS"));
  out.set_vr(vr);
  out.set_vs(vs);
  auto sink_of = [&](int v) {
    return p1_target[v] ? vr : (p2_target[v] ? vs : v);
  };
  for (int e = 0; e < arena.num_edges(); ++e) {
    const Edge& ed = arena.edge(e);
    if (p1_target[ed.src] || p2_target[ed.src]) continue;
    out.AddEdge(ed.src, sink_of(ed.dst), ed.weight, ed.name);
    red.original_edge.push_back(e);
  }
  for (int v = 0; v < n; ++v) {
    if (!p1_target[v] && !p2_target[v]) continue;
    std::string name = "sink_" + arena.name(v);
    while (std::any_of(arena.edges().begin(), arena.edges().end(),
                       [&](const Edge& e) { return e.name == name; })) {
      name += "_";
    }
    out.AddEdge(v, sink_of(v), 0, name);
    red.original_edge.push_back(-1);
  }
  out.Validate();
  return red;
}

RichmanValues MapBack(const Arena& arena, const TargetReduction& red,
                      const RichmanValues& reduced) {
  const int n = arena.num_vertices();
  RichmanValues rv;
  rv.values.assign(reduced.values.begin(), reduced.values.begin() + n);
  rv.e_plus.assign(n, -1);
  rv.e_minus.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    int p = reduced.e_plus[v], m = reduced.e_minus[v];
    if (p >= 0 && red.original_edge[p] >= 0) {
      rv.e_plus[v] = red.original_edge[p];
      rv.e_minus[v] = red.original_edge[m];
    } else if (!arena.out(v).empty()) {
      rv.e_plus[v] = rv.e_minus[v] = arena.out(v).front();
    }
  }
  return rv;
}

std::vector<Rational> RichmanStart(const Arena& arena) {
  RequireRichman(arena, "richman_iterate");
  std::vector<Rational> cur(arena.num_vertices(), Rational(1));
  cur[arena.vr()] = 0;
  return cur;
}

std::vector<Rational> RichmanStep(const Arena& arena,
                                  const std::vector<Rational>& prev) {
  const int n = arena.num_vertices();
  std::vector<Rational> next(n);
  for (int v = 0; v < n; ++v) {
    if (arena.IsTerminal(v)) {
      next[v] = prev[v];
      continue;
    }
    int plus, minus;
    ExtremeEdges(arena, prev, v, &plus, &minus);
    next[v] = (prev[arena.edge(plus).dst] + prev[arena.edge(minus).dst]) / 2;
  }
  return next;
}

std::vector<Rational> RichmanIterate(const Arena& arena, int steps) {
  if (steps < 0) throw DomainError("steps must be non-negative");
  std::vector<Rational> cur = RichmanStart(arena);
  for (int i = 0; i < steps; ++i) cur = RichmanStep(arena, cur);
  return cur;
}

RichmanValues RichmanExact(const Arena& arena, const RichmanOptions& opts) {
  RequireRichman(arena, "richman_exact");
  const int n = arena.num_vertices();
  std::vector<bool> is_vr(n, false);
  is_vr[arena.vr()] = true;
  std::vector<bool> reach_vr = CanReach(arena, is_vr, true);

  internal::AverageSystem sys;
  sys.Resize(n);
  for (int v = 0; v < n; ++v) {
    if (v == arena.vr()) sys.fixed[v] = Rational(0);
    else if (v == arena.vs() || !reach_vr[v]) sys.fixed[v] = Rational(1);
    else
      for (int e : arena.out(v)) sys.AddOption(v, e, arena.edge(e).dst, 0);
  }

  std::optional<internal::AverageSolution> sol;
  std::string why;
  long sweeps = std::max<long>(opts.seed_sweeps / 100, 100);
  for (int attempt = 0; attempt < 3 && !sol; ++attempt) {
    std::vector<double> seed(n, 1.0);
    internal::ValueIterate(sys, &seed, sweeps, 1e-15);
    sol = internal::PolicyIterate(sys, seed, opts.max_policy_iterations,
                                  attempt == 0 ? 0.0 : 1e-9, &why);
    sweeps = opts.seed_sweeps;
  }
  if (!sol) throw InternalError("richman_exact: " + why);
  if (!internal::IsFixedPoint(sys, *sol)) {
    throw InternalError("richman_exact: result is not a fixed point");
  }

  std::vector<int> dist_vs = DistanceTo(arena, arena.vs());
  RichmanValues rv;
  rv.values = sol->value;
  rv.e_plus.assign(n, -1);
  rv.e_minus.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (arena.IsTerminal(v)) continue;
    if (sys.fixed[v]) {
      // Value-1 vertices: every edge is extreme, so step towards vS.
      int best = -1;
      for (int e : arena.out(v)) {
        int d = dist_vs[arena.edge(e).dst];
        if (d >= 0 && (best < 0 || d < dist_vs[arena.edge(best).dst])) best = e;
      }
      if (best >= 0) rv.e_plus[v] = rv.e_minus[v] = best;
      else ExtremeEdges(arena, rv.values, v, &rv.e_plus[v], &rv.e_minus[v]);
    } else {
      rv.e_plus[v] = sys.options[v][sol->plus[v]].edge;
      rv.e_minus[v] = sys.options[v][sol->minus[v]].edge;
    }
  }
  return rv;
}

MarkovReport MarkovReachCheck(const Arena& arena, const RichmanValues& rv) {
  RequireRichman(arena, "markov_reach_check");
  const int n = arena.num_vertices();
  // Vertices of the policy chain that can reach a sink.
  std::vector<std::vector<int>> pred(n);
  for (int v = 0; v < n; ++v) {
    if (arena.IsTerminal(v)) continue;
    pred[arena.edge(rv.e_plus[v]).dst].push_back(v);
    pred[arena.edge(rv.e_minus[v]).dst].push_back(v);
  }
  std::vector<bool> absorbing(n, false);
  std::vector<int> queue = {arena.vr(), arena.vs()};
  absorbing[arena.vr()] = absorbing[arena.vs()] = true;
  for (size_t i = 0; i < queue.size(); ++i) {
    for (int p : pred[queue[i]]) {
      if (!absorbing[p]) {
        absorbing[p] = true;
        queue.push_back(p);
      }
    }
  }
  MarkovReport rep;
  for (int v = 0; v < n; ++v) {
    if (!absorbing[v]) rep.non_absorbing.push_back(v);
  }
  rep.absorb_vs = Absorb(arena, rv, absorbing, arena.vs());
  rep.absorb_vr = Absorb(arena, rv, absorbing, arena.vr());
  rep.residual.resize(n);
  rep.ok = rep.non_absorbing.empty();
  for (int v = 0; v < n; ++v) {
    rep.residual[v] = rep.absorb_vs[v] - rv.values[v];
    if (rep.residual[v] != 0) rep.ok = false;
  }
  return rep;
}

SsgInstance BuildSsg(const Arena& arena) {
  RequireRichman(arena, "build_ssg");
  const int n = arena.num_vertices();
  SsgInstance ssg;
  ssg.chance_of.assign(n, -1);
  auto add = [&](const std::string& name, SsgInstance::Kind kind) {
    ssg.names.push_back(name);
    ssg.kinds.push_back(kind);
    ssg.succ.emplace_back();
    return static_cast<int>(ssg.names.size()) - 1;
  };
  for (int v = 0; v < n; ++v) {
    if (v == arena.vr()) {
      ssg.chance_of[v] = add(arena.name(v) + "_c", SsgInstance::Kind::kWin);
    } else if (v == arena.vs()) {
      ssg.chance_of[v] = add(arena.name(v) + "_c", SsgInstance::Kind::kLose);
    } else {
      ssg.chance_of[v] = add(arena.name(v) + "_c", SsgInstance::Kind::kChance);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (arena.IsTerminal(v)) continue;
    int c = ssg.chance_of[v];
    int p1 = add(arena.name(v) + "_1", SsgInstance::Kind::kMax);
    int p2 = add(arena.name(v) + "_2", SsgInstance::Kind::kMin);
    ssg.succ[c] = {p1, p2};
    for (int e : arena.out(v)) {
      int d = ssg.chance_of[arena.edge(e).dst];
      ssg.succ[p1].push_back(d);
      ssg.succ[p2].push_back(d);
    }
  }
  return ssg;
}

std::vector<double> SolveSsg(const SsgInstance& ssg, double tol,
                             long max_sweeps) {
  if (!(tol > 0)) throw DomainError("tol must be positive");
  const int n = static_cast<int>(ssg.kinds.size());
  std::vector<double> val(n, 0.0);
  for (int v = 0; v < n; ++v) {
    if (ssg.kinds[v] == SsgInstance::Kind::kWin) val[v] = 1.0;
  }
  for (long sweep = 0; sweep < max_sweeps; ++sweep) {
    double delta = 0;
    for (int v = 0; v < n; ++v) {
      double next = val[v];
      switch (ssg.kinds[v]) {
        case SsgInstance::Kind::kWin:
        case SsgInstance::Kind::kLose:
          continue;
        case SsgInstance::Kind::kChance:
          next = 0.5 * (val[ssg.succ[v][0]] + val[ssg.succ[v][1]]);
          break;
        case SsgInstance::Kind::kMax:
          next = -INFINITY;
          for (int s : ssg.succ[v]) next = std::max(next, val[s]);
          break;
        case SsgInstance::Kind::kMin:
          next = INFINITY;
          for (int s : ssg.succ[v]) next = std::min(next, val[s]);
          break;
      }
      delta = std::max(delta, std::fabs(next - val[v]));
      val[v] = next;
    }
    if (delta < tol) break;
  }
  return val;
}

std::string SerializeSsg(const SsgInstance& ssg) {
  static const char* kKind[] = {"chance", "max", "min", "win", "lose"};
  std::ostringstream out;
  out << "objective ssg\n";
  for (size_t v = 0; v < ssg.names.size(); ++v) {
    out << "vertex " << ssg.names[v]
        << " kind=" << kKind[static_cast<int>(ssg.kinds[v])] << "\n";
  }
  for (size_t v = 0; v < ssg.names.size(); ++v) {
    bool chance = ssg.kinds[v] == SsgInstance::Kind::kChance;
    for (int s : ssg.succ[v]) {
      out << "edge " << ssg.names[v] << " " << ssg.names[s];
      if (chance) out << " prob=1/2";
      out << "\n";
    }
  }
  return out.str();
}

std::optional<int> MinWinRounds(const Arena& arena, int v,
                                const Rational& budget, int cap) {
  RequireRichman(arena, "min_win_rounds");
  std::vector<Rational> cur = RichmanStart(arena);
  for (int t = 0; t <= cap; ++t) {
    if (cur[v] < budget) return t;
    cur = RichmanStep(arena, cur);
  }
  return std::nullopt;
}

}  // namespace bidgame
