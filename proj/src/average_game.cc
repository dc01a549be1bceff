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

#include "average_game.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bidgame/linear.h"

namespace bidgame::internal {
namespace {

std::vector<int> DistanceToFixed(const AverageSystem& sys) {
  std::vector<std::vector<int>> pred(sys.n);
  for (int v = 0; v < sys.n; ++v) {
    if (sys.fixed[v]) continue;
    for (const Option& o : sys.options[v]) pred[o.dst].push_back(v);
  }
  std::vector<int> dist(sys.n, std::numeric_limits<int>::max());
  std::vector<int> queue;
  for (int v = 0; v < sys.n; ++v) {
    if (sys.fixed[v]) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  for (size_t i = 0; i < queue.size(); ++i) {
    for (int p : pred[queue[i]]) {
      if (dist[p] == std::numeric_limits<int>::max()) {
        dist[p] = dist[queue[i]] + 1;
        queue.push_back(p);
      }
    }
  }
  return dist;
}

int PickSeed(const std::vector<Option>& opts, const std::vector<double>& seed,
             const std::vector<int>& dist, double tie_tol, bool want_max) {
  double best = want_max ? -INFINITY : INFINITY;
  for (const Option& o : opts) {
    double val = o.weight_d + seed[o.dst];
    best = want_max ? std::max(best, val) : std::min(best, val);
  }
  int pick = -1;
  for (int i = 0; i < static_cast<int>(opts.size()); ++i) {
    double val = opts[i].weight_d + seed[opts[i].dst];
    bool tied = tie_tol > 0 ? std::fabs(val - best) <= tie_tol : val == best;
    if (!tied) continue;
    if (pick < 0 || (tie_tol > 0 && dist[opts[i].dst] < dist[opts[pick].dst])) {
      pick = i;
    }
  }
  return pick;
}

}  // namespace

long ValueIterate(const AverageSystem& sys, std::vector<double>* values,
                  long max_sweeps, double tol) {
  std::vector<double>& x = *values;
  for (int v = 0; v < sys.n; ++v) {
    if (sys.fixed[v]) x[v] = sys.fixed[v]->get_d();
  }
  long sweep = 0;
  while (sweep < max_sweeps) {
    ++sweep;
    double delta = 0;
    for (int v = 0; v < sys.n; ++v) {
      if (sys.fixed[v] || sys.options[v].empty()) continue;
      double hi = -INFINITY, lo = INFINITY;
      for (const Option& o : sys.options[v]) {
        double val = o.weight_d + x[o.dst];
        hi = std::max(hi, val);
        lo = std::min(lo, val);
      }
      double next = 0.5 * (hi + lo);
      delta = std::max(delta, std::fabs(next - x[v]));
      x[v] = next;
    }
    if (delta < tol) break;
  }
  return sweep;
}

std::optional<AverageSolution> PolicyIterate(const AverageSystem& sys,
                                             const std::vector<double>& seed,
                                             int max_iters, double tie_tol,
                                             std::string* why) {
  const int n = sys.n;
  std::vector<int> dist = DistanceToFixed(sys);
  AverageSolution sol;
  sol.plus.assign(n, -1);
  sol.minus.assign(n, -1);
  std::vector<int> var(n, -1);
  int m = 0;
  for (int v = 0; v < n; ++v) {
    if (sys.fixed[v]) continue;
    if (sys.options[v].empty()) {
      if (why) *why = "vertex without options";
      return std::nullopt;
    }
    var[v] = m++;
    sol.plus[v] = PickSeed(sys.options[v], seed, dist, tie_tol, true);
    sol.minus[v] = PickSeed(sys.options[v], seed, dist, tie_tol, false);
  }
  for (int iter = 0; iter < max_iters; ++iter) {
    Matrix a(m, std::vector<Rational>(m));
    std::vector<Rational> b(m);
    for (int v = 0; v < n; ++v) {
      if (var[v] < 0) continue;
      int row = var[v];
      a[row][row] += 1;
      for (int choice : {sol.plus[v], sol.minus[v]}) {
        const Option& o = sys.options[v][choice];
        b[row] += o.weight / 2;
        if (var[o.dst] >= 0) {
          a[row][var[o.dst]] -= Rational(1, 2);
        } else {
          b[row] += *sys.fixed[o.dst] / 2;
        }
      }
    }
    auto x = SolveExact(std::move(a), std::move(b));
    if (!x) {
      if (why) *why = kSingularPolicy;
      return std::nullopt;
    }
    sol.value.assign(n, Rational(0));
    for (int v = 0; v < n; ++v) {
      sol.value[v] = var[v] >= 0 ? (*x)[var[v]] : *sys.fixed[v];
    }
    bool changed = false;
    for (int v = 0; v < n; ++v) {
      if (var[v] < 0) continue;
      const auto& opts = sys.options[v];
      Rational hi = OptionValue(opts[0], sol.value), lo = hi;
      for (const Option& o : opts) {
        Rational val = OptionValue(o, sol.value);
        if (val > hi) hi = val;
        if (val < lo) lo = val;
      }
      if (OptionValue(opts[sol.plus[v]], sol.value) != hi) {
        for (int i = 0; i < static_cast<int>(opts.size()); ++i) {
          if (OptionValue(opts[i], sol.value) == hi) {
            sol.plus[v] = i;
            break;
          }
        }
        changed = true;
      }
      if (OptionValue(opts[sol.minus[v]], sol.value) != lo) {
        for (int i = 0; i < static_cast<int>(opts.size()); ++i) {
          if (OptionValue(opts[i], sol.value) == lo) {
            sol.minus[v] = i;
            break;
          }
        }
        changed = true;
      }
    }
    if (!changed) return sol;
  }
  if (why) *why = "no stable policy within the iteration cap";
  return std::nullopt;
}

bool IsFixedPoint(const AverageSystem& sys, const AverageSolution& sol) {
  for (int v = 0; v < sys.n; ++v) {
    if (sys.fixed[v]) {
      if (sol.value[v] != *sys.fixed[v]) return false;
      continue;
    }
    const auto& opts = sys.options[v];
    Rational hi = OptionValue(opts[sol.plus[v]], sol.value);
    Rational lo = OptionValue(opts[sol.minus[v]], sol.value);
    for (const Option& o : opts) {
      Rational val = OptionValue(o, sol.value);
      if (val > hi || val < lo) return false;
    }
    if (sol.value[v] != (hi + lo) / 2) return false;
  }
  return true;
}

}  // namespace bidgame::internal
