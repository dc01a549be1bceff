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

#include "bidgame/oracle.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "bidgame/sim.h"

namespace bidgame {
namespace {

void RequireGrid(int grid, int horizon, const char* op) {
  if (grid < 2) throw DomainError(std::string(op) + ": grid must be >= 2");
  if (horizon < 1) throw DomainError(std::string(op) + ": horizon must be >= 1");
}

void RequireCap(double entries, int64_t cap, const char* op) {
  if (entries > static_cast<double>(cap)) {
    throw DomainError(std::string(op) + ": table needs about " +
                      std::to_string(static_cast<int64_t>(entries)) +
                      " entries, above the cap of " + std::to_string(cap));
  }
}

uint64_t SplitMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Fair coins drawn one bit at a time.
class Coins {
 public:
  explicit Coins(uint64_t seed) : rng_(seed) {}
  bool Flip() {
    if (left_ == 0) {
      bits_ = rng_();
      left_ = 64;
    }
    --left_;
    bool b = bits_ & 1;
    bits_ >>= 1;
    return b;
  }

 private:
  std::mt19937_64 rng_;
  uint64_t bits_ = 0;
  int left_ = 0;
};

struct Sample {
  double value = 0;
  bool censored = false;
};

template <typename Walk>
McEstimate RunSamples(int64_t samples, uint64_t seed, int threads,
                      const Walk& walk) {
  if (samples < 1) throw DomainError("monte_carlo: samples must be >= 1");
  std::vector<Sample> out(samples);
  std::atomic<int64_t> next{0};
  const int64_t chunk = 1024;
  auto work = [&] {
    for (int64_t lo = next.fetch_add(chunk); lo < samples;
         lo = next.fetch_add(chunk)) {
      int64_t hi = std::min(samples, lo + chunk);
      for (int64_t i = lo; i < hi; ++i) {
        Coins coins(SplitMix(seed ^ SplitMix(static_cast<uint64_t>(i))));
        out[i] = walk(coins);
      }
    }
  };
  int workers = static_cast<int>(
      std::min<int64_t>(ThreadCount(threads), (samples + chunk - 1) / chunk));
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  McEstimate est;
  est.samples = samples;
  double sum = 0;
  for (const Sample& s : out) {
    if (s.censored) {
      ++est.censored;
    } else {
      ++est.used;
      sum += s.value;
    }
  }
  est.mean = est.used > 0 ? sum / static_cast<double>(est.used) : 0.0;
  if (est.used >= 2) {
    double ss = 0;
    for (const Sample& s : out) {
      if (!s.censored) ss += (s.value - est.mean) * (s.value - est.mean);
    }
    double var = ss / static_cast<double>(est.used - 1);
    est.std_error = std::sqrt(var / static_cast<double>(est.used));
    est.std_error_defined = true;
  } else {
    est.std_error = std::numeric_limits<double>::quiet_NaN();
  }
  return est;
}

}  // namespace

DiscreteTable::DiscreteTable(int n, int grid, int horizon)
    : n_(n), grid_(grid), horizon_(horizon),
      win_(static_cast<size_t>(horizon + 1) * n * (grid + 1), 0) {}

ThresholdBracket DiscreteTable::Bracket(int v) const {
  ThresholdBracket b;
  b.index = grid_ + 1;
  for (int i = 0; i <= grid_; ++i) {
    if (Win1(v, i, horizon_)) {
      b.index = i;
      b.any_win = true;
      break;
    }
  }
  if (b.any_win) {
    b.estimate = Rational(b.index, grid_);
    b.lo = Rational(std::max(0, b.index - 1), grid_);
  } else {
    b.estimate = 1;
    b.lo = 1;
  }
  b.estimate.canonicalize();
  b.lo.canonicalize();
  b.hi = b.estimate;
  return b;
}

bool GridStepWins(const std::vector<uint8_t>& e, const std::vector<uint8_t>& a,
                  int i, bool tie_to_p1) {
  const int d = static_cast<int>(e.size()) - 1;
  // suffix[j]: a[k] holds for every j <= k <= d.
  std::vector<uint8_t> suffix(d + 2, 1);
  for (int j = d; j >= 0; --j) suffix[j] = suffix[j + 1] && a[j];
  const int shift = tie_to_p1 ? 1 : 0;
  for (int b1 = 0; b1 <= i; ++b1) {
    if ((b1 > 0 || tie_to_p1) && !e[i - b1]) continue;
    int from = i + b1 + shift;  // least budget after losing the bidding
    if (from > d || suffix[from]) return true;
  }
  return false;
}

DiscreteTable DiscreteBackwardInduction(const Arena& input, int grid,
                                        int horizon, int64_t cap) {
  RequireGrid(grid, horizon, "discrete_backward_induction");
  Arena arena = input.objective() == Objective::kReachability
                    ? ReachToRichman(input)
                    : input;
  if (arena.objective() != Objective::kRichman) {
    throw DomainError("discrete_backward_induction: needs a richman arena");
  }
  const int n = arena.num_vertices();
  RequireCap(static_cast<double>(n) * (grid + 1) * (horizon + 1), cap,
             "discrete_backward_induction");
  DiscreteTable table(n, grid, horizon);
  for (int t = 0; t <= horizon; ++t) {
    for (int i = 0; i <= grid; ++i) table.Set(arena.vr(), i, t, true);
  }
  std::vector<uint8_t> e(grid + 1), a(grid + 1);
  for (int t = 1; t <= horizon; ++t) {
    const bool tie1 = arena.tie_rule().Winner(horizon - t) == 1;
    for (int v = 0; v < n; ++v) {
      if (arena.IsTerminal(v) || arena.out(v).empty()) continue;
      for (int j = 0; j <= grid; ++j) {
        bool any = false, all = true;
        for (int edge : arena.out(v)) {
          bool w = table.Win1(arena.edge(edge).dst, j, t - 1);
          any = any || w;
          all = all && w;
        }
        e[j] = any;
        a[j] = all;
      }
      for (int i = 0; i <= grid; ++i) {
        table.Set(v, i, t, GridStepWins(e, a, i, tie1));
      }
    }
  }
  return table;
}

ParityOracleResult DiscreteParityOracle(const Arena& arena, int grid,
                                        int horizon, int budget_index,
                                        int64_t cap) {
  RequireGrid(grid, horizon, "discrete_parity_oracle");
  if (budget_index < 0 || budget_index > grid) {
    throw DomainError("discrete_parity_oracle: budget index out of range");
  }
  const int n = arena.num_vertices();
  for (int v = 0; v < n; ++v) {
    if (arena.out(v).empty()) {
      throw DomainError("discrete_parity_oracle: vertex " + arena.name(v) +
                        " has no moves");
    }
  }
  // Slot 0 means no vertex counted yet; slot k + 1 is parity level k.
  std::vector<unsigned> levels;
  for (int v = 0; v < n; ++v) levels.push_back(arena.parity(v));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const int slots = static_cast<int>(levels.size()) + 1;
  std::vector<int> slot_of(n);
  for (int v = 0; v < n; ++v) {
    slot_of[v] = 1 + static_cast<int>(std::lower_bound(levels.begin(),
                                                       levels.end(),
                                                       arena.parity(v)) -
                                      levels.begin());
  }
  const size_t layer = static_cast<size_t>(n) * slots * (grid + 1);
  RequireCap(2.0 * static_cast<double>(layer), cap, "discrete_parity_oracle");
  auto at = [&](int v, int m, int i) {
    return (static_cast<size_t>(v) * slots + m) * (grid + 1) + i;
  };
  const int window = horizon / 2;  // vertices seen with <= window steps left
  std::vector<uint8_t> prev(layer), cur(layer);
  for (int v = 0; v < n; ++v) {
    for (int m = 0; m < slots; ++m) {
      int mm = std::max(m, slot_of[v]);
      bool odd = levels[mm - 1] % 2 == 1;
      for (int i = 0; i <= grid; ++i) prev[at(v, m, i)] = odd;
    }
  }
  std::vector<uint8_t> e(grid + 1), a(grid + 1);
  for (int t = 1; t <= horizon; ++t) {
    const bool tie1 = arena.tie_rule().Winner(horizon - t) == 1;
    const bool counted = t <= window;
    for (int v = 0; v < n; ++v) {
      for (int m = 0; m < slots; ++m) {
        if (!counted && m != 0) continue;  // unreachable before the window
        int mm = counted ? std::max(m, slot_of[v]) : m;
        for (int j = 0; j <= grid; ++j) {
          bool any = false, all = true;
          for (int edge : arena.out(v)) {
            bool w = prev[at(arena.edge(edge).dst, mm, j)];
            any = any || w;
            all = all && w;
          }
          e[j] = any;
          a[j] = all;
        }
        for (int i = 0; i <= grid; ++i) {
          cur[at(v, m, i)] = GridStepWins(e, a, i, tie1);
        }
      }
    }
    std::swap(prev, cur);
  }
  ParityOracleResult res;
  res.grid = grid;
  res.horizon = horizon;
  res.budget_index = budget_index;
  int wins = 0;
  for (int v = 0; v < n; ++v) {
    bool w = prev[at(v, 0, budget_index)];
    res.win1.push_back(w);
    wins += w;
  }
  res.winner = wins == n ? 1 : wins == 0 ? 2 : 0;
  return res;
}

McEstimate MonteCarloAbsorption(const Arena& arena, const RichmanValues& rv,
                                int start, int64_t samples, uint64_t seed,
                                int64_t max_len, int threads) {
  if (arena.objective() != Objective::kRichman) {
    throw DomainError("monte_carlo: absorption needs a richman arena");
  }
  if (start < 0 || start >= arena.num_vertices()) {
    throw DomainError("monte_carlo: start vertex out of range");
  }
  return RunSamples(samples, seed, threads, [&](Coins& coins) {
    int v = start;
    for (int64_t step = 0; step <= max_len; ++step) {
      if (v == arena.vs()) return Sample{1.0, false};
      if (v == arena.vr()) return Sample{0.0, false};
      int e = coins.Flip() ? rv.e_plus[v] : rv.e_minus[v];
      if (e < 0) break;
      v = arena.edge(e).dst;
    }
    return Sample{0.0, true};
  });
}

McEstimate MonteCarloLoopReward(const Arena& arena,
                                const WeightedRichmanValues& wrv,
                                int64_t samples, uint64_t seed,
                                int64_t max_len, int threads) {
  std::vector<double> w(arena.num_edges());
  for (int e = 0; e < arena.num_edges(); ++e) {
    w[e] = ToDouble(arena.edge(e).weight);
  }
  return RunSamples(samples, seed, threads, [&](Coins& coins) {
    int v = wrv.u;
    double reward = 0;
    for (int64_t step = 0; step < max_len; ++step) {
      int e = coins.Flip() ? wrv.e_plus[v] : wrv.e_minus[v];
      reward += w[e];
      v = arena.edge(e).dst;
      if (v == wrv.u) return Sample{reward, false};
    }
    return Sample{0.0, true};
  });
}

}  // namespace bidgame
