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

#ifndef BIDGAME_ORACLE_H_
#define BIDGAME_ORACLE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "bidgame/arena.h"
#include "bidgame/meanpayoff.h"
#include "bidgame/rational.h"
#include "bidgame/richman.h"

namespace bidgame {

inline constexpr int64_t kDefaultOracleCap = 100000000;

struct ThresholdBracket {
  bool any_win = false;  // false: Player 1 loses with every grid budget
  int index = 0;         // least winning budget index, D + 1 when none
  Rational estimate;     // index / D, or 1 when none
  Rational lo;           // (index - 1) / D clamped to [0, 1]
  Rational hi;           // estimate
};

// Win/lose table of the Richman game with budgets restricted to multiples
// of 1/D. Bids range over the grid including 0 and the full budget.
class DiscreteTable {
 public:
  DiscreteTable(int n, int grid, int horizon);
  int grid() const { return grid_; }
  int horizon() const { return horizon_; }
  int num_vertices() const { return n_; }
  // Player 1 holding budget i / D at v wins within t rounds.
  bool Win1(int v, int i, int t) const { return win_[Index(v, i, t)] != 0; }
  void Set(int v, int i, int t, bool w) { win_[Index(v, i, t)] = w; }
  // From the full-horizon layer.
  ThresholdBracket Bracket(int v) const;

 private:
  size_t Index(int v, int i, int t) const {
    return (static_cast<size_t>(t) * n_ + v) * (grid_ + 1) + i;
  }
  int n_, grid_, horizon_;
  std::vector<uint8_t> win_;
};

// Exact min-max over grid bids with the arena's tie rule. Requires a
// Richman arena; reachability arenas are first reduced (vertex ids are
// kept). Throws DomainError when |V| * (D + 1) * (T + 1) exceeds `cap`.
DiscreteTable DiscreteBackwardInduction(const Arena& arena, int grid,
                                        int horizon,
                                        int64_t cap = kDefaultOracleCap);

// One step of the grid game: with E[j] (Player 1 wins after winning the
// bidding with budget j) and A[j] (wins after losing it with budget j),
// whether Player 1 wins holding budget i.
bool GridStepWins(const std::vector<uint8_t>& e, const std::vector<uint8_t>& a,
                  int i, bool tie_to_p1);

struct ParityOracleResult {
  int grid = 0;
  int horizon = 0;
  int budget_index = 0;
  std::vector<bool> win1;  // per start vertex
  // 1 when Player 1 wins from every vertex, 2 when from none, else 0.
  int winner = 0;
};

// Finite-horizon parity proxy: Player 1 wins a play of `horizon` rounds
// when the largest parity among the vertices visited in its second half is
// odd. Grid bids as in DiscreteBackwardInduction.
ParityOracleResult DiscreteParityOracle(const Arena& arena, int grid,
                                        int horizon, int budget_index,
                                        int64_t cap = kDefaultOracleCap);

struct McEstimate {
  int64_t samples = 0;
  int64_t used = 0;      // samples that finished within the length cap
  int64_t censored = 0;  // samples cut at the length cap
  double mean = 0;
  double std_error = 0;  // NaN when fewer than two samples were used
  bool std_error_defined = false;
};

// Absorption probability at vS of the walk that follows e_plus or e_minus
// with probability 1/2 each.
McEstimate MonteCarloAbsorption(const Arena& arena, const RichmanValues& rv,
                                int start, int64_t samples, uint64_t seed,
                                int64_t max_len = 1000000, int threads = 0);

// Weight accumulated by the same walk over the weighted policy from the
// departure copy of u until it arrives back at u.
McEstimate MonteCarloLoopReward(const Arena& arena,
                                const WeightedRichmanValues& wrv,
                                int64_t samples, uint64_t seed,
                                int64_t max_len = 1000000, int threads = 0);

}  // namespace bidgame

#endif  // BIDGAME_ORACLE_H_
