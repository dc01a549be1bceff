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

#ifndef BIDGAME_STRATEGY_H_
#define BIDGAME_STRATEGY_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bidgame/arena.h"
#include "bidgame/meanpayoff.h"
#include "bidgame/rational.h"
#include "bidgame/richman.h"
#include "json.hpp"

namespace bidgame {

using Json = nlohmann::ordered_json;

// One bidding as the referee resolved it.
struct RoundRecord {
  int64_t round = 0;
  int vertex = 0;  // where the bidding took place
  Rational bid1;
  Rational bid2;
  int winner = 1;
  bool tie = false;
  int edge = -1;
  int dst = 0;
  Rational budget1;  // after the round
  Rational budget2;
  Rational energy;   // after the round
};

struct Action {
  Rational bid;
  int edge = -1;
};

class Strategy {
 public:
  Strategy(const Arena& arena, int player);
  virtual ~Strategy() = default;

  virtual std::string kind() const = 0;
  // `budget` is this player's budget before the bidding.
  virtual Action Act(int vertex, const Rational& budget, const Rational& energy,
                     int64_t round) = 0;
  virtual void Observe(const RoundRecord&) {}
  virtual Json Params() const { return Json::object(); }
  // True once the player has asked to end the episode.
  virtual bool WantsStop() const { return false; }

  int player() const { return player_; }
  const Arena& arena() const { return arena_; }

 protected:
  const Rational& own_budget(const RoundRecord& r) const {
    return player_ == 1 ? r.budget1 : r.budget2;
  }
  const Rational& own_bid(const RoundRecord& r) const {
    return player_ == 1 ? r.bid1 : r.bid2;
  }
  const Rational& other_bid(const RoundRecord& r) const {
    return player_ == 1 ? r.bid2 : r.bid1;
  }

  Arena arena_;
  int player_;
};

// Bids eps * 2^-d on the way to a target set, where d is the distance along
// a fixed set of allowed edges, and switches to 2^-d once the budget exceeds
// 1 - 2^-d. Each loss raises budget - eps * (1 - 2^-d) by at least
// eps * 2^-dmax while wins leave it unchanged, so the target is reached.
class Drawer {
 public:
  Drawer() = default;
  // allowed[e] marks usable edges. Distances count edges; target vertices
  // have distance 0 unless `return_to` is set, in which case that vertex
  // gets one plus the least distance of its successors.
  Drawer(const Arena& arena, const std::vector<bool>& target,
         const std::vector<bool>& allowed, int return_to = -1);

  // Distance of v, or -1 when the target cannot be reached.
  int dist(int v) const { return dist_[v]; }
  // Smallest allowed edge out of v that decreases the distance.
  int step(int v) const { return step_[v]; }
  // eps * 2^-d, or 2^-d when budget > 1 - 2^-d.
  Rational Bid(int v, const Rational& budget, const Rational& eps) const;
  static bool AllInRange(const Rational& budget, int d);

 private:
  std::vector<int> dist_;
  std::vector<int> step_;
};

// Countdown strategy: with i least such that R(start, i) < budget, bids
// half the gap of R(., i - 1) and moves to the minimizing successor.
class RichmanWinnerStrategy : public Strategy {
 public:
  RichmanWinnerStrategy(const Arena& arena, int player, const Rational& budget,
                        int start, int cap = 100000);
  std::string kind() const override { return "richman"; }
  Action Act(int vertex, const Rational& budget, const Rational& energy,
             int64_t round) override;
  void Observe(const RoundRecord& r) override;
  Json Params() const override;

  int rounds() const { return rounds_; }
  int remaining() const { return remaining_; }
  const Rational& threshold() const { return threshold_; }
  // R(., i) of the player's own game.
  const std::vector<Rational>& level(int i) const { return levels_[i]; }

 private:
  Arena own_;  // targets swapped for Player 2
  std::vector<std::vector<Rational>> levels_;
  Rational threshold_;
  int rounds_ = 0;
  int remaining_ = 0;
};

// Memoryless parity strategy: difference-form bids towards the player's
// winning bottom components, then repeated draws to the largest-parity
// vertex inside.
class ParityStrategy : public Strategy {
 public:
  ParityStrategy(const Arena& arena, int player, const Rational& budget,
                 int start);
  std::string kind() const override { return "parity"; }
  Action Act(int vertex, const Rational& budget, const Rational& energy,
             int64_t round) override;
  Json Params() const override;

  const Rational& eps() const { return eps_; }
  const std::vector<Rational>& values() const { return value_; }
  int dist(int v) const { return outer_.dist(v); }

 private:
  std::vector<Rational> value_;  // the player's own thresholds
  std::vector<int> e_plus_;
  std::vector<bool> target_;
  std::vector<int> witness_of_;  // per vertex: witness of its bottom class
  Drawer outer_;
  std::map<int, Drawer> inner_;  // keyed by witness
  Rational eps_;
  Rational inner_eps_;
  bool inside_ = false;
};

// Min on a strongly connected arena with W(u) <= 0.
class MinMpStrategy : public Strategy {
 public:
  enum class Phase { kActive, kIdle, kReturn };

  MinMpStrategy(const Arena& arena, int u, const Rational& budget,
                const Rational& energy, const Rational& reserve = Rational(1, 10));
  std::string kind() const override { return "min"; }
  Action Act(int vertex, const Rational& budget, const Rational& energy,
             int64_t round) override;
  void Observe(const RoundRecord& r) override;
  Json Params() const override;

  // Least N with budget * (1 - reserve) > (energy + bM + wM) / N.
  static mpz_class ChooseN(const Rational& budget, const Rational& energy,
                           const Rational& bm, const Rational& wm,
                           const Rational& reserve);

  Phase phase() const { return phase_; }
  int segment() const { return segment_; }
  const mpz_class& n() const { return n_; }         // current segment
  const mpz_class& n_initial() const { return n0_; }
  const Rational& bm() const { return bm_; }
  const Rational& wm() const { return wm_; }
  int root() const { return wrv_.u; }
  const Rational& ki() const { return ki_; }
  const Rational& reserve() const { return reserve_; }
  const WeightedRichmanValues& wrv() const { return wrv_; }

 private:
  void StartActive(const Rational& budget, const Rational& energy);

  WeightedRichmanValues wrv_;
  Rational bm_, wm_, reserve_, ki_;
  mpz_class n_, n0_;
  Phase phase_ = Phase::kActive;
  int segment_ = 0;
  Drawer drawer_;
  Rational draw_eps_;
};

struct CurrencyChange {
  int64_t round = 0;
  int from = 0;  // currency index before (bids scale with z^-index)
  int to = 0;
  int block = 0;  // energy block entered
  Rational budget;
  double required = 0;
};

// Max on a recurrent strongly connected arena with W(root) > 0.
class MaxRecurrentStrategy : public Strategy {
 public:
  MaxRecurrentStrategy(const Arena& arena, const Rational& budget);
  std::string kind() const override { return "max-recurrent"; }
  Action Act(int vertex, const Rational& budget, const Rational& energy,
             int64_t round) override;
  Json Params() const override;

  int root() const { return root_; }
  double z() const { return z_; }
  bool degenerate() const { return z_ == 0; }
  long m() const { return m_; }
  const Rational& ki() const { return ki_; }
  int currency() const { return currency_; }
  double wiggle() const { return wiggle_; }
  double bm() const { return bm_; }
  double wm() const { return wm_; }
  const Arena& scaled() const { return scaled_; }
  const WeightedRichmanValues& wz() const { return wz_; }
  const std::vector<CurrencyChange>& changes() const { return changes_; }
  int Block(const Rational& energy) const;
  // Budget bound required when the currency moves from block `from` to
  // block `to`.
  double InvRequired(int from, int to) const;

 private:
  int root_ = -1;
  double z_ = 0;
  Arena scaled_;
  WeightedRichmanValues wz_;
  std::vector<double> half_gap_;
  double bm_ = 0, wm_ = 0, wiggle_ = 0;
  long m_ = 1;
  Rational ki_;
  int currency_ = 1;
  std::vector<CurrencyChange> changes_;
};

// Max on a strongly connected arena with W > 0 everywhere, with even/odd
// energy blocks and odd-block currency memory.
class MaxGeneralStrategy : public Strategy {
 public:
  MaxGeneralStrategy(const Arena& arena, int u, const Rational& budget);
  std::string kind() const override { return "max-general"; }
  Action Act(int vertex, const Rational& budget, const Rational& energy,
             int64_t round) override;
  Json Params() const override;

  int root() const { return root_; }
  double z() const { return z_; }
  bool degenerate() const { return z_ == 0; }
  long m() const { return m_; }
  const Rational& ki() const { return ki_; }
  int currency() const { return currency_; }
  double wiggle() const { return wiggle_; }
  double bm() const { return bm_; }
  double wm() const { return wm_; }
  double omega() const { return omega_; }
  const std::vector<CurrencyChange>& changes() const { return changes_; }
  int Block(const Rational& energy) const;
  // Budget bound at a change into currency `to` from `from`.
  double InvRequired(int from, int to) const;
  double InvEven(int n) const;
  double InvOdd(int n) const;
  // Least block size meeting the inductive step of every transition.
  static long ChooseM(double z, double wm, double bm, double omega);

 private:
  int root_ = -1;
  double z_ = 0;
  WeightedRichmanValues wt_;
  std::vector<double> half_gap_;
  double bm_ = 0, wm_ = 0, omega_ = 0, wiggle_ = 0;
  long m_ = 1;
  Rational ki_;
  int currency_ = 1;
  std::vector<CurrencyChange> changes_;
};

// Matching-stack Min strategy on the single-vertex +1/-1 game.
class TitForTatStrategy : public Strategy {
 public:
  explicit TitForTatStrategy(const Arena& arena);
  std::string kind() const override { return "tft"; }
  Action Act(int vertex, const Rational& budget, const Rational& energy,
             int64_t round) override;
  void Observe(const RoundRecord& r) override;
  Json Params() const override;

  // Unmatched winning bids of the opponent, ascending.
  const std::multiset<Rational>& unmatched() const { return unmatched_; }
  int64_t free_wins() const { return free_wins_; }

 private:
  int down_ = -1;
  std::multiset<Rational> unmatched_;
  int64_t free_wins_ = 0;
};

enum class EdgeRule { kUniform, kMaxWeight, kMinWeight };

class RandomStrategy : public Strategy {
 public:
  RandomStrategy(const Arena& arena, int player, uint64_t seed,
                 EdgeRule edges = EdgeRule::kUniform);
  std::string kind() const override { return "random"; }
  Action Act(int vertex, const Rational& budget, const Rational& energy,
             int64_t round) override;
  Json Params() const override;

 private:
  uint64_t seed_;
  EdgeRule edges_;
  std::mt19937_64 rng_;
};

class GreedyStrategy : public Strategy {
 public:
  GreedyStrategy(const Arena& arena, int player, double fraction,
                 EdgeRule edges);
  std::string kind() const override { return "greedy"; }
  Action Act(int vertex, const Rational& budget, const Rational& energy,
             int64_t round) override;
  Json Params() const override;

 private:
  double fraction_;
  EdgeRule edges_;
};

class AllInStrategy : public Strategy {
 public:
  AllInStrategy(const Arena& arena, int player, EdgeRule edges);
  std::string kind() const override { return "allin"; }
  Action Act(int vertex, const Rational& budget, const Rational& energy,
             int64_t round) override;
  Json Params() const override;

 private:
  EdgeRule edges_;
};

// Smallest edge out of v maximizing (or minimizing) the weight.
int ExtremeWeightEdge(const Arena& arena, int v, bool maximize);

EdgeRule ParseEdgeRule(const std::string& text);
std::string EdgeRuleName(EdgeRule r);

// Builds a strategy from "name" or "name:key=value,key=value". Names:
// richman, parity, min, max-recurrent, max-general, tft, random, greedy,
// allin. `seed` feeds random strategies that do not set one.
struct StrategyContext {
  int player = 1;
  Rational budget;  // this player's initial budget
  int start = 0;
  Rational energy;
  uint64_t seed = 0;
};

std::unique_ptr<Strategy> MakeStrategy(const std::string& spec,
                                       const Arena& arena,
                                       const StrategyContext& ctx);

}  // namespace bidgame

#endif  // BIDGAME_STRATEGY_H_
