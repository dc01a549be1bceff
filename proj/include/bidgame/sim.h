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

#ifndef BIDGAME_SIM_H_
#define BIDGAME_SIM_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bidgame/arena.h"
#include "bidgame/rational.h"
#include "bidgame/strategy.h"

namespace bidgame {

struct GameState {
  int vertex = 0;
  Rational budget1;
  Rational budget2;
  Rational energy;
  int64_t round = 0;
};

struct MonitorReport {
  std::string name;
  bool applicable = true;
  int64_t checks = 0;
  int64_t failures = 0;
  int64_t first_failure_round = -1;
  std::string message;  // describes the first failure
  Json info = Json::object();
  bool pass() const { return failures == 0; }
};

// Observers of play. They never alter the state or the strategies.
class Monitor {
 public:
  explicit Monitor(std::string name) { report_.name = std::move(name); }
  virtual ~Monitor() = default;
  // After both strategies acted, before legality is enforced.
  virtual void OnActions(const GameState&, const Action&, const Action&,
                         const Strategy&, const Strategy&) {}
  // `before` and `after` bracket the round.
  virtual void AfterRound(const GameState& /*before*/, const RoundRecord&,
                          const GameState& /*after*/, const Strategy&,
                          const Strategy&) {}
  virtual void Finish() {}
  const MonitorReport& report() const { return report_; }

 protected:
  // `what` describes a failure and is only evaluated on one.
  void Check(bool ok, int64_t round, const std::function<std::string()>& what);
  MonitorReport report_;
};

// Names accepted by MakeMonitors, in reporting order.
const std::vector<std::string>& MonitorNames();
// Accepts monitor names and "all". Throws std::invalid_argument.
std::vector<std::unique_ptr<Monitor>> MakeMonitors(
    const Arena& arena, const std::vector<std::string>& names);

struct EpisodeConfig {
  GameState init;
  int64_t horizon = 1000;
  std::vector<std::string> monitors;
  bool keep_records = true;
  // The summary reports the least prefix mean-payoff over the last
  // `tail_window` prefixes (0: the final prefix only).
  int64_t tail_window = 0;
};

struct EpisodeSummary {
  int64_t rounds = 0;
  std::string end;  // horizon, terminal, target, stuck, stopped or aborted
  int64_t abort_round = -1;
  int abort_player = 0;
  std::string abort_reason;
  int final_vertex = 0;
  Rational final_budget1;
  Rational final_budget2;
  Rational final_energy;
  Rational min_energy;
  Rational max_energy;
  bool hit_zero = false;  // energy <= 0 in some state, the initial included
  int64_t first_zero_round = -1;
  Rational mean_payoff;       // E(pi^n) / n at the last round
  Rational tail_mean_payoff;  // least over the tail window
  unsigned tail_max_parity = 0;  // over vertices visited in the second half
  int64_t wins1 = 0;
  int64_t wins2 = 0;
};

struct EpisodeTrace {
  GameState init;
  std::vector<RoundRecord> records;  // empty unless keep_records
  EpisodeSummary summary;
  std::vector<MonitorReport> monitors;
  Json params1;
  Json params2;
  bool monitors_pass() const;
};

// Plays until the horizon, a Richman sink, a reachability target or a
// vertex without moves. An illegal bid or move aborts the episode.
EpisodeTrace RunEpisode(const Arena& arena, Strategy& s1, Strategy& s2,
                        const EpisodeConfig& cfg);

// E(pi^n) / n for 1 <= n <= number of records.
Rational PrefixMeanPayoff(const EpisodeTrace& trace, int64_t n);

// Recomputes every state from the recorded bids and moves.
bool ReplayMatches(const Arena& arena, const EpisodeTrace& trace,
                   std::string* why = nullptr);

struct BatchConfig {
  std::string p1;  // strategy specs, see MakeStrategy
  std::string p2;
  EpisodeConfig episode;
  std::vector<uint64_t> seeds;
  int threads = 0;  // 0: BIDGAME_THREADS or the hardware count
};

struct BatchReport {
  std::vector<uint64_t> seeds;
  std::vector<EpisodeTrace> episodes;  // in seed order
  Json aggregate;
};

BatchReport RunBatch(const Arena& arena, const BatchConfig& cfg);

// Worker count: `requested` if positive, else BIDGAME_THREADS, else the
// hardware concurrency.
int ThreadCount(int requested = 0);

// Seed of a player's strategy in a batch episode.
uint64_t PlayerSeed(uint64_t seed, int player);

Json RecordToJson(const Arena& arena, const RoundRecord& r);
Json SummaryToJson(const Arena& arena, const EpisodeSummary& s);
Json MonitorToJson(const MonitorReport& m);
Json TraceToJson(const Arena& arena, const EpisodeTrace& t,
                 bool with_records = true);

}  // namespace bidgame

#endif  // BIDGAME_SIM_H_
