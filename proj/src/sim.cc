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

#include "bidgame/sim.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace bidgame {

void Monitor::Check(bool ok, int64_t round,
                    const std::function<std::string()>& what) {
  ++report_.checks;
  if (ok) return;
  if (report_.failures++ == 0) {
    report_.first_failure_round = round;
    report_.message = what();
  }
}

namespace {

std::string Str(const Rational& r) { return ToString(r); }

bool EdgeOf(const Arena& arena, int v, int e) {
  return e >= 0 && e < arena.num_edges() && arena.edge(e).src == v;
}

// Bids within [0, budget] and a move out of the current vertex.
class LegalityMonitor : public Monitor {
 public:
  explicit LegalityMonitor(const Arena& arena)
      : Monitor("legality"), arena_(arena) {}
  void OnActions(const GameState& s, const Action& a1, const Action& a2,
                 const Strategy&, const Strategy&) override {
    One(s, a1, s.budget1, 1);
    One(s, a2, s.budget2, 2);
  }

 private:
  void One(const GameState& s, const Action& a, const Rational& budget,
           int p) {
    Check(a.bid >= 0 && a.bid <= budget, s.round, [&] {
      return "player " + std::to_string(p) + " bid " + Str(a.bid) +
          " with budget " + Str(budget);
    });
    Check(EdgeOf(arena_, s.vertex, a.edge), s.round, [&] {
      return "player " + std::to_string(p) + " chose edge " +
          std::to_string(a.edge) + " at " + arena_.name(s.vertex);
    });
  }
  const Arena& arena_;
};

class BudgetMonitor : public Monitor {
 public:
  BudgetMonitor() : Monitor("budget-conservation") {}
  void AfterRound(const GameState&, const RoundRecord& r, const GameState& s,
                  const Strategy&, const Strategy&) override {
    Check(s.budget1 + s.budget2 == 1 && s.budget1 >= 0 && s.budget2 >= 0,
          r.round, [&] {
      return "budgets " + Str(s.budget1) + " and " + Str(s.budget2);
    });
  }
};

// Along an active Min segment from v to v':
// W(v) - W(v') >= E + N * (Min's net payment).
class ActiveSegmentMonitor : public Monitor {
 public:
  ActiveSegmentMonitor() : Monitor("active-segment") {
    report_.applicable = false;
  }
  void OnActions(const GameState& s, const Action&, const Action&,
                 const Strategy& s1, const Strategy&) override {
    active_ = false;
    auto* m = dynamic_cast<const MinMpStrategy*>(&s1);
    if (!m) return;
    report_.applicable = true;
    if (m->phase() != MinMpStrategy::Phase::kActive) return;
    active_ = true;
    if (m->segment() != segment_) {
      segment_ = m->segment();
      w0_ = m->wrv().values[s.vertex];
      e0_ = s.energy;
      b0_ = s.budget1;
      n_ = Rational(m->n());
      ++segments_;
    }
    wrv_ = &m->wrv();
  }
  void AfterRound(const GameState&, const RoundRecord& r, const GameState& s,
                  const Strategy&, const Strategy&) override {
    if (!active_) return;
    Rational lhs = w0_ - wrv_->Arrival(s.vertex);
    Rational rhs = (s.energy - e0_) + n_ * (b0_ - s.budget1);
    Check(lhs >= rhs, r.round, [&] {
      return "segment " + std::to_string(segment_) + ": W gap " + Str(lhs) +
          " < " + Str(rhs);
    });
  }
  void Finish() override { report_.info["segments"] = segments_; }

 private:
  bool active_ = false;
  int segment_ = -1;
  int64_t segments_ = 0;
  Rational w0_, e0_, b0_, n_;
  const WeightedRichmanValues* wrv_ = nullptr;
};

// In an active Min round with energy k: budget >= (k + bM) / N and
// k <= N - bM.
class ActiveBudgetMonitor : public Monitor {
 public:
  ActiveBudgetMonitor() : Monitor("active-budget") {
    report_.applicable = false;
  }
  void OnActions(const GameState& s, const Action&, const Action&,
                 const Strategy& s1, const Strategy&) override {
    auto* m = dynamic_cast<const MinMpStrategy*>(&s1);
    if (!m) return;
    report_.applicable = true;
    if (m->phase() != MinMpStrategy::Phase::kActive) return;
    Rational n(m->n());
    Check(s.budget1 >= (s.energy + m->bm()) / n, s.round, [&] {
      return "budget " + Str(s.budget1) + " below (" + Str(s.energy) + " + " +
          Str(m->bm()) + ") / " + Str(n);
    });
    Check(s.energy <= n - m->bm(), s.round, [&] {
      return "energy " + Str(s.energy) + " above N - bM = " + Str(n - m->bm());
    });
  }
};

// Recurrent Max between root visits with currency n:
// W^z(v) - W^z(v') <= E^z - z^n * (Max's net payment), and on root cycles
// E^z >= z^n * payment. Also counts which orientation of the energy
// comparison between E and E^z holds per cycle.
class ScaledCycleMonitor : public Monitor {
 public:
  ScaledCycleMonitor() : Monitor("scaled-cycle") {
    report_.applicable = false;
  }
  void OnActions(const GameState& s, const Action&, const Action&,
                 const Strategy&, const Strategy& s2) override {
    m_ = dynamic_cast<const MaxRecurrentStrategy*>(&s2);
    if (!m_ || m_->degenerate()) return;
    report_.applicable = true;
    if (!open_) {
      open_ = true;
      zn_ = std::pow(m_->z(), m_->currency());
      // Past this scale the bids z^-n * gap lose precision as doubles.
      representable_ = zn_ < 0x1p960;
      if (!representable_) ++skipped_;
      w0_ = ToDouble(m_->wz().values[s.vertex]);
      ez_ = 0;
      e_ = 0;
      pay_ = 0;
    }
  }
  void AfterRound(const GameState&, const RoundRecord& r, const GameState& s,
                  const Strategy&, const Strategy&) override {
    if (!m_ || m_->degenerate() || !open_) return;
    if (!representable_) {
      if (r.dst == m_->root()) open_ = false;
      return;
    }
    ez_ += m_->scaled().edge(r.edge).weight;
    e_ += m_->arena().edge(r.edge).weight;
    pay_ += r.winner == 2 ? r.bid2 : Rational(-r.bid1);
    const double ez = ToDouble(ez_);
    const double zb = zn_ * ToDouble(pay_);
    const double tol = 1e-9 * (1 + std::abs(ez) + std::abs(zb));
    const double lhs = w0_ - ToDouble(m_->wz().Arrival(s.vertex));
    Check(lhs <= ez - zb + tol, r.round, [&] {
      return "W^z gap " + FormatDouble(lhs) + " exceeds E^z - z^n B = " +
          FormatDouble(ez - zb);
    });
    if (r.dst != m_->root()) return;
    ++cycles_;
    Check(ez >= zb - tol, r.round, [&] {
      return "cycle E^z " + FormatDouble(ez) + " below z^n B " +
          FormatDouble(zb);
    });
    if (ez <= zb + tol) ++stated_;
    const double z = m_->z(), e = ToDouble(e_);
    if (e >= z * ez - 1e-9 * (1 + std::abs(e))) ++e_ge_zez_;
    if (ez <= z * e + 1e-9 * (1 + std::abs(e))) ++ez_le_ze_;
    open_ = false;
  }
  void Finish() override {
    report_.info["cycles"] = cycles_;
    report_.info["skipped_segments"] = skipped_;
    report_.info["cycles_ez_le_znB"] = stated_;
    report_.info["cycles_E_ge_zEz"] = e_ge_zez_;
    report_.info["cycles_Ez_le_zE"] = ez_le_ze_;
  }

 private:
  const MaxRecurrentStrategy* m_ = nullptr;
  bool open_ = false;
  bool representable_ = true;
  int64_t skipped_ = 0;
  double zn_ = 1, w0_ = 0;
  Rational ez_, e_, pay_;
  int64_t cycles_ = 0, stated_ = 0, e_ge_zez_ = 0, ez_le_ze_ = 0;
};

// Max's budget at each currency change against the required bound.
class InvLedgerMonitor : public Monitor {
 public:
  InvLedgerMonitor() : Monitor("inv-ledger") { report_.applicable = false; }
  void OnActions(const GameState&, const Action&, const Action&,
                 const Strategy&, const Strategy& s2) override {
    const std::vector<CurrencyChange>* changes = nullptr;
    if (auto* r = dynamic_cast<const MaxRecurrentStrategy*>(&s2)) {
      changes = &r->changes();
    } else if (auto* g = dynamic_cast<const MaxGeneralStrategy*>(&s2)) {
      changes = &g->changes();
    }
    if (!changes) return;
    report_.applicable = true;
    for (; seen_ < changes->size(); ++seen_) {
      const CurrencyChange& c = (*changes)[seen_];
      double b = ToDouble(c.budget);
      min_slack_ = std::min(min_slack_, b - c.required);
      Check(b >= c.required - 1e-12, c.round, [&] {
        return "currency " + std::to_string(c.from) + " -> " +
            std::to_string(c.to) + ": budget " + FormatDouble(b) +
            " below " + FormatDouble(c.required);
      });
    }
  }
  void Finish() override {
    if (report_.checks > 0) report_.info["min_slack"] = min_slack_;
  }

 private:
  size_t seen_ = 0;
  double min_slack_ = INFINITY;
};

// Energy equals the initial energy plus unmatched bids minus free wins,
// and at most ceil(1/b) bids are unmatched while the matched bid is b.
class TftEnergyMonitor : public Monitor {
 public:
  TftEnergyMonitor() : Monitor("tft-energy") { report_.applicable = false; }
  void OnActions(const GameState& s, const Action&, const Action&,
                 const Strategy& s1, const Strategy&) override {
    if (!dynamic_cast<const TitForTatStrategy*>(&s1)) return;
    if (!report_.applicable) init_ = s.energy;
    report_.applicable = true;
  }
  void AfterRound(const GameState&, const RoundRecord& r, const GameState& s,
                  const Strategy& s1, const Strategy&) override {
    auto* t = dynamic_cast<const TitForTatStrategy*>(&s1);
    if (!t) return;
    const auto& un = t->unmatched();
    Rational expect = init_ + static_cast<long>(un.size()) -
                      static_cast<long>(t->free_wins());
    Check(s.energy == expect, r.round, [&] {
      return "energy " + Str(s.energy) + " but " + std::to_string(un.size()) +
          " unmatched bids";
    });
    max_unmatched_ = std::max<int64_t>(max_unmatched_, un.size());
    if (!un.empty() && *un.begin() > 0) {
      mpz_class cap = Floor(Rational(1 / *un.begin()));
      if (cap * *un.begin() != 1) cap += 1;
      Check(mpz_class(static_cast<long>(un.size())) <= cap, r.round, [&] {
        return std::to_string(un.size()) + " unmatched bids while matching " +
            Str(*un.begin());
      });
    }
  }
  void Finish() override { report_.info["max_unmatched"] = max_unmatched_; }

 private:
  Rational init_;
  int64_t max_unmatched_ = 0;
};

uint64_t SplitMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

const std::vector<std::string>& MonitorNames() {
  static const std::vector<std::string> kNames = {
      "legality",     "budget-conservation", "active-segment", "active-budget",
      "scaled-cycle", "inv-ledger",          "tft-energy"};
  return kNames;
}

std::vector<std::unique_ptr<Monitor>> MakeMonitors(
    const Arena& arena, const std::vector<std::string>& names) {
  std::vector<std::string> wanted;
  for (const std::string& n : names) {
    if (n == "all") {
      wanted = MonitorNames();
      break;
    }
    const auto& all = MonitorNames();
    if (std::find(all.begin(), all.end(), n) == all.end()) {
      throw std::invalid_argument("unknown monitor '" + n + "'");
    }
    if (std::find(wanted.begin(), wanted.end(), n) == wanted.end()) {
      wanted.push_back(n);
    }
  }
  std::vector<std::unique_ptr<Monitor>> out;
  for (const std::string& n : MonitorNames()) {
    if (std::find(wanted.begin(), wanted.end(), n) == wanted.end()) continue;
    if (n == "legality") out.push_back(std::make_unique<LegalityMonitor>(arena));
    if (n == "budget-conservation") out.push_back(std::make_unique<BudgetMonitor>());
    if (n == "active-segment") out.push_back(std::make_unique<ActiveSegmentMonitor>());
    if (n == "active-budget") out.push_back(std::make_unique<ActiveBudgetMonitor>());
    if (n == "scaled-cycle") out.push_back(std::make_unique<ScaledCycleMonitor>());
    if (n == "inv-ledger") out.push_back(std::make_unique<InvLedgerMonitor>());
    if (n == "tft-energy") out.push_back(std::make_unique<TftEnergyMonitor>());
  }
  return out;
}

bool EpisodeTrace::monitors_pass() const {
  return std::all_of(monitors.begin(), monitors.end(),
                     [](const MonitorReport& m) { return m.pass(); });
}

EpisodeTrace RunEpisode(const Arena& arena, Strategy& s1, Strategy& s2,
                        const EpisodeConfig& cfg) {
  if (cfg.horizon < 1) throw DomainError("run_episode: horizon must be >= 1");
  const GameState& init = cfg.init;
  if (init.vertex < 0 || init.vertex >= arena.num_vertices()) {
    throw DomainError("run_episode: start vertex out of range");
  }
  if (init.budget1 < 0 || init.budget2 < 0 ||
      init.budget1 + init.budget2 != 1) {
    throw DomainError("run_episode: budgets must be non-negative and sum to 1");
  }
  auto monitors = MakeMonitors(arena, cfg.monitors);

  EpisodeTrace trace;
  trace.init = init;
  EpisodeSummary& sum = trace.summary;
  GameState s = init;
  s.round = 0;
  sum.min_energy = sum.max_energy = s.energy;
  if (s.energy <= 0) {
    sum.hit_zero = true;
    sum.first_zero_round = 0;
  }
  const int64_t tail_from =
      std::max<int64_t>(1, cfg.horizon - cfg.tail_window + 1);
  bool have_tail = false;
  sum.end = "horizon";

  for (int64_t t = 0; t < cfg.horizon; ++t) {
    if (arena.objective() == Objective::kRichman && arena.IsTerminal(s.vertex)) {
      sum.end = "terminal";
      break;
    }
    if (arena.objective() == Objective::kReachability &&
        arena.is_target(s.vertex)) {
      sum.end = "target";
      break;
    }
    if (arena.out(s.vertex).empty()) {
      sum.end = "stuck";
      break;
    }
    s.round = t;
    Action a1 = s1.Act(s.vertex, s.budget1, s.energy, t);
    Action a2 = s2.Act(s.vertex, s.budget2, s.energy, t);
    if (s1.WantsStop() || s2.WantsStop()) {
      sum.end = "stopped";
      break;
    }
    for (auto& m : monitors) m->OnActions(s, a1, a2, s1, s2);

    auto illegal = [&](const Action& a, const Rational& b) -> std::string {
      if (a.bid < 0) return "negative bid " + Str(a.bid);
      if (a.bid > b) return "bid " + Str(a.bid) + " exceeds budget " + Str(b);
      if (!EdgeOf(arena, s.vertex, a.edge)) {
        return "edge " + std::to_string(a.edge) + " does not leave " +
               arena.name(s.vertex);
      }
      return "";
    };
    std::string why1 = illegal(a1, s.budget1), why2 = illegal(a2, s.budget2);
    if (!why1.empty() || !why2.empty()) {
      sum.end = "aborted";
      sum.abort_round = t;
      sum.abort_player = why1.empty() ? 2 : 1;
      sum.abort_reason = why1.empty() ? why2 : why1;
      break;
    }

    RoundRecord r;
    r.round = t;
    r.vertex = s.vertex;
    r.bid1 = a1.bid;
    r.bid2 = a2.bid;
    r.tie = a1.bid == a2.bid;
    r.winner = r.tie ? arena.tie_rule().Winner(t) : (a1.bid > a2.bid ? 1 : 2);
    const Action& win = r.winner == 1 ? a1 : a2;
    r.edge = win.edge;
    r.dst = arena.edge(win.edge).dst;
    GameState before = s;
    if (r.winner == 1) {
      s.budget1 -= a1.bid;
      s.budget2 += a1.bid;
      ++sum.wins1;
    } else {
      s.budget2 -= a2.bid;
      s.budget1 += a2.bid;
      ++sum.wins2;
    }
    s.energy += arena.edge(r.edge).weight;
    s.vertex = r.dst;
    s.round = t + 1;
    r.budget1 = s.budget1;
    r.budget2 = s.budget2;
    r.energy = s.energy;

    s1.Observe(r);
    s2.Observe(r);
    for (auto& m : monitors) m->AfterRound(before, r, s, s1, s2);

    sum.rounds = t + 1;
    if (s.energy < sum.min_energy) sum.min_energy = s.energy;
    if (s.energy > sum.max_energy) sum.max_energy = s.energy;
    if (s.energy <= 0 && !sum.hit_zero) {
      sum.hit_zero = true;
      sum.first_zero_round = t + 1;
    }
    if (2 * (t + 1) > cfg.horizon) {
      sum.tail_max_parity = std::max(sum.tail_max_parity, arena.parity(s.vertex));
    }
    if (t + 1 >= tail_from) {
      Rational mp = (s.energy - init.energy) / Rational(t + 1);
      if (!have_tail || mp < sum.tail_mean_payoff) sum.tail_mean_payoff = mp;
      have_tail = true;
    }
    if (cfg.keep_records) trace.records.push_back(std::move(r));
  }

  sum.final_vertex = s.vertex;
  sum.final_budget1 = s.budget1;
  sum.final_budget2 = s.budget2;
  sum.final_energy = s.energy;
  if (sum.rounds > 0) {
    sum.mean_payoff = (s.energy - init.energy) / Rational(sum.rounds);
  }
  if (!have_tail) sum.tail_mean_payoff = sum.mean_payoff;
  for (auto& m : monitors) {
    m->Finish();
    trace.monitors.push_back(m->report());
  }
  trace.params1 = s1.Params();
  trace.params2 = s2.Params();
  return trace;
}

Rational PrefixMeanPayoff(const EpisodeTrace& trace, int64_t n) {
  if (n < 1 || n > static_cast<int64_t>(trace.records.size())) {
    throw DomainError("prefix_mean_payoff: n = " + std::to_string(n) +
                      " outside [1, " + std::to_string(trace.records.size()) +
                      "]");
  }
  return (trace.records[n - 1].energy - trace.init.energy) / Rational(n);
}

bool ReplayMatches(const Arena& arena, const EpisodeTrace& trace,
                   std::string* why) {
  GameState s = trace.init;
  auto fail = [&](int64_t t, const std::string& what) {
    if (why) *why = "round " + std::to_string(t) + ": " + what;
    return false;
  };
  for (const RoundRecord& r : trace.records) {
    if (r.vertex != s.vertex) return fail(r.round, "vertex mismatch");
    bool tie = r.bid1 == r.bid2;
    int winner = tie ? arena.tie_rule().Winner(r.round)
                     : (r.bid1 > r.bid2 ? 1 : 2);
    if (tie != r.tie || winner != r.winner) return fail(r.round, "winner");
    if (!EdgeOf(arena, s.vertex, r.edge) || arena.edge(r.edge).dst != r.dst) {
      return fail(r.round, "move");
    }
    const Rational& bid = winner == 1 ? r.bid1 : r.bid2;
    if (winner == 1) {
      s.budget1 -= bid;
      s.budget2 += bid;
    } else {
      s.budget2 -= bid;
      s.budget1 += bid;
    }
    s.energy += arena.edge(r.edge).weight;
    s.vertex = r.dst;
    if (s.budget1 != r.budget1 || s.budget2 != r.budget2) {
      return fail(r.round, "budgets");
    }
    if (s.energy != r.energy) return fail(r.round, "energy");
  }
  return true;
}

int ThreadCount(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BIDGAME_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

uint64_t PlayerSeed(uint64_t seed, int player) {
  return SplitMix(seed * 2 + static_cast<uint64_t>(player - 1));
}

BatchReport RunBatch(const Arena& arena, const BatchConfig& cfg) {
  if (cfg.seeds.empty()) throw DomainError("run_batch: no seeds");
  BatchReport rep;
  rep.seeds = cfg.seeds;
  const size_t k = cfg.seeds.size();
  rep.episodes.resize(k);
  std::vector<std::exception_ptr> errors(k);
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < k; i = next++) {
      try {
        const GameState& g = cfg.episode.init;
        StrategyContext c1{1, g.budget1, g.vertex, g.energy,
                           PlayerSeed(cfg.seeds[i], 1)};
        StrategyContext c2{2, g.budget2, g.vertex, g.energy,
                           PlayerSeed(cfg.seeds[i], 2)};
        auto s1 = MakeStrategy(cfg.p1, arena, c1);
        auto s2 = MakeStrategy(cfg.p2, arena, c2);
        rep.episodes[i] = RunEpisode(arena, *s1, *s2, cfg.episode);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::min<int>(ThreadCount(cfg.threads), k);
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Json agg;
  agg["episodes"] = k;
  int64_t aborted = 0, hit_zero = 0;
  double mp_sum = 0, mp_min = INFINITY, mp_max = -INFINITY;
  Rational e_min = rep.episodes[0].summary.min_energy;
  Rational e_max = rep.episodes[0].summary.max_energy;
  for (const EpisodeTrace& t : rep.episodes) {
    aborted += t.summary.end == "aborted";
    hit_zero += t.summary.hit_zero;
    double mp = ToDouble(t.summary.mean_payoff);
    mp_sum += mp;
    mp_min = std::min(mp_min, mp);
    mp_max = std::max(mp_max, mp);
    e_min = std::min(e_min, t.summary.min_energy);
    e_max = std::max(e_max, t.summary.max_energy);
  }
  agg["aborted"] = aborted;
  agg["hit_zero"] = hit_zero;
  agg["mean_payoff"] = {{"mean", mp_sum / static_cast<double>(k)},
                        {"min", mp_min},
                        {"max", mp_max}};
  agg["min_energy"] = ToString(e_min);
  agg["max_energy"] = ToString(e_max);
  Json mons = Json::array();
  for (size_t m = 0; m < rep.episodes[0].monitors.size(); ++m) {
    int64_t applicable = 0, passed = 0, checks = 0, failures = 0;
    for (const EpisodeTrace& t : rep.episodes) {
      const MonitorReport& r = t.monitors[m];
      applicable += r.applicable;
      passed += r.applicable && r.pass();
      checks += r.checks;
      failures += r.failures;
    }
    mons.push_back({{"name", rep.episodes[0].monitors[m].name},
                    {"applicable", applicable},
                    {"passed", passed},
                    {"pass_rate", applicable ? static_cast<double>(passed) /
                                                   static_cast<double>(applicable)
                                             : 1.0},
                    {"checks", checks},
                    {"failures", failures}});
  }
  agg["monitors"] = mons;
  rep.aggregate = agg;
  return rep;
}

Json RecordToJson(const Arena& arena, const RoundRecord& r) {
  return {{"round", r.round},
          {"vertex", arena.name(r.vertex)},
          {"bid1", Str(r.bid1)},
          {"bid2", Str(r.bid2)},
          {"winner", r.winner},
          {"tie", r.tie},
          {"edge", arena.edge(r.edge).name},
          {"to", arena.name(r.dst)},
          {"budget1", Str(r.budget1)},
          {"budget2", Str(r.budget2)},
          {"energy", Str(r.energy)}};
}

Json SummaryToJson(const Arena& arena, const EpisodeSummary& s) {
  Json j = {{"rounds", s.rounds},
            {"end", s.end},
            {"final_vertex", arena.name(s.final_vertex)},
            {"final_budget1", Str(s.final_budget1)},
            {"final_budget2", Str(s.final_budget2)},
            {"final_energy", Str(s.final_energy)},
            {"min_energy", Str(s.min_energy)},
            {"max_energy", Str(s.max_energy)},
            {"hit_zero", s.hit_zero},
            {"first_zero_round", s.first_zero_round},
            {"mean_payoff", Str(s.mean_payoff)},
            {"tail_mean_payoff", Str(s.tail_mean_payoff)},
            {"tail_max_parity", s.tail_max_parity},
            {"wins1", s.wins1},
            {"wins2", s.wins2}};
  if (s.end == "aborted") {
    j["abort_round"] = s.abort_round;
    j["abort_player"] = s.abort_player;
    j["abort_reason"] = s.abort_reason;
  }
  return j;
}

Json MonitorToJson(const MonitorReport& m) {
  Json j = {{"name", m.name},
            {"applicable", m.applicable},
            {"pass", m.pass()},
            {"checks", m.checks},
            {"failures", m.failures}};
  if (m.failures > 0) {
    j["first_failure_round"] = m.first_failure_round;
    j["message"] = m.message;
  }
  if (!m.info.empty()) j["info"] = m.info;
  return j;
}

Json TraceToJson(const Arena& arena, const EpisodeTrace& t,
                 bool with_records) {
  Json j;
  j["init"] = {{"vertex", arena.name(t.init.vertex)},
               {"budget1", Str(t.init.budget1)},
               {"budget2", Str(t.init.budget2)},
               {"energy", Str(t.init.energy)}};
  if (with_records) {
    Json recs = Json::array();
    for (const RoundRecord& r : t.records) recs.push_back(RecordToJson(arena, r));
    j["records"] = recs;
  }
  j["summary"] = SummaryToJson(arena, t.summary);
  Json mons = Json::array();
  for (const MonitorReport& m : t.monitors) mons.push_back(MonitorToJson(m));
  j["monitors"] = mons;
  j["params1"] = t.params1;
  j["params2"] = t.params2;
  return j;
}

}  // namespace bidgame
