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

#include "bidgame/strategy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bidgame/parity.h"

namespace bidgame {
namespace {

Rational Pow2Neg(int d) {
  mpz_class den = 1;
  den <<= d;
  return Rational(mpz_class(1), den);
}

std::string Str(const Rational& r) { return ToString(r); }

void RequireVertex(const Arena& arena, int v, const char* op) {
  if (v < 0 || v >= arena.num_vertices()) {
    throw DomainError(std::string(op) + ": vertex out of range");
  }
}

void RequireEdge(const Arena& arena, int v, int e, const char* op) {
  if (e < 0) throw DomainError(std::string(op) + ": no move out of " +
                               arena.name(v));
}

// Smallest edge out of v whose destination minimizes (or maximizes) val.
int ExtremeValueEdge(const Arena& arena, const std::vector<Rational>& val,
                     int v, bool maximize) {
  int best = -1;
  for (int e : arena.out(v)) {
    if (best < 0) {
      best = e;
      continue;
    }
    const Rational& a = val[arena.edge(e).dst];
    const Rational& b = val[arena.edge(best).dst];
    if (maximize ? a > b : a < b) best = e;
  }
  return best;
}

// z^-n as a double; underflows to 0 for large n.
double ZPow(double z, int n) { return std::pow(z, -static_cast<double>(n)); }

}  // namespace

Strategy::Strategy(const Arena& arena, int player)
    : arena_(arena), player_(player) {
  if (player != 1 && player != 2) {
    throw DomainError("strategy: player must be 1 or 2");
  }
}

// ---------------------------------------------------------------- Drawer

Drawer::Drawer(const Arena& arena, const std::vector<bool>& target,
               const std::vector<bool>& allowed, int return_to) {
  const int n = arena.num_vertices();
  dist_.assign(n, -1);
  step_.assign(n, -1);
  std::vector<std::vector<int>> in(n);
  for (int e = 0; e < arena.num_edges(); ++e) {
    if (allowed[e]) in[arena.edge(e).dst].push_back(e);
  }
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    if (target[v]) {
      dist_[v] = 0;
      queue.push_back(v);
    }
  }
  for (size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    for (int e : in[v]) {
      int s = arena.edge(e).src;
      if (dist_[s] < 0) {
        dist_[s] = dist_[v] + 1;
        queue.push_back(s);
      }
    }
  }
  auto pick = [&](int v) {
    int best = -1;
    for (int e : arena.out(v)) {
      if (!allowed[e]) continue;
      int d = dist_[arena.edge(e).dst];
      if (d < 0) continue;
      if (best < 0 || d < dist_[arena.edge(best).dst]) best = e;
    }
    return best;
  };
  for (int v = 0; v < n; ++v) {
    if (dist_[v] > 0) step_[v] = pick(v);
  }
  if (return_to >= 0) {
    int e = pick(return_to);
    step_[return_to] = e;
    dist_[return_to] = e < 0 ? -1 : 1 + dist_[arena.edge(e).dst];
  }
}

bool Drawer::AllInRange(const Rational& budget, int d) {
  return d >= 1 && budget > 1 - Pow2Neg(d);
}

Rational Drawer::Bid(int v, const Rational& budget, const Rational& eps) const {
  int d = dist_[v];
  if (d <= 0) return 0;
  if (AllInRange(budget, d)) return Pow2Neg(d);
  return eps * Pow2Neg(d);
}

// ------------------------------------------------------------ Richman

RichmanWinnerStrategy::RichmanWinnerStrategy(const Arena& arena, int player,
                                             const Rational& budget, int start,
                                             int cap)
    : Strategy(arena, player),
      own_(player == 1 ? arena : SwapRichmanTargets(arena)) {
  if (arena.objective() != Objective::kRichman) {
    throw DomainError("richman strategy: arena objective is not richman");
  }
  RequireVertex(arena, start, "richman strategy");
  threshold_ = RichmanExact(own_).values[start];
  if (!(budget > threshold_)) {
    throw DomainError("richman strategy: budget " + Str(budget) +
                      " does not exceed the threshold " + Str(threshold_));
  }
  levels_.push_back(RichmanStart(own_));
  while (!(levels_.back()[start] < budget)) {
    if (static_cast<int>(levels_.size()) > cap) {
      throw DomainError("richman strategy: no winning horizon within cap");
    }
    levels_.push_back(RichmanStep(own_, levels_.back()));
  }
  rounds_ = static_cast<int>(levels_.size()) - 1;
  remaining_ = rounds_;
}

Action RichmanWinnerStrategy::Act(int vertex, const Rational& budget,
                                  const Rational&, int64_t) {
  Action a;
  if (remaining_ <= 0) {
    a.edge = arena_.out(vertex).empty() ? -1 : arena_.out(vertex).front();
    return a;
  }
  const auto& prev = levels_[remaining_ - 1];
  int plus = ExtremeValueEdge(own_, prev, vertex, true);
  int minus = ExtremeValueEdge(own_, prev, vertex, false);
  RequireEdge(arena_, vertex, minus, "richman strategy");
  a.bid = (prev[own_.edge(plus).dst] - prev[own_.edge(minus).dst]) / 2;
  if (a.bid > budget) a.bid = budget;
  a.edge = minus;
  return a;
}

void RichmanWinnerStrategy::Observe(const RoundRecord&) {
  if (remaining_ > 0) --remaining_;
}

Json RichmanWinnerStrategy::Params() const {
  return {{"threshold", Str(threshold_)},
          {"rounds", rounds_},
          {"remaining", remaining_}};
}

// ------------------------------------------------------------- Parity

ParityStrategy::ParityStrategy(const Arena& arena, int player,
                               const Rational& budget, int start)
    : Strategy(arena, player) {
  RequireVertex(arena, start, "parity strategy");
  const int n = arena.num_vertices();
  RichmanValues r = ParityThresholds(arena);
  value_.resize(n);
  for (int v = 0; v < n; ++v) {
    value_[v] = player == 1 ? r.values[v] : Rational(1 - r.values[v]);
  }
  if (!(budget > value_[start])) {
    throw DomainError("parity strategy: budget " + Str(budget) +
                      " does not exceed the threshold " + Str(value_[start]));
  }
  eps_ = budget - value_[start];

  target_.assign(n, false);
  witness_of_.assign(n, -1);
  for (const BsccClass& cls : ClassifyBsccs(arena)) {
    if (cls.winner != player) continue;
    std::vector<bool> in(n, false), tgt(n, false), allowed(arena.num_edges());
    for (int v : cls.vertices) {
      in[v] = true;
      target_[v] = true;
      witness_of_[v] = cls.witness;
    }
    for (int e = 0; e < arena.num_edges(); ++e) {
      allowed[e] = in[arena.edge(e).src] && in[arena.edge(e).dst];
    }
    tgt[cls.witness] = true;
    inner_[cls.witness] = Drawer(arena, tgt, allowed, cls.witness);
  }

  // Outside the targets only value-minimizing edges are usable.
  e_plus_.assign(n, -1);
  std::vector<bool> allowed(arena.num_edges(), false);
  for (int v = 0; v < n; ++v) {
    if (arena.out(v).empty()) continue;
    e_plus_[v] = ExtremeValueEdge(arena, value_, v, true);
    int minus = ExtremeValueEdge(arena, value_, v, false);
    for (int e : arena.out(v)) {
      allowed[e] = value_[arena.edge(e).dst] == value_[arena.edge(minus).dst];
    }
  }
  outer_ = Drawer(arena, target_, allowed);
}

Action ParityStrategy::Act(int vertex, const Rational& budget,
                           const Rational&, int64_t) {
  Action a;
  if (target_[vertex]) {
    int w = witness_of_[vertex];
    if (!inside_ || vertex == w) inner_eps_ = budget / 2;
    inside_ = true;
    const Drawer& d = inner_.at(w);
    a.bid = d.Bid(vertex, budget, inner_eps_);
    a.edge = d.step(vertex);
  } else {
    int d = outer_.dist(vertex);
    int minus = d > 0 ? outer_.step(vertex)
                      : ExtremeValueEdge(arena_, value_, vertex, false);
    RequireEdge(arena_, vertex, minus, "parity strategy");
    if (d > 0 && Drawer::AllInRange(budget, d)) {
      a.bid = Pow2Neg(d);
    } else {
      a.bid = (value_[arena_.edge(e_plus_[vertex]).dst] -
               value_[arena_.edge(minus).dst]) / 2;
      if (d > 0) a.bid += eps_ * Pow2Neg(d);
    }
    a.edge = minus;
  }
  if (a.bid > budget) a.bid = budget;
  return a;
}

Json ParityStrategy::Params() const {
  Json values = Json::object();
  for (int v = 0; v < arena_.num_vertices(); ++v) {
    values[arena_.name(v)] = Str(value_[v]);
  }
  return {{"eps", Str(eps_)}, {"values", values}};
}

// ---------------------------------------------------------------- Min

MinMpStrategy::MinMpStrategy(const Arena& arena, int u, const Rational& budget,
                             const Rational& energy, const Rational& reserve)
    : Strategy(arena, 1), reserve_(reserve), ki_(energy) {
  RequireVertex(arena, u, "min strategy");
  if (!(budget > 0)) throw DomainError("min strategy: budget must be positive");
  if (energy < 0) throw DomainError("min strategy: initial energy is negative");
  if (!(reserve >= 0 && reserve < 1)) {
    throw DomainError("min strategy: reserve must lie in [0, 1)");
  }
  wrv_ = WeightedRichman(arena, u);
  if (wrv_.w_of_u() > 0) {
    throw DomainError("min strategy: W(u) = " + Str(wrv_.w_of_u()) +
                      " is positive");
  }
  for (int v = 0; v < wrv_.n; ++v) {
    bm_ = std::max(bm_, Abs(wrv_.HalfGap(arena, v)));
  }
  for (const Rational& w : wrv_.values) wm_ = std::max(wm_, Abs(w));
  std::vector<bool> tgt(arena.num_vertices(), false);
  tgt[u] = true;
  drawer_ = Drawer(arena, tgt, std::vector<bool>(arena.num_edges(), true), u);
  if (energy > 0) {
    StartActive(budget, energy);
  } else {
    n_ = ChooseN(budget, energy, bm_, wm_, reserve_);
    phase_ = Phase::kIdle;
  }
  n0_ = n_;
}

mpz_class MinMpStrategy::ChooseN(const Rational& budget, const Rational& energy,
                                 const Rational& bm, const Rational& wm,
                                 const Rational& reserve) {
  Rational avail = budget * (1 - reserve);
  if (!(avail > 0)) throw DomainError("min strategy: no budget after reserve");
  Rational need = Rational(energy + bm + wm) / avail;
  return Floor(need) + 1;
}

void MinMpStrategy::StartActive(const Rational& budget,
                                const Rational& energy) {
  n_ = ChooseN(budget, energy, bm_, wm_, reserve_);
  phase_ = Phase::kActive;
  ++segment_;
}

Action MinMpStrategy::Act(int vertex, const Rational& budget,
                          const Rational& energy, int64_t) {
  const int u = wrv_.u;
  if (phase_ == Phase::kActive && energy <= 0) phase_ = Phase::kIdle;
  if (phase_ == Phase::kIdle && energy > 0) {
    if (vertex == u) {
      StartActive(budget, energy);
    } else {
      phase_ = Phase::kReturn;
      draw_eps_ = budget / 2;
    }
  }
  if (phase_ == Phase::kReturn && vertex == u) {
    if (energy > 0) StartActive(budget, energy);
    else phase_ = Phase::kIdle;
  }
  Action a;
  switch (phase_) {
    case Phase::kActive:
      a.bid = wrv_.HalfGap(arena_, vertex) / Rational(n_);
      a.edge = wrv_.e_minus[vertex];
      break;
    case Phase::kIdle:
      a.edge = wrv_.e_minus[vertex];
      break;
    case Phase::kReturn:
      a.bid = drawer_.Bid(vertex, budget, draw_eps_);
      a.edge = drawer_.step(vertex);
      break;
  }
  return a;
}

void MinMpStrategy::Observe(const RoundRecord&) {}

Json MinMpStrategy::Params() const {
  static const char* kPhase[] = {"active", "idle", "return"};
  return {{"u", arena_.name(wrv_.u)},
          {"W(u)", Str(wrv_.w_of_u())},
          {"N", n0_.get_str()},
          {"N_current", n_.get_str()},
          {"bM", Str(bm_)},
          {"wM", Str(wm_)},
          {"kI", Str(ki_)},
          {"reserve", Str(reserve_)},
          {"phase", kPhase[static_cast<int>(phase_)]},
          {"segment", segment_}};
}

// ------------------------------------------------------ Max recurrent

MaxRecurrentStrategy::MaxRecurrentStrategy(const Arena& arena,
                                           const Rational& budget)
    : Strategy(arena, 2) {
  if (!(budget > 0 && budget <= 1)) {
    throw DomainError("max-recurrent strategy: budget must lie in (0, 1]");
  }
  std::optional<int> root = IsRecurrentScc(arena);
  if (!root) throw DomainError("max-recurrent strategy: no recurrent root");
  root_ = *root;
  WeightedRichmanValues wrv = WeightedRichman(arena, root_);
  if (wrv.w_of_u() <= 0) {
    throw DomainError("max-recurrent strategy: W(root) = " +
                      Str(wrv.w_of_u()) + " is not positive");
  }
  z_ = ZRecurrent(wrv, Contributions(arena, wrv));
  if (degenerate()) {
    // No negative mass: the energy never decreases, so zero bids suffice.
    wz_ = wrv;
    half_gap_.assign(arena.num_vertices(), 0.0);
    ki_ = 1;
    return;
  }
  scaled_ = ScaleZ(arena, z_);
  wz_ = WeightedRichman(scaled_, root_);
  half_gap_.resize(arena.num_vertices());
  for (int v = 0; v < arena.num_vertices(); ++v) {
    half_gap_[v] = ToDouble(wz_.HalfGap(scaled_, v));
    bm_ = std::max(bm_, std::abs(half_gap_[v]));
  }
  wm_ = ToDouble(MaxCycleEnergy(arena, root_));
  wiggle_ = 2 * wm_ + bm_;
  m_ = std::max<long>(1, static_cast<long>(
                             std::ceil((bm_ + 3 * wm_) / (1 - 1 / z_))));
  const double b = ToDouble(budget);
  const double mz = static_cast<double>(m_);
  for (int n = 1;; ++n) {
    if (n > 100000) throw DomainError("max-recurrent strategy: budget too small");
    double cost_tail = mz * ZPow(z_, n - 1) / (z_ - 1);
    double cost_head = mz * (1 - ZPow(z_, n)) / (z_ - 1);
    if (b > wiggle_ * ZPow(z_, n - 1) + cost_tail && cost_head > 1) {
      currency_ = n;
      break;
    }
  }
  ki_ = Rational(m_) * (currency_ - 1);
}

int MaxRecurrentStrategy::Block(const Rational& energy) const {
  mpz_class b = Floor(energy / Rational(m_)) + 1;
  if (b < 1) return 1;
  if (b > 1000000000) return 1000000000;
  return static_cast<int>(b.get_si());
}

double MaxRecurrentStrategy::InvRequired(int from, int to) const {
  int nh = to < from ? to + 1 : to;
  double s = ZPow(z_, nh - 1);
  return wiggle_ * s + static_cast<double>(m_) * s / (z_ - 1);
}

Action MaxRecurrentStrategy::Act(int vertex, const Rational& budget,
                                 const Rational& energy, int64_t round) {
  Action a;
  a.edge = wz_.e_plus[vertex];
  if (degenerate()) return a;
  if (vertex == root_) {
    int b = Block(energy);
    if (b != currency_) {
      changes_.push_back(
          {round, currency_, b, b, budget, InvRequired(currency_, b)});
      currency_ = b;
    }
  }
  a.bid = FromDouble(ZPow(z_, currency_) * half_gap_[vertex]);
  return a;
}

Json MaxRecurrentStrategy::Params() const {
  return {{"root", arena_.name(root_)}, {"z", z_},   {"degenerate", degenerate()},
          {"bM", bm_},                  {"wM", wm_}, {"M", m_},
          {"wiggle", wiggle_},          {"kI", Str(ki_)},
          {"currency", currency_}};
}

// -------------------------------------------------------- Max general

MaxGeneralStrategy::MaxGeneralStrategy(const Arena& arena, int u,
                                       const Rational& budget)
    : Strategy(arena, 2), root_(u) {
  RequireVertex(arena, u, "max-general strategy");
  if (!(budget > 0 && budget <= 1)) {
    throw DomainError("max-general strategy: budget must lie in (0, 1]");
  }
  if (ClassifyScc(arena).tau != 1) {
    throw DomainError("max-general strategy: arena is won by Min (tau = 0)");
  }
  WeightedRichmanValues wrv = WeightedRichman(arena, u);
  z_ = ZGeneral(wrv, Contributions(arena, wrv));
  for (const Edge& e : arena.edges()) {
    omega_ = std::max(omega_, std::abs(ToDouble(e.weight)));
  }
  if (degenerate()) {
    wt_ = wrv;
    half_gap_.assign(arena.num_vertices(), 0.0);
    ki_ = 1;
    return;
  }
  Arena tilde = ScaleZTilde(arena, z_);
  wt_ = WeightedRichman(tilde, u);
  half_gap_.resize(arena.num_vertices());
  for (int v = 0; v < arena.num_vertices(); ++v) {
    half_gap_[v] = ToDouble(wt_.HalfGap(tilde, v));
    bm_ = std::max(bm_, std::abs(half_gap_[v]));
  }
  for (const Rational& w : wt_.values) wm_ = std::max(wm_, std::abs(ToDouble(w)));
  wiggle_ = 2 * wm_ + bm_;
  m_ = ChooseM(z_, wm_, bm_, omega_);
  const double b = ToDouble(budget);
  for (int n = 1;; ++n) {
    if (n > 100000) throw DomainError("max-general strategy: budget too small");
    double cost = 0;
    for (int j = 1; j <= 2 * n - 1; ++j) {
      cost += static_cast<double>(m_) * ZPow(z_, j / 2);
    }
    if (b > InvOdd(n - 1) && cost > 1) {
      currency_ = n;
      break;
    }
  }
  ki_ = Rational(m_) * (2 * currency_ - 1);
}

long MaxGeneralStrategy::ChooseM(double z, double wm, double bm, double omega) {
  const double wiggle = 2 * wm + bm;
  const double a = (2 * wm * (1 + z) + 2 * omega) / (z - 1);
  const double b = (omega * z + 2 * wm + wiggle * (z - 1)) / (z - 1);
  const double c = (omega + 2 * wm - wiggle * (z * z - z)) / (2 * (z - 1));
  return std::max<long>(1, static_cast<long>(std::ceil(std::max({a, b, c}))));
}

double MaxGeneralStrategy::InvEven(int n) const {
  const double s = ZPow(z_, n), m = static_cast<double>(m_);
  return wiggle_ * s + s * m + 2 * m * s / (z_ - 1);
}

double MaxGeneralStrategy::InvOdd(int n) const {
  const double s = ZPow(z_, n), m = static_cast<double>(m_);
  return wiggle_ * s + 2 * wm_ * ZPow(z_, n + 1) + 2 * m * s / (z_ - 1);
}

int MaxGeneralStrategy::Block(const Rational& energy) const {
  mpz_class b = Floor(energy / Rational(m_)) + 1;
  if (b < 1) return 1;
  if (b > 1000000000) return 1000000000;
  return static_cast<int>(b.get_si());
}

double MaxGeneralStrategy::InvRequired(int from, int to) const {
  return to < from ? InvEven(to) : InvOdd(to - 1);
}

Action MaxGeneralStrategy::Act(int vertex, const Rational& budget,
                               const Rational& energy, int64_t round) {
  Action a;
  a.edge = wt_.e_plus[vertex];
  if (degenerate()) return a;
  int b = Block(energy);
  if (b % 2 == 0 && b / 2 != currency_) {
    changes_.push_back(
        {round, currency_, b / 2, b, budget, InvRequired(currency_, b / 2)});
    currency_ = b / 2;
  }
  a.bid = FromDouble(ZPow(z_, currency_) * half_gap_[vertex]);
  return a;
}

Json MaxGeneralStrategy::Params() const {
  return {{"u", arena_.name(root_)}, {"z", z_},         {"degenerate", degenerate()},
          {"bM", bm_},               {"wM", wm_},       {"omega", omega_},
          {"M", m_},                 {"wiggle", wiggle_}, {"kI", Str(ki_)},
          {"currency", currency_}};
}

// -------------------------------------------------------- Tit for tat

TitForTatStrategy::TitForTatStrategy(const Arena& arena) : Strategy(arena, 1) {
  bool shape = arena.num_vertices() == 1 && arena.num_edges() == 2;
  int up = -1;
  if (shape) {
    for (int e = 0; e < 2; ++e) {
      if (arena.edge(e).weight == 1) up = e;
      if (arena.edge(e).weight == -1) down_ = e;
    }
  }
  if (!shape || up < 0 || down_ < 0) {
    throw DomainError(
        "tft strategy: needs one vertex with a +1 and a -1 self-loop");
  }
}

Action TitForTatStrategy::Act(int, const Rational& budget, const Rational&,
                              int64_t) {
  Action a;
  if (!unmatched_.empty()) a.bid = *unmatched_.begin();
  if (a.bid > budget) a.bid = budget;
  a.edge = down_;
  return a;
}

void TitForTatStrategy::Observe(const RoundRecord& r) {
  if (r.winner == player_) {
    if (unmatched_.empty()) ++free_wins_;
    else unmatched_.erase(unmatched_.begin());
  } else {
    unmatched_.insert(other_bid(r));
  }
}

Json TitForTatStrategy::Params() const {
  return {{"unmatched", unmatched_.size()},
          {"matching", unmatched_.empty() ? "0" : Str(*unmatched_.begin())},
          {"free_wins", free_wins_}};
}

// ---------------------------------------------------------- Baselines

int ExtremeWeightEdge(const Arena& arena, int v, bool maximize) {
  int best = -1;
  for (int e : arena.out(v)) {
    if (best < 0) {
      best = e;
      continue;
    }
    const Rational& a = arena.edge(e).weight;
    const Rational& b = arena.edge(best).weight;
    if (maximize ? a > b : a < b) best = e;
  }
  return best;
}

EdgeRule ParseEdgeRule(const std::string& text) {
  if (text == "uniform") return EdgeRule::kUniform;
  if (text == "max") return EdgeRule::kMaxWeight;
  if (text == "min") return EdgeRule::kMinWeight;
  throw std::invalid_argument("unknown edge rule '" + text +
                              "' (expected uniform, max or min)");
}

std::string EdgeRuleName(EdgeRule r) {
  switch (r) {
    case EdgeRule::kUniform: return "uniform";
    case EdgeRule::kMaxWeight: return "max";
    case EdgeRule::kMinWeight: return "min";
  }
  return "uniform";
}

namespace {

int PickEdge(const Arena& arena, int v, EdgeRule rule, std::mt19937_64* rng) {
  const auto& out = arena.out(v);
  if (out.empty()) return -1;
  switch (rule) {
    case EdgeRule::kMaxWeight: return ExtremeWeightEdge(arena, v, true);
    case EdgeRule::kMinWeight: return ExtremeWeightEdge(arena, v, false);
    case EdgeRule::kUniform:
      return rng ? out[(*rng)() % out.size()] : out.front();
  }
  return out.front();
}

// Uniform double in [0, 1) from the top 53 bits.
double Unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

RandomStrategy::RandomStrategy(const Arena& arena, int player, uint64_t seed,
                               EdgeRule edges)
    : Strategy(arena, player), seed_(seed), edges_(edges), rng_(seed) {}

Action RandomStrategy::Act(int vertex, const Rational& budget, const Rational&,
                           int64_t) {
  Action a;
  a.bid = FromDouble(Unit(rng_) * FloorDouble(budget));
  a.edge = PickEdge(arena_, vertex, edges_, &rng_);
  return a;
}

Json RandomStrategy::Params() const {
  return {{"seed", seed_}, {"edge", EdgeRuleName(edges_)}};
}

GreedyStrategy::GreedyStrategy(const Arena& arena, int player, double fraction,
                               EdgeRule edges)
    : Strategy(arena, player), fraction_(fraction), edges_(edges) {
  if (!(fraction >= 0 && fraction <= 1)) {
    throw DomainError("greedy strategy: fraction must lie in [0, 1]");
  }
  if (edges == EdgeRule::kUniform) {
    throw DomainError("greedy strategy: edge rule must be max or min");
  }
}

Action GreedyStrategy::Act(int vertex, const Rational& budget, const Rational&,
                           int64_t) {
  Action a;
  a.bid = FromDouble(fraction_ * FloorDouble(budget));
  if (a.bid > budget) a.bid = budget;
  a.edge = PickEdge(arena_, vertex, edges_, nullptr);
  return a;
}

Json GreedyStrategy::Params() const {
  return {{"fraction", fraction_}, {"dir", EdgeRuleName(edges_)}};
}

AllInStrategy::AllInStrategy(const Arena& arena, int player, EdgeRule edges)
    : Strategy(arena, player), edges_(edges) {
  if (edges == EdgeRule::kUniform) {
    throw DomainError("allin strategy: edge rule must be max or min");
  }
}

Action AllInStrategy::Act(int vertex, const Rational& budget, const Rational&,
                          int64_t) {
  return {budget, PickEdge(arena_, vertex, edges_, nullptr)};
}

Json AllInStrategy::Params() const { return {{"dir", EdgeRuleName(edges_)}}; }

// ------------------------------------------------------------ Factory

std::unique_ptr<Strategy> MakeStrategy(const std::string& spec,
                                       const Arena& arena,
                                       const StrategyContext& ctx) {
  std::string name = spec;
  std::map<std::string, std::string> kv;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
      size_t comma = rest.find(',', pos);
      std::string item = rest.substr(pos, comma == std::string::npos
                                              ? std::string::npos
                                              : comma - pos);
      auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("strategy '" + spec +
                                    "': expected key=value, got '" + item + "'");
      }
      kv[item.substr(0, eq)] = item.substr(eq + 1);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto vertex = [&](const std::string& key) {
    auto v = take(key);
    return v ? arena.Vertex(*v) : ctx.start;
  };
  const EdgeRule dflt =
      ctx.player == 2 ? EdgeRule::kMaxWeight : EdgeRule::kMinWeight;
  auto need_player = [&](int p) {
    if (ctx.player != p) {
      throw DomainError("strategy '" + name + "' plays as Player " +
                        std::to_string(p));
    }
  };

  std::unique_ptr<Strategy> s;
  if (name == "richman") {
    int cap = 100000;
    if (auto c = take("cap")) cap = std::stoi(*c);
    s = std::make_unique<RichmanWinnerStrategy>(arena, ctx.player, ctx.budget,
                                                ctx.start, cap);
  } else if (name == "parity") {
    s = std::make_unique<ParityStrategy>(arena, ctx.player, ctx.budget,
                                         ctx.start);
  } else if (name == "min") {
    need_player(1);
    int u = vertex("u");
    Rational reserve(1, 10);
    if (auto r = take("reserve")) reserve = ParseRational(*r);
    s = std::make_unique<MinMpStrategy>(arena, u, ctx.budget, ctx.energy,
                                        reserve);
  } else if (name == "max-recurrent") {
    need_player(2);
    s = std::make_unique<MaxRecurrentStrategy>(arena, ctx.budget);
  } else if (name == "max-general") {
    need_player(2);
    int u = vertex("u");
    s = std::make_unique<MaxGeneralStrategy>(arena, u, ctx.budget);
  } else if (name == "tft") {
    need_player(1);
    s = std::make_unique<TitForTatStrategy>(arena);
  } else if (name == "random") {
    uint64_t seed = ctx.seed;
    if (auto v = take("seed")) seed = std::stoull(*v);
    EdgeRule edge = EdgeRule::kUniform;
    if (auto v = take("edge")) edge = ParseEdgeRule(*v);
    s = std::make_unique<RandomStrategy>(arena, ctx.player, seed, edge);
  } else if (name == "greedy") {
    double fraction = 0.5;
    if (auto v = take("fraction")) fraction = std::stod(*v);
    EdgeRule edge = dflt;
    if (auto v = take("dir")) edge = ParseEdgeRule(*v);
    s = std::make_unique<GreedyStrategy>(arena, ctx.player, fraction, edge);
  } else if (name == "allin") {
    EdgeRule edge = dflt;
    if (auto v = take("dir")) edge = ParseEdgeRule(*v);
    s = std::make_unique<AllInStrategy>(arena, ctx.player, edge);
  } else {
    throw std::invalid_argument("unknown strategy '" + name + "'");
  }
  if (!kv.empty()) {
    throw std::invalid_argument("strategy '" + name + "': unknown parameter '" +
                                kv.begin()->first + "'");
  }
  return s;
}

}  // namespace bidgame
