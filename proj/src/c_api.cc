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

#include "bidgame/bidgame_c.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <initializer_list>
#include <new>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bidgame/arena.h"
#include "bidgame/errors.h"
#include "bidgame/meanpayoff.h"
#include "bidgame/oracle.h"
#include "bidgame/parity.h"
#include "bidgame/rational.h"
#include "bidgame/richman.h"
#include "bidgame/sim.h"
#include "bidgame/strategy.h"

struct bg_arena {
  bidgame::Arena arena;
};

namespace bidgame {
namespace {

constexpr const char* kVersion = "1.0.0";

thread_local std::string g_error;

// A malformed option or option value.
class ArgumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bg_status Fail(bg_status status, const char* what) {
  g_error = what;
  return status;
}

template <typename F>
bg_status Guard(F&& body) {
  try {
    body();
    g_error.clear();
    return BG_OK;
  } catch (const ParseError& e) {
    return Fail(BG_ERR_PARSE, e.what());
  } catch (const ValidationError& e) {
    return Fail(BG_ERR_VALIDATION, e.what());
  } catch (const DomainError& e) {
    return Fail(BG_ERR_DOMAIN, e.what());
  } catch (const IoError& e) {
    return Fail(BG_ERR_IO, e.what());
  } catch (const InternalError& e) {
    return Fail(BG_ERR_INTERNAL, e.what());
  } catch (const ArgumentError& e) {
    return Fail(BG_ERR_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return Fail(BG_ERR_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return Fail(BG_ERR_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return Fail(BG_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(BG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(BG_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(BG_ERR_INTERNAL, "unknown error");
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void Emit(const Json& j, char** out) { *out = Dup(j.dump()); }

template <typename T>
void RequireOut(T** out, const char* op) {
  if (!out) throw ArgumentError(std::string(op) + ": output pointer is null");
}

const Arena& Get(const bg_arena* a, const char* op) {
  if (!a) throw ArgumentError(std::string(op) + ": arena handle is null");
  return a->arena;
}

// JSON options object restricted to a known key set.
class Options {
 public:
  Options(const char* text, std::initializer_list<const char*> allowed,
          const char* op)
      : op_(op) {
    if (text && *text) {
      try {
        j_ = Json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw ArgumentError(op_ + ": options are not valid JSON: " + e.what());
      }
    }
    if (j_.is_null()) j_ = Json::object();
    if (!j_.is_object()) throw ArgumentError(op_ + ": options must be an object");
    std::set<std::string> keys(allowed.begin(), allowed.end());
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!keys.count(it.key())) {
        throw ArgumentError(op_ + ": unknown option '" + it.key() + "'");
      }
    }
  }

  bool Has(const char* key) const { return j_.contains(key) && !j_[key].is_null(); }

  int64_t Int(const char* key, int64_t dflt) const {
    if (!Has(key)) return dflt;
    const Json& v = j_[key];
    if (v.is_number_integer()) return v.get<int64_t>();
    if (v.is_string()) {
      try {
        size_t used = 0;
        int64_t x = std::stoll(v.get<std::string>(), &used);
        if (used == v.get<std::string>().size()) return x;
      } catch (const std::exception&) {
      }
    }
    throw ArgumentError(op_ + ": option '" + key + "' must be an integer");
  }

  uint64_t Seed(const char* key, uint64_t dflt) const {
    if (!Has(key)) return dflt;
    const Json& v = j_[key];
    if (v.is_number_unsigned()) return v.get<uint64_t>();
    if (v.is_string()) {
      try {
        size_t used = 0;
        uint64_t x = std::stoull(v.get<std::string>(), &used);
        if (used == v.get<std::string>().size()) return x;
      } catch (const std::exception&) {
      }
    }
    throw ArgumentError(op_ + ": option '" + key +
                        "' must be a non-negative integer");
  }

  double Number(const char* key, double dflt) const {
    if (!Has(key)) return dflt;
    const Json& v = j_[key];
    if (v.is_number()) return v.get<double>();
    throw ArgumentError(op_ + ": option '" + key + "' must be a number");
  }

  bool Bool(const char* key, bool dflt) const {
    if (!Has(key)) return dflt;
    const Json& v = j_[key];
    if (v.is_boolean()) return v.get<bool>();
    throw ArgumentError(op_ + ": option '" + key + "' must be true or false");
  }

  std::string Str(const char* key, const std::string& dflt) const {
    if (!Has(key)) return dflt;
    const Json& v = j_[key];
    if (v.is_string()) return v.get<std::string>();
    throw ArgumentError(op_ + ": option '" + key + "' must be a string");
  }

  Rational Rat(const char* key, const Rational& dflt) const {
    if (!Has(key)) return dflt;
    const Json& v = j_[key];
    std::string text;
    if (v.is_string()) {
      text = v.get<std::string>();
    } else if (v.is_number()) {
      text = v.dump();  // shortest round-trip form, parsed as a decimal
    } else {
      throw ArgumentError(op_ + ": option '" + key + "' must be a rational");
    }
    try {
      return ParseRational(text);
    } catch (const std::invalid_argument&) {
      throw ArgumentError(op_ + ": option '" + key + "' is not a rational: " +
                          text);
    }
  }

  int Vertex(const Arena& arena, const char* key, int dflt) const {
    if (!Has(key)) return dflt;
    const Json& v = j_[key];
    if (v.is_string()) return arena.Vertex(v.get<std::string>());
    if (v.is_number_integer()) {
      int64_t id = v.get<int64_t>();
      if (id < 0 || id >= arena.num_vertices()) {
        throw DomainError(op_ + ": vertex id " + std::to_string(id) +
                          " out of range");
      }
      return static_cast<int>(id);
    }
    throw ArgumentError(op_ + ": option '" + key + "' must name a vertex");
  }

  // An array of strings or one comma-separated string.
  std::vector<std::string> List(const char* key) const {
    std::vector<std::string> out;
    if (!Has(key)) return out;
    const Json& v = j_[key];
    if (v.is_array()) {
      for (const Json& x : v) {
        if (!x.is_string()) {
          throw ArgumentError(op_ + ": option '" + key +
                              "' must list strings");
        }
        out.push_back(x.get<std::string>());
      }
      return out;
    }
    if (!v.is_string()) {
      throw ArgumentError(op_ + ": option '" + key + "' must list strings");
    }
    std::string s = v.get<std::string>();
    size_t pos = 0;
    while (pos <= s.size()) {
      size_t comma = s.find(',', pos);
      std::string item = s.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (!item.empty()) out.push_back(item);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  }

  int Player(const char* key, int dflt) const {
    if (!Has(key)) return dflt;
    const Json& v = j_[key];
    if (v.is_number_integer()) {
      int64_t p = v.get<int64_t>();
      if (p == 1 || p == 2) return static_cast<int>(p);
    } else if (v.is_string()) {
      std::string s = v.get<std::string>();
      if (s == "1" || s == "min") return 1;
      if (s == "2" || s == "max") return 2;
    }
    throw ArgumentError(op_ + ": option '" + key +
                        "' must be 1, 2, \"min\" or \"max\"");
  }

 private:
  std::string op_;
  Json j_;
};

std::string Str(const Rational& r) { return ToString(r); }

// The Richman game the arena's thresholds are read from. Vertex ids of the
// input are preserved.
Arena RichmanArenaOf(const Arena& a) {
  switch (a.objective()) {
    case Objective::kRichman:
      return a;
    case Objective::kReachability:
      return ReachToRichman(a);
    case Objective::kParity:
      return ParityReduction(a).richman;
    case Objective::kMeanPayoff:
      return MpReduction(a).richman;
  }
  throw InternalError("unknown objective");
}

// The arena simulations run on: reachability games are played on their
// Richman form so that the threshold strategies apply.
Arena PlayableArena(const Arena& a) {
  return a.objective() == Objective::kReachability ? ReachToRichman(a) : a;
}

std::string DefaultSpec(const Arena& a, int player) {
  switch (a.objective()) {
    case Objective::kRichman:
    case Objective::kReachability:
      return "richman";
    case Objective::kParity:
      return "parity";
    case Objective::kMeanPayoff: {
      // The constructed strategies need a strongly connected arena won by
      // their player; elsewhere a baseline stands in.
      if (!IsStronglyConnected(a)) return "greedy";
      const int tau = ClassifyScc(a).tau;
      if (player == 1) return tau == 0 ? "min" : "greedy";
      if (tau == 0) return "greedy";
      return IsRecurrentScc(a) ? "max-recurrent" : "max-general";
    }
  }
  throw InternalError("unknown objective");
}

Json EdgeJson(const Arena& a, int e) {
  if (e < 0) return nullptr;
  const Edge& edge = a.edge(e);
  return {{"id", e},
          {"name", edge.name},
          {"src", a.name(edge.src)},
          {"dst", a.name(edge.dst)},
          {"weight", Str(edge.weight)}};
}

Json EstimateJson(const McEstimate& m) {
  Json j = {{"samples", m.samples},
            {"used", m.used},
            {"censored", m.censored},
            {"mean", m.mean}};
  if (m.std_error_defined) {
    j["std_error"] = m.std_error;
  } else {
    j["std_error"] = nullptr;
  }
  j["std_error_defined"] = m.std_error_defined;
  return j;
}

std::vector<std::string> MonitorList(const Options& o) {
  if (!o.Has("monitors")) return {"legality", "budget-conservation"};
  return o.List("monitors");
}

// Fills the episode configuration shared by simulate and play.
struct EpisodeSetup {
  Arena arena;
  EpisodeConfig cfg;
  Json config;
};

EpisodeSetup SetupEpisode(const Arena& input, const Options& o) {
  EpisodeSetup s;
  s.arena = PlayableArena(input);
  GameState& g = s.cfg.init;
  g.vertex = o.Vertex(s.arena, "start", 0);
  g.budget1 = o.Rat("budget1", Rational(1, 2));
  if (g.budget1 < 0 || g.budget1 > 1) {
    throw DomainError("budget1 must lie in [0, 1]");
  }
  g.budget2 = 1 - g.budget1;
  g.energy = o.Rat("energy", 0);
  s.cfg.horizon = o.Int("horizon", 1000);
  if (s.cfg.horizon < 1) throw DomainError("horizon must be >= 1");
  s.cfg.monitors = MonitorList(o);
  s.cfg.tail_window = o.Int("tail_window", 0);
  if (s.cfg.tail_window < 0) throw DomainError("tail_window must be >= 0");
  return s;
}

// Initial energy a Max strategy asks for, read from its parameter block.
std::optional<Rational> RequiredEnergy(const Strategy& s) {
  Json p = s.Params();
  if ((s.kind() == "max-recurrent" || s.kind() == "max-general") &&
      p.contains("kI")) {
    return ParseRational(p["kI"].get<std::string>());
  }
  return std::nullopt;
}

// Reads one side's moves from a callback, re-asking after illegal input.
class HumanStrategy : public Strategy {
 public:
  HumanStrategy(const Arena& arena, int player, bg_move_fn fn, void* user)
      : Strategy(arena, player), fn_(fn), user_(user) {}
  std::string kind() const override { return "human"; }
  bool WantsStop() const override { return stop_; }

  Action Act(int vertex, const Rational& budget, const Rational& energy,
             int64_t round) override {
    Json prompt = {{"round", round},
                   {"player", player_},
                   {"vertex", arena_.name(vertex)},
                   {"budget", Str(budget)},
                   {"budget_approx", ToDouble(budget)},
                   {"energy", Str(energy)}};
    Json edges = Json::array();
    for (int e : arena_.out(vertex)) edges.push_back(EdgeJson(arena_, e));
    prompt["edges"] = edges;
    if (last_) prompt["last"] = *last_;
    for (;;) {
      std::vector<char> bid(256, '\0'), edge(256, '\0');
      if (fn_(user_, prompt.dump().c_str(), bid.data(), bid.size(),
              edge.data(), edge.size()) != 0) {
        stop_ = true;
        return {0, arena_.out(vertex).front()};
      }
      bid.back() = edge.back() = '\0';
      std::string why;
      Action a;
      try {
        a.bid = ParseRational(bid.data());
      } catch (const std::invalid_argument&) {
        why = "bid '" + std::string(bid.data()) + "' is not a number";
      }
      if (why.empty() && (a.bid < 0 || a.bid > budget)) {
        why = "bid " + Str(a.bid) + " is outside [0, " + Str(budget) + "]";
      }
      if (why.empty()) {
        a.edge = ResolveEdge(vertex, edge.data());
        if (a.edge < 0) {
          why = "'" + std::string(edge.data()) + "' is not a move from " +
                arena_.name(vertex);
        }
      }
      if (why.empty()) return a;
      prompt["error"] = why;
    }
  }

  void Observe(const RoundRecord& r) override {
    last_ = RecordToJson(arena_, r);
  }

 private:
  // Edge id, edge name or successor name.
  int ResolveEdge(int v, const std::string& text) const {
    const std::vector<int>& out = arena_.out(v);
    if (!text.empty() &&
        text.find_first_not_of("0123456789") == std::string::npos) {
      try {
        int id = std::stoi(text);
        for (int e : out) {
          if (e == id) return e;
        }
      } catch (const std::out_of_range&) {
      }
    }
    for (int e : out) {
      if (!arena_.edge(e).name.empty() && arena_.edge(e).name == text) return e;
    }
    for (int e : out) {
      if (arena_.name(arena_.edge(e).dst) == text) return e;
    }
    return -1;
  }

  bg_move_fn fn_;
  void* user_;
  bool stop_ = false;
  std::optional<Json> last_;
};

Json ValuesJson(const Arena& policy_arena, const RichmanValues& rv, int n) {
  Json rows = Json::array();
  for (int v = 0; v < n; ++v) {
    Json row = {{"vertex", policy_arena.name(v)}, {"value", Str(rv.values[v])}};
    int ep = v < static_cast<int>(rv.e_plus.size()) ? rv.e_plus[v] : -1;
    int em = v < static_cast<int>(rv.e_minus.size()) ? rv.e_minus[v] : -1;
    row["plus"] = ep < 0 ? Json(nullptr)
                         : Json(policy_arena.name(policy_arena.edge(ep).dst));
    row["minus"] = em < 0 ? Json(nullptr)
                          : Json(policy_arena.name(policy_arena.edge(em).dst));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace
}  // namespace bidgame

using namespace bidgame;

extern "C" {

const char* bg_version(void) { return kVersion; }

const char* bg_status_name(bg_status status) {
  switch (status) {
    case BG_OK:
      return "ok";
    case BG_ERR_PARSE:
      return "parse error";
    case BG_ERR_VALIDATION:
      return "validation error";
    case BG_ERR_DOMAIN:
      return "domain error";
    case BG_ERR_INTERNAL:
      return "internal error";
    case BG_ERR_IO:
      return "io error";
    case BG_ERR_ARGUMENT:
      return "argument error";
  }
  return "unknown status";
}

const char* bg_last_error(void) { return g_error.c_str(); }

void bg_string_free(char* s) { std::free(s); }

bg_status bg_arena_load(const char* text, bg_arena** out) {
  return Guard([&] {
    RequireOut(out, "arena_load");
    *out = nullptr;
    if (!text) throw ArgumentError("arena_load: text is null");
    *out = new bg_arena{LoadArena(text)};
  });
}

bg_status bg_arena_load_file(const char* path, bg_arena** out) {
  return Guard([&] {
    RequireOut(out, "arena_load_file");
    *out = nullptr;
    if (!path) throw ArgumentError("arena_load_file: path is null");
    *out = new bg_arena{LoadArenaFile(path)};
  });
}

void bg_arena_free(bg_arena* arena) { delete arena; }

bg_status bg_arena_serialize(const bg_arena* arena, char** out) {
  return Guard([&] {
    RequireOut(out, "arena_serialize");
    *out = Dup(SerializeArena(Get(arena, "arena_serialize")));
  });
}

bg_status bg_arena_set_tie_rule(bg_arena* arena, const char* rule) {
  return Guard([&] {
    if (!arena) throw ArgumentError("set_tie_rule: arena handle is null");
    if (!rule) throw ArgumentError("set_tie_rule: rule is null");
    arena->arena.set_tie_rule(ParseTieRule(rule));
  });
}

bg_status bg_arena_info(const bg_arena* arena, char** out_json) {
  return Guard([&] {
    RequireOut(out_json, "arena_info");
    const Arena& a = Get(arena, "arena_info");
    Json j;
    j["objective"] = std::string(ObjectiveName(a.objective()));
    j["tie"] = a.tie_rule().ToString();
    Json vs = Json::array();
    for (int v = 0; v < a.num_vertices(); ++v) {
      Json row = {{"id", v}, {"name", a.name(v)}};
      if (a.objective() == Objective::kParity) row["parity"] = a.parity(v);
      if (a.is_target(v)) row["target"] = 1;
      if (v == a.vs()) row["target"] = 2;
      vs.push_back(row);
    }
    j["vertices"] = vs;
    Json es = Json::array();
    for (int e = 0; e < a.num_edges(); ++e) es.push_back(EdgeJson(a, e));
    j["edges"] = es;
    Emit(j, out_json);
  });
}

bg_status bg_solve(const bg_arena* arena, const char* options,
                   char** out_json) {
  return Guard([&] {
    RequireOut(out_json, "solve");
    const Arena& a = Get(arena, "solve");
    Options o(options,
              {"iterate", "ssg", "ssg_tol", "markov", "budget", "start", "cap"},
              "solve");
    const int n = a.num_vertices();
    Json j;
    j["objective"] = std::string(ObjectiveName(a.objective()));
    if (o.Has("iterate")) {
      int64_t steps = o.Int("iterate", 0);
      if (steps < 0) throw DomainError("solve: iterate must be >= 0");
      Arena r = RichmanArenaOf(a);
      std::vector<Rational> it = RichmanIterate(r, static_cast<int>(steps));
      j["method"] = "iterate";
      j["steps"] = steps;
      Json rows = Json::array();
      for (int v = 0; v < n; ++v) {
        rows.push_back({{"vertex", a.name(v)}, {"value", Str(it[v])}});
      }
      j["vertices"] = rows;
    } else {
      j["method"] = "exact";
      RichmanValues rv;
      Json rows;
      switch (a.objective()) {
        case Objective::kRichman:
          rv = RichmanExact(a);
          rows = ValuesJson(a, rv, n);
          break;
        case Objective::kReachability: {
          Arena r = ReachToRichman(a);
          rv = RichmanExact(r);
          rows = ValuesJson(r, rv, n);
          break;
        }
        case Objective::kParity:
          rv = ParityThresholds(a);
          rows = ValuesJson(a, rv, n);
          break;
        case Objective::kMeanPayoff:
          rv = MpThresholds(a);
          rows = ValuesJson(a, rv, n);
          break;
      }
      j["vertices"] = rows;
    }

    const bool markov = o.Bool("markov", false);
    const bool ssg = o.Bool("ssg", false);
    if (markov || ssg) {
      Arena r = RichmanArenaOf(a);
      RichmanValues rv = RichmanExact(r);
      if (markov) {
        MarkovReport rep = MarkovReachCheck(r, rv);
        Json rows = Json::array();
        for (int v = 0; v < r.num_vertices(); ++v) {
          rows.push_back({{"vertex", r.name(v)},
                          {"value", Str(rv.values[v])},
                          {"absorb_vs", Str(rep.absorb_vs[v])},
                          {"absorb_vr", Str(rep.absorb_vr[v])},
                          {"residual", Str(rep.residual[v])}});
        }
        Json bad = Json::array();
        for (int v : rep.non_absorbing) bad.push_back(r.name(v));
        j["markov"] = {{"ok", rep.ok}, {"vertices", rows},
                       {"non_absorbing", bad}};
      }
      if (ssg) {
        double tol = o.Number("ssg_tol", 1e-9);
        if (!(tol > 0)) throw DomainError("solve: ssg_tol must be positive");
        SsgInstance inst = BuildSsg(r);
        std::vector<double> val = SolveSsg(inst, tol);
        Json rows = Json::array();
        double worst = 0;
        for (int v = 0; v < r.num_vertices(); ++v) {
          double vc = val[inst.chance_of[v]];
          double gap = std::abs(vc + ToDouble(rv.values[v]) - 1);
          worst = std::max(worst, gap);
          rows.push_back({{"vertex", r.name(v)},
                          {"val", vc},
                          {"value", Str(rv.values[v])},
                          {"gap", gap}});
        }
        j["ssg"] = {{"tol", tol}, {"max_gap", worst}, {"vertices", rows}};
      }
    }

    if (o.Has("budget")) {
      Arena r = RichmanArenaOf(a);
      int v = o.Vertex(a, "start", 0);
      Rational b = o.Rat("budget", 0);
      if (!(b > 0 && b <= 1)) throw DomainError("solve: budget must lie in (0, 1]");
      std::optional<int> t =
          MinWinRounds(r, v, b, static_cast<int>(o.Int("cap", 100000)));
      j["min_win_rounds"] = {{"vertex", a.name(v)},
                             {"budget", Str(b)},
                             {"rounds", t ? Json(*t) : Json(nullptr)}};
    }
    Emit(j, out_json);
  });
}

bg_status bg_classify(const bg_arena* arena, const char* options,
                      char** out_json) {
  return Guard([&] {
    RequireOut(out_json, "classify");
    const Arena& a = Get(arena, "classify");
    Options o(options, {}, "classify");
    Json j;
    j["objective"] = std::string(ObjectiveName(a.objective()));
    SccDecomposition scc = SccDecompose(a);
    auto names = [&](const std::vector<int>& vs) {
      Json arr = Json::array();
      for (int v : vs) arr.push_back(a.name(v));
      return arr;
    };
    Json comps = Json::array();
    for (size_t c = 0; c < scc.components.size(); ++c) {
      comps.push_back(
          {{"vertices", names(scc.components[c])}, {"bottom", bool(scc.bottom[c])}});
    }
    j["components"] = comps;
    Json classes = Json::array();
    if (a.objective() == Objective::kParity) {
      for (const BsccClass& cls : ClassifyBsccs(a)) {
        classes.push_back({{"vertices", names(cls.vertices)},
                           {"tau", cls.winner == 1 ? 0 : 1},
                           {"winner", cls.winner},
                           {"witness", a.name(cls.witness)},
                           {"max_parity", cls.max_parity}});
      }
    } else if (a.objective() == Objective::kMeanPayoff) {
      for (size_t c = 0; c < scc.components.size(); ++c) {
        if (!scc.bottom[c]) continue;
        std::vector<int> map;
        Arena sub = InducedSubArena(a, scc.components[c], &map);
        SccClass cls = ClassifyScc(sub);
        Json w = Json::object();
        for (int v = 0; v < sub.num_vertices(); ++v) {
          w[sub.name(v)] = Str(cls.all_w[v]);
        }
        WeightedRichmanValues wrv = WeightedRichman(sub, cls.witness_u);
        ContributionVector cont = Contributions(sub, wrv);
        Json row = {{"vertices", names(scc.components[c])},
                    {"tau", cls.tau},
                    {"winner", cls.tau == 0 ? 1 : 2},
                    {"witness", sub.name(cls.witness_u)},
                    {"W(u)", Str(wrv.w_of_u())},
                    {"W", w},
                    {"pos", Str(cont.pos)},
                    {"neg", Str(cont.neg)},
                    {"residual", Str(cont.residual)}};
        std::optional<int> root = IsRecurrentScc(sub);
        row["recurrent_root"] = root ? Json(sub.name(*root)) : Json(nullptr);
        if (wrv.w_of_u() > 0) {
          row["z_recurrent"] = ZRecurrent(wrv, cont);
          row["z_general"] = ZGeneral(wrv, cont);
        }
        classes.push_back(row);
      }
    }
    j["classes"] = classes;
    Emit(j, out_json);
  });
}

bg_status bg_strategy(const bg_arena* arena, const char* options,
                      char** out_json) {
  return Guard([&] {
    RequireOut(out_json, "strategy");
    const Arena& input = Get(arena, "strategy");
    Options o(options, {"player", "budget", "start", "energy", "kind", "seed"},
              "strategy");
    Arena a = PlayableArena(input);
    StrategyContext ctx;
    ctx.player = o.Player("player", 1);
    ctx.budget = o.Rat("budget", Rational(1, 2));
    if (ctx.budget < 0 || ctx.budget > 1) {
      throw DomainError("strategy: budget must lie in [0, 1]");
    }
    ctx.start = o.Vertex(a, "start", 0);
    ctx.energy = o.Rat("energy", 0);
    ctx.seed = o.Seed("seed", 0);
    std::string spec = o.Str("kind", DefaultSpec(input, ctx.player));
    auto s = MakeStrategy(spec, a, ctx);
    Rational energy = ctx.energy;
    if (!o.Has("energy")) {
      if (auto need = RequiredEnergy(*s)) energy = *need;
    }
    Json j;
    j["kind"] = s->kind();
    j["spec"] = spec;
    j["player"] = ctx.player;
    j["budget"] = Str(ctx.budget);
    j["start"] = a.name(ctx.start);
    j["energy"] = Str(energy);
    j["params"] = s->Params();
    Json rows = Json::array();
    for (int v = 0; v < a.num_vertices(); ++v) {
      Json row = {{"vertex", a.name(v)}};
      if (a.out(v).empty()) {
        row["bid"] = nullptr;
        row["note"] = "no moves";
        rows.push_back(row);
        continue;
      }
      try {
        auto fresh = MakeStrategy(spec, a, ctx);
        Action act = fresh->Act(v, ctx.budget, energy, 0);
        row["bid"] = Str(act.bid);
        row["bid_approx"] = ToDouble(act.bid);
        row["edge"] = act.edge >= 0 ? Json(a.edge(act.edge).name) : Json(nullptr);
        row["to"] =
            act.edge >= 0 ? Json(a.name(a.edge(act.edge).dst)) : Json(nullptr);
      } catch (const std::exception& e) {
        row["bid"] = nullptr;
        row["note"] = e.what();
      }
      rows.push_back(row);
    }
    j["bids"] = rows;
    Emit(j, out_json);
  });
}

bg_status bg_simulate(const bg_arena* arena, const char* options,
                      char** out_json) {
  return Guard([&] {
    RequireOut(out_json, "simulate");
    const Arena& input = Get(arena, "simulate");
    Options o(options,
              {"p1", "p2", "budget1", "start", "energy", "horizon", "seed",
               "seeds", "monitors", "records", "tail_window", "threads"},
              "simulate");
    EpisodeSetup s = SetupEpisode(input, o);
    BatchConfig bc;
    bc.p1 = o.Str("p1", DefaultSpec(input, 1));
    bc.p2 = o.Str("p2", DefaultSpec(input, 2));
    bc.threads = static_cast<int>(o.Int("threads", 0));
    const uint64_t seed = o.Seed("seed", 0);
    const int64_t count = o.Int("seeds", 1);
    if (count < 1) throw DomainError("simulate: seeds must be >= 1");
    for (int64_t i = 0; i < count; ++i) bc.seeds.push_back(seed + i);

    // Both specs are checked before any episode runs. Max strategies name
    // the initial energy they need.
    const GameState& g = s.cfg.init;
    StrategyContext c1{1, g.budget1, g.vertex, g.energy, PlayerSeed(seed, 1)};
    StrategyContext c2{2, g.budget2, g.vertex, g.energy, PlayerSeed(seed, 2)};
    MakeStrategy(bc.p1, s.arena, c1);
    std::optional<Rational> need = RequiredEnergy(*MakeStrategy(bc.p2, s.arena, c2));
    if (need && !o.Has("energy")) s.cfg.init.energy = *need;
    const bool below = need && s.cfg.init.energy < *need;

    const bool single = count == 1;
    const bool records = o.Bool("records", single);
    s.cfg.keep_records = records;
    bc.episode = s.cfg;
    BatchReport rep = RunBatch(s.arena, bc);

    Json config = {{"p1", bc.p1},
                   {"p2", bc.p2},
                   {"start", s.arena.name(g.vertex)},
                   {"budget1", Str(s.cfg.init.budget1)},
                   {"energy", Str(s.cfg.init.energy)},
                   {"horizon", s.cfg.horizon},
                   {"seed", seed},
                   {"seeds", count},
                   {"tie", s.arena.tie_rule().ToString()}};
    config["required_energy"] = need ? Json(Str(*need)) : Json(nullptr);
    config["energy_below_required"] = below;
    Json j;
    j["config"] = config;
    if (single) {
      j["kind"] = "episode";
      j["trace"] = TraceToJson(s.arena, rep.episodes[0], records);
    } else {
      j["kind"] = "batch";
      j["aggregate"] = rep.aggregate;
      Json eps = Json::array();
      for (size_t i = 0; i < rep.episodes.size(); ++i) {
        Json t = TraceToJson(s.arena, rep.episodes[i], records);
        t["seed"] = rep.seeds[i];
        eps.push_back(t);
      }
      j["episodes"] = eps;
    }
    Emit(j, out_json);
  });
}

bg_status bg_oracle(const bg_arena* arena, const char* options,
                    char** out_json) {
  return Guard([&] {
    RequireOut(out_json, "oracle");
    const Arena& a = Get(arena, "oracle");
    Options o(options,
              {"mode", "grid", "horizon", "budget_index", "samples", "seed",
               "max_len", "start", "u", "cap", "threads"},
              "oracle");
    std::string dflt =
        a.objective() == Objective::kMeanPayoff ? "loop" : "richman";
    std::string mode = o.Str("mode", dflt);
    const int n = a.num_vertices();
    const int64_t cap = o.Int("cap", kDefaultOracleCap);
    const int threads = static_cast<int>(o.Int("threads", 0));
    Json j;
    j["mode"] = mode;
    if (mode == "richman") {
      const int grid = static_cast<int>(o.Int("grid", 32));
      const int horizon = static_cast<int>(o.Int("horizon", 64));
      Arena r = RichmanArenaOf(a);
      DiscreteTable table = DiscreteBackwardInduction(r, grid, horizon, cap);
      RichmanValues rv = RichmanExact(r);
      j["grid"] = grid;
      j["horizon"] = horizon;
      Json rows = Json::array();
      for (int v = 0; v < n; ++v) {
        ThresholdBracket b = table.Bracket(v);
        const Rational& exact = rv.values[v];
        rows.push_back({{"vertex", a.name(v)},
                        {"any_win", b.any_win},
                        {"index", b.index},
                        {"estimate", Str(b.estimate)},
                        {"lo", Str(b.lo)},
                        {"hi", Str(b.hi)},
                        {"exact", Str(exact)},
                        {"contains", b.lo <= exact && exact <= b.hi}});
      }
      j["vertices"] = rows;
    } else if (mode == "parity") {
      const int grid = static_cast<int>(o.Int("grid", 32));
      const int horizon = static_cast<int>(o.Int("horizon", 200));
      const int index = static_cast<int>(o.Int("budget_index", grid / 2));
      ParityOracleResult res = DiscreteParityOracle(a, grid, horizon, index, cap);
      j["grid"] = grid;
      j["horizon"] = horizon;
      j["budget_index"] = index;
      Json rows = Json::array();
      for (int v = 0; v < n; ++v) {
        rows.push_back({{"vertex", a.name(v)}, {"win1", bool(res.win1[v])}});
      }
      j["vertices"] = rows;
      j["winner"] = res.winner;
    } else if (mode == "absorb") {
      Arena r = RichmanArenaOf(a);
      RichmanValues rv = RichmanExact(r);
      int start = o.Vertex(r, "start", 0);
      McEstimate est = MonteCarloAbsorption(
          r, rv, start, o.Int("samples", 100000), o.Seed("seed", 0),
          o.Int("max_len", 1000000), threads);
      j["vertex"] = r.name(start);
      j["exact"] = Str(rv.values[start]);
      j["estimate"] = EstimateJson(est);
    } else if (mode == "loop") {
      if (a.objective() != Objective::kMeanPayoff) {
        throw DomainError("oracle: loop mode needs a meanpayoff arena");
      }
      int u = o.Vertex(a, "u", 0);
      WeightedRichmanValues wrv = WeightedRichman(a, u);
      McEstimate est = MonteCarloLoopReward(
          a, wrv, o.Int("samples", 100000), o.Seed("seed", 0),
          o.Int("max_len", 1000000), threads);
      j["u"] = a.name(u);
      j["exact"] = Str(wrv.w_of_u());
      j["estimate"] = EstimateJson(est);
    } else {
      throw ArgumentError("oracle: unknown mode '" + mode +
                          "' (richman, parity, absorb or loop)");
    }
    Emit(j, out_json);
  });
}

bg_status bg_reduce(const bg_arena* arena, const char* options,
                    char** out_json) {
  return Guard([&] {
    RequireOut(out_json, "reduce");
    const Arena& a = Get(arena, "reduce");
    Options o(options, {"to"}, "reduce");
    std::string to = o.Str("to", "richman");
    Json j;
    j["to"] = to;
    if (to == "richman") {
      j["text"] = SerializeArena(RichmanArenaOf(a));
    } else if (to == "ssg") {
      j["text"] = SerializeSsg(BuildSsg(RichmanArenaOf(a)));
    } else {
      throw ArgumentError("reduce: unknown target '" + to +
                          "' (richman or ssg)");
    }
    Emit(j, out_json);
  });
}

bg_status bg_unwind(const bg_arena* arena, const char* options,
                    char** out_json) {
  return Guard([&] {
    RequireOut(out_json, "unwind");
    const Arena& a = Get(arena, "unwind");
    Options o(options, {"accepting", "cycle", "k"}, "unwind");
    std::vector<bool> accepting(a.num_vertices(), false);
    for (const std::string& name : o.List("accepting")) {
      accepting[a.Vertex(name)] = true;
    }
    std::vector<int> cycle;
    for (const std::string& name : o.List("cycle")) cycle.push_back(a.Vertex(name));
    int64_t k = o.Int("k", 1);
    if (k < 1 || k > 1000000) throw DomainError("unwind: k must lie in [1, 10^6]");
    Json j;
    j["k"] = k;
    j["text"] = SerializeArena(UnwindBuchi(a, accepting, cycle, static_cast<int>(k)));
    Emit(j, out_json);
  });
}

bg_status bg_play(const bg_arena* arena, const char* options, bg_move_fn fn,
                  void* user, char** out_json) {
  return Guard([&] {
    RequireOut(out_json, "play");
    const Arena& input = Get(arena, "play");
    if (!fn) throw ArgumentError("play: move callback is null");
    Options o(options,
              {"as", "opponent", "budget1", "start", "energy", "horizon",
               "seed", "monitors", "tail_window"},
              "play");
    EpisodeSetup s = SetupEpisode(input, o);
    const int as = o.Player("as", 1);
    const int other = 3 - as;
    const GameState& g = s.cfg.init;
    std::string spec = o.Str("opponent", DefaultSpec(input, other));
    const uint64_t seed = o.Seed("seed", 0);
    StrategyContext ctx{other, other == 1 ? g.budget1 : g.budget2, g.vertex,
                        g.energy, PlayerSeed(seed, other)};
    auto opponent = MakeStrategy(spec, s.arena, ctx);
    HumanStrategy human(s.arena, as, fn, user);
    EpisodeTrace t = as == 1 ? RunEpisode(s.arena, human, *opponent, s.cfg)
                             : RunEpisode(s.arena, *opponent, human, s.cfg);
    Json j;
    j["config"] = {{"as", as},
                   {"opponent", spec},
                   {"start", s.arena.name(g.vertex)},
                   {"budget1", Str(g.budget1)},
                   {"energy", Str(g.energy)},
                   {"horizon", s.cfg.horizon},
                   {"seed", seed}};
    j["kind"] = "episode";
    j["trace"] = TraceToJson(s.arena, t, true);
    Emit(j, out_json);
  });
}

}  // extern "C"
