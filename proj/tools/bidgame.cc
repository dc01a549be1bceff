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

// Command-line front end over the C interface.

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bidgame/bidgame_c.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::string FormatFloat(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Rounds every float to twelve significant digits so that output does not
// depend on the last bits of a computation.
void RoundFloats(Json& j) {
  if (j.is_number_float()) {
    j = std::stod(FormatFloat(j.get<double>()));
  } else if (j.is_structured()) {
    for (auto& x : j) RoundFloats(x);
  }
}

std::string Cell(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  if (j.is_number_float()) return FormatFloat(j.get<double>());
  return j.dump();
}

// Left-aligned columns separated by two spaces.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(header); }
  void Add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void Print(std::ostream& out) const {
    std::vector<size_t> width;
    for (const auto& r : rows_) {
      if (width.size() < r.size()) width.resize(r.size(), 0);
      for (size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    for (const auto& r : rows_) {
      std::string line;
      for (size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
      out << line << "\n";
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

struct ArenaHandle {
  bg_arena* p = nullptr;
  ~ArenaHandle() { bg_arena_free(p); }
};

// Error raised by a library call, carrying the exit code.
struct CallError {
  int code;
  std::string message;
};

int ExitCodeOf(bg_status s) {
  return s == BG_ERR_ARGUMENT ? kExitUsage : kExitDomain;
}

void Check(bg_status s) {
  if (s != BG_OK) {
    throw CallError{ExitCodeOf(s),
                    std::string(bg_status_name(s)) + ": " + bg_last_error()};
  }
}

Json TakeJson(char* text) {
  std::unique_ptr<char, void (*)(char*)> own(text, bg_string_free);
  Json j = Json::parse(text);
  RoundFloats(j);
  return j;
}

using Call = bg_status (*)(const bg_arena*, const char*, char**);

Json Run(Call fn, const bg_arena* a, const Json& opts) {
  char* out = nullptr;
  Check(fn(a, opts.dump().c_str(), &out));
  return TakeJson(out);
}

void PrintLine(const Json& j) { std::cout << j.dump() << "\n"; }

// Records of an episode one per line, then its summary.
void PrintTraceLines(const Json& trace, const Json& extra) {
  if (trace.contains("records")) {
    for (const Json& r : trace["records"]) {
      Json line = {{"type", "round"}};
      line.update(r);
      PrintLine(line);
    }
  }
  Json sum = {{"type", "summary"}};
  sum.update(extra);
  sum["init"] = trace["init"];
  sum["summary"] = trace["summary"];
  sum["monitors"] = trace["monitors"];
  sum["params1"] = trace["params1"];
  sum["params2"] = trace["params2"];
  PrintLine(sum);
}

struct Common {
  std::string file;
  std::string tie;
  bool json = false;
};

void Load(const Common& c, ArenaHandle& h) {
  Check(bg_arena_load_file(c.file.c_str(), &h.p));
  if (!c.tie.empty()) Check(bg_arena_set_tie_rule(h.p, c.tie.c_str()));
}

// Flags whose values are forwarded as strings; the library validates them.
struct Forward {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> opts;

  CLI::Option* Add(CLI::App* app, const std::string& flag,
                   const std::string& key, const std::string& help) {
    return opts[key] = app->add_option("--" + flag, values[key], help);
  }
  void Fill(Json& j) const {
    for (const auto& [key, opt] : opts) {
      if (opt->count() > 0) j[key] = values.at(key);
    }
  }
};

// ------------------------------------------------------------- printers

void PrintSolve(const Json& r) {
  std::cout << "objective " << Cell(r["objective"]) << ", method "
            << Cell(r["method"]);
  if (r.contains("steps")) std::cout << " (" << Cell(r["steps"]) << " steps)";
  std::cout << "\n";
  Table t({"vertex", "threshold", "plus", "minus"});
  for (const Json& v : r["vertices"]) {
    t.Add({Cell(v["vertex"]), Cell(v["value"]),
           v.contains("plus") ? Cell(v["plus"]) : "-",
           v.contains("minus") ? Cell(v["minus"]) : "-"});
  }
  t.Print(std::cout);
  if (r.contains("markov")) {
    const Json& m = r["markov"];
    std::cout << "\nmarkov check: " << (m["ok"].get<bool>() ? "ok" : "FAILED")
              << "\n";
    Table mt({"vertex", "value", "absorb_vS", "absorb_vR", "residual"});
    for (const Json& v : m["vertices"]) {
      mt.Add({Cell(v["vertex"]), Cell(v["value"]), Cell(v["absorb_vs"]),
              Cell(v["absorb_vr"]), Cell(v["residual"])});
    }
    mt.Print(std::cout);
  }
  if (r.contains("ssg")) {
    const Json& s = r["ssg"];
    std::cout << "\nssg value iteration (tol " << Cell(s["tol"])
              << "), max |val + R - 1| = " << Cell(s["max_gap"]) << "\n";
    Table st({"vertex", "val", "R"});
    for (const Json& v : s["vertices"]) {
      st.Add({Cell(v["vertex"]), Cell(v["val"]), Cell(v["value"])});
    }
    st.Print(std::cout);
  }
  if (r.contains("min_win_rounds")) {
    const Json& m = r["min_win_rounds"];
    std::cout << "\nrounds to win from " << Cell(m["vertex"]) << " with budget "
              << Cell(m["budget"]) << ": "
              << (m["rounds"].is_null() ? "none within cap" : Cell(m["rounds"]))
              << "\n";
  }
}

void PrintClassify(const Json& r) {
  std::cout << "objective " << Cell(r["objective"]) << "\n";
  Table ct({"component", "vertices", "bottom"});
  int i = 0;
  for (const Json& c : r["components"]) {
    std::string vs;
    for (const Json& v : c["vertices"]) vs += (vs.empty() ? "" : ",") + Cell(v);
    ct.Add({std::to_string(i++), vs, Cell(c["bottom"])});
  }
  ct.Print(std::cout);
  if (r["classes"].empty()) return;
  std::cout << "\n";
  for (const Json& c : r["classes"]) {
    std::string vs;
    for (const Json& v : c["vertices"]) vs += (vs.empty() ? "" : ",") + Cell(v);
    std::cout << "bottom {" << vs << "}: tau=" << Cell(c["tau"]) << " winner=Player "
              << Cell(c["winner"]) << " witness=" << Cell(c["witness"]);
    if (c.contains("max_parity")) {
      std::cout << " max_parity=" << Cell(c["max_parity"]) << "\n";
      continue;
    }
    std::cout << " W(u)=" << Cell(c["W(u)"]) << "\n";
    Table wt({"  u", "W(u)"});
    for (auto it = c["W"].begin(); it != c["W"].end(); ++it) {
      wt.Add({"  " + it.key(), Cell(it.value())});
    }
    wt.Print(std::cout);
    std::cout << "  contributions: pos=" << Cell(c["pos"]) << " neg="
              << Cell(c["neg"]) << " residual=" << Cell(c["residual"])
              << "\n  recurrent root: " << Cell(c["recurrent_root"]) << "\n";
    if (c.contains("z_recurrent")) {
      std::cout << "  z_recurrent=" << Cell(c["z_recurrent"])
                << " z_general=" << Cell(c["z_general"]) << "\n";
    }
  }
}

void PrintStrategy(const Json& r) {
  std::cout << "strategy " << Cell(r["kind"]) << " for Player " << Cell(r["player"])
            << ", budget " << Cell(r["budget"]) << ", start " << Cell(r["start"])
            << ", energy " << Cell(r["energy"]) << "\n";
  for (auto it = r["params"].begin(); it != r["params"].end(); ++it) {
    if (it.value().is_object()) {
      std::cout << "  " << it.key() << ":";
      for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
        std::cout << " " << jt.key() << "=" << Cell(jt.value());
      }
      std::cout << "\n";
    } else {
      std::cout << "  " << it.key() << " = " << Cell(it.value()) << "\n";
    }
  }
  std::cout << "\n";
  Table t({"vertex", "bid", "approx", "edge", "to", "note"});
  for (const Json& b : r["bids"]) {
    t.Add({Cell(b["vertex"]), Cell(b["bid"]),
           b.contains("bid_approx") ? Cell(b["bid_approx"]) : "-",
           b.contains("edge") ? Cell(b["edge"]) : "-",
           b.contains("to") ? Cell(b["to"]) : "-",
           b.contains("note") ? Cell(b["note"]) : ""});
  }
  t.Print(std::cout);
}

void PrintEstimate(const Json& e) {
  std::cout << "estimate " << Cell(e["mean"]);
  if (e["std_error_defined"].get<bool>()) {
    std::cout << " +- " << Cell(e["std_error"]);
  } else {
    std::cout << " (standard error undefined)";
  }
  std::cout << " from " << Cell(e["used"]) << " of " << Cell(e["samples"])
            << " samples, " << Cell(e["censored"]) << " censored\n";
}

void PrintOracle(const Json& r) {
  const std::string mode = r["mode"];
  if (mode == "richman") {
    std::cout << "discrete bidding, grid 1/" << Cell(r["grid"]) << ", horizon "
              << Cell(r["horizon"]) << "\n";
    Table t({"vertex", "estimate", "bracket", "exact", "contains"});
    for (const Json& v : r["vertices"]) {
      t.Add({Cell(v["vertex"]), Cell(v["estimate"]),
             "[" + Cell(v["lo"]) + ", " + Cell(v["hi"]) + "]", Cell(v["exact"]),
             Cell(v["contains"])});
    }
    t.Print(std::cout);
  } else if (mode == "parity") {
    std::cout << "discrete parity, grid 1/" << Cell(r["grid"]) << ", horizon "
              << Cell(r["horizon"]) << ", budget " << Cell(r["budget_index"])
              << "/" << Cell(r["grid"]) << "\n";
    Table t({"vertex", "player1 wins"});
    for (const Json& v : r["vertices"]) t.Add({Cell(v["vertex"]), Cell(v["win1"])});
    t.Print(std::cout);
    int w = r["winner"];
    std::cout << "winner: " << (w == 0 ? "mixed" : "Player " + std::to_string(w))
              << "\n";
  } else if (mode == "absorb") {
    std::cout << "absorption at vS from " << Cell(r["vertex"]) << ", exact "
              << Cell(r["exact"]) << "\n";
    PrintEstimate(r["estimate"]);
  } else {
    std::cout << "loop reward from " << Cell(r["u"]) << ", exact W(u) "
              << Cell(r["exact"]) << "\n";
    PrintEstimate(r["estimate"]);
  }
}

// ---------------------------------------------------------------- play

struct PlayIo {
  std::istream* in;
  std::ostream* out;
};

int AskMove(void* user, const char* prompt_json, char* bid, size_t bid_cap,
            char* edge, size_t edge_cap) {
  PlayIo& io = *static_cast<PlayIo*>(user);
  Json p = Json::parse(prompt_json);
  std::ostream& o = *io.out;
  if (p.contains("last") && !p.contains("error")) {
    const Json& l = p["last"];
    o << "round " << Cell(l["round"]) << ": bids " << Cell(l["bid1"]) << " / "
      << Cell(l["bid2"]) << ", Player " << Cell(l["winner"]) << " moved to "
      << Cell(l["to"]) << "\n";
  }
  if (p.contains("error")) o << "rejected: " << Cell(p["error"]) << "\n";
  o << "round " << Cell(p["round"]) << " at " << Cell(p["vertex"])
    << ", your budget " << Cell(p["budget"]) << " ("
    << Cell(p["budget_approx"]) << "), energy " << Cell(p["energy"]) << "\n";
  o << "moves:";
  for (const Json& e : p["edges"]) {
    o << " [" << Cell(e["id"]) << "] " << Cell(e["dst"]);
    if (e["weight"] != "0") o << " (w=" << Cell(e["weight"]) << ")";
  }
  o << "\nenter <bid> <move>, or quit: " << std::flush;
  std::string line;
  for (;;) {
    if (!std::getline(*io.in, line)) return 1;
    std::istringstream ss(line);
    std::string b, e;
    ss >> b;
    if (b == "quit" || b == "q") return 1;
    if (b.empty()) continue;
    ss >> e;
    if (e.empty() && p["edges"].size() == 1) e = Cell(p["edges"][0]["id"]);
    if (b.size() >= bid_cap || e.size() >= edge_cap) {
      o << "input too long\n";
      continue;
    }
    std::snprintf(bid, bid_cap, "%s", b.c_str());
    std::snprintf(edge, edge_cap, "%s", e.c_str());
    return 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold budgets, strategies and simulations for bidding games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bg_version()));

  Common common;
  auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", common.file, "Game file")->required();
    sub->add_option("--tie", common.tie,
                    "Tie rule override: player1, player2, alternate=1, alternate=2");
    sub->add_flag("--json", common.json, "Machine-readable JSON-lines output");
  };

  // solve / thresholds
  CLI::App* solve = app.add_subcommand("solve", "Threshold budgets");
  CLI::App* thresholds =
      app.add_subcommand("thresholds", "Exact threshold budgets (solve --exact)");
  Forward solve_fw;
  bool exact = false, ssg = false, markov = false;
  int iterate = -1;
  double tol = 1e-9;
  for (CLI::App* sub : {solve, thresholds}) with_file(sub);
  solve->add_flag("--exact", exact, "Exact fixed point (default)");
  auto* iterate_opt = solve->add_option("--iterate", iterate,
                                        "Finite-horizon values after N steps")
                          ->check(CLI::NonNegativeNumber);
  solve->add_flag("--ssg", ssg, "Cross-check with the stochastic game");
  solve->add_option("--tol", tol, "Value iteration tolerance")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--markov", markov, "Cross-check with the Markov chain");
  solve_fw.Add(solve, "budget", "budget", "Rounds needed to win with this budget");
  solve_fw.Add(solve, "start", "start", "Start vertex for --budget");
  iterate_opt->excludes(solve->get_option("--exact"));

  // classify
  CLI::App* classify = app.add_subcommand("classify", "Bottom components");
  with_file(classify);

  // strategy
  CLI::App* strategy = app.add_subcommand("strategy", "Parameters and bid table");
  with_file(strategy);
  Forward strat_fw;
  strat_fw.Add(strategy, "player", "player", "1, 2, min or max");
  strat_fw.Add(strategy, "budget", "budget", "Own budget");
  strat_fw.Add(strategy, "start", "start", "Start vertex");
  strat_fw.Add(strategy, "energy", "energy", "Energy for the bid table");
  strat_fw.Add(strategy, "kind", "kind", "Strategy spec, e.g. min:reserve=1/10");
  strat_fw.Add(strategy, "seed", "seed", "Seed for random strategies");

  // simulate
  CLI::App* simulate = app.add_subcommand("simulate", "Play episodes");
  with_file(simulate);
  Forward sim_fw;
  sim_fw.Add(simulate, "p1", "p1", "Player 1 strategy spec");
  sim_fw.Add(simulate, "p2", "p2", "Player 2 strategy spec");
  sim_fw.Add(simulate, "budget1", "budget1", "Player 1 budget");
  sim_fw.Add(simulate, "start", "start", "Start vertex");
  sim_fw.Add(simulate, "energy", "energy", "Initial energy");
  sim_fw.Add(simulate, "horizon", "horizon", "Rounds");
  sim_fw.Add(simulate, "seed", "seed", "First seed");
  sim_fw.Add(simulate, "seeds", "seeds", "Number of seeded episodes");
  sim_fw.Add(simulate, "monitors", "monitors", "Comma-separated monitors or all");
  sim_fw.Add(simulate, "tail-window", "tail_window", "Tail window of prefixes");
  sim_fw.Add(simulate, "threads", "threads", "Worker threads");
  bool sim_records = false, sim_no_records = false;
  simulate->add_flag("--records", sim_records, "Print every round of a batch");
  simulate->add_flag("--no-records", sim_no_records, "Print summaries only");

  // oracle
  CLI::App* oracle = app.add_subcommand("oracle", "Independent ground truth");
  with_file(oracle);
  Forward or_fw;
  or_fw.Add(oracle, "mode", "mode", "richman, parity, absorb or loop");
  or_fw.Add(oracle, "grid", "grid", "Budget grid D");
  or_fw.Add(oracle, "horizon", "horizon", "Rounds T");
  or_fw.Add(oracle, "budget-index", "budget_index", "Parity budget index");
  or_fw.Add(oracle, "samples", "samples", "Monte Carlo samples");
  or_fw.Add(oracle, "seed", "seed", "Monte Carlo seed");
  or_fw.Add(oracle, "max-len", "max_len", "Censoring length");
  or_fw.Add(oracle, "start", "start", "Start vertex for absorb");
  or_fw.Add(oracle, "u", "u", "Base vertex for loop");
  or_fw.Add(oracle, "cap", "cap", "Table size cap");
  or_fw.Add(oracle, "threads", "threads", "Worker threads");

  // reduce
  CLI::App* reduce = app.add_subcommand("reduce", "Emit the reduced game");
  with_file(reduce);
  std::string reduce_to;
  reduce->add_option("--to", reduce_to, "ssg or richman")
      ->required()
      ->check(CLI::IsMember({"ssg", "richman"}));

  // unwind
  CLI::App* unwind = app.add_subcommand("unwind", "Emit the k-unwinding");
  with_file(unwind);
  Forward un_fw;
  un_fw.Add(unwind, "k", "k", "Number of levels");
  un_fw.Add(unwind, "cycle", "cycle", "Cycle vertices in order")->required();
  un_fw.Add(unwind, "accepting", "accepting", "Accepting vertices");

  // play
  CLI::App* play = app.add_subcommand("play", "Play one side from standard input");
  with_file(play);
  Forward play_fw;
  play_fw.Add(play, "as", "as", "1 or 2");
  play_fw.Add(play, "opponent", "opponent", "Opponent strategy spec");
  play_fw.Add(play, "budget1", "budget1", "Player 1 budget");
  play_fw.Add(play, "start", "start", "Start vertex");
  play_fw.Add(play, "energy", "energy", "Initial energy");
  play_fw.Add(play, "horizon", "horizon", "Rounds");
  play_fw.Add(play, "seed", "seed", "Opponent seed");
  play_fw.Add(play, "monitors", "monitors", "Comma-separated monitors or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    ArenaHandle h;
    Load(common, h);
    const bool json = common.json;

    if (solve->parsed() || thresholds->parsed()) {
      Json o = Json::object();
      if (solve->parsed()) {
        solve_fw.Fill(o);
        if (iterate >= 0) o["iterate"] = iterate;
        if (ssg) {
          o["ssg"] = true;
          o["ssg_tol"] = tol;
        }
        if (markov) o["markov"] = true;
      }
      Json r = Run(bg_solve, h.p, o);
      json ? PrintLine(r) : PrintSolve(r);
    } else if (classify->parsed()) {
      Json r = Run(bg_classify, h.p, Json::object());
      json ? PrintLine(r) : PrintClassify(r);
    } else if (strategy->parsed()) {
      Json o = Json::object();
      strat_fw.Fill(o);
      Json r = Run(bg_strategy, h.p, o);
      json ? PrintLine(r) : PrintStrategy(r);
    } else if (simulate->parsed()) {
      Json o = Json::object();
      sim_fw.Fill(o);
      if (sim_records && sim_no_records) {
        throw CallError{kExitUsage, "--records and --no-records conflict"};
      }
      if (sim_records) o["records"] = true;
      if (sim_no_records) o["records"] = false;
      Json r = Run(bg_simulate, h.p, o);
      if (r["kind"] == "episode") {
        PrintTraceLines(r["trace"], {{"config", r["config"]}});
      } else {
        for (const Json& t : r["episodes"]) {
          PrintTraceLines(t, {{"seed", t["seed"]}});
        }
        PrintLine({{"type", "aggregate"},
                   {"config", r["config"]},
                   {"aggregate", r["aggregate"]}});
      }
    } else if (oracle->parsed()) {
      Json o = Json::object();
      or_fw.Fill(o);
      Json r = Run(bg_oracle, h.p, o);
      json ? PrintLine(r) : PrintOracle(r);
    } else if (reduce->parsed()) {
      Json r = Run(bg_reduce, h.p, {{"to", reduce_to}});
      json ? PrintLine(r) : void(std::cout << r["text"].get<std::string>());
    } else if (unwind->parsed()) {
      Json o = Json::object();
      un_fw.Fill(o);
      Json r = Run(bg_unwind, h.p, o);
      json ? PrintLine(r) : void(std::cout << r["text"].get<std::string>());
    } else if (play->parsed()) {
      Json o = Json::object();
      play_fw.Fill(o);
      PlayIo io{&std::cin, &std::cerr};
      char* out = nullptr;
      Check(bg_play(h.p, o.dump().c_str(), AskMove, &io, &out));
      Json r = TakeJson(out);
      PrintTraceLines(r["trace"], {{"config", r["config"]}});
    }
  } catch (const CallError& e) {
    std::cerr << "bidgame: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "bidgame: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
