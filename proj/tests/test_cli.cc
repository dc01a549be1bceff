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

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "support/oracles.h"

using Json = nlohmann::ordered_json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

std::string Fixture(const char* name) {
  return std::string(BIDGAME_FIXTURE_DIR) + "/" + name;
}

// Runs the CLI through the shell; stderr is dropped unless `merge` is set.
Result Run(const std::string& args, const std::string& input = "", bool merge = false) {
  std::string cmd = std::string("'") + BIDGAME_CLI_PATH + "' " + args;
  std::string in_path;
  if (!input.empty()) {
    in_path = "/tmp/bidgame_cli_test_input_" + std::to_string(::getpid());
    std::ofstream(in_path) << input;
    cmd += " < " + in_path;
  } else {
    cmd += " < /dev/null";
  }
  cmd += merge ? " 2>&1" : " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (!in_path.empty()) std::remove(in_path.c_str());
  return r;
}

std::vector<Json> JsonLines(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(Json::parse(line));
  }
  return out;
}

}  // namespace

TEST_CASE("help and usage errors") {
  Result help = Run("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("simulate") != std::string::npos);
  CHECK(Run("solve --help").code == 0);
  CHECK(Run("").code == 2);
  CHECK(Run("solve").code == 2);
  CHECK(Run("frobnicate " + Fixture("two-loop.game")).code == 2);
  CHECK(Run("solve --iterate -3 " + Fixture("fig1-richman.game")).code == 2);
  CHECK(Run("simulate --p1 chess " + Fixture("two-loop.game")).code == 2);
  CHECK(Run("simulate --records --no-records " + Fixture("two-loop.game")).code == 2);
}

TEST_CASE("input and domain errors exit with 1") {
  Result io = Run("solve /nonexistent/x.game", "", true);
  CHECK(io.code == 1);
  CHECK(io.out.find("io error") != std::string::npos);

  const std::string bad = "/tmp/bidgame_cli_test_bad.game";
  std::ofstream(bad) << "objective richman\nvertex a\nedge a b\n";
  Result parse = Run("solve " + bad, "", true);
  CHECK(parse.code == 1);
  CHECK(parse.out.find("line 3") != std::string::npos);
  std::ofstream(bad) << "objective meanpayoff\nvertex a\nvertex b\nedge a b\n";
  CHECK(Run("classify " + bad).code == 1);
  std::remove(bad.c_str());

  CHECK(Run("strategy --player min --kind min " + Fixture("pos-loop.game")).code == 1);
  CHECK(Run("simulate --horizon 0 " + Fixture("two-loop.game")).code == 1);
}

TEST_CASE("exact thresholds as JSON") {
  for (const char* cmd : {"solve --exact --json ", "thresholds --json "}) {
    Result r = Run(cmd + Fixture("fig1-richman.game"));
    REQUIRE(r.code == 0);
    std::vector<Json> lines = JsonLines(r.out);
    REQUIRE(lines.size() == 1);
    std::map<std::string, std::string> values;
    for (const Json& row : lines[0]["vertices"]) values[row["vertex"]] = row["value"];
    CHECK(values == std::map<std::string, std::string>{
                        {"v0", "2/3"}, {"v1", "1"}, {"v2", "1/3"}, {"t", "0"}});
  }
  Result text = Run("solve " + Fixture("fig1-richman.game"));
  CHECK(text.code == 0);
  CHECK(text.out.find("2/3") != std::string::npos);
}

TEST_CASE("finite-horizon values and rounds to win") {
  Result r = Run("solve --iterate 2 --budget 0.76 --start v0 --json " +
                 Fixture("fig1-richman.game"));
  REQUIRE(r.code == 0);
  Json j = JsonLines(r.out).at(0);
  CHECK(j["vertices"][0]["value"] == "3/4");
  CHECK(j["min_win_rounds"]["rounds"] == 2);
}

TEST_CASE("simulation output is reproducible") {
  const std::string args = "simulate --p1 tft --p2 random:edge=max --horizon 200 --seeds 3 "
                           "--monitors all --json " + Fixture("two-loop.game");
  Result a = Run(args), b = Run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::vector<Json> lines = JsonLines(a.out);
  REQUIRE_FALSE(lines.empty());
  CHECK(lines.back()["type"] == "aggregate");
  CHECK(lines.back()["aggregate"]["episodes"] == 3);

  Result one = Run("simulate --p1 tft --p2 random:edge=max --horizon 5 --json " +
                   Fixture("two-loop.game"));
  std::vector<Json> rounds = JsonLines(one.out);
  REQUIRE(rounds.size() == 6);
  for (int i = 0; i < 5; ++i) CHECK(rounds[i]["type"] == "round");
  CHECK(rounds[5]["type"] == "summary");
}

TEST_CASE("strategy, classification, oracle and reductions") {
  Result s = Run("strategy --player min --budget 1/5 --energy 10 --json " +
                 Fixture("two-loop.game"));
  REQUIRE(s.code == 0);
  Json sj = JsonLines(s.out).at(0);
  CHECK(sj["params"]["N"] == "62");

  Result c = Run("classify --json " + Fixture("pos-loop.game"));
  REQUIRE(c.code == 0);
  CHECK(JsonLines(c.out).at(0)["classes"][0]["tau"] == 1);

  Result o = Run("oracle --mode richman --grid 12 --horizon 30 --json " +
                 Fixture("fig1-richman.game"));
  REQUIRE(o.code == 0);
  for (const Json& row : JsonLines(o.out).at(0)["vertices"]) CHECK(row["contains"] == true);

  Result red = Run("reduce --to richman " + Fixture("fig1-reach.game"));
  REQUIRE(red.code == 0);
  CHECK(red.out.find("objective richman") != std::string::npos);

  Result un = Run("unwind --k 2 --cycle c1,c2 --accepting f " + Fixture("buchi.game"));
  REQUIRE(un.code == 0);
  CHECK(un.out.find("c1@2") != std::string::npos);
}

TEST_CASE("playing from standard input") {
  // Three inputs are refused; the opponent wins once at v2, then a tie
  // goes to Player 1.
  Result r = Run("play --as 1 --opponent allin:dir=min --budget1 0.76 --json " +
                     Fixture("fig1-richman.game"),
                 "2 b\n1/2 t\n1/2 c\n1/2 b\n1/100 d\n1/2 b\n1/2 d\n");
  REQUIRE(r.code == 0);
  std::vector<Json> lines = JsonLines(r.out);
  REQUIRE_FALSE(lines.empty());
  CHECK(lines.back()["type"] == "summary");
  CHECK(lines.back()["summary"]["rounds"] == 4);
  CHECK(lines.back()["summary"]["end"] == "terminal");
  CHECK(lines.back()["summary"]["final_vertex"] == "t");

  Result quit = Run("play --as 2 --opponent greedy " + Fixture("fig1-richman.game"), "quit\n");
  CHECK(quit.code == 0);
  CHECK(quit.out.find("stopped") != std::string::npos);
}
