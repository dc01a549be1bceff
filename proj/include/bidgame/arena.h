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

#ifndef BIDGAME_ARENA_H_
#define BIDGAME_ARENA_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bidgame/errors.h"
#include "bidgame/rational.h"

namespace bidgame {

enum class Objective { kRichman, kReachability, kParity, kMeanPayoff };

std::string_view ObjectiveName(Objective o);

struct TieRule {
  enum class Kind { kPlayer1, kPlayer2, kAlternate };
  Kind kind = Kind::kPlayer1;
  int start = 1;  // first tie winner under kAlternate

  static TieRule Player1() { return {Kind::kPlayer1, 1}; }
  static TieRule Player2() { return {Kind::kPlayer2, 2}; }
  static TieRule Alternate(int first) { return {Kind::kAlternate, first}; }

  // Player (1 or 2) that wins a tie in the given 0-based round.
  int Winner(int64_t round) const;
  std::string ToString() const;
  bool operator==(const TieRule&) const = default;
};

TieRule ParseTieRule(std::string_view text);

struct Edge {
  int src = 0;
  int dst = 0;
  Rational weight;
  std::string name;
  bool operator==(const Edge&) const = default;
};

class Arena {
 public:
  Arena() = default;
  explicit Arena(Objective objective) : objective_(objective) {}

  int AddVertex(const std::string& name);
  int AddEdge(int src, int dst, const Rational& weight = 0,
              std::string name = "");

  void set_objective(Objective o) { objective_ = o; }
  void set_tie_rule(TieRule t) { tie_ = t; }
  void set_vr(int v) {
    vr_ = v;
    target_[v] = true;
  }
  void set_vs(int v) { vs_ = v; }
  void set_target(int v, bool on) { target_[v] = on; }
  void set_parity(int v, unsigned p) { parity_[v] = p; }
  void set_weight(int e, const Rational& w) { edges_[e].weight = w; }

  Objective objective() const { return objective_; }
  const TieRule& tie_rule() const { return tie_; }
  int num_vertices() const { return static_cast<int>(names_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::string& name(int v) const { return names_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& out(int v) const { return out_[v]; }
  int vr() const { return vr_; }
  int vs() const { return vs_; }
  bool is_target(int v) const { return target_[v]; }
  unsigned parity(int v) const { return parity_[v]; }

  // -1 when absent.
  int Find(std::string_view name) const;
  int Vertex(std::string_view name) const;  // throws DomainError
  std::vector<bool> TargetSet() const;

  // Richman sinks end the play.
  bool IsTerminal(int v) const { return v == vr_ || v == vs_; }

  // Throws ValidationError naming the violated invariant.
  void Validate() const;

  bool operator==(const Arena&) const;

 private:
  Objective objective_ = Objective::kMeanPayoff;
  TieRule tie_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<bool> target_;
  std::vector<unsigned> parity_;
  int vr_ = -1;
  int vs_ = -1;
};

// Parses the line-oriented game format and validates the result.
Arena LoadArena(std::string_view text);
Arena LoadArenaFile(const std::string& path);
std::string SerializeArena(const Arena& arena);

struct SccDecomposition {
  // Reverse-topological: a component only has edges into earlier ones.
  std::vector<std::vector<int>> components;
  std::vector<bool> bottom;
  std::vector<int> component_of;
};

SccDecomposition SccDecompose(const Arena& arena);

// Vertices with no path to any vertex in `targets`, ascending.
std::vector<int> UnreachableFromTarget(const Arena& arena,
                                       const std::vector<bool>& targets);

// Vertices that can reach `targets` (including the targets).
std::vector<bool> CanReach(const Arena& arena, const std::vector<bool>& targets,
                           bool stop_at_terminals = false);

// True when the arena is strongly connected.
bool IsStronglyConnected(const Arena& arena);

// The induced sub-arena on `vertices` (edges leaving the set are dropped).
// `mapping` receives the original id of each new vertex.
Arena InducedSubArena(const Arena& arena, const std::vector<int>& vertices,
                      std::vector<int>* mapping = nullptr);

}  // namespace bidgame

#endif  // BIDGAME_ARENA_H_
