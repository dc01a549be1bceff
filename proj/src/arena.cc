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

#include "bidgame/arena.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

namespace bidgame {
namespace {

std::vector<std::string_view> Tokens(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r') {
      ++j;
    }
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool SplitKeyValue(std::string_view tok, std::string_view* key,
                   std::string_view* value) {
  auto eq = tok.find('=');
  if (eq == std::string_view::npos) return false;
  *key = tok.substr(0, eq);
  *value = tok.substr(eq + 1);
  return true;
}

Rational RationalAt(int line, std::string_view text) {
  try {
    return ParseRational(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

struct PendingEdge {
  int line = 0;
  std::string src, dst, name;
  Rational weight;
};

struct PendingVertex {
  int line = 0;
  std::string name;
  unsigned parity = 0;
  int target = 0;
  Rational weight;
  bool has_weight = false;
};

}  // namespace

std::string_view ObjectiveName(Objective o) {
  switch (o) {
    case Objective::kRichman: return "richman";
    case Objective::kReachability: return "reachability";
    case Objective::kParity: return "parity";
    case Objective::kMeanPayoff: return "meanpayoff";
  }
  return "?";
}

int TieRule::Winner(int64_t round) const {
  switch (kind) {
    case Kind::kPlayer1: return 1;
    case Kind::kPlayer2: return 2;
    case Kind::kAlternate: return (round % 2 == 0) ? start : 3 - start;
  }
  return 1;
}

std::string TieRule::ToString() const {
  switch (kind) {
    case Kind::kPlayer1: return "player1";
    case Kind::kPlayer2: return "player2";
    case Kind::kAlternate: return "alternate=" + std::to_string(start);
  }
  return "?";
}

TieRule ParseTieRule(std::string_view text) {
  if (text == "player1") return TieRule::Player1();
  if (text == "player2") return TieRule::Player2();
  if (text == "alternate=1") return TieRule::Alternate(1);
  if (text == "alternate=2") return TieRule::Alternate(2);
  throw std::invalid_argument("unknown tie rule: " + std::string(text));
}

int Arena::AddVertex(const std::string& name) {
  if (name.empty()) throw ValidationError("empty vertex name");
  if (index_.count(name)) throw ValidationError("duplicate vertex " + name);
  int id = num_vertices();
  names_.push_back(name);
  index_[name] = id;
  out_.emplace_back();
  target_.push_back(false);
  parity_.push_back(0);
  return id;
}

int Arena::AddEdge(int src, int dst, const Rational& weight,
                   std::string name) {
  if (src < 0 || src >= num_vertices() || dst < 0 || dst >= num_vertices()) {
    throw ValidationError("edge endpoint out of range");
  }
  int id = num_edges();
  if (name.empty()) name = "e" + std::to_string(id);
  edges_.push_back({src, dst, weight, std::move(name)});
  out_[src].push_back(id);
  return id;
}

int Arena::Find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

int Arena::Vertex(std::string_view name) const {
  int v = Find(name);
  if (v < 0) throw DomainError("unknown vertex " + std::string(name));
  return v;
}

std::vector<bool> Arena::TargetSet() const { return target_; }

void Arena::Validate() const {
  if (num_vertices() == 0) throw ValidationError("arena has no vertices");
  std::map<std::string, int> edge_names;
  for (const Edge& e : edges_) {
    if (++edge_names[e.name] > 1) {
      throw ValidationError("duplicate edge id " + e.name);
    }
  }
  if (objective_ == Objective::kRichman) {
    if (vr_ < 0) throw ValidationError("richman arena without target=1 vertex");
    if (vs_ < 0) throw ValidationError("richman arena without target=2 vertex");
    if (vr_ == vs_) throw ValidationError("richman targets must be distinct");
  } else if (vs_ >= 0) {
    throw ValidationError("target=2 is only meaningful in richman arenas");
  }
  for (int v = 0; v < num_vertices(); ++v) {
    if (!out_[v].empty()) continue;
    if (objective_ == Objective::kRichman && IsTerminal(v)) continue;
    if (objective_ == Objective::kReachability) continue;
    throw ValidationError("dead-end vertex " + names_[v] +
                          " (out-degree 0 in a " +
                          std::string(ObjectiveName(objective_)) + " arena)");
  }
}

bool Arena::operator==(const Arena& o) const {
  return objective_ == o.objective_ && tie_ == o.tie_ && names_ == o.names_ &&
         edges_ == o.edges_ && target_ == o.target_ && parity_ == o.parity_ &&
         vr_ == o.vr_ && vs_ == o.vs_;
}

Arena LoadArena(std::string_view text) {
  Arena arena;
  bool have_objective = false;
  std::vector<PendingVertex> vertices;
  std::vector<PendingEdge> edges;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto tok = Tokens(line);
    if (tok.empty()) continue;
    std::string_view kw = tok[0];
    if (kw == "objective") {
      if (tok.size() != 2) throw ParseError(line_no, "objective takes one word");
      if (have_objective) throw ParseError(line_no, "objective given twice");
      have_objective = true;
      if (tok[1] == "richman") arena.set_objective(Objective::kRichman);
      else if (tok[1] == "reachability") arena.set_objective(Objective::kReachability);
      else if (tok[1] == "parity") arena.set_objective(Objective::kParity);
      else if (tok[1] == "meanpayoff") arena.set_objective(Objective::kMeanPayoff);
      else throw ParseError(line_no, "unknown objective " + std::string(tok[1]));
    } else if (kw == "tiebreak") {
      if (tok.size() != 2) throw ParseError(line_no, "tiebreak takes one word");
      try {
        arena.set_tie_rule(ParseTieRule(tok[1]));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
    } else if (kw == "vertex") {
      if (tok.size() < 2) throw ParseError(line_no, "vertex needs a name");
      PendingVertex pv;
      pv.line = line_no;
      pv.name = std::string(tok[1]);
      if (pv.name.find('=') != std::string::npos) {
        throw ParseError(line_no, "vertex name may not contain '='");
      }
      for (size_t i = 2; i < tok.size(); ++i) {
        std::string_view key, value;
        if (!SplitKeyValue(tok[i], &key, &value)) {
          throw ParseError(line_no, "expected key=value, got " + std::string(tok[i]));
        }
        if (key == "parity") {
          Rational p = RationalAt(line_no, value);
          if (p < 0 || p.get_den() != 1 || p > 1000000000) {
            throw ParseError(line_no, "parity must be a non-negative integer");
          }
          pv.parity = static_cast<unsigned>(p.get_num().get_ui());
        } else if (key == "target") {
          if (value == "1") pv.target = 1;
          else if (value == "2") pv.target = 2;
          else throw ParseError(line_no, "target must be 1 or 2");
        } else if (key == "weight") {
          pv.weight = RationalAt(line_no, value);
          pv.has_weight = true;
        } else {
          throw ParseError(line_no, "unknown vertex attribute " + std::string(key));
        }
      }
      vertices.push_back(std::move(pv));
    } else if (kw == "edge") {
      if (tok.size() < 3) throw ParseError(line_no, "edge needs src and dst");
      PendingEdge pe;
      pe.line = line_no;
      pe.src = std::string(tok[1]);
      pe.dst = std::string(tok[2]);
      for (size_t i = 3; i < tok.size(); ++i) {
        std::string_view key, value;
        if (!SplitKeyValue(tok[i], &key, &value)) {
          throw ParseError(line_no, "expected key=value, got " + std::string(tok[i]));
        }
        if (key == "weight") pe.weight = RationalAt(line_no, value);
        else if (key == "id") pe.name = std::string(value);
        else throw ParseError(line_no, "unknown edge attribute " + std::string(key));
      }
      edges.push_back(std::move(pe));
    } else {
      throw ParseError(line_no, "unknown directive " + std::string(kw));
    }
  }
  if (!have_objective) throw ParseError(line_no, "missing objective line");

  for (const PendingVertex& pv : vertices) {
    int v;
    try {
      v = arena.AddVertex(pv.name);
    } catch (const ValidationError& e) {
      throw ParseError(pv.line, e.what());
    }
    arena.set_parity(v, pv.parity);
    if (pv.target == 1) {
      if (arena.objective() == Objective::kRichman) {
        if (arena.vr() >= 0) throw ParseError(pv.line, "second target=1 vertex");
        arena.set_vr(v);
      }
      arena.set_target(v, true);
    } else if (pv.target == 2) {
      if (arena.objective() != Objective::kRichman) {
        throw ParseError(pv.line, "target=2 requires a richman objective");
      }
      if (arena.vs() >= 0) throw ParseError(pv.line, "second target=2 vertex");
      arena.set_vs(v);
    }
  }
  for (const PendingEdge& pe : edges) {
    int s = arena.Find(pe.src), d = arena.Find(pe.dst);
    if (s < 0) throw ParseError(pe.line, "unknown vertex " + pe.src);
    if (d < 0) throw ParseError(pe.line, "unknown vertex " + pe.dst);
    arena.AddEdge(s, d, pe.weight, pe.name);
  }
  for (const PendingVertex& pv : vertices) {
    if (!pv.has_weight) continue;
    int v = arena.Find(pv.name);
    for (int e : arena.out(v)) {
      arena.set_weight(e, arena.edge(e).weight + pv.weight);
    }
  }
  arena.Validate();
  return arena;
}

Arena LoadArenaFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return LoadArena(ss.str());
}

std::string SerializeArena(const Arena& arena) {
  std::ostringstream out;
  out << "objective " << ObjectiveName(arena.objective()) << "\n";
  out << "tiebreak " << arena.tie_rule().ToString() << "\n";
  for (int v = 0; v < arena.num_vertices(); ++v) {
    out << "vertex " << arena.name(v);
    if (arena.parity(v) != 0) out << " parity=" << arena.parity(v);
    if (v == arena.vs()) out << " target=2";
    else if (arena.is_target(v) || v == arena.vr()) out << " target=1";
    out << "\n";
  }
  for (const Edge& e : arena.edges()) {
    out << "edge " << arena.name(e.src) << " " << arena.name(e.dst);
    if (e.weight != 0) out << " weight=" << ToString(e.weight);
    out << " id=" << e.name << "\n";
  }
  return out.str();
}

SccDecomposition SccDecompose(const Arena& arena) {
  const int n = arena.num_vertices();
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  SccDecomposition out;
  out.component_of.assign(n, -1);
  int counter = 0;
  // Iterative Tarjan: frame = (vertex, next out-edge position).
  std::vector<std::pair<int, size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto& outs = arena.out(v);
      if (pos < outs.size()) {
        int w = arena.edge(outs[pos++]).dst;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component_of[w] = static_cast<int>(out.components.size());
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.components.push_back(std::move(comp));
      }
      int done = v;
      frames.pop_back();
      if (!frames.empty()) {
        int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  out.bottom.assign(out.components.size(), true);
  for (const Edge& e : arena.edges()) {
    if (out.component_of[e.src] != out.component_of[e.dst]) {
      out.bottom[out.component_of[e.src]] = false;
    }
  }
  return out;
}

std::vector<bool> CanReach(const Arena& arena, const std::vector<bool>& targets,
                           bool stop_at_terminals) {
  const int n = arena.num_vertices();
  std::vector<std::vector<int>> pred(n);
  for (const Edge& e : arena.edges()) {
    if (stop_at_terminals && arena.IsTerminal(e.src)) continue;
    pred[e.dst].push_back(e.src);
  }
  std::vector<bool> seen(n, false);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    if (targets[v]) {
      seen[v] = true;
      queue.push_back(v);
    }
  }
  for (size_t i = 0; i < queue.size(); ++i) {
    for (int p : pred[queue[i]]) {
      if (!seen[p]) {
        seen[p] = true;
        queue.push_back(p);
      }
    }
  }
  return seen;
}

std::vector<int> UnreachableFromTarget(const Arena& arena,
                                       const std::vector<bool>& targets) {
  auto reach = CanReach(arena, targets);
  std::vector<int> out;
  for (int v = 0; v < arena.num_vertices(); ++v) {
    if (!reach[v]) out.push_back(v);
  }
  return out;
}

bool IsStronglyConnected(const Arena& arena) {
  return SccDecompose(arena).components.size() == 1;
}

Arena InducedSubArena(const Arena& arena, const std::vector<int>& vertices,
                      std::vector<int>* mapping) {
  Arena sub(arena.objective());
  sub.set_tie_rule(arena.tie_rule());
  std::vector<int> local(arena.num_vertices(), -1);
  for (int v : vertices) {
    local[v] = sub.AddVertex(arena.name(v));
    sub.set_parity(local[v], arena.parity(v));
    sub.set_target(local[v], arena.is_target(v));
  }
  for (const Edge& e : arena.edges()) {
    if (local[e.src] >= 0 && local[e.dst] >= 0) {
      sub.AddEdge(local[e.src], local[e.dst], e.weight, e.name);
    }
  }
  if (mapping) *mapping = vertices;
  return sub;
}

}  // namespace bidgame
