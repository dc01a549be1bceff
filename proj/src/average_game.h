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

#ifndef BIDGAME_SRC_AVERAGE_GAME_H_
#define BIDGAME_SRC_AVERAGE_GAME_H_

// Shared fixed-point machinery for X(v) = 1/2 (max_e + min_e) with
// edge value w(e) + X(dst(e)). Used by the Richman and weighted Richman
// solvers.

#include <optional>
#include <string>
#include <vector>

#include "bidgame/rational.h"

namespace bidgame::internal {

struct Option {
  int edge;
  int dst;
  Rational weight;
  double weight_d;
};

struct AverageSystem {
  int n = 0;
  std::vector<std::optional<Rational>> fixed;
  std::vector<std::vector<Option>> options;  // ascending edge id

  void Resize(int size) {
    n = size;
    fixed.assign(size, std::nullopt);
    options.assign(size, {});
  }
  void AddOption(int v, int edge, int dst, const Rational& w) {
    options[v].push_back({edge, dst, w, w.get_d()});
  }
};

struct AverageSolution {
  std::vector<Rational> value;
  std::vector<int> plus;   // option index, -1 for fixed vertices
  std::vector<int> minus;
};

// Gauss-Seidel sweeps from `init` until the largest change is below `tol`
// or `max_sweeps` is reached. Returns the number of sweeps performed.
long ValueIterate(const AverageSystem& sys, std::vector<double>* values,
                  long max_sweeps, double tol);

// Failure reason of PolicyIterate when a candidate policy does not absorb.
inline constexpr const char* kSingularPolicy =
    "singular linear system under the candidate policy";

// Policy iteration seeded from approximate values. Ties prefer the current
// choice, then the smaller edge id. With `tie_tol` > 0 the initial policy
// treats options within tie_tol of the extreme as tied and prefers the one
// whose destination is closest to a fixed vertex.
std::optional<AverageSolution> PolicyIterate(const AverageSystem& sys,
                                             const std::vector<double>& seed,
                                             int max_iters, double tie_tol,
                                             std::string* why);

// Checks X(v) = 1/2 (max + min) exactly and that the policy attains both.
bool IsFixedPoint(const AverageSystem& sys, const AverageSolution& sol);

// Value of option `o` of vertex v under `value`.
inline Rational OptionValue(const Option& o, const std::vector<Rational>& x) {
  return o.weight + x[o.dst];
}

}  // namespace bidgame::internal

#endif  // BIDGAME_SRC_AVERAGE_GAME_H_
