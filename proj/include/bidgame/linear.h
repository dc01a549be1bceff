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

#ifndef BIDGAME_LINEAR_H_
#define BIDGAME_LINEAR_H_

#include <optional>
#include <vector>

#include "bidgame/rational.h"

namespace bidgame {

using Matrix = std::vector<std::vector<Rational>>;

// Solves A x = b by fraction-exact Gaussian elimination. Returns nullopt
// when A is singular.
std::optional<std::vector<Rational>> SolveExact(Matrix a,
                                                std::vector<Rational> b);

}  // namespace bidgame

#endif  // BIDGAME_LINEAR_H_
