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

#ifndef BIDGAME_RATIONAL_H_
#define BIDGAME_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bidgame {

using Rational = mpq_class;

// Parses "p/q", "-p/q", an integer or an exact decimal such as "0.76".
// Throws std::invalid_argument.
Rational ParseRational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string ToString(const Rational& r);

// Exact conversion of a finite double.
Rational FromDouble(double x);

// Largest double that does not exceed r.
double FloorDouble(const Rational& r);

inline double ToDouble(const Rational& r) { return r.get_d(); }

// Twelve significant digits.
std::string FormatDouble(double x);

// Floor of a rational as a big integer.
mpz_class Floor(const Rational& r);

Rational Abs(const Rational& r);

}  // namespace bidgame

#endif  // BIDGAME_RATIONAL_H_
