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

#include "bidgame/rational.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bidgame {
namespace {

bool IsInteger(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    // Exact decimal: "-0.25" is -1/4.
    std::string_view whole = text.substr(0, dot), frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
      whole.remove_prefix(1);
    }
    bool digits = !(whole.empty() && frac.empty());
    for (char c : whole) digits = digits && c >= '0' && c <= '9';
    for (char c : frac) digits = digits && c >= '0' && c <= '9';
    if (!digits) throw std::invalid_argument("bad rational: " + std::string(text));
    mpz_class num(whole.empty() ? std::string("0") : std::string(whole));
    mpz_class den = 1;
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    Rational r(neg ? mpz_class(-num) : num, den);
    r.canonicalize();
    return r;
  }
  std::string_view num = text, den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!IsInteger(den) || den[0] == '-' || den[0] == '+') {
      throw std::invalid_argument("bad rational: " + std::string(text));
    }
  }
  if (!IsInteger(num)) {
    throw std::invalid_argument("bad rational: " + std::string(text));
  }
  std::string n(num[0] == '+' ? num.substr(1) : num);
  Rational r;
  r.get_num() = mpz_class(n);
  r.get_den() = den.empty() ? mpz_class(1) : mpz_class(std::string(den));
  if (r.get_den() == 0) {
    throw std::invalid_argument("zero denominator: " + std::string(text));
  }
  r.canonicalize();
  return r;
}

std::string ToString(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational FromDouble(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  return Rational(x);
}

double FloorDouble(const Rational& r) {
  double d = r.get_d();
  while (Rational(d) > r) d = std::nextafter(d, -INFINITY);
  return d;
}

std::string FormatDouble(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

mpz_class Floor(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational Abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace bidgame
