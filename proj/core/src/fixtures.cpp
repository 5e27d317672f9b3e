/*
 * Copyright 2026 The mpgsmooth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mpg/fixtures.hpp"

#include <utility>

#include "mpg/error.hpp"

namespace mpg {

namespace {

constexpr Player kMax = Player::Max;
constexpr Player kMin = Player::Min;

// Builds a game from 1-based edge triples.
struct Builder {
  int n;
  std::vector<Player> owner;
  std::vector<Edge> edges;

  Builder& add(int from, int to, Rational w) {
    edges.push_back({from - 1, to - 1, std::move(w)});
    return *this;
  }
  Game build() { return Game(n, std::move(owner), std::move(edges)); }
};

Rational param_weight(const FixtureParams& p, std::size_t i) {
  return i < p.weights.size() ? p.weights[i] : Rational(0);
}

Game exponential(const FixtureParams& p) {
  const int half = p.n;
  if (half < 2) throw Error(ErrorCode::DomainError, "exponential fixture needs n >= 2");
  const int n = 2 * half;
  std::vector<Player> owner(static_cast<std::size_t>(n));
  // odd states (1-based) belong to Max, even states to Min; state 1 is Max
  for (int v = 1; v <= n; ++v) owner[static_cast<std::size_t>(v - 1)] = (v % 2 == 1) ? kMax : kMin;
  Builder b{n, std::move(owner), {}};
  b.add(1, n, 0);
  b.add(2, 1, 0);
  b.add(3, 1, 0);
  b.add(4, 3, 2);
  b.add(4, 2, p.x);
  if (half >= 3) {
    b.add(5, 3, 1);
    b.add(5, 2, 1);
  }
  for (int k = 3; k <= half; ++k) {
    b.add(2 * k, 2 * k - 1, 1);
    b.add(2 * k, 2 * k - 2, 1);
  }
  for (int k = 3; k <= half - 1; ++k) {
    Rational w = Rational(1) - pow2(-(k - 2));
    b.add(2 * k + 1, 2 * k - 1, w);
    b.add(2 * k + 1, 2 * k - 2, w);
  }
  return b.build();
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"non_convex", "exponential",       "emerging_policies", "unstable_good_approx",
          "unstable",   "blackwell",         "one_player_3cycle", "one_player_4policies"};
}

Game paper_fixture(std::string_view name, const FixtureParams& p) {
  if (name == "non_convex") {
    Builder b{5, {kMin, kMin, kMin, kMin, kMax}, {}};
    b.add(1, 2, p.x).add(2, 3, 0).add(3, 4, 0).add(4, 1, 0);
    b.add(2, 5, 0).add(5, 2, 2).add(5, 1, -3);
    return b.build();
  }
  if (name == "exponential") return exponential(p);
  if (name == "emerging_policies") {
    Builder b{3, {kMin, kMax, kMin}, {}};
    b.add(1, 2, -10).add(1, 3, 0).add(2, 1, p.eps).add(2, 2, 0).add(3, 2, 0);
    return b.build();
  }
  if (name == "unstable_good_approx") {
    Builder b{4, {kMin, kMax, kMin, kMin}, {}};
    b.add(1, 2, p.eps).add(2, 3, 0).add(2, 4, 0);
    b.add(3, 1, 0).add(3, 2, -10).add(3, 4, 0).add(4, 4, 0);
    return b.build();
  }
  if (name == "unstable") {
    Builder b{3, {kMin, kMax, kMin}, {}};
    b.add(1, 2, p.x).add(1, 3, 0).add(2, 1, 0).add(2, 3, 0).add(3, 3, 0);
    return b.build();
  }
  if (name == "blackwell") {
    Builder b{3, {kMin, kMin, kMin}, {}};
    b.add(1, 2, 1).add(1, 3, -1).add(2, 1, 0).add(2, 2, 0);
    b.add(3, 1, 5).add(3, 2, 3).add(3, 3, 0);
    return b.build();
  }
  if (name == "one_player_3cycle") {
    Builder b{2, {kMin, kMin}, {}};
    b.add(1, 1, param_weight(p, 0)).add(1, 2, param_weight(p, 1));
    b.add(2, 1, param_weight(p, 2)).add(2, 2, param_weight(p, 3));
    return b.build();
  }
  if (name == "one_player_4policies") {
    Builder b{3, {kMin, kMin, kMin}, {}};
    b.add(1, 2, param_weight(p, 0)).add(1, 3, param_weight(p, 1));
    b.add(2, 1, param_weight(p, 2)).add(2, 2, param_weight(p, 3));
    b.add(3, 2, param_weight(p, 4));
    return b.build();
  }
  throw Error(ErrorCode::UnknownFixture, "no fixture named '" + std::string(name) + "'");
}

}  // namespace mpg
