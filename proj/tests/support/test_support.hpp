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

#pragma once

// Helpers shared by the unit and acceptance tests: literal parsing, small
// random generators and oracles that avoid the library's own algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mpg/game.hpp"
#include "mpg/rational.hpp"

namespace mpg::testing {

inline Rational Q(const char* s) { return parse_rational(s); }

/// Canonical a/b; mpq_class(a, b) alone does not reduce.
inline Rational frac(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

inline PolicyPair pair1(std::initializer_list<int> one_based) {
  PolicyPair p;
  for (int v : one_based) p.successor.push_back(v - 1);
  return p;
}

/// Game from 1-based edge triples with integer-string weights.
struct GameBuilder {
  int n;
  std::vector<Player> owner;
  std::vector<Edge> edges;

  GameBuilder& add(int from, int to, const Rational& w) {
    edges.push_back({from - 1, to - 1, w});
    return *this;
  }
  Game build() const { return Game(n, owner, edges); }
};

/// Complete bipartite game with integer weights in [-range, range].
inline Game random_bipartite(std::mt19937_64& rng, int n_max, int n_min, int range) {
  std::uniform_int_distribution<int> w(-range, range);
  std::vector<Player> owner;
  for (int i = 0; i < n_max; ++i) owner.push_back(Player::Max);
  for (int i = 0; i < n_min; ++i) owner.push_back(Player::Min);
  std::vector<Edge> edges;
  for (int i = 0; i < n_max; ++i) {
    for (int j = 0; j < n_min; ++j) {
      edges.push_back({i, n_max + j, Rational(w(rng))});
      edges.push_back({n_max + j, i, Rational(w(rng))});
    }
  }
  return Game(n_max + n_min, owner, edges);
}

/// Out-degree one everywhere, rational weights p/q with small p, q.
inline Game random_functional(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> succ(0, n - 1);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 6);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Player> owner;
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) {
    owner.push_back(coin(rng) ? Player::Max : Player::Min);
    Rational w(num(rng), den(rng));
    w.canonicalize();
    edges.push_back({v, succ(rng), w});
  }
  return Game(n, owner, edges);
}

inline bool reachable_all(int n, const std::vector<std::vector<int>>& adj, int src) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{src};
  seen[static_cast<std::size_t>(src)] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

/// Strongly connected all-Min game: a Hamiltonian ring plus random extra edges.
inline Game random_strongly_connected_min(std::mt19937_64& rng, int n, double density) {
  std::uniform_int_distribution<int> w(-9, 9);
  std::bernoulli_distribution extra(density);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<bool>> has(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    has[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]
       [static_cast<std::size_t>(perm[static_cast<std::size_t>((i + 1) % n)])] = true;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (extra(rng)) has[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    }
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (has[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) edges.push_back({i, j, Rational(w(rng))});
    }
  }
  return Game(n, std::vector<Player>(static_cast<std::size_t>(n), Player::Min), edges);
}

/// Exact solution of (I - gamma P) v = (1 - gamma) r for a fixed pair by
/// Gauss-Jordan elimination over the rationals.
inline std::vector<Rational> discounted_by_elimination(const Game& g, const PolicyPair& pair,
                                                       const Rational& gamma) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(pair.successor[i]);
    a[i][i] += 1;
    a[i][j] -= gamma;
    a[i][n] = (1 - gamma) * g.weight(static_cast<Vertex>(i), static_cast<Vertex>(j));
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    const Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<Rational> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a[i][n];
  return v;
}

/// Mean weight of the cycle reached from each vertex, found by a plain walk.
inline std::vector<Rational> walk_payoff(const Game& g, const PolicyPair& pair) {
  const int n = g.num_vertices();
  std::vector<Rational> out(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    int v = s;
    for (int k = 0; k < n; ++k) v = pair[v];  // now on the cycle
    Rational total = 0;
    int len = 0;
    int w = v;
    do {
      total += g.weight(w, pair[w]);
      w = pair[w];
      ++len;
    } while (w != v);
    out[static_cast<std::size_t>(s)] = total / len;
  }
  return out;
}

/// Minimum cycle mean by exhaustive DFS over simple cycles rooted at their
/// smallest vertex.
inline Rational min_cycle_mean_dfs(const Game& g) {
  const int n = g.num_vertices();
  bool found = false;
  Rational best;
  std::vector<bool> on(static_cast<std::size_t>(n), false);
  std::function<void(int, int, Rational, int)> dfs = [&](int root, int v, Rational sum, int len) {
    for (EdgeId e : g.out_edges(v)) {
      const int w = g.edge(e).to;
      if (w < root) continue;
      const Rational s = sum + g.weight(e);
      if (w == root) {
        const Rational mean = s / (len + 1);
        if (!found || mean < best) best = mean, found = true;
      } else if (!on[static_cast<std::size_t>(w)]) {
        on[static_cast<std::size_t>(w)] = true;
        dfs(root, w, s, len + 1);
        on[static_cast<std::size_t>(w)] = false;
      }
    }
  };
  for (int r = 0; r < n; ++r) {
    on[static_cast<std::size_t>(r)] = true;
    dfs(r, r, Rational(0), 0);
    on[static_cast<std::size_t>(r)] = false;
  }
  return best;
}

inline Rational sup_abs(const std::vector<Rational>& v) {
  Rational m = 0;
  for (const auto& x : v) m = std::max(m, Rational(abs(x)));
  return m;
}

}  // namespace mpg::testing
