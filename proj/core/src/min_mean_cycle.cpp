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

#include "mpg/min_mean_cycle.hpp"

#include <algorithm>
#include <optional>

#include "mpg/error.hpp"

namespace mpg {

namespace {

std::vector<bool> reachable(const Game& g, Vertex s, bool reverse) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::vector<Vertex>> adj(n);
  for (const Edge& e : g.edges()) {
    if (reverse) {
      adj[static_cast<std::size_t>(e.to)].push_back(e.from);
    } else {
      adj[static_cast<std::size_t>(e.from)].push_back(e.to);
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack{s};
  seen[static_cast<std::size_t>(s)] = true;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<Vertex> canonical(std::vector<Vertex> cycle) {
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

}  // namespace

bool is_strongly_connected(const Game& g) {
  if (g.num_vertices() == 0) return true;
  const auto f = reachable(g, 0, false);
  const auto b = reachable(g, 0, true);
  return std::all_of(f.begin(), f.end(), [](bool x) { return x; }) &&
         std::all_of(b.begin(), b.end(), [](bool x) { return x; });
}

Rational cycle_weight(const Game& g, const std::vector<Vertex>& cycle) {
  Rational sum = 0;
  for (std::size_t k = 0; k < cycle.size(); ++k) sum += g.weight(cycle[k], cycle[(k + 1) % cycle.size()]);
  return sum;
}

Rational cycle_mean(const Game& g, const std::vector<Vertex>& cycle) {
  return cycle_weight(g, cycle) / static_cast<long>(cycle.size());
}

MinMeanCycle karp_min_mean_cycle(const Game& g) {
  if (!g.is_one_player(Player::Min)) throw Error(ErrorCode::NotOnePlayer, "every vertex must belong to Min");
  require_valid(g);
  if (!is_strongly_connected(g)) throw Error(ErrorCode::NotStronglyConnected, "graph is not strongly connected");
  const int n = g.num_vertices();
  const auto N = static_cast<std::size_t>(n);
  // d[k][v]: minimum weight of a k-edge walk from vertex 0 to v; parent for recovery.
  std::vector<std::vector<std::optional<Rational>>> d(N + 1, std::vector<std::optional<Rational>>(N));
  std::vector<std::vector<Vertex>> parent(N + 1, std::vector<Vertex>(N, -1));
  d[0][0] = Rational(0);
  for (std::size_t k = 1; k <= N; ++k) {
    for (const Edge& e : g.edges()) {
      const auto& prev = d[k - 1][static_cast<std::size_t>(e.from)];
      if (!prev) continue;
      Rational cand = *prev + e.weight;
      auto& cur = d[k][static_cast<std::size_t>(e.to)];
      if (!cur || cand < *cur) {
        cur = std::move(cand);
        parent[k][static_cast<std::size_t>(e.to)] = e.from;
      }
    }
  }
  std::optional<Rational> best;
  Vertex best_v = -1;
  for (std::size_t v = 0; v < N; ++v) {
    if (!d[N][v]) continue;
    std::optional<Rational> worst;
    for (std::size_t k = 0; k < N; ++k) {
      if (!d[k][v]) continue;
      Rational r = (*d[N][v] - *d[k][v]) / static_cast<long>(N - k);
      if (!worst || r > *worst) worst = std::move(r);
    }
    if (worst && (!best || *worst < *best)) {
      best = worst;
      best_v = static_cast<Vertex>(v);
    }
  }
  // The n-edge walk to best_v repeats a vertex; one of its cycles has mean lambda.
  std::vector<Vertex> walk(N + 1);
  walk[N] = best_v;
  for (std::size_t k = N; k >= 1; --k) walk[k - 1] = parent[k][static_cast<std::size_t>(walk[k])];
  MinMeanCycle out;
  out.lambda = *best;
  std::optional<Rational> found;
  for (std::size_t a = 0; a <= N && !found; ++a) {
    for (std::size_t b = a + 1; b <= N; ++b) {
      if (walk[a] != walk[b]) continue;
      std::vector<Vertex> cyc(walk.begin() + static_cast<std::ptrdiff_t>(a), walk.begin() + static_cast<std::ptrdiff_t>(b));
      if (cycle_mean(g, cyc) == out.lambda) {
        out.cycle = canonical(std::move(cyc));
        found = out.lambda;
        break;
      }
    }
  }
  if (!found) {
    // Fall back on the elementary cycles of the walk's vertices (never expected).
    for (auto& c : elementary_cycles(g)) {
      if (cycle_mean(g, c) == out.lambda) {
        out.cycle = std::move(c);
        break;
      }
    }
  }
  return out;
}

std::vector<std::vector<Vertex>> elementary_cycles(const Game& g, std::size_t limit) {
  const int n = g.num_vertices();
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> path;
  std::vector<bool> on_path(static_cast<std::size_t>(n), false);
  // DFS from each start s over vertices > s; closes a cycle on returning to s.
  for (Vertex s = 0; s < n; ++s) {
    auto dfs = [&](auto&& self, Vertex v) -> void {
      path.push_back(v);
      on_path[static_cast<std::size_t>(v)] = true;
      for (EdgeId e : g.out_edges(v)) {
        const Vertex w = g.edge(e).to;
        if (w == s) {
          out.push_back(path);
          if (out.size() > limit) throw Error(ErrorCode::TooLarge, "too many elementary cycles");
        } else if (w > s && !on_path[static_cast<std::size_t>(w)]) {
          self(self, w);
        }
      }
      on_path[static_cast<std::size_t>(v)] = false;
      path.pop_back();
    };
    dfs(dfs, s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mpg
