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

#include "mpg/game.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "mpg/error.hpp"

namespace mpg {

std::string_view to_string(Player p) {
  return p == Player::Max ? "max" : "min";
}

Game::Game(int n, std::vector<Player> owner, std::vector<Edge> edges)
    : n_(n), owner_(std::move(owner)), edges_(std::move(edges)) {
  out_.resize(static_cast<std::size_t>(std::max(n_, 0)));
  // gmpxx leaves q(a, b) unreduced; exact comparisons need canonical form.
  for (auto& ed : edges_) ed.weight.canonicalize();
  for (EdgeId e = 0; e < num_edges(); ++e) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    if (ed.from >= 0 && ed.from < n_) out_[static_cast<std::size_t>(ed.from)].push_back(e);
  }
  for (auto& list : out_) {
    std::stable_sort(list.begin(), list.end(),
                     [this](EdgeId a, EdgeId b) { return edge(a).to < edge(b).to; });
  }
}

std::optional<EdgeId> Game::find_edge(Vertex from, Vertex to) const {
  if (from < 0 || from >= n_) return std::nullopt;
  const auto& list = out_[static_cast<std::size_t>(from)];
  auto it = std::lower_bound(list.begin(), list.end(), to,
                             [this](EdgeId e, Vertex t) { return edge(e).to < t; });
  if (it != list.end() && edge(*it).to == to) return *it;
  return std::nullopt;
}

EdgeId Game::edge_id(Vertex from, Vertex to) const {
  auto e = find_edge(from, to);
  if (!e) {
    throw Error(ErrorCode::DomainError,
                "no edge (" + std::to_string(from + 1) + "," + std::to_string(to + 1) + ")");
  }
  return *e;
}

std::vector<Rational> Game::weights() const {
  std::vector<Rational> w;
  w.reserve(edges_.size());
  for (const auto& e : edges_) w.push_back(e.weight);
  return w;
}

Game Game::with_weights(std::vector<Rational> weights) const {
  if (weights.size() != edges_.size()) {
    throw Error(ErrorCode::DomainError, "weight vector length differs from edge count");
  }
  Game out = *this;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    out.edges_[i].weight = std::move(weights[i]);
    out.edges_[i].weight.canonicalize();
  }
  return out;
}

Game Game::with_weight(EdgeId e, Rational w) const {
  Game out = *this;
  out.edges_.at(static_cast<std::size_t>(e)).weight = std::move(w);
  out.edges_[static_cast<std::size_t>(e)].weight.canonicalize();
  return out;
}

bool Game::is_zero_player() const {
  return std::all_of(out_.begin(), out_.end(), [](const auto& l) { return l.size() == 1; });
}

bool Game::is_one_player(Player p) const {
  return std::all_of(owner_.begin(), owner_.end(), [p](Player q) { return q == p; });
}

bool structurally_equal(const Game& a, const Game& b) {
  if (a.num_vertices() != b.num_vertices() || a.owners() != b.owners() ||
      a.num_edges() != b.num_edges()) {
    return false;
  }
  auto key = [](const Edge& e) { return std::make_tuple(e.from, e.to); };
  auto sorted = [&](const Game& g) {
    std::vector<Edge> es = g.edges();
    std::sort(es.begin(), es.end(), [&](const Edge& x, const Edge& y) { return key(x) < key(y); });
    return es;
  };
  return sorted(a) == sorted(b);
}

PolicyPair default_policy(const Game& g) {
  PolicyPair p;
  p.successor.resize(static_cast<std::size_t>(g.num_vertices()), -1);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto out = g.out_edges(v);
    if (!out.empty()) p.successor[static_cast<std::size_t>(v)] = g.edge(out.front()).to;
  }
  return p;
}

bool is_legal(const Game& g, const PolicyPair& pair) {
  if (pair.size() != g.num_vertices()) return false;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!g.find_edge(v, pair[v])) return false;
  }
  return true;
}

std::vector<EdgeId> policy_edges(const Game& g, const PolicyPair& pair) {
  std::vector<EdgeId> ids(static_cast<std::size_t>(g.num_vertices()));
  for (Vertex v = 0; v < g.num_vertices(); ++v) ids[static_cast<std::size_t>(v)] = g.edge_id(v, pair[v]);
  return ids;
}

std::vector<Vertex> restrict_to(const Game& g, const PolicyPair& pair, Player p) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.owner(v) == p) out.push_back(pair[v]);
  }
  return out;
}

ValidationReport validate_game(const Game& g) {
  ValidationReport report;
  auto add = [&](Violation::Kind kind, Vertex v, Vertex t, std::string msg) {
    report.violations.push_back({kind, v, t, std::move(msg)});
  };
  const int n = g.num_vertices();
  if (n < 1) add(Violation::Kind::BadIndex, -1, -1, "game has no vertices");
  if (static_cast<int>(g.owners().size()) != n) {
    add(Violation::Kind::OwnerMismatch, -1, -1,
        "owner array has " + std::to_string(g.owners().size()) + " entries for " +
            std::to_string(n) + " vertices");
  }
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const auto& e : g.edges()) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
      add(Violation::Kind::BadIndex, e.from, e.to,
          "edge (" + std::to_string(e.from + 1) + "," + std::to_string(e.to + 1) +
              ") has an out-of-range endpoint");
      continue;
    }
    if (!seen.insert({e.from, e.to}).second) {
      add(Violation::Kind::DuplicateEdge, e.from, e.to,
          "duplicate edge (" + std::to_string(e.from + 1) + "," + std::to_string(e.to + 1) + ")");
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (g.out_edges(v).empty()) {
      add(Violation::Kind::MissingOutEdge, v, -1,
          "vertex " + std::to_string(v + 1) + " has no outgoing edge");
    }
  }
  report.ok = report.violations.empty();
  return report;
}

void require_valid(const Game& g) {
  auto report = validate_game(g);
  if (!report.ok) throw Error(ErrorCode::ValidationError, report.violations.front().message);
}

Game scale_shift_weights(const Game& g, const Rational& c, const Rational& a) {
  if (c <= 0) throw Error(ErrorCode::NonPositiveScale, "scale must be positive, got " + to_string(c));
  std::vector<Rational> w = g.weights();
  for (auto& x : w) x = c * x + a;
  return g.with_weights(std::move(w));
}

}  // namespace mpg
