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

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpg/rational.hpp"

namespace mpg {

/// Vertex index, 0-based inside the library.
using Vertex = int;
using EdgeId = int;

enum class Player : std::uint8_t { Max, Min };

std::string_view to_string(Player p);

struct Edge {
  Vertex from = 0;
  Vertex to = 0;
  Rational weight;

  bool operator==(const Edge&) const = default;
};

/// Directed weighted graph whose vertices are split between Max and Min.
///
/// A Game is immutable once built; the weight-editing helpers return new games.
/// Construction does not validate: validate_game() reports every violated
/// invariant, and operations that need a legal game call require_valid().
class Game {
 public:
  Game() = default;
  Game(int n, std::vector<Player> owner, std::vector<Edge> edges);

  int num_vertices() const noexcept { return n_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }

  Player owner(Vertex v) const { return owner_[static_cast<std::size_t>(v)]; }
  const std::vector<Player>& owners() const noexcept { return owner_; }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  const Rational& weight(EdgeId e) const { return edges_[static_cast<std::size_t>(e)].weight; }

  /// Out-edges of v ordered by increasing target index.
  std::span<const EdgeId> out_edges(Vertex v) const { return out_[static_cast<std::size_t>(v)]; }

  std::optional<EdgeId> find_edge(Vertex from, Vertex to) const;
  /// Like find_edge but throws Error{DomainError} when the edge is absent.
  EdgeId edge_id(Vertex from, Vertex to) const;
  const Rational& weight(Vertex from, Vertex to) const { return weight(edge_id(from, to)); }

  std::vector<Rational> weights() const;
  Game with_weights(std::vector<Rational> weights) const;
  Game with_weight(EdgeId e, Rational w) const;

  /// True when every vertex has exactly one out-edge, i.e. a single policy pair exists.
  bool is_zero_player() const;
  bool is_one_player(Player p) const;

  bool operator==(const Game& other) const {
    return n_ == other.n_ && owner_ == other.owner_ && edges_ == other.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Player> owner_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
};

/// Same vertices, owners and weighted edge set, ignoring edge order.
bool structurally_equal(const Game& a, const Game& b);

/// One successor per vertex. Entries at Max vertices form sigma, entries at
/// Min vertices form tau.
struct PolicyPair {
  std::vector<Vertex> successor;

  Vertex operator[](Vertex v) const { return successor[static_cast<std::size_t>(v)]; }
  int size() const noexcept { return static_cast<int>(successor.size()); }

  auto operator<=>(const PolicyPair&) const = default;
};

/// Lowest-index successor at every vertex.
PolicyPair default_policy(const Game& g);
bool is_legal(const Game& g, const PolicyPair& pair);
/// Edge ids used by the pair, indexed by vertex.
std::vector<EdgeId> policy_edges(const Game& g, const PolicyPair& pair);
/// Successors restricted to the vertices owned by p, in vertex order.
std::vector<Vertex> restrict_to(const Game& g, const PolicyPair& pair, Player p);

struct Violation {
  enum class Kind { MissingOutEdge, DuplicateEdge, BadIndex, OwnerMismatch };
  Kind kind;
  Vertex vertex = -1;
  Vertex target = -1;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

ValidationReport validate_game(const Game& g);
/// Throws Error{ValidationError} listing the first violation.
void require_valid(const Game& g);

/// Maps every weight r to c*r + a. Throws Error{NonPositiveScale} if c <= 0.
Game scale_shift_weights(const Game& g, const Rational& c, const Rational& a);

}  // namespace mpg
