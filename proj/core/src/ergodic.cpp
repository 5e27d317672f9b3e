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

#include "mpg/ergodic.hpp"

#include <cmath>
#include <cstdint>

#include "mpg/error.hpp"
#include "mpg/zero_player.hpp"

namespace mpg {

ResidualReport check_ergodic_equation(const Game& g, const ErgodicSolution& sol) {
  const int n = g.num_vertices();
  if (static_cast<int>(sol.u.size()) != n) {
    throw Error(ErrorCode::DomainError, "bias vector length does not match the game");
  }
  ResidualReport rep;
  rep.residual.reserve(static_cast<std::size_t>(n));
  rep.max_residual = 0;
  for (Vertex i = 0; i < n; ++i) {
    std::optional<Rational> best;
    const bool is_max = g.owner(i) == Player::Max;
    for (EdgeId e : g.out_edges(i)) {
      Rational cand = g.weight(e) + sol.u[static_cast<std::size_t>(g.edge(e).to)];
      if (!best || (is_max ? cand > *best : cand < *best)) best = std::move(cand);
    }
    Rational r = best ? abs(sol.lambda + sol.u[static_cast<std::size_t>(i)] - *best) : Rational(0);
    if (r > rep.max_residual) rep.max_residual = r;
    rep.residual.push_back(std::move(r));
  }
  return rep;
}

ConeCertificate cone_membership(const Game& g, const PolicyPair& pair) {
  if (!in_xi(g, pair)) {
    throw Error(ErrorCode::NotSingleCycle, "the pair induces more than one cycle");
  }
  const MeanBiasSolution mb = mean_value_and_bias(g, pair);
  ConeCertificate c;
  c.pair = pair;
  c.lambda = mb.lambda.front();
  c.u = mb.u;
  for (const Edge& e : g.edges()) {
    if (pair[e.from] == e.to) continue;
    Rational z = c.lambda + c.u[static_cast<std::size_t>(e.from)] - c.u[static_cast<std::size_t>(e.to)];
    Rational slack = g.owner(e.from) == Player::Max ? Rational(z - e.weight) : Rational(e.weight - z);
    if (!c.margin || slack < *c.margin) {
      c.margin = std::move(slack);
      c.witness = EdgeRef{e.from, e.to};
    }
  }
  c.inside_strict = !c.margin || *c.margin > 0;
  c.inside_weak = !c.margin || *c.margin >= 0;
  return c;
}

ConditionReport condition_number(const Game& g, const PolicyPair& pair) {
  ConditionReport rep;
  if (g.is_zero_player()) {
    const MeanBiasSolution mb = mean_value_and_bias(g, pair);
    rep.delta = 1;
    rep.lambda = mb.lambda.front();
    rep.u = mb.u;
    rep.zero_player = true;
    rep.in_U = mb.single_cycle;
    return rep;
  }
  const ConeCertificate cert = [&] {
    try {
      return cone_membership(g, pair);
    } catch (const Error& e) {
      throw Error(ErrorCode::NotCertified, std::string("no strict cone certificate: ") + e.what());
    }
  }();
  if (!cert.inside_strict) throw Error(ErrorCode::NotCertified, "the pair is not the unique bias-induced pair");
  rep.lambda = cert.lambda;
  rep.u = cert.u;
  rep.in_U = true;

  Rational num = 0;
  std::optional<Rational> den;
  for (const Edge& e : g.edges()) {
    Rational spread = abs(e.weight - rep.lambda);
    if (!rep.numerator_edge || spread > num) {
      num = spread;
      rep.numerator_edge = EdgeRef{e.from, e.to};
    }
    Rational res = abs(e.weight - rep.lambda + rep.u[static_cast<std::size_t>(e.to)] -
                       rep.u[static_cast<std::size_t>(e.from)]);
    if (res != 0 && (!den || res < *den)) {
      den = res;
      rep.denominator_edge = EdgeRef{e.from, e.to};
    }
  }
  // A certified non-zero-player game has an unused edge with positive slack.
  rep.delta = den ? Rational(num / *den) : Rational(0);
  return rep;
}

Rational z_threshold(const Game& g, const PolicyPair& pair, EdgeRef edge) {
  const auto [i, j] = edge;
  if (i < 0 || i >= g.num_vertices() || !g.find_edge(i, j)) {
    throw Error(ErrorCode::DomainError, "no edge (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  }
  if (pair[i] == j) throw Error(ErrorCode::EdgeUsedByPolicy, "the edge is used by the pair");
  ConeCertificate cert;
  try {
    cert = cone_membership(g, pair);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotCertified, e.what());
  }
  if (!cert.inside_strict) throw Error(ErrorCode::NotCertified, "the pair is not certified");
  return cert.lambda + cert.u[static_cast<std::size_t>(i)] - cert.u[static_cast<std::size_t>(j)];
}

double tail_threshold(int m, double phi, double epsilon) {
  return (8.0 * m / epsilon) * (phi + std::sqrt(2.0 * m / epsilon));
}

TheoryBounds theory_bounds(int n, int m, const Rational& phi, const Rational& delta_cond,
                           const Rational& epsilon) {
  if (n < 1 || m < 1) throw Error(ErrorCode::DomainError, "n and m must be at least 1");
  if (phi <= 0 || delta_cond <= 0) throw Error(ErrorCode::DomainError, "phi and Delta must be positive");
  if (epsilon <= 0 || epsilon > 1) throw Error(ErrorCode::DomainError, "epsilon must lie in (0,1]");
  const Rational nn(n);
  const Rational mm(m);
  TheoryBounds b;
  b.blackwell_gamma = 1 - 1 / (6 * nn * nn * delta_cond);
  b.robustness_delta = 1 / (4 * nn * (2 * nn + 1) * mm * phi);
  b.tail_threshold = tail_threshold(m, to_double(phi), to_double(epsilon));
  b.approx_delta = epsilon / (16 * (nn + 1) * mm * phi);
  return b;
}

namespace {

using Mask = std::uint32_t;

struct Masks {
  std::vector<Mask> out;
  Mask max_vertices = 0;
};

Masks masks_of(const Game& g) {
  Masks mk;
  mk.out.assign(static_cast<std::size_t>(g.num_vertices()), 0);
  for (const Edge& e : g.edges()) mk.out[static_cast<std::size_t>(e.from)] |= Mask{1} << e.to;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.owner(v) == Player::Max) mk.max_vertices |= Mask{1} << v;
  }
  return mk;
}

// The owner of a dominion needs one edge into the set; the opponent must have
// all edges inside.
bool dominion_mask(const Masks& mk, int n, Mask set, Player p) {
  for (int v = 0; v < n; ++v) {
    if (!(set >> v & 1U)) continue;
    const bool own = ((mk.max_vertices >> v & 1U) != 0) == (p == Player::Max);
    const Mask out = mk.out[static_cast<std::size_t>(v)];
    if (own ? (out & set) == 0 : (out & ~set) != 0) return false;
  }
  return true;
}

// Largest Max dominion inside `set` by greatest-fixpoint deletion.
Mask largest_max_dominion(const Masks& mk, int n, Mask set) {
  bool changed = true;
  while (changed && set != 0) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!(set >> v & 1U)) continue;
      const Mask out = mk.out[static_cast<std::size_t>(v)];
      const bool is_max = (mk.max_vertices >> v & 1U) != 0;
      if (is_max ? (out & set) == 0 : (out & ~set) != 0) {
        set &= ~(Mask{1} << v);
        changed = true;
      }
    }
  }
  return set;
}

std::vector<Vertex> to_vertices(Mask m, int n) {
  std::vector<Vertex> vs;
  for (int v = 0; v < n; ++v) {
    if (m >> v & 1U) vs.push_back(v);
  }
  return vs;
}

}  // namespace

bool is_dominion(const Game& g, const std::vector<Vertex>& set, Player p) {
  if (g.num_vertices() > 32) throw Error(ErrorCode::TooLarge, "dominion test supports at most 32 vertices");
  Mask s = 0;
  for (Vertex v : set) s |= Mask{1} << v;
  return s != 0 && dominion_mask(masks_of(g), g.num_vertices(), s, p);
}

ErgodicityReport is_ergodic_bruteforce(const Game& g) {
  const int n = g.num_vertices();
  if (n > 16) throw Error(ErrorCode::TooLarge, "ergodicity check supports at most 16 vertices");
  const Masks mk = masks_of(g);
  const Mask all = (Mask{1} << n) - 1;
  ErgodicityReport rep;
  // Descending masks try large Min candidates first.
  for (Mask d2 = all; d2 != 0; --d2) {
    if (!dominion_mask(mk, n, d2, Player::Min)) continue;
    const Mask d1 = largest_max_dominion(mk, n, all & ~d2);
    if (d1 != 0) {
      rep.ergodic = false;
      rep.max_dominion = to_vertices(d1, n);
      rep.min_dominion = to_vertices(d2, n);
      return rep;
    }
  }
  return rep;
}

}  // namespace mpg
