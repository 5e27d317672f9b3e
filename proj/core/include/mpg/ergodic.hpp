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

#include <optional>
#include <utility>
#include <vector>

#include "mpg/game.hpp"

namespace mpg {

/// A scalar value and a bias vector, candidate solution of
///   lambda + u_i = max/min_{(i,j)} { r_ij + u_j }.
struct ErgodicSolution {
  Rational lambda;
  std::vector<Rational> u;
};

struct ResidualReport {
  std::vector<Rational> residual;  ///< |lambda + u_i - best_i| per vertex
  Rational max_residual;
  bool solves() const { return max_residual == 0; }
};

ResidualReport check_ergodic_equation(const Game& g, const ErgodicSolution& sol);

/// Edge given by its endpoints (0-based).
using EdgeRef = std::pair<Vertex, Vertex>;

/// Certificate that r lies in the open cone of weights for which `pair` is the
/// unique bias-induced pair. The slack of an unused Max edge (i,j) is
/// lambda + u_i - u_j - r_ij and that of an unused Min edge is its negative.
struct ConeCertificate {
  PolicyPair pair;
  bool inside_strict = false;
  bool inside_weak = false;
  /// Minimal slack over unused edges; empty when every edge is used (vacuous).
  std::optional<Rational> margin;
  std::optional<EdgeRef> witness;
  Rational lambda;
  std::vector<Rational> u;  ///< bias normalized to 0 at the cycle's minimal vertex
};

/// Throws Error{NotSingleCycle} when the induced graph has more than one cycle.
ConeCertificate cone_membership(const Game& g, const PolicyPair& pair);

/// Delta = max |r_ij - lambda| / min { |r_ij - lambda + u_j - u_i| : nonzero }.
struct ConditionReport {
  Rational delta;
  Rational lambda;
  std::vector<Rational> u;
  std::optional<EdgeRef> numerator_edge;
  std::optional<EdgeRef> denominator_edge;
  bool in_U = false;
  bool zero_player = false;  ///< delta is the conventional 1
};

/// Requires a strict cone certificate for `pair` (Error{NotCertified}
/// otherwise) unless g is zero-player, where delta := 1.
ConditionReport condition_number(const Game& g, const PolicyPair& pair);

/// lambda + u_i - u_j for an edge unused by a certified pair. Moving r_ij
/// strictly to the pair's side of this value keeps the pair unique.
/// Errors: EdgeUsedByPolicy, NotCertified, DomainError (no such edge).
Rational z_threshold(const Game& g, const PolicyPair& pair, EdgeRef edge);

/// Plug-in values of the probabilistic and conditioning bounds.
struct TheoryBounds {
  Rational blackwell_gamma;   ///< 1 - 1/(6 n^2 Delta)
  Rational robustness_delta;  ///< 1/(4 n (2n+1) m phi)
  double tail_threshold = 0;  ///< (8m/eps)(phi + sqrt(2m/eps))
  Rational approx_delta;      ///< eps/(16 (n+1) m phi)
};

/// Errors: DomainError if n, m < 1 or phi, delta_cond, epsilon are not positive
/// or epsilon > 1.
TheoryBounds theory_bounds(int n, int m, const Rational& phi, const Rational& delta_cond,
                           const Rational& epsilon);
double tail_threshold(int m, double phi, double epsilon);

struct ErgodicityReport {
  bool ergodic = true;
  std::vector<Vertex> max_dominion;  ///< witness D1 when not ergodic
  std::vector<Vertex> min_dominion;  ///< witness D2, disjoint from D1
};

/// Exhaustive search for disjoint nonempty dominions of Max and Min.
/// Throws Error{TooLarge} if n > 16.
ErgodicityReport is_ergodic_bruteforce(const Game& g);

/// Dominion tests on an explicit vertex set.
bool is_dominion(const Game& g, const std::vector<Vertex>& set, Player p);

}  // namespace mpg
