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

#include <vector>

#include "mpg/game.hpp"

namespace mpg {

/// The subgraph induced by a policy pair: out-degree one everywhere.
struct FunctionalGraph {
  std::vector<Vertex> successor;
  std::vector<Rational> weight;  ///< weight of the edge v -> successor[v]

  int size() const noexcept { return static_cast<int>(successor.size()); }
};

FunctionalGraph functional_graph(const Game& g, const PolicyPair& pair);

struct CycleDecomposition {
  /// Each cycle starts at its minimal vertex and follows successors.
  std::vector<std::vector<Vertex>> cycles;
  std::vector<int> cycle_of;      ///< id of the cycle reached from each vertex
  std::vector<int> entry_length;  ///< steps before the cycle is entered (0 on cycles)
  bool single_cycle = false;
};

CycleDecomposition cycle_structure(const FunctionalGraph& f);
CycleDecomposition cycle_structure(const std::vector<Vertex>& successor);

/// Membership in the set of pairs whose induced graph has exactly one cycle.
bool in_xi(const Game& g, const PolicyPair& pair);

struct MeanBiasSolution {
  std::vector<Rational> lambda;  ///< per-vertex value (cycle mean of the reached cycle)
  std::vector<Rational> u;       ///< per-vertex bias
  std::vector<Vertex> normalization;  ///< one vertex per cycle; u is 0 there for mean_value_and_bias
  bool constant_value = false;
  bool single_cycle = false;  ///< u is canonical only when true

  /// Normalization vertex of the unique cycle (requires single_cycle).
  Vertex k() const { return normalization.front(); }
};

/// Value and bias with u = 0 at the minimal-index vertex of each cycle. On
/// single-cycle graphs this is the unique bias with that normalization; the
/// differences u_l - u_k are path lengths under the weights r - lambda.
MeanBiasSolution mean_value_and_bias(const Game& g, const PolicyPair& pair);

/// First-order coefficient of lambda^(gamma) in (1 - gamma) as gamma -> 1.
/// For a cycle vertex i0 with weights w_0..w_{l-1} read from i0,
///   u*_{i0} = (1/l) * sum_k k * (lambda - w_k),
/// and off-cycle vertices follow u*_i = r_{i,f(i)} - lambda + u*_{f(i)}.
/// No free constant: the result is absolute on each component.
MeanBiasSolution blackwell_bias_zero_player(const Game& g, const PolicyPair& pair);

/// Exact discounted value of the zero-player game; 0 < gamma < 1 or
/// Error{BadDiscount}. The fixed-point residual of the result is exactly zero.
std::vector<Rational> discounted_value_zero_player(const Game& g, const PolicyPair& pair,
                                                   const Rational& gamma);

void require_discount(const Rational& gamma);

}  // namespace mpg
