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

#include <cstddef>
#include <vector>

#include "mpg/game.hpp"

namespace mpg {

struct MinMeanCycle {
  Rational lambda;
  std::vector<Vertex> cycle;  ///< starts at its minimal vertex
};

/// Karp's algorithm on a strongly connected game owned entirely by Min.
/// Errors: NotOnePlayer, NotStronglyConnected.
MinMeanCycle karp_min_mean_cycle(const Game& g);

bool is_strongly_connected(const Game& g);

/// Every elementary cycle, each starting at its minimal vertex, in
/// lexicographic order. Throws Error{TooLarge} past `limit` cycles.
std::vector<std::vector<Vertex>> elementary_cycles(const Game& g, std::size_t limit = 200'000);

Rational cycle_weight(const Game& g, const std::vector<Vertex>& cycle);
Rational cycle_mean(const Game& g, const std::vector<Vertex>& cycle);

}  // namespace mpg
