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

#include <numeric>
#include <vector>

#include "mpg/zero_player.hpp"

namespace mpg::detail {

// Closed-form discounted values of a functional graph, generic in the scalar
// type so that the float throughput mode shares the exact code path.
template <class T>
std::vector<T> discounted_values(const std::vector<Vertex>& succ, const std::vector<T>& w,
                                 const T& gamma, const CycleDecomposition& cd) {
  const std::size_t n = succ.size();
  std::vector<T> value(n);
  const T one_minus = T(1) - gamma;
  for (const auto& cycle : cd.cycles) {
    const std::size_t l = cycle.size();
    T acc = T(0);
    T gk = T(1);
    for (std::size_t k = 0; k < l; ++k) {
      acc += gk * w[static_cast<std::size_t>(cycle[k])];
      gk *= gamma;
    }
    // gk == gamma^l
    const auto c0 = static_cast<std::size_t>(cycle[0]);
    value[c0] = one_minus * acc / (T(1) - gk);
    for (std::size_t k = l - 1; k >= 1; --k) {
      const auto v = static_cast<std::size_t>(cycle[k]);
      const auto next = static_cast<std::size_t>(cycle[(k + 1) % l]);
      value[v] = one_minus * w[v] + gamma * value[next];
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cd.entry_length[a] < cd.entry_length[b];
  });
  for (std::size_t v : order) {
    if (cd.entry_length[v] == 0) continue;
    value[v] = one_minus * w[v] + gamma * value[static_cast<std::size_t>(succ[v])];
  }
  return value;
}

}  // namespace mpg::detail
