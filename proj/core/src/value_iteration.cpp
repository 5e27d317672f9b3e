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

#include "mpg/value_iteration.hpp"

#include <algorithm>
#include <cmath>

#include "mpg/error.hpp"

namespace mpg {

ValueIterationResult value_iteration_discounted(const Game& g, double gamma, double tol) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error(ErrorCode::BadDiscount, "discount factor must lie in (0,1)");
  if (!(tol > 0.0)) throw Error(ErrorCode::DomainError, "tolerance must be positive");
  require_valid(g);
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(g.num_edges()));
  for (const Edge& e : g.edges()) w.push_back(to_double(e.weight));

  ValueIterationResult res;
  res.value.assign(n, 0.0);
  std::vector<double> next(n);
  const double stop = tol * (1.0 - gamma);
  while (true) {
    double diff = 0.0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      const bool is_max = g.owner(v) == Player::Max;
      double best = is_max ? -INFINITY : INFINITY;
      for (EdgeId e : g.out_edges(v)) {
        const double c = (1.0 - gamma) * w[static_cast<std::size_t>(e)] +
                         gamma * res.value[static_cast<std::size_t>(g.edge(e).to)];
        best = is_max ? std::max(best, c) : std::min(best, c);
      }
      next[static_cast<std::size_t>(v)] = best;
      diff = std::max(diff, std::abs(best - res.value[static_cast<std::size_t>(v)]));
    }
    res.value.swap(next);
    ++res.iterations;
    if (diff <= stop) break;
  }
  return res;
}

}  // namespace mpg
