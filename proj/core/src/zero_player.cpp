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

#include "mpg/zero_player.hpp"

#include <algorithm>
#include <numeric>

#include "mpg/detail/discounted.hpp"
#include "mpg/error.hpp"

namespace mpg {

FunctionalGraph functional_graph(const Game& g, const PolicyPair& pair) {
  if (!is_legal(g, pair)) throw Error(ErrorCode::DomainError, "policy pair is not legal for the game");
  FunctionalGraph f;
  f.successor = pair.successor;
  f.weight.reserve(pair.successor.size());
  for (Vertex v = 0; v < g.num_vertices(); ++v) f.weight.push_back(g.weight(v, pair[v]));
  return f;
}

CycleDecomposition cycle_structure(const FunctionalGraph& f) { return cycle_structure(f.successor); }

CycleDecomposition cycle_structure(const std::vector<Vertex>& succ) {
  const int n = static_cast<int>(succ.size());
  CycleDecomposition cd;
  cd.cycle_of.assign(succ.size(), -1);
  cd.entry_length.assign(succ.size(), -1);
  std::vector<int> stamp(succ.size(), -1);
  std::vector<Vertex> walk;

  for (Vertex start = 0; start < n; ++start) {
    if (stamp[static_cast<std::size_t>(start)] != -1) continue;
    walk.clear();
    Vertex v = start;
    while (stamp[static_cast<std::size_t>(v)] == -1) {
      stamp[static_cast<std::size_t>(v)] = start;
      walk.push_back(v);
      v = succ[static_cast<std::size_t>(v)];
    }
    std::size_t tail_end = walk.size();
    if (stamp[static_cast<std::size_t>(v)] == start && cd.cycle_of[static_cast<std::size_t>(v)] == -1) {
      // v closes a new cycle inside this walk
      auto pos = static_cast<std::size_t>(std::find(walk.begin(), walk.end(), v) - walk.begin());
      std::vector<Vertex> cycle(walk.begin() + static_cast<std::ptrdiff_t>(pos), walk.end());
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      const int id = static_cast<int>(cd.cycles.size());
      for (Vertex c : cycle) {
        cd.cycle_of[static_cast<std::size_t>(c)] = id;
        cd.entry_length[static_cast<std::size_t>(c)] = 0;
      }
      cd.cycles.push_back(std::move(cycle));
      tail_end = pos;
    }
    for (std::size_t i = tail_end; i-- > 0;) {
      const auto w = static_cast<std::size_t>(walk[i]);
      const auto next = static_cast<std::size_t>(succ[w]);
      cd.cycle_of[w] = cd.cycle_of[next];
      cd.entry_length[w] = cd.entry_length[next] + 1;
    }
  }
  // Order cycles by their minimal vertex so ids do not depend on discovery order.
  std::vector<int> order(cd.cycles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return cd.cycles[static_cast<std::size_t>(a)][0] < cd.cycles[static_cast<std::size_t>(b)][0]; });
  std::vector<int> rename(order.size());
  std::vector<std::vector<Vertex>> sorted;
  sorted.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    rename[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    sorted.push_back(std::move(cd.cycles[static_cast<std::size_t>(order[i])]));
  }
  cd.cycles = std::move(sorted);
  for (int& c : cd.cycle_of) c = rename[static_cast<std::size_t>(c)];
  cd.single_cycle = cd.cycles.size() == 1;
  return cd;
}

bool in_xi(const Game& g, const PolicyPair& pair) {
  (void)g;
  return cycle_structure(pair.successor).single_cycle;
}

namespace {

std::vector<std::size_t> by_entry_length(const CycleDecomposition& cd) {
  std::vector<std::size_t> order(cd.entry_length.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cd.entry_length[a] < cd.entry_length[b]; });
  return order;
}

// Shared skeleton: per-cycle means, then `seed` fixes u on cycle vertex c0 and
// the rest follows u_i = r_i - lambda + u_{f(i)}.
template <class Seed>
MeanBiasSolution solve_components(const FunctionalGraph& f, Seed seed) {
  const CycleDecomposition cd = cycle_structure(f);
  const std::size_t n = f.successor.size();
  MeanBiasSolution s;
  s.lambda.assign(n, Rational(0));
  s.u.assign(n, Rational(0));
  s.single_cycle = cd.single_cycle;

  std::vector<Rational> cycle_mean;
  for (const auto& cycle : cd.cycles) {
    Rational sum = 0;
    for (Vertex c : cycle) sum += f.weight[static_cast<std::size_t>(c)];
    Rational mean = sum / static_cast<long>(cycle.size());
    mean.canonicalize();
    const std::size_t l = cycle.size();
    const auto c0 = static_cast<std::size_t>(cycle[0]);
    s.u[c0] = seed(cycle, mean);
    for (std::size_t k = l - 1; k >= 1; --k) {
      const auto v = static_cast<std::size_t>(cycle[k]);
      const auto next = static_cast<std::size_t>(cycle[(k + 1) % l]);
      s.u[v] = f.weight[v] - mean + s.u[next];
    }
    for (Vertex c : cycle) s.lambda[static_cast<std::size_t>(c)] = mean;
    s.normalization.push_back(cycle[0]);
    cycle_mean.push_back(std::move(mean));
  }
  for (std::size_t v : by_entry_length(cd)) {
    if (cd.entry_length[v] == 0) continue;
    const auto next = static_cast<std::size_t>(f.successor[v]);
    s.lambda[v] = s.lambda[next];
    s.u[v] = f.weight[v] - s.lambda[v] + s.u[next];
  }
  s.constant_value = std::all_of(cycle_mean.begin(), cycle_mean.end(),
                                 [&](const Rational& q) { return q == cycle_mean.front(); });
  return s;
}

}  // namespace

MeanBiasSolution mean_value_and_bias(const Game& g, const PolicyPair& pair) {
  return solve_components(functional_graph(g, pair),
                          [](const std::vector<Vertex>&, const Rational&) { return Rational(0); });
}

MeanBiasSolution blackwell_bias_zero_player(const Game& g, const PolicyPair& pair) {
  const FunctionalGraph f = functional_graph(g, pair);
  return solve_components(f, [&](const std::vector<Vertex>& cycle, const Rational& mean) {
    Rational acc = 0;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      acc += static_cast<long>(k) * (mean - f.weight[static_cast<std::size_t>(cycle[k])]);
    }
    Rational r = acc / static_cast<long>(cycle.size());
    r.canonicalize();
    return r;
  });
}

void require_discount(const Rational& gamma) {
  if (gamma <= 0 || gamma >= 1) {
    throw Error(ErrorCode::BadDiscount, "discount factor must lie in (0,1), got " + to_string(gamma));
  }
}

std::vector<Rational> discounted_value_zero_player(const Game& g, const PolicyPair& pair,
                                                   const Rational& gamma) {
  require_discount(gamma);
  const FunctionalGraph f = functional_graph(g, pair);
  auto values = detail::discounted_values(f.successor, f.weight, gamma, cycle_structure(f));
  for (auto& v : values) v.canonicalize();
  return values;
}

}  // namespace mpg
