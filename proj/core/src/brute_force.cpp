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

#include "mpg/brute_force.hpp"

#include <algorithm>

#include "mpg/ergodic.hpp"
#include "mpg/error.hpp"
#include "mpg/zero_player.hpp"

namespace mpg {

PolicyEnumeration::PolicyEnumeration(const Game& g) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto deg = static_cast<std::uint64_t>(g.out_edges(v).size());
    auto& count = g.owner(v) == Player::Max ? max_count : min_count;
    (g.owner(v) == Player::Max ? max_vertices : min_vertices).push_back(v);
    if (deg != 0 && count > (std::uint64_t{1} << 62) / deg) {
      throw Error(ErrorCode::TooLarge, "policy count overflows");
    }
    count *= deg;
  }
}

PolicyPair PolicyEnumeration::pair(const Game& g, std::uint64_t s, std::uint64_t t) const {
  PolicyPair p;
  p.successor.assign(static_cast<std::size_t>(g.num_vertices()), 0);
  auto fill = [&](const std::vector<Vertex>& vs, std::uint64_t idx) {
    for (Vertex v : vs) {
      const auto out = g.out_edges(v);
      p.successor[static_cast<std::size_t>(v)] = g.edge(out[idx % out.size()]).to;
      idx /= out.size();
    }
  };
  fill(max_vertices, s);
  fill(min_vertices, t);
  return p;
}

std::vector<Rational> pair_payoff(const Game& g, const PolicyPair& pair) {
  const CycleDecomposition cd = cycle_structure(pair.successor);
  std::vector<Rational> mean;
  mean.reserve(cd.cycles.size());
  for (const auto& cycle : cd.cycles) {
    Rational sum = 0;
    for (Vertex c : cycle) sum += g.weight(c, pair[c]);
    mean.emplace_back(sum / static_cast<long>(cycle.size()));
  }
  std::vector<Rational> out;
  out.reserve(pair.successor.size());
  for (int c : cd.cycle_of) out.push_back(mean[static_cast<std::size_t>(c)]);
  return out;
}

bool BruteForceReport::is_optimal(const PolicyPair& p) const {
  return std::binary_search(optimal_pairs.begin(), optimal_pairs.end(), p);
}

namespace {

// Saddle over a payoff table: value per vertex plus the optimal policies of
// each player (those guaranteeing the value from every vertex).
struct Saddle {
  std::vector<Rational> value;
  std::vector<std::uint64_t> max_opt;
  std::vector<std::uint64_t> min_opt;
};

Saddle saddle(const std::vector<Rational>& table, std::uint64_t ns, std::uint64_t nt, std::size_t n) {
  auto at = [&](std::uint64_t s, std::uint64_t t, std::size_t i) -> const Rational& {
    return table[static_cast<std::size_t>((s * nt + t) * n + i)];
  };
  // guarantee of each Max policy (min over tau) and each Min policy (max over sigma)
  std::vector<std::vector<Rational>> lo(ns, std::vector<Rational>(n));
  std::vector<std::vector<Rational>> hi(nt, std::vector<Rational>(n));
  for (std::uint64_t s = 0; s < ns; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      lo[s][i] = at(s, 0, i);
      for (std::uint64_t t = 1; t < nt; ++t) lo[s][i] = std::min<Rational>(lo[s][i], at(s, t, i));
    }
  }
  for (std::uint64_t t = 0; t < nt; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      hi[t][i] = at(0, t, i);
      for (std::uint64_t s = 1; s < ns; ++s) hi[t][i] = std::max<Rational>(hi[t][i], at(s, t, i));
    }
  }
  Saddle out;
  out.value.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational maxmin = lo[0][i];
    for (std::uint64_t s = 1; s < ns; ++s) maxmin = std::max<Rational>(maxmin, lo[s][i]);
    Rational minmax = hi[0][i];
    for (std::uint64_t t = 1; t < nt; ++t) minmax = std::min<Rational>(minmax, hi[t][i]);
    if (maxmin != minmax) {
      throw Error(ErrorCode::DomainError, "max-min differs from min-max at vertex " + std::to_string(i + 1));
    }
    out.value[i] = maxmin;
  }
  for (std::uint64_t s = 0; s < ns; ++s) {
    if (lo[s] == out.value) out.max_opt.push_back(s);
  }
  for (std::uint64_t t = 0; t < nt; ++t) {
    if (hi[t] == out.value) out.min_opt.push_back(t);
  }
  return out;
}

void check_budget(const PolicyEnumeration& en, std::uint64_t budget) {
  if (en.total() > budget) {
    throw Error(ErrorCode::TooLarge, std::to_string(en.total()) + " policy pairs exceed the budget of " +
                                         std::to_string(budget));
  }
}

}  // namespace

BruteForceReport brute_force_solve(const Game& g, std::uint64_t budget) {
  require_valid(g);
  const PolicyEnumeration en(g);
  check_budget(en, budget);
  const auto n = static_cast<std::size_t>(g.num_vertices());
  BruteForceReport rep;
  rep.max_policies = en.max_count;
  rep.min_policies = en.min_count;
  rep.payoff.resize(static_cast<std::size_t>(en.total()) * n);
  for (std::uint64_t s = 0; s < en.max_count; ++s) {
    for (std::uint64_t t = 0; t < en.min_count; ++t) {
      const PolicyPair p = en.pair(g, s, t);
      auto vals = pair_payoff(g, p);
      std::move(vals.begin(), vals.end(), rep.payoff.begin() + static_cast<std::ptrdiff_t>((s * en.min_count + t) * n));
      if (in_xi(g, p) && cone_membership(g, p).inside_weak) rep.bias_induced_pairs.push_back(p);
    }
  }
  Saddle sd = saddle(rep.payoff, en.max_count, en.min_count, n);
  rep.lambda = std::move(sd.value);
  for (auto s : sd.max_opt) {
    for (auto t : sd.min_opt) rep.optimal_pairs.push_back(en.pair(g, s, t));
  }
  std::sort(rep.optimal_pairs.begin(), rep.optimal_pairs.end());
  std::sort(rep.bias_induced_pairs.begin(), rep.bias_induced_pairs.end());
  return rep;
}

DiscountedBruteForce brute_force_discounted(const Game& g, const Rational& gamma, std::uint64_t budget) {
  require_valid(g);
  require_discount(gamma);
  const PolicyEnumeration en(g);
  check_budget(en, budget);
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<Rational> table(static_cast<std::size_t>(en.total()) * n);
  for (std::uint64_t s = 0; s < en.max_count; ++s) {
    for (std::uint64_t t = 0; t < en.min_count; ++t) {
      auto vals = discounted_value_zero_player(g, en.pair(g, s, t), gamma);
      std::move(vals.begin(), vals.end(), table.begin() + static_cast<std::ptrdiff_t>((s * en.min_count + t) * n));
    }
  }
  DiscountedBruteForce out;
  out.values = saddle(table, en.max_count, en.min_count, n).value;

  // Optimal pairs use, at every vertex, an edge attaining the Shapley max/min.
  std::vector<std::vector<Vertex>> choices(n);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::vector<Rational> cand;
    for (EdgeId e : g.out_edges(v)) {
      cand.emplace_back((1 - gamma) * g.weight(e) + gamma * out.values[static_cast<std::size_t>(g.edge(e).to)]);
    }
    const Rational best = g.owner(v) == Player::Max ? *std::max_element(cand.begin(), cand.end())
                                                    : *std::min_element(cand.begin(), cand.end());
    const auto out_edges = g.out_edges(v);
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (cand[k] == best) choices[static_cast<std::size_t>(v)].push_back(g.edge(out_edges[k]).to);
    }
  }
  PolicyPair p;
  p.successor.assign(n, 0);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    for (std::size_t v = 0; v < n; ++v) p.successor[v] = choices[v][idx[v]];
    out.optimal_pairs.push_back(p);
    std::size_t v = 0;
    while (v < n && ++idx[v] == choices[v].size()) idx[v++] = 0;
    if (v == n) break;
  }
  std::sort(out.optimal_pairs.begin(), out.optimal_pairs.end());
  return out;
}

BlackwellEstimate blackwell_threshold_estimate(const Game& g, int t, std::uint64_t budget) {
  if (t < 1) throw Error(ErrorCode::DomainError, "grid resolution must be at least 1");
  std::vector<std::vector<PolicyPair>> sets;
  for (int s = 1; s <= t; ++s) sets.push_back(brute_force_discounted(g, 1 - pow2(-s), budget).optimal_pairs);
  int s = t;
  while (s > 1 && sets[static_cast<std::size_t>(s - 2)] == sets.back()) --s;
  BlackwellEstimate est;
  est.s = s;
  est.gamma = 1 - pow2(-s);
  est.optimal_pairs = sets.back();
  return est;
}

}  // namespace mpg
