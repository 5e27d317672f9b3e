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

#include <cstdint>
#include <vector>

#include "mpg/game.hpp"

namespace mpg {

/// Exhaustive enumeration of positional policies. Max policies and Min
/// policies are numbered in mixed radix over each player's out-edge lists,
/// the lowest-numbered vertex varying fastest.
struct PolicyEnumeration {
  std::vector<Vertex> max_vertices;
  std::vector<Vertex> min_vertices;
  std::uint64_t max_count = 1;
  std::uint64_t min_count = 1;

  explicit PolicyEnumeration(const Game& g);
  PolicyPair pair(const Game& g, std::uint64_t s, std::uint64_t t) const;
  std::uint64_t total() const { return max_count * min_count; }
};

/// Payoff of the play from each vertex: the mean weight of the cycle reached.
std::vector<Rational> pair_payoff(const Game& g, const PolicyPair& pair);

struct BruteForceReport {
  std::vector<Rational> lambda;
  std::vector<PolicyPair> optimal_pairs;       ///< saddle-verified, sorted
  std::vector<PolicyPair> bias_induced_pairs;  ///< weak cone members of Xi, sorted
  std::uint64_t max_policies = 0;
  std::uint64_t min_policies = 0;
  /// payoff[(s * min_policies + t) * n + i] = g_i(sigma_s, tau_t)
  std::vector<Rational> payoff;

  bool is_optimal(const PolicyPair& p) const;
  const Rational& g(std::uint64_t s, std::uint64_t t, Vertex i) const {
    return payoff[static_cast<std::size_t>((s * min_policies + t) * lambda.size() + static_cast<std::size_t>(i))];
  }
};

inline constexpr std::uint64_t kBruteForceBudget = 1'000'000;

/// Throws Error{TooLarge} when the number of pairs exceeds `budget`.
BruteForceReport brute_force_solve(const Game& g, std::uint64_t budget = kBruteForceBudget);

struct DiscountedBruteForce {
  std::vector<Rational> values;
  std::vector<PolicyPair> optimal_pairs;  ///< pairs attaining every Shapley max/min, sorted
};

/// Errors: TooLarge, BadDiscount.
DiscountedBruteForce brute_force_discounted(const Game& g, const Rational& gamma,
                                            std::uint64_t budget = kBruteForceBudget);

struct BlackwellEstimate {
  int s = 1;                ///< grid index of the estimate
  Rational gamma;           ///< 1 - 2^-s
  std::vector<PolicyPair> optimal_pairs;  ///< the stable optimal set
};

/// Smallest s <= t such that the discounted optimal-pair set is the same at
/// every grid point 1 - 2^-s' with s <= s' <= t. An estimate, not a certificate.
BlackwellEstimate blackwell_threshold_estimate(const Game& g, int t, std::uint64_t budget = kBruteForceBudget);

}  // namespace mpg
