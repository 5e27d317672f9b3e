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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "json.hpp"
#include "mpg/brute_force.hpp"
#include "mpg/ergodic.hpp"
#include "mpg/error.hpp"
#include "mpg/fixtures.hpp"
#include "mpg/policy_iteration.hpp"
#include "mpg/random_instances.hpp"
#include "mpg/zero_player.hpp"
#include "test_support.hpp"

using namespace mpg;
using mpg::testing::GameBuilder;
using mpg::testing::pair1;
using mpg::testing::Q;

namespace {

const PolicyPair kBlackwellPair = pair1({3, 1, 3});

std::vector<Rational> R(std::initializer_list<const char*> xs) {
  std::vector<Rational> v;
  for (auto x : xs) v.push_back(Q(x));
  return v;
}

/// Gaussian-perturbed bipartite games as in the experiments.
Game smoothed_bipartite(std::uint64_t seed, int n_max = 3, int n_min = 3, double sigma = 0.2) {
  DistributionSpec d = DistributionSpec::gaussian(0, sigma);
  d.mean_mode = DistributionSpec::MeanMode::RandomUniform;
  d.mean_seed = seed;
  return sample_weights(gen_graph(GraphSpec::complete_bipartite(n_max, n_min), seed), d, seed + 1);
}

bool shapley_residual_zero(const Game& g, const PolicyPair& pair, const Rational& gamma) {
  const auto v = discounted_value_zero_player(g, pair, gamma);
  for (Vertex i = 0; i < g.num_vertices(); ++i) {
    std::optional<Rational> best;
    for (EdgeId e : g.out_edges(i)) {
      const Rational c = (1 - gamma) * g.weight(e) + gamma * v[static_cast<std::size_t>(g.edge(e).to)];
      if (!best || (g.owner(i) == Player::Max ? c > *best : c < *best)) best = c;
    }
    if (*best != v[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

}  // namespace

TEST(SwitchPlayer, OptimalPairUnchanged) {
  const Game g = paper_fixture("blackwell");
  EXPECT_EQ(switch_player(g, kBlackwellPair, Q("1/2"), Player::Min), kBlackwellPair);
}

TEST(SwitchPlayer, EmergingPoliciesMinSwitch) {
  const Game g = paper_fixture("emerging_policies", {.eps = 0});
  const PolicyPair start = pair1({3, 2, 2});
  // candidates at vertex 1: (1-g)(-10) + g*0 = -5 versus 0 + g*0 = 0
  const auto lam = discounted_value_zero_player(g, start, Q("1/2"));
  EXPECT_EQ(Q("1/2") * -10 + Q("1/2") * lam[1], -5);
  EXPECT_EQ(Q("1/2") * 0 + Q("1/2") * lam[2], 0);
  const PolicyPair next = switch_player(g, start, Q("1/2"), Player::Min);
  EXPECT_EQ(next, pair1({2, 2, 2}));
}

// From tau = (1->2, 2->2, 3->1) at gamma = 1/2 the values are (1/2, 0, 11/4).
// Vertex 1 compares 1/2 (edge to 2) with 7/8 (edge to 3) and stays; vertex 3
// compares 11/4, 3/2 and 11/8 and takes its loop. Only the next call moves
// vertex 1 onto (1,3).
TEST(SwitchPlayer, BlackwellMovesVertexOne) {
  const Game g = paper_fixture("blackwell");
  const PolicyPair start = pair1({2, 2, 1});
  EXPECT_EQ(discounted_value_zero_player(g, start, Q("1/2")), R({"1/2", "0", "11/4"}));
  const PolicyPair first = switch_player(g, start, Q("1/2"), Player::Min);
  EXPECT_EQ(first, pair1({2, 2, 3}));
  const PolicyPair second = switch_player(g, first, Q("1/2"), Player::Min);
  EXPECT_EQ(second[0], 2);
}

TEST(SwitchPlayer, OnlyTouchesOnePlayer) {
  const Game g = paper_fixture("emerging_policies", {.eps = 0});
  const PolicyPair start = pair1({3, 1, 2});
  const PolicyPair next = switch_player(g, start, Q("1/2"), Player::Max);
  EXPECT_EQ(next[0], start[0]);
  EXPECT_EQ(next[2], start[2]);
  EXPECT_THROW(switch_player(g, start, Q("1"), Player::Max), Error);
}

TEST(DiscountedPI, Blackwell) {
  const Game g = paper_fixture("blackwell");
  const auto r = discounted_pi(g, default_policy(g), Q("1/2"));
  EXPECT_EQ(r.pair, kBlackwellPair);
  EXPECT_EQ(r.values, R({"-1/2", "-1/4", "0"}));
  EXPECT_TRUE(shapley_residual_zero(g, r.pair, Q("1/2")));
}

TEST(DiscountedPI, ZeroPlayer) {
  const Game g = GameBuilder{2, {Player::Max, Player::Min}, {}}.add(1, 2, 2).add(2, 1, 4).build();
  const auto r = discounted_pi(g, default_policy(g), Q("1/2"));
  EXPECT_EQ(r.pair, default_policy(g));
  EXPECT_EQ(r.trace.total_switches, 0);
  EXPECT_EQ(r.values, discounted_value_zero_player(g, r.pair, Q("1/2")));
}

TEST(DiscountedPI, MatchesBruteForce) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const Game g = mpg::testing::random_bipartite(rng, 3, 3, 20);
    const Rational gamma = trial % 2 ? Q("1/2") : Q("7/8");
    const auto r = discounted_pi(g, default_policy(g), gamma);
    const auto bf = brute_force_discounted(g, gamma);
    EXPECT_EQ(r.values, bf.values);
    EXPECT_TRUE(std::binary_search(bf.optimal_pairs.begin(), bf.optimal_pairs.end(), r.pair));
  }
}

TEST(DiscountedPI, MinGuaranteesAreMonotone) {
  std::mt19937_64 rng(32);
  SolverConfig cfg;
  cfg.record_min_guarantees = true;
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Game g = mpg::testing::random_bipartite(rng, 3, 4, 50);
    const auto r = discounted_pi(g, default_policy(g), Q("15/16"), cfg);
    for (const auto& ph : r.trace.phases) {
      for (std::size_t k = 1; k < ph.min_guarantees.size(); ++k) {
        const auto& a = ph.min_guarantees[k - 1];
        const auto& b = ph.min_guarantees[k];
        bool strict = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
          EXPECT_LE(b[i], a[i]);
          strict = strict || b[i] < a[i];
        }
        EXPECT_TRUE(strict);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(DiscountedPI, SwitchCapNeverHit) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const Game g = mpg::testing::random_bipartite(rng, 4, 4, 100);
    for (const Rational& gamma : {Q("1/2"), Q("31/32"), Q("1023/1024")}) {
      const auto r = discounted_pi(g, default_policy(g), gamma);
      EXPECT_LE(static_cast<double>(r.trace.total_switches), discounted_switch_cap(g.num_edges(), gamma));
    }
  }
}

TEST(DiscountedPI, CapHitCarriesTrace) {
  std::mt19937_64 rng(34);
  const Game g = mpg::testing::random_bipartite(rng, 4, 4, 100);
  SolverConfig cfg;
  cfg.max_switches = 0;
  PolicyPair start = default_policy(g);
  if (discounted_pi(g, start, Q("1/2")).trace.total_switches == 0) GTEST_SKIP() << "no switch needed";
  try {
    discounted_pi(g, start, Q("1/2"), cfg);
    FAIL() << "expected CapHitError";
  } catch (const CapHitError& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapHit);
    EXPECT_EQ(e.trace().halt, HaltCause::CapHit);
  }
}

TEST(SolveMpg, NonConvex) {
  const auto r = solve_mpg(paper_fixture("non_convex", {.x = 8}));
  EXPECT_EQ(r.lambda, Q("5/3"));
  EXPECT_EQ(r.trace.halt, HaltCause::ErgodicSolved);
}

TEST(SolveMpg, NonConvexFormulaAcrossX) {
  for (int num = -8; num <= 64; num += 3) {
    const Rational x = mpg::testing::frac(num, 4);
    const Rational expect = std::min(Rational(x / 4), std::max(Rational(1), Rational(x / 3 - 1)));
    const auto r = solve_mpg(paper_fixture("non_convex", {.x = x}));
    EXPECT_EQ(r.lambda, expect) << "x=" << to_string(x);
  }
}

TEST(SolveMpg, Blackwell) {
  const auto r = solve_mpg(paper_fixture("blackwell"));
  EXPECT_EQ(r.lambda, 0);
  EXPECT_EQ(r.pair, kBlackwellPair);
  EXPECT_EQ(r.u, R({"-1", "-1", "0"}));
  EXPECT_FALSE(r.certificate.has_value());  // weak cone only
}

TEST(SolveMpg, RandomAgainstBruteForce) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 60; ++trial) {
    const Game g = trial % 2 ? mpg::testing::random_bipartite(rng, 2, 3, 4) : smoothed_bipartite(trial);
    const auto r = solve_mpg(g);
    const auto bf = brute_force_solve(g);
    for (const auto& l : bf.lambda) EXPECT_EQ(l, r.lambda);
    EXPECT_TRUE(bf.is_optimal(r.pair));
    EXPECT_TRUE(check_ergodic_equation(g, {r.lambda, r.u}).solves());
    EXPECT_TRUE(cone_membership(g, r.pair).inside_weak);
    EXPECT_TRUE(std::binary_search(bf.bias_induced_pairs.begin(), bf.bias_induced_pairs.end(), r.pair));
  }
}

// g_i(sigma, tau*) <= lambda_i <= g_i(sigma*, tau) for every opposing policy.
TEST(SolveMpg, SaddleInequalities) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 30; ++trial) {
    const Game g = mpg::testing::random_bipartite(rng, 3, 3, 30);
    const auto r = solve_mpg(g);
    const PolicyEnumeration en(g);
    for (std::uint64_t s = 0; s < en.max_count; ++s) {
      PolicyPair p = en.pair(g, s, 0);
      for (Vertex v : en.min_vertices) p.successor[static_cast<std::size_t>(v)] = r.pair[v];
      for (const auto& x : mpg::testing::walk_payoff(g, p)) EXPECT_LE(x, r.lambda);
    }
    for (std::uint64_t t = 0; t < en.min_count; ++t) {
      PolicyPair p = en.pair(g, 0, t);
      for (Vertex v : en.max_vertices) p.successor[static_cast<std::size_t>(v)] = r.pair[v];
      for (const auto& x : mpg::testing::walk_payoff(g, p)) EXPECT_GE(x, r.lambda);
    }
  }
}

TEST(SolveMpg, ZwickPatersonAtVisitedDiscounts) {
  for (int trial = 0; trial < 40; ++trial) {
    const Game g = smoothed_bipartite(100 + trial);
    const auto r = solve_mpg(g);
    const Rational rmax = mpg::testing::sup_abs(g.weights());
    for (const auto& ph : r.trace.phases) {
      for (const auto& v : ph.value) {
        EXPECT_LE(abs(v - r.lambda), 2 * g.num_vertices() * (1 - ph.gamma) * rmax);
      }
    }
  }
}

TEST(SolveMpg, ConditionedDiscountReturnsCertifiedPair) {
  int certified = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Game g = smoothed_bipartite(200 + trial, 2, 3);
    const auto r = solve_mpg(g);
    if (!r.certificate) continue;
    ++certified;
    const auto cond = condition_number(g, r.pair);
    const int n = g.num_vertices();
    const Rational gamma = 1 - 1 / (12 * n * n * std::max(Rational(1), cond.delta));
    EXPECT_EQ(discounted_pi(g, default_policy(g), gamma).pair, r.pair);
    EXPECT_EQ(brute_force_discounted(g, gamma).optimal_pairs, std::vector<PolicyPair>{r.pair});
  }
  EXPECT_GT(certified, 30);
}

TEST(SolveMpg, SwitchSequenceInvariantUnderScaleShift) {
  SolverConfig cfg;
  cfg.trace = TraceLevel::Events;
  for (int trial = 0; trial < 20; ++trial) {
    const Game g = smoothed_bipartite(300 + trial);
    const auto base = solve_mpg(g, cfg);
    for (const auto& [c, a] : std::vector<std::pair<Rational, Rational>>{{2, 0}, {1, 5}, {3, -7}}) {
      const auto moved = solve_mpg(scale_shift_weights(g, c, a), cfg);
      EXPECT_EQ(moved.pair, base.pair);
      EXPECT_EQ(moved.lambda, c * base.lambda + a);
      ASSERT_EQ(moved.trace.events.size(), base.trace.events.size());
      for (std::size_t k = 0; k < base.trace.events.size(); ++k) {
        EXPECT_EQ(moved.trace.events[k].vertex, base.trace.events[k].vertex);
        EXPECT_EQ(moved.trace.events[k].to, base.trace.events[k].to);
        EXPECT_EQ(moved.trace.events[k].phase, base.trace.events[k].phase);
      }
    }
  }
}

TEST(SolveMpg, FloatModeAgreesWithExact) {
  SolverConfig fcfg;
  fcfg.mode = ArithmeticMode::Float;
  for (int trial = 0; trial < 30; ++trial) {
    const Game g = smoothed_bipartite(400 + trial);
    const auto exact = solve_mpg(g);
    const auto fl = solve_mpg(g, fcfg);
    EXPECT_EQ(fl.lambda, exact.lambda);
    EXPECT_TRUE(check_ergodic_equation(g, {fl.lambda, fl.u}).solves());
  }
}

TEST(SolveMpg, CustomInitialPair) {
  SolverConfig cfg;
  cfg.initial = pair1({2, 2, 2});
  const auto r = solve_mpg(paper_fixture("blackwell"), cfg);
  EXPECT_EQ(r.lambda, 0);
}

TEST(SolveMpg, TraceExportIsJsonLines) {
  SolverConfig cfg;
  cfg.trace = TraceLevel::Events;
  const auto r = solve_mpg(smoothed_bipartite(7), cfg);
  std::istringstream in(trace_to_jsonl(r.trace));
  std::string line;
  int phases = 0, switches = 0, halts = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    const auto type = j.at("type").get<std::string>();
    phases += type == "phase";
    switches += type == "switch";
    halts += type == "halt";
  }
  EXPECT_EQ(phases, static_cast<int>(r.trace.phases.size()));
  EXPECT_EQ(switches, static_cast<int>(r.trace.events.size()));
  EXPECT_EQ(halts, 1);
  std::int64_t prev = 0;
  for (const auto& ph : r.trace.phases) {
    EXPECT_GE(ph.cumulative_switches, prev);
    prev = ph.cumulative_switches;
  }
}

TEST(SolveDiscounted, Blackwell) {
  const auto r = solve_discounted(paper_fixture("blackwell"), Q("9/10"));
  EXPECT_EQ(r.values, R({"-1/10", "-9/100", "0"}));
  EXPECT_EQ(r.trace.halt, HaltCause::FixedAtTarget);
  // The pair found at 1/2 is already optimal at 9/10, so no later phase runs.
  EXPECT_EQ(r.trace.final_gamma(), Q("1/2"));
}

TEST(SolveDiscounted, ZeroPlayer) {
  const Game g = GameBuilder{2, {Player::Max, Player::Min}, {}}.add(1, 2, 2).add(2, 1, 4).build();
  const auto r = solve_discounted(g, Q("1/2"));
  EXPECT_EQ(r.values, R({"8/3", "10/3"}));
}

TEST(SolveDiscounted, RandomAgainstBruteForce) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const Game g = mpg::testing::random_bipartite(rng, 3, 3, 40);
    const Rational gamma = mpg::testing::frac(1 + trial % 7, 8);
    const auto r = solve_discounted(g, gamma);
    const auto bf = brute_force_discounted(g, gamma);
    EXPECT_EQ(r.values, bf.values);
    EXPECT_TRUE(is_discounted_optimal(g, r.pair, gamma));
  }
}

TEST(SolveDiscounted, RejectsBadDiscount) {
  EXPECT_THROW(solve_discounted(paper_fixture("blackwell"), Q("1")), Error);
}

TEST(Oracle, LosslessTruncationAgrees) {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 20; ++trial) {
    Game g = mpg::testing::random_bipartite(rng, 2, 3, 1000);
    std::vector<Rational> w = g.weights();
    for (auto& x : w) x /= 256;  // at most 8 fractional bits
    g = g.with_weights(w);
    WeightOracle oracle(g.weights());
    const auto t = solve_mpg_truncated(oracle, g);
    const auto e = solve_mpg(g);
    EXPECT_EQ(t.pair, e.pair);
    WeightOracle oracle2(g.weights());
    const auto td = solve_discounted_truncated(oracle2, g, Q("3/4"));
    const auto ed = solve_discounted(g, Q("3/4"));
    EXPECT_EQ(td.pair, ed.pair);
  }
}

TEST(Oracle, CertificationShifts) {
  EXPECT_EQ(mpg_certification_shift(3, Q("1/4")), Q("3/2"));
  EXPECT_EQ(discounted_certification_shift(2, Q("1/8"), Q("1/2")), 2);
  const Game g = paper_fixture("blackwell");
  const auto [lo, hi] = perturbed_weights(g, kBlackwellPair, g.weights(), Q("3/2"));
  const auto used = policy_edges(g, kBlackwellPair);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const bool on_policy = used[static_cast<std::size_t>(g.edge(e).from)] == e;
    EXPECT_EQ(lo[static_cast<std::size_t>(e)], g.weight(e) - (on_policy ? 0 : Q("3/2")));
    EXPECT_EQ(hi[static_cast<std::size_t>(e)], g.weight(e) + (on_policy ? 0 : Q("3/2")));
  }
}

TEST(Oracle, TruncatedMatchesExactOnSmoothedInstances) {
  for (int trial = 0; trial < 30; ++trial) {
    const Game g = smoothed_bipartite(500 + trial);
    WeightOracle oracle(g.weights());
    const auto t = solve_mpg_truncated(oracle, g);
    const auto e = solve_mpg(g);
    EXPECT_EQ(t.pair, e.pair);
    ASSERT_TRUE(t.value_error.has_value());
    EXPECT_LE(abs(t.lambda - e.lambda), *t.value_error);
    ASSERT_TRUE(t.trace.final_bits.has_value());
    EXPECT_EQ(oracle.fractional_bits(), *t.trace.final_bits);
    EXPECT_LE(oracle.bit_queries(), static_cast<std::uint64_t>(g.num_edges()) * (64 + *t.trace.final_bits));

    WeightOracle oracle2(g.weights());
    const auto td = solve_discounted_truncated(oracle2, g, Q("7/8"));
    EXPECT_TRUE(is_discounted_optimal(g, td.pair, Q("7/8")));
  }
}

TEST(WeightOracleTest, RefinesConsistently) {
  const std::vector<Rational> hidden = {Q("1/3"), Q("-5/7"), Q("12345/256")};
  WeightOracle o(hidden);
  std::vector<Rational> prev;
  for (int k = 0; k <= 30; ++k) {
    const Rational eps = pow2(-k);
    const auto got = o.query(eps);
    for (std::size_t i = 0; i < hidden.size(); ++i) {
      EXPECT_LE(abs(got[i] - hidden[i]), eps);
      // earlier answers are truncations of later ones
      if (!prev.empty()) EXPECT_EQ(truncate_to_bits(got[i], k - 1), prev[i]);
    }
    prev = got;
  }
  EXPECT_EQ(o.fractional_bits(), 30);
  const auto before = o.bit_queries();
  o.query(Rational(1, 2));  // coarser: nothing new revealed
  EXPECT_EQ(o.bit_queries(), before);
}
