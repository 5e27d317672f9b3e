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

#include <cmath>
#include <sstream>

#include "mpg/ergodic.hpp"
#include "mpg/error.hpp"
#include "mpg/experiments.hpp"
#include "mpg/policy_iteration.hpp"
#include "mpg/zero_player.hpp"

using namespace mpg;

namespace {

ExperimentConfig bipartite_config(int trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.graph = GraphSpec::complete_bipartite(3, 3);
  cfg.dist = DistributionSpec::gaussian(0, 0.2);
  cfg.dist.mean_mode = DistributionSpec::MeanMode::RandomUniform;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(Config, JsonRoundTrip) {
  ExperimentConfig cfg = bipartite_config(12, 99);
  cfg.epsilons = {0.2, 1.0};
  cfg.gamma_bar = Rational(7, 8);
  const ExperimentConfig back = config_from_json(to_json(cfg));
  EXPECT_EQ(back.trials, 12);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.epsilons, cfg.epsilons);
  ASSERT_TRUE(back.gamma_bar.has_value());
  EXPECT_EQ(*back.gamma_bar, Rational(7, 8));
  EXPECT_EQ(back.dist.mean_mode, DistributionSpec::MeanMode::RandomUniform);
}

TEST(Config, Rejections) {
  EXPECT_THROW(config_from_json(R"({"trials":0})"), Error);
  EXPECT_THROW(config_from_json(R"({"epsilons":[0]})"), Error);
  EXPECT_THROW(config_from_json(R"({"epsilons":[1.5]})"), Error);
  EXPECT_THROW(config_from_json(R"({"gamma_bar":"1"})"), Error);
  EXPECT_THROW(config_from_json("[1,2]"), Error);
  EXPECT_NO_THROW(config_from_json(R"({"trials":3,"epsilons":[1]})"));
}

TEST(Trials, SingleFixtureTrialVerified) {
  ExperimentConfig cfg;
  cfg.graph = GraphSpec::fixture_graph("non_convex", {.x = 8});
  cfg.dist = DistributionSpec::gaussian(0, 0.2);
  cfg.trials = 1;
  cfg.seed = 3;
  const auto recs = run_smoothed_trials(cfg);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_TRUE(recs[0].verify_ran);
  EXPECT_TRUE(recs[0].verified);
}

TEST(Trials, BipartiteVerifiedAndCapped) {
  const auto recs = run_smoothed_trials(bipartite_config(40, 5));
  ASSERT_EQ(recs.size(), 40u);
  for (const auto& r : recs) {
    EXPECT_EQ(r.n, 6);
    EXPECT_EQ(r.m, 18);
    EXPECT_DOUBLE_EQ(r.phi, 5.0);
    EXPECT_TRUE(r.verify_ran);
    EXPECT_TRUE(r.verified) << r.trial;
    EXPECT_TRUE(r.within_cap);
    EXPECT_EQ(r.zp_violations, 0);
    EXPECT_EQ(r.delta.has_value(), r.in_U);
  }
}

TEST(Trials, RecordsRegenerateFromConfig) {
  const ExperimentConfig cfg = bipartite_config(10, 8);
  const auto recs = run_smoothed_trials(cfg);
  for (const auto& r : recs) {
    const Game g = trial_game(cfg, r.trial);
    EXPECT_EQ(r.seed, trial_seed(cfg, r.trial));
    const auto res = solve_mpg(g);
    EXPECT_EQ(res.pair, r.pair);
    EXPECT_EQ(res.lambda, r.lambda);
    if (r.in_U) EXPECT_TRUE(cone_membership(g, r.pair).inside_strict);
  }
}

TEST(Trials, CsvIndependentOfThreads) {
  ExperimentConfig cfg = bipartite_config(24, 17);
  const std::string one = trials_to_csv(run_smoothed_trials(cfg), false);
  cfg.threads = 4;
  const std::string four = trials_to_csv(run_smoothed_trials(cfg), false);
  EXPECT_EQ(one, four);
  EXPECT_EQ(one.rfind(kBenchCsvVersion, 0), 0u);
  std::istringstream in(one);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 2 + 24);
}

TEST(Trials, TimingsColumnOptIn) {
  const auto recs = run_smoothed_trials(bipartite_config(2, 1));
  EXPECT_EQ(trials_to_csv(recs, false).find("wall_ms"), std::string::npos);
  EXPECT_NE(trials_to_csv(recs, true).find("wall_ms"), std::string::npos);
}

TEST(Trials, DiscountedMode) {
  ExperimentConfig cfg = bipartite_config(10, 2);
  cfg.gamma_bar = Rational(9, 10);
  for (const auto& r : run_smoothed_trials(cfg)) {
    EXPECT_TRUE(r.verified);
    EXPECT_LE(r.final_gamma, Rational(9, 10));
  }
}

TEST(SwitchCap, Formula) {
  // D = max(1, delta); 50 n^4 m^2 D^2 (log2(n D) + 1)^3
  EXPECT_DOUBLE_EQ(mpg_switch_cap(2, 3, 1), 50.0 * 16 * 9 * 8);
  EXPECT_DOUBLE_EQ(mpg_switch_cap(2, 3, Rational(1, 2)), 50.0 * 16 * 9 * 8);
  EXPECT_DOUBLE_EQ(mpg_switch_cap(2, 3, 2), 50.0 * 16 * 9 * 4 * 27);
}

TEST(Tail, EpsilonOneAlwaysPasses) {
  ExperimentConfig cfg = bipartite_config(30, 4);
  cfg.epsilons = {1.0};
  const TailReport rep = condition_tail_report(cfg);
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_TRUE(std::isfinite(rep.rows[0].threshold));
  EXPECT_LE(rep.rows[0].freq, 1.0);
  EXPECT_TRUE(rep.pass());
}

TEST(Tail, ThresholdsAndBands) {
  ExperimentConfig cfg = bipartite_config(50, 6);
  const TailReport rep = condition_tail_report(cfg);
  ASSERT_EQ(rep.rows.size(), 4u);
  for (const auto& row : rep.rows) {
    EXPECT_DOUBLE_EQ(row.threshold, tail_threshold(18, 5.0, row.epsilon));
    EXPECT_DOUBLE_EQ(row.bound, row.epsilon + 3 * std::sqrt(row.epsilon * (1 - row.epsilon) / 50));
    EXPECT_EQ(row.pass, row.freq <= row.bound);
  }
  EXPECT_NE(rep.to_csv().find("epsilon"), std::string::npos);
}

TEST(Tail, NonCertifiedTrialsCountAsInfinite) {
  TrialRecord r;
  r.in_U = false;
  ExperimentConfig cfg = bipartite_config(1, 0);
  cfg.epsilons = {0.5};
  const TailReport rep = condition_tail_report(cfg, {r});
  EXPECT_EQ(rep.rows[0].exceed, 1);
}

TEST(Probe, ZeroRadiusPreserves) {
  const ExperimentConfig cfg = bipartite_config(20, 9);
  for (int t = 0; t < cfg.trials; ++t) {
    const Game g = trial_game(cfg, t);
    const auto r = solve_mpg(g);
    if (!r.certificate) continue;
    const auto pr = robustness_probe(g, r.pair, 0, 20, 1);
    EXPECT_EQ(pr.fraction, 1.0);
    EXPECT_FALSE(pr.counterexample.has_value());
    return;
  }
  FAIL() << "no certified trial";
}

TEST(Probe, TheoryRadiusWithLargeMargins) {
  const ExperimentConfig cfg = bipartite_config(60, 10);
  int checked = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    const Game g = trial_game(cfg, t);
    const auto r = solve_mpg(g);
    if (!r.certificate) continue;
    const int n = g.num_vertices();
    const Rational delta = theory_bounds(n, g.num_edges(), 5, 1, 1).robustness_delta;
    if (*r.certificate->margin <= 2 * (n + 1) * delta) continue;
    const auto pr = robustness_probe(g, r.pair, delta, 50, t);
    EXPECT_EQ(pr.fraction, 1.0);
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(Probe, LargeRadiusFindsCounterexample) {
  const ExperimentConfig cfg = bipartite_config(20, 11);
  for (int t = 0; t < cfg.trials; ++t) {
    const Game g = trial_game(cfg, t);
    const auto r = solve_mpg(g);
    if (!r.certificate) continue;
    // largest slack over unused edges
    const auto used = policy_edges(g, r.pair);
    Rational max_margin = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      if (used[static_cast<std::size_t>(ed.from)] == e) continue;
      const Rational z = z_threshold(g, r.pair, {ed.from, ed.to});
      max_margin = std::max(max_margin, Rational(abs(z - ed.weight)));
    }
    const auto pr = robustness_probe(g, r.pair, 10 * max_margin, 40, 3);
    EXPECT_LT(pr.fraction, 1.0);
    ASSERT_TRUE(pr.counterexample.has_value());
    EXPECT_FALSE(cone_membership(g.with_weights(*pr.counterexample), r.pair).inside_strict);
    return;
  }
  FAIL() << "no certified trial";
}

TEST(Probe, RequiresCertificate) {
  try {
    const Game g(1, {Player::Max}, {{0, 0, 0}});
    robustness_probe(g, PolicyPair{{0}}, 1, 5, 0);
  } catch (const Error& e) {
    ADD_FAILURE() << "single vertex game is vacuously certified: " << e.what();
  }
  const ExperimentConfig cfg = bipartite_config(1, 0);
  const Game g = trial_game(cfg, 0);
  // an optimal but non-bias-induced or arbitrary pair is rejected
  const PolicyPair bad = default_policy(g);
  if (!(in_xi(g, bad) && cone_membership(g, bad).inside_strict)) {
    EXPECT_THROW(robustness_probe(g, bad, 1, 5, 0), Error);
  }
}
