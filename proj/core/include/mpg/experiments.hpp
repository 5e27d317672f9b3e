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
#include <optional>
#include <string>
#include <vector>

#include "mpg/policy_iteration.hpp"
#include "mpg/random_instances.hpp"

namespace mpg {

struct ExperimentConfig {
  GraphSpec graph;
  DistributionSpec dist;
  int trials = 1;
  std::uint64_t seed = 0;
  std::vector<double> epsilons{0.05, 0.1, 0.25, 0.5};  ///< tail test levels
  std::optional<Rational> gamma_bar;  ///< solve the discounted game instead
  std::optional<Rational> delta;      ///< robustness probe radius override
  int probe_samples = 100;
  int threads = 1;
  int verify_max_n = 8;  ///< brute-force verification up to this many vertices
  bool timings = false;  ///< add the wall_ms column (makes output non-reproducible)
  std::string output;    ///< CSV path; empty for stdout

  void validate() const;
};

/// Throws Error{BadSpec} on malformed or invalid configs.
ExperimentConfig config_from_json(const std::string& text);
std::string to_json(const ExperimentConfig& cfg);

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  double phi = 0;
  std::optional<Rational> delta;  ///< set iff in_U
  bool in_U = false;
  std::int64_t switches = 0;
  int gamma_updates = 0;
  Rational final_gamma;
  bool verified = false;      ///< oracle ran and agreed
  bool verify_ran = false;
  Rational lambda;
  PolicyPair pair;
  double wall_ms = 0;
  bool within_cap = true;     ///< switches <= mpg_switch_cap
  int zp_violations = 0;      ///< visited discounts breaking the Zwick-Paterson estimate
};

std::uint64_t trial_seed(const ExperimentConfig& cfg, int trial);
/// The weighted game of trial `trial`, regenerated from the config alone.
Game trial_game(const ExperimentConfig& cfg, int trial);

/// Runs every trial; the result is ordered by trial index and independent of
/// cfg.threads.
std::vector<TrialRecord> run_smoothed_trials(const ExperimentConfig& cfg);

inline constexpr const char* kBenchCsvVersion = "# mpg-bench-csv v1";
std::string trials_to_csv(const std::vector<TrialRecord>& records, bool timings);

/// 50 n^4 m^2 D^2 (log2(n D) + 1)^3 with D = max(1, delta).
double mpg_switch_cap(int n, int m, const Rational& delta);

/// Visited discounts whose phase value breaks
/// |lambda^(gamma) - lambda|_inf <= 2 n (1 - gamma) |r|_inf.
int zwick_paterson_violations(const Game& g, const SolverTrace& trace, const Rational& lambda);

struct TailRow {
  double epsilon = 0;
  double threshold = 0;
  int exceed = 0;
  double freq = 0;
  double bound = 0;  ///< eps + 3 sqrt(eps (1 - eps) / N)
  bool pass = false;
};

struct TailReport {
  int trials = 0;
  int m = 0;
  double phi = 0;
  std::vector<TailRow> rows;
  bool pass() const;
  std::string to_csv() const;
};

/// Trials outside the certified set count with delta = +inf.
TailReport condition_tail_report(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records);
TailReport condition_tail_report(const ExperimentConfig& cfg);

struct ProbeResult {
  int samples = 0;
  int preserved = 0;
  double fraction = 1.0;
  std::optional<std::vector<Rational>> counterexample;  ///< weights that lose the certificate
};

/// Samples corners (even sample indices) and interior points (odd) of the sup-norm
/// ball of radius delta around the weights and re-certifies `pair` at each.
/// Throws Error{NotCertified} unless `pair` is strictly certified for g.
ProbeResult robustness_probe(const Game& g, const PolicyPair& pair, const Rational& delta, int samples,
                             std::uint64_t seed);

}  // namespace mpg
