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

#include "mpg/ergodic.hpp"
#include "mpg/error.hpp"
#include "mpg/game.hpp"
#include "mpg/weight_oracle.hpp"

namespace mpg {

enum class ArithmeticMode { Exact, Float };

enum class TraceLevel {
  Phases,  ///< one record per discount phase
  Events,  ///< phases plus every individual switch
};

struct SolverConfig {
  std::optional<PolicyPair> initial;  ///< default: lowest-index successors
  int max_gamma_updates = 256;
  /// Switch budget per DiscountedPI call; default is the instantiated bound
  /// discounted_switch_cap(m, gamma).
  std::optional<double> max_switches;
  ArithmeticMode mode = ArithmeticMode::Exact;
  double float_tolerance = 1e-9;
  TraceLevel trace = TraceLevel::Phases;
  /// Keep Min's guaranteed vector after each outer DiscountedPI iteration.
  bool record_min_guarantees = false;
  /// Precision before the first halving in the oracle-model solvers.
  Rational initial_epsilon = 1;
};

enum class HaltCause { ErgodicSolved, FixedAtTarget, CapHit };
std::string_view to_string(HaltCause c);

struct SwitchEvent {
  int phase = 0;
  Player player = Player::Max;
  Vertex vertex = 0;
  Vertex from = 0;
  Vertex to = 0;
};

struct PhaseRecord {
  Rational gamma;
  std::optional<Rational> epsilon;
  std::int64_t max_switches = 0;
  std::int64_t min_switches = 0;
  int inner_loops = 0;
  int outer_loops = 0;
  std::int64_t cumulative_switches = 0;
  std::vector<Rational> value;  ///< lambda^(gamma) of the phase's pair (exact mode)
  bool in_xi = false;
  bool nonconstant_value = false;  ///< zero-player value differed across components
  std::vector<std::vector<Rational>> min_guarantees;
};

struct SolverTrace {
  std::vector<PhaseRecord> phases;
  std::vector<SwitchEvent> events;  ///< filled at TraceLevel::Events
  HaltCause halt = HaltCause::CapHit;
  std::int64_t total_switches = 0;
  int gamma_updates = 0;
  std::optional<int> final_bits;  ///< oracle mode: fractional bits of the last query

  Rational final_gamma() const { return phases.empty() ? Rational(0) : phases.back().gamma; }
};

/// Export: one JSON object per line, a "phase" record per discount phase, a
/// "switch" record per event and a closing "halt" record.
std::string trace_to_jsonl(const SolverTrace& trace);

struct SolveResult {
  PolicyPair pair;
  Rational lambda;              ///< mean-payoff value
  std::vector<Rational> values; ///< per-vertex value (discounted solvers: lambda^(gamma_bar))
  std::vector<Rational> u;      ///< Blackwell bias (mean-payoff solvers)
  SolverTrace trace;
  std::optional<ConeCertificate> certificate;  ///< present when strictly certified
  /// Oracle mode: values are those of the truncated weights and lie within
  /// this distance of the hidden ones.
  std::optional<Rational> value_error;
};

/// Raised when a safety cap is exceeded. Carries the partial trace.
class CapHitError : public Error {
 public:
  CapHitError(const std::string& msg, SolverTrace trace)
      : Error(ErrorCode::CapHit, msg), trace_(std::move(trace)) {}
  const SolverTrace& trace() const noexcept { return trace_; }

 private:
  SolverTrace trace_;
};

/// 50 (m/(1-gamma))^2 (log2(1/(1-gamma)) + 1)^2.
double discounted_switch_cap(int m, const Rational& gamma);

/// Greedy all-switches for one player: every vertex of `player` whose current
/// edge misses the best (1-gamma) r_ij + gamma lambda_j moves to the
/// lowest-index edge attaining it. Throws Error{BadDiscount}.
PolicyPair switch_player(const Game& g, const PolicyPair& pair, const Rational& gamma, Player player);

/// Policy iteration at a fixed discount. Result values hold lambda^(gamma).
SolveResult discounted_pi(const Game& g, const PolicyPair& pair0, const Rational& gamma,
                          const SolverConfig& config = {});

/// Increasing-discount policy iteration for the mean-payoff game.
SolveResult solve_mpg(const Game& g, const SolverConfig& config = {});

/// Increasing-discount policy iteration for the discounted game at gamma_bar.
SolveResult solve_discounted(const Game& g, const Rational& gamma_bar, const SolverConfig& config = {});

/// Oracle-model variants: `skeleton` provides graph and owners only; weights
/// are obtained through `oracle` with halving precision.
SolveResult solve_mpg_truncated(WeightOracle& oracle, const Game& skeleton, const SolverConfig& config = {});
SolveResult solve_discounted_truncated(WeightOracle& oracle, const Game& skeleton, const Rational& gamma_bar,
                                       const SolverConfig& config = {});

/// r~ with every edge unused by `pair` shifted by -shift (first) and +shift (second).
std::pair<std::vector<Rational>, std::vector<Rational>> perturbed_weights(const Game& g, const PolicyPair& pair,
                                                                          const std::vector<Rational>& approx,
                                                                          const Rational& shift);
/// 2 n eps: off-policy shift certifying mean-payoff optimality.
Rational mpg_certification_shift(int n, const Rational& eps);
/// 2 eps / ((1-gamma) gamma^n): off-policy shift for the discounted game.
Rational discounted_certification_shift(int n, const Rational& eps, const Rational& gamma);

/// True when no vertex of either player can switch at gamma.
bool is_discounted_optimal(const Game& g, const PolicyPair& pair, const Rational& gamma);

}  // namespace mpg
