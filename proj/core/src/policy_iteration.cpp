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

#include "mpg/policy_iteration.hpp"

#include <cmath>
#include <type_traits>

#include "json.hpp"
#include "mpg/detail/discounted.hpp"
#include "mpg/zero_player.hpp"

namespace mpg {

std::string_view to_string(HaltCause c) {
  switch (c) {
    case HaltCause::ErgodicSolved: return "ergodic_solved";
    case HaltCause::FixedAtTarget: return "fixed_at_target";
    case HaltCause::CapHit: return "cap_hit";
  }
  return "?";
}

double discounted_switch_cap(int m, const Rational& gamma) {
  const double gap = to_double(1 - gamma);
  const double ratio = static_cast<double>(m) / gap;
  const double lg = std::log2(1.0 / gap) + 1.0;
  return 50.0 * ratio * ratio * lg * lg;
}

namespace {

template <class T>
struct Arith;

template <>
struct Arith<Rational> {
  static Rational from(const Rational& q) { return q; }
  static bool differs(const Rational& a, const Rational& b, double) { return a != b; }
};

template <>
struct Arith<double> {
  static double from(const Rational& q) { return to_double(q); }
  static bool differs(double a, double b, double tol) { return std::abs(a - b) > tol; }
};

// Discounted evaluation and switching over a fixed weight vector.
template <class T>
class Engine {
 public:
  Engine(const Game& g, const std::vector<Rational>& weights, const SolverConfig& cfg)
      : g_(g), cfg_(cfg) {
    w_.reserve(weights.size());
    for (const auto& q : weights) w_.push_back(Arith<T>::from(q));
  }

  std::vector<T> values(const PolicyPair& p, const T& gamma) const {
    std::vector<T> wv;
    wv.reserve(p.successor.size());
    for (Vertex v = 0; v < g_.num_vertices(); ++v) wv.push_back(w_[static_cast<std::size_t>(g_.edge_id(v, p[v]))]);
    return detail::discounted_values(p.successor, wv, gamma, cycle_structure(p.successor));
  }

  // Greedy all-switches for `who`; returns the number of switched vertices.
  int switch_player(PolicyPair& p, const T& gamma, Player who, int phase, std::vector<SwitchEvent>* events) const {
    const std::vector<T> lambda = values(p, gamma);
    const T one_minus = T(1) - gamma;
    const bool is_max = who == Player::Max;
    int count = 0;
    std::vector<T> cand;
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      if (g_.owner(v) != who) continue;
      const auto out = g_.out_edges(v);
      cand.clear();
      for (EdgeId e : out) {
        cand.push_back(one_minus * w_[static_cast<std::size_t>(e)] +
                       gamma * lambda[static_cast<std::size_t>(g_.edge(e).to)]);
      }
      std::size_t best = 0;
      for (std::size_t k = 1; k < cand.size(); ++k) {
        if (is_max ? cand[k] > cand[best] : cand[k] < cand[best]) best = k;
      }
      if (!Arith<T>::differs(lambda[static_cast<std::size_t>(v)], cand[best], cfg_.float_tolerance)) continue;
      std::size_t pick = 0;
      while (Arith<T>::differs(cand[pick], cand[best], cfg_.float_tolerance)) ++pick;
      const Vertex to = g_.edge(out[pick]).to;
      if (events) events->push_back({phase, who, v, p[v], to});
      p.successor[static_cast<std::size_t>(v)] = to;
      ++count;
    }
    return count;
  }

  bool optimal(const PolicyPair& p, const T& gamma) const {
    PolicyPair q = p;
    return switch_player(q, gamma, Player::Max, 0, nullptr) == 0 &&
           switch_player(q, gamma, Player::Min, 0, nullptr) == 0;
  }

 private:
  const Game& g_;
  const SolverConfig& cfg_;
  std::vector<T> w_;
};

// Shared state of one solver run.
template <class T>
class Runner {
 public:
  Runner(const Game& g, const SolverConfig& cfg) : g_(g), cfg_(cfg) {
    pair_ = cfg.initial ? *cfg.initial : default_policy(g);
    if (!is_legal(g, pair_)) throw Error(ErrorCode::DomainError, "initial policy pair is not legal");
  }

  PolicyPair& pair() { return pair_; }
  SolverTrace& trace() { return trace_; }

  // DiscountedPI from the current pair; appends one phase record.
  PhaseRecord& run_pi(const std::vector<Rational>& weights, const Rational& gamma) {
    require_discount(gamma);
    const Engine<T> eng(g_, weights, cfg_);
    const T gm = Arith<T>::from(gamma);
    const int phase = static_cast<int>(trace_.phases.size());
    PhaseRecord rec;
    rec.gamma = gamma;
    const double cap = cfg_.max_switches ? *cfg_.max_switches : discounted_switch_cap(g_.num_edges(), gamma);
    std::vector<SwitchEvent>* events = cfg_.trace == TraceLevel::Events ? &trace_.events : nullptr;
    std::int64_t local = 0;
    auto check_cap = [&] {
      if (static_cast<double>(local) > cap) {
        trace_.phases.push_back(rec);
        fail("DiscountedPI exceeded its switch cap at gamma = " + to_string(gamma));
      }
    };
    while (true) {
      ++rec.outer_loops;
      while (true) {
        ++rec.inner_loops;
        const int s = eng.switch_player(pair_, gm, Player::Max, phase, events);
        rec.max_switches += s;
        local += s;
        check_cap();
        if (s == 0) break;
      }
      if constexpr (std::is_same_v<T, Rational>) {
        if (cfg_.record_min_guarantees) rec.min_guarantees.push_back(eng.values(pair_, gm));
      }
      const int s = eng.switch_player(pair_, gm, Player::Min, phase, events);
      rec.min_switches += s;
      local += s;
      check_cap();
      if (s == 0) break;
    }
    trace_.total_switches += local;
    rec.cumulative_switches = trace_.total_switches;
    if constexpr (std::is_same_v<T, Rational>) rec.value = eng.values(pair_, gm);
    rec.in_xi = cycle_structure(pair_.successor).single_cycle;
    trace_.phases.push_back(std::move(rec));
    return trace_.phases.back();
  }

  bool optimal_at(const std::vector<Rational>& weights, const Rational& gamma) const {
    return Engine<T>(g_, weights, cfg_).optimal(pair_, Arith<T>::from(gamma));
  }

  void begin_phase() {
    if (trace_.gamma_updates >= cfg_.max_gamma_updates) {
      fail("discount budget of " + std::to_string(cfg_.max_gamma_updates) + " updates exhausted");
    }
    ++trace_.gamma_updates;
  }

  [[noreturn]] void fail(const std::string& msg) {
    trace_.halt = HaltCause::CapHit;
    throw CapHitError(msg, trace_);
  }

 private:
  const Game& g_;
  const SolverConfig& cfg_;
  PolicyPair pair_;
  SolverTrace trace_;
};

// The halting test of the mean-payoff solvers: (lambda, u) from the pair must
// solve the ergodic equation and the pair must use only tight edges. The second
// condition is implied when the zero-player value is constant; it guards the
// "pick any" branch where lambda is taken from vertex 0.
bool ergodic_halt(const Game& g, const PolicyPair& pair, const MeanBiasSolution& mb) {
  const Rational& lambda = mb.lambda.front();
  if (!check_ergodic_equation(g, {lambda, mb.u}).solves()) return false;
  if (mb.constant_value) return true;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto next = static_cast<std::size_t>(pair[v]);
    if (lambda + mb.u[static_cast<std::size_t>(v)] != g.weight(v, pair[v]) + mb.u[next]) return false;
  }
  return true;
}

void attach_certificate(const Game& g, SolveResult& res) {
  if (!in_xi(g, res.pair)) return;
  ConeCertificate c = cone_membership(g, res.pair);
  if (c.inside_strict) res.certificate = std::move(c);
}

template <class T>
SolveResult mpg_impl(const Game& g, const SolverConfig& cfg) {
  require_valid(g);
  Runner<T> run(g, cfg);
  const std::vector<Rational> w = g.weights();
  Rational gamma = 0;
  while (true) {
    run.begin_phase();
    gamma = (1 + gamma) / 2;
    PhaseRecord& rec = run.run_pi(w, gamma);
    const MeanBiasSolution mb = blackwell_bias_zero_player(g, run.pair());
    rec.nonconstant_value = !mb.constant_value;
    if (ergodic_halt(g, run.pair(), mb)) {
      SolveResult res;
      res.pair = run.pair();
      res.lambda = mb.lambda.front();
      res.values = mb.lambda;
      res.u = mb.u;
      run.trace().halt = HaltCause::ErgodicSolved;
      res.trace = std::move(run.trace());
      attach_certificate(g, res);
      return res;
    }
  }
}

template <class T>
SolveResult discounted_impl(const Game& g, const Rational& gamma_bar, const SolverConfig& cfg) {
  require_valid(g);
  require_discount(gamma_bar);
  Runner<T> run(g, cfg);
  const std::vector<Rational> w = g.weights();
  Rational gamma = 0;
  while (true) {
    run.begin_phase();
    gamma = (1 + gamma) / 2;
    if (gamma > gamma_bar) gamma = gamma_bar;
    run.run_pi(w, gamma);
    if (run.optimal_at(w, gamma_bar)) {
      SolveResult res;
      res.pair = run.pair();
      res.values = discounted_value_zero_player(g, res.pair, gamma_bar);
      run.trace().halt = HaltCause::FixedAtTarget;
      res.trace = std::move(run.trace());
      return res;
    }
  }
}

template <class T>
SolveResult mpg_truncated_impl(WeightOracle& oracle, const Game& skeleton, const SolverConfig& cfg) {
  require_valid(skeleton);
  if (oracle.num_edges() != skeleton.num_edges()) {
    throw Error(ErrorCode::DomainError, "oracle and skeleton disagree on the edge count");
  }
  Runner<T> run(skeleton, cfg);
  Rational gamma = 0;
  Rational eps = cfg.initial_epsilon;
  while (true) {
    run.begin_phase();
    gamma = (1 + gamma) / 2;
    eps /= 2;
    const std::vector<Rational> approx = oracle.query(eps);
    run.trace().final_bits = oracle.fractional_bits();
    PhaseRecord& rec = run.run_pi(approx, gamma);
    rec.epsilon = eps;
    if (!rec.in_xi) continue;
    const Rational shift = mpg_certification_shift(skeleton.num_vertices(), eps);
    const auto [lo, hi] = perturbed_weights(skeleton, run.pair(), approx, shift);
    const Game g1 = skeleton.with_weights(lo);
    const Game g2 = skeleton.with_weights(hi);
    if (!ergodic_halt(g1, run.pair(), blackwell_bias_zero_player(g1, run.pair()))) continue;
    if (!ergodic_halt(g2, run.pair(), blackwell_bias_zero_player(g2, run.pair()))) continue;
    const Game approx_game = skeleton.with_weights(approx);
    const MeanBiasSolution mb = blackwell_bias_zero_player(approx_game, run.pair());
    SolveResult res;
    res.pair = run.pair();
    res.lambda = mb.lambda.front();
    res.values = mb.lambda;
    res.u = mb.u;
    res.value_error = eps;
    run.trace().halt = HaltCause::ErgodicSolved;
    res.trace = std::move(run.trace());
    return res;
  }
}

template <class T>
SolveResult discounted_truncated_impl(WeightOracle& oracle, const Game& skeleton, const Rational& gamma_bar,
                                      const SolverConfig& cfg) {
  require_valid(skeleton);
  require_discount(gamma_bar);
  if (oracle.num_edges() != skeleton.num_edges()) {
    throw Error(ErrorCode::DomainError, "oracle and skeleton disagree on the edge count");
  }
  Runner<T> run(skeleton, cfg);
  Rational gamma = 0;
  Rational eps = cfg.initial_epsilon;
  while (true) {
    run.begin_phase();
    gamma = (1 + gamma) / 2;
    if (gamma > gamma_bar) gamma = gamma_bar;
    eps /= 2;
    const std::vector<Rational> approx = oracle.query(eps);
    run.trace().final_bits = oracle.fractional_bits();
    PhaseRecord& rec = run.run_pi(approx, gamma);
    rec.epsilon = eps;
    const Rational shift = discounted_certification_shift(skeleton.num_vertices(), eps, gamma_bar);
    const auto [lo, hi] = perturbed_weights(skeleton, run.pair(), approx, shift);
    if (!run.optimal_at(lo, gamma_bar) || !run.optimal_at(hi, gamma_bar)) continue;
    SolveResult res;
    res.pair = run.pair();
    res.values = discounted_value_zero_player(skeleton.with_weights(approx), res.pair, gamma_bar);
    res.value_error = eps;
    run.trace().halt = HaltCause::FixedAtTarget;
    res.trace = std::move(run.trace());
    return res;
  }
}

template <class T>
SolveResult discounted_pi_impl(const Game& g, const PolicyPair& pair0, const Rational& gamma, SolverConfig cfg) {
  require_valid(g);
  require_discount(gamma);
  cfg.initial = pair0;
  Runner<T> run(g, cfg);
  run.begin_phase();
  run.run_pi(g.weights(), gamma);
  SolveResult res;
  res.pair = run.pair();
  res.values = discounted_value_zero_player(g, res.pair, gamma);
  run.trace().halt = HaltCause::FixedAtTarget;
  res.trace = std::move(run.trace());
  return res;
}

}  // namespace

PolicyPair switch_player(const Game& g, const PolicyPair& pair, const Rational& gamma, Player player) {
  require_discount(gamma);
  if (!is_legal(g, pair)) throw Error(ErrorCode::DomainError, "policy pair is not legal");
  SolverConfig cfg;
  PolicyPair out = pair;
  Engine<Rational>(g, g.weights(), cfg).switch_player(out, gamma, player, 0, nullptr);
  return out;
}

bool is_discounted_optimal(const Game& g, const PolicyPair& pair, const Rational& gamma) {
  require_discount(gamma);
  SolverConfig cfg;
  return Engine<Rational>(g, g.weights(), cfg).optimal(pair, gamma);
}

SolveResult discounted_pi(const Game& g, const PolicyPair& pair0, const Rational& gamma, const SolverConfig& config) {
  if (config.mode == ArithmeticMode::Float) return discounted_pi_impl<double>(g, pair0, gamma, config);
  return discounted_pi_impl<Rational>(g, pair0, gamma, config);
}

SolveResult solve_mpg(const Game& g, const SolverConfig& config) {
  if (config.mode == ArithmeticMode::Float) return mpg_impl<double>(g, config);
  return mpg_impl<Rational>(g, config);
}

SolveResult solve_discounted(const Game& g, const Rational& gamma_bar, const SolverConfig& config) {
  if (config.mode == ArithmeticMode::Float) return discounted_impl<double>(g, gamma_bar, config);
  return discounted_impl<Rational>(g, gamma_bar, config);
}

SolveResult solve_mpg_truncated(WeightOracle& oracle, const Game& skeleton, const SolverConfig& config) {
  if (config.mode == ArithmeticMode::Float) return mpg_truncated_impl<double>(oracle, skeleton, config);
  return mpg_truncated_impl<Rational>(oracle, skeleton, config);
}

SolveResult solve_discounted_truncated(WeightOracle& oracle, const Game& skeleton, const Rational& gamma_bar,
                                       const SolverConfig& config) {
  if (config.mode == ArithmeticMode::Float) {
    return discounted_truncated_impl<double>(oracle, skeleton, gamma_bar, config);
  }
  return discounted_truncated_impl<Rational>(oracle, skeleton, gamma_bar, config);
}

std::pair<std::vector<Rational>, std::vector<Rational>> perturbed_weights(const Game& g, const PolicyPair& pair,
                                                                          const std::vector<Rational>& approx,
                                                                          const Rational& shift) {
  std::vector<Rational> lo = approx;
  std::vector<Rational> hi = approx;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (pair[ed.from] == ed.to) continue;
    lo[static_cast<std::size_t>(e)] -= shift;
    hi[static_cast<std::size_t>(e)] += shift;
  }
  return {std::move(lo), std::move(hi)};
}

Rational mpg_certification_shift(int n, const Rational& eps) { return 2 * Rational(n) * eps; }

Rational discounted_certification_shift(int n, const Rational& eps, const Rational& gamma) {
  require_discount(gamma);
  return 2 * eps / ((1 - gamma) * pow(gamma, static_cast<unsigned>(n)));
}

std::string trace_to_jsonl(const SolverTrace& trace) {
  using nlohmann::json;
  std::string out;
  std::size_t next_event = 0;
  for (std::size_t p = 0; p < trace.phases.size(); ++p) {
    const PhaseRecord& r = trace.phases[p];
    json j = {{"type", "phase"},
              {"phase", p},
              {"gamma", to_string(r.gamma)},
              {"max_switches", r.max_switches},
              {"min_switches", r.min_switches},
              {"inner_loops", r.inner_loops},
              {"outer_loops", r.outer_loops},
              {"cumulative_switches", r.cumulative_switches},
              {"in_xi", r.in_xi},
              {"nonconstant_value", r.nonconstant_value}};
    if (r.epsilon) j["epsilon"] = to_string(*r.epsilon);
    out += j.dump() + "\n";
    while (next_event < trace.events.size() && trace.events[next_event].phase == static_cast<int>(p)) {
      const SwitchEvent& e = trace.events[next_event++];
      json ev = {{"type", "switch"},          {"phase", e.phase},   {"player", to_string(e.player)},
                 {"vertex", e.vertex + 1},    {"from", e.from + 1}, {"to", e.to + 1}};
      out += ev.dump() + "\n";
    }
  }
  json halt = {{"type", "halt"},
               {"cause", to_string(trace.halt)},
               {"total_switches", trace.total_switches},
               {"gamma_updates", trace.gamma_updates}};
  if (trace.final_bits) halt["final_bits"] = *trace.final_bits;
  out += halt.dump() + "\n";
  return out;
}

}  // namespace mpg
