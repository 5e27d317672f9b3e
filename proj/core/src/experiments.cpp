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

#include "mpg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "json_specs.hpp"
#include "mpg/brute_force.hpp"
#include "mpg/ergodic.hpp"
#include "mpg/error.hpp"
#include "mpg/zero_player.hpp"

namespace mpg {

using nlohmann::json;

void ExperimentConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::BadSpec, "trial count must be at least 1");
  if (threads < 1) throw Error(ErrorCode::BadSpec, "thread count must be at least 1");
  if (probe_samples < 0) throw Error(ErrorCode::BadSpec, "probe sample count must be non-negative");
  for (double e : epsilons) {
    if (!(e > 0.0 && e <= 1.0)) throw Error(ErrorCode::BadSpec, "every epsilon must lie in (0,1]");
  }
  if (gamma_bar && (*gamma_bar <= 0 || *gamma_bar >= 1)) throw Error(ErrorCode::BadSpec, "gamma_bar must lie in (0,1)");
  if (delta && *delta < 0) throw Error(ErrorCode::BadSpec, "delta must be non-negative");
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadSpec, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::BadSpec, "config must be an object");
  ExperimentConfig c;
  try {
    if (auto it = j.find("graph"); it != j.end()) c.graph = detail::graph_spec_from(*it);
    if (auto it = j.find("distribution"); it != j.end()) c.dist = detail::distribution_from(*it);
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    if (auto it = j.find("epsilons"); it != j.end()) c.epsilons = it->get<std::vector<double>>();
    if (auto it = j.find("gamma_bar"); it != j.end() && !it->is_null()) {
      c.gamma_bar = it->is_string() ? parse_rational(it->get<std::string>()) : Rational(it->get<double>());
    }
    if (auto it = j.find("delta"); it != j.end() && !it->is_null()) {
      c.delta = it->is_string() ? parse_rational(it->get<std::string>()) : Rational(it->get<double>());
    }
    c.probe_samples = j.value("probe_samples", c.probe_samples);
    c.threads = j.value("threads", c.threads);
    c.verify_max_n = j.value("verify_max_n", c.verify_max_n);
    c.timings = j.value("timings", c.timings);
    c.output = j.value("output", c.output);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadSpec, std::string("bad config field: ") + e.what());
  }
  c.validate();
  return c;
}

std::string to_json(const ExperimentConfig& c) {
  json j = {{"graph", detail::graph_spec_json(c.graph)},
            {"distribution", detail::distribution_json(c.dist)},
            {"trials", c.trials},
            {"seed", c.seed},
            {"epsilons", c.epsilons},
            {"probe_samples", c.probe_samples},
            {"threads", c.threads},
            {"verify_max_n", c.verify_max_n},
            {"timings", c.timings},
            {"output", c.output}};
  if (c.gamma_bar) j["gamma_bar"] = to_string(*c.gamma_bar);
  if (c.delta) j["delta"] = to_string(*c.delta);
  return j.dump(2);
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, int trial) {
  return derive_seed(cfg.seed, static_cast<std::uint64_t>(trial));
}

Game trial_game(const ExperimentConfig& cfg, int trial) {
  const std::uint64_t s = trial_seed(cfg, trial);
  const Game skeleton = gen_graph(cfg.graph, derive_seed(s, 0));
  if (cfg.graph.shape == GraphSpec::Shape::Fixture && skeleton.is_zero_player()) return skeleton;
  return sample_weights(skeleton, cfg.dist, derive_seed(s, 1));
}

double mpg_switch_cap(int n, int m, const Rational& delta) {
  const double d = std::max(1.0, to_double(delta));
  const double nn = n;
  const double mm = m;
  const double lg = std::log2(nn * d) + 1.0;
  return 50.0 * nn * nn * nn * nn * mm * mm * d * d * lg * lg * lg;
}

int zwick_paterson_violations(const Game& g, const SolverTrace& trace, const Rational& lambda) {
  const Rational rnorm = sup_norm(g.weights());
  int bad = 0;
  for (const auto& ph : trace.phases) {
    if (ph.value.empty()) continue;
    Rational dev = 0;
    for (const auto& v : ph.value) dev = std::max<Rational>(dev, abs(v - lambda));
    if (dev > 2 * Rational(g.num_vertices()) * (1 - ph.gamma) * rnorm) ++bad;
  }
  return bad;
}

namespace {

TrialRecord run_trial(const ExperimentConfig& cfg, int t) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial = t;
  rec.seed = trial_seed(cfg, t);
  const Game g = trial_game(cfg, t);
  rec.n = g.num_vertices();
  rec.m = g.num_edges();
  rec.phi = cfg.dist.phi();

  const SolveResult mpg = solve_mpg(g);
  rec.lambda = mpg.lambda;
  rec.zp_violations = zwick_paterson_violations(g, mpg.trace, mpg.lambda);
  if (mpg.certificate) {
    rec.in_U = true;
    rec.delta = condition_number(g, mpg.pair).delta;
  } else if (g.is_zero_player() && in_xi(g, mpg.pair)) {
    rec.in_U = true;
    rec.delta = Rational(1);
  }

  const SolveResult res = cfg.gamma_bar ? solve_discounted(g, *cfg.gamma_bar) : mpg;
  rec.pair = res.pair;
  rec.switches = res.trace.total_switches;
  rec.gamma_updates = res.trace.gamma_updates;
  rec.final_gamma = res.trace.final_gamma();
  if (rec.in_U) rec.within_cap = static_cast<double>(rec.switches) <= mpg_switch_cap(rec.n, rec.m, *rec.delta);

  if (rec.n <= cfg.verify_max_n) {
    rec.verify_ran = true;
    if (cfg.gamma_bar) {
      const auto bf = brute_force_discounted(g, *cfg.gamma_bar);
      rec.verified = bf.values == res.values &&
                     std::binary_search(bf.optimal_pairs.begin(), bf.optimal_pairs.end(), res.pair);
    } else {
      const auto bf = brute_force_solve(g);
      rec.verified = bf.lambda == std::vector<Rational>(bf.lambda.size(), mpg.lambda) && bf.is_optimal(mpg.pair);
    }
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

std::vector<TrialRecord> run_smoothed_trials(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<TrialRecord> out(static_cast<std::size_t>(cfg.trials));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int t = next++; t < cfg.trials; t = next++) {
      try {
        out[static_cast<std::size_t>(t)] = run_trial(cfg, t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int nthreads = std::min(cfg.threads, cfg.trials);
  std::vector<std::thread> pool;
  for (int k = 1; k < nthreads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::string trials_to_csv(const std::vector<TrialRecord>& records, bool timings) {
  std::string out = std::string(kBenchCsvVersion) + "\n";
  out += "trial,seed,n,m,phi,delta,in_U,switches,gamma_updates,final_gamma,verified,lambda,pair";
  out += timings ? ",wall_ms\n" : "\n";
  for (const auto& r : records) {
    std::string pair;
    for (std::size_t v = 0; v < r.pair.successor.size(); ++v) {
      if (v) pair += ' ';
      pair += std::to_string(r.pair.successor[v] + 1);
    }
    out += std::to_string(r.trial) + "," + std::to_string(r.seed) + "," + std::to_string(r.n) + "," +
           std::to_string(r.m) + "," + format_double(r.phi) + "," + (r.delta ? to_string(*r.delta) : "inf") + "," +
           (r.in_U ? "1" : "0") + "," + std::to_string(r.switches) + "," + std::to_string(r.gamma_updates) + "," +
           to_string(r.final_gamma) + "," + (r.verified ? "1" : "0") + "," + to_string(r.lambda) + "," + pair;
    if (timings) out += "," + format_double(r.wall_ms);
    out += "\n";
  }
  return out;
}

bool TailReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const TailRow& r) { return r.pass; });
}

std::string TailReport::to_csv() const {
  std::string out = "epsilon,threshold,exceed,freq,bound,pass\n";
  for (const auto& r : rows) {
    out += format_double(r.epsilon) + "," + format_double(r.threshold) + "," + std::to_string(r.exceed) + "," +
           format_double(r.freq) + "," + format_double(r.bound) + "," + (r.pass ? "1" : "0") + "\n";
  }
  return out;
}

TailReport condition_tail_report(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records) {
  TailReport rep;
  rep.trials = static_cast<int>(records.size());
  rep.phi = cfg.dist.phi();
  rep.m = records.empty() ? 0 : records.front().m;
  const double N = static_cast<double>(records.size());
  for (double eps : cfg.epsilons) {
    TailRow row;
    row.epsilon = eps;
    row.threshold = tail_threshold(rep.m, rep.phi, eps);
    for (const auto& r : records) {
      if (!r.in_U || !r.delta || to_double(*r.delta) >= row.threshold) ++row.exceed;
    }
    row.freq = N > 0 ? row.exceed / N : 0.0;
    row.bound = eps + 3.0 * std::sqrt(eps * (1.0 - eps) / std::max(N, 1.0));
    row.pass = row.freq <= row.bound;
    rep.rows.push_back(row);
  }
  return rep;
}

TailReport condition_tail_report(const ExperimentConfig& cfg) {
  return condition_tail_report(cfg, run_smoothed_trials(cfg));
}

ProbeResult robustness_probe(const Game& g, const PolicyPair& pair, const Rational& delta, int samples,
                             std::uint64_t seed) {
  ConeCertificate base;
  try {
    base = cone_membership(g, pair);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotCertified, e.what());
  }
  if (!base.inside_strict) throw Error(ErrorCode::NotCertified, "the pair is not strictly certified");
  if (delta < 0) throw Error(ErrorCode::DomainError, "delta must be non-negative");
  ProbeResult res;
  res.samples = samples;
  const std::vector<Rational> r = g.weights();
  for (int s = 0; s < samples; ++s) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    std::vector<Rational> w = r;
    for (auto& x : w) {
      if (s % 2 == 0) {
        x += (rng() & 1U) ? delta : Rational(-delta);
      } else {
        x += delta * dyadic_from_double(std::uniform_real_distribution<double>(-1.0, 1.0)(rng), 53);
      }
    }
    bool kept = false;
    const Game gs = g.with_weights(w);
    try {
      kept = cone_membership(gs, pair).inside_strict;
    } catch (const Error&) {
      kept = false;
    }
    if (kept) {
      ++res.preserved;
    } else if (!res.counterexample) {
      res.counterexample = std::move(w);
    }
  }
  res.fraction = samples ? static_cast<double>(res.preserved) / samples : 1.0;
  return res;
}

}  // namespace mpg
