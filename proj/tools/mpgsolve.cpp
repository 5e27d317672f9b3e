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

// mpgsolve: generate, solve, verify and benchmark mean-payoff and discounted games.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 budget exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpg/breakpoints.hpp"
#include "mpg/brute_force.hpp"
#include "mpg/ergodic.hpp"
#include "mpg/experiments.hpp"
#include "mpg/fixtures.hpp"
#include "mpg/game_io.hpp"
#include "mpg/policy_iteration.hpp"
#include "mpg/zero_player.hpp"

namespace {

using nlohmann::json;
using namespace mpg;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IOError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IOError, "cannot write " + path);
  out << text;
}

struct FixtureArgs {
  std::string name;
  std::string x = "0";
  std::string eps = "0";
  int n = 3;
  std::vector<std::string> weights;

  FixtureParams params() const {
    FixtureParams p;
    p.x = parse_rational(x);
    p.eps = parse_rational(eps);
    p.n = n;
    for (const auto& w : weights) p.weights.push_back(parse_rational(w));
    return p;
  }
};

void add_fixture_options(CLI::App* cmd, FixtureArgs& f) {
  cmd->add_option("--fixture", f.name, "Catalog game name");
  cmd->add_option("--x", f.x, "Fixture parameter x");
  cmd->add_option("--eps", f.eps, "Fixture parameter eps");
  cmd->add_option("--size", f.n, "Fixture family size (exponential)");
  cmd->add_option("--weights", f.weights, "Fixture edge weights (one-player cells)");
}

Game load_input(const std::string& path, const FixtureArgs& f) {
  if (!f.name.empty()) return paper_fixture(f.name, f.params());
  if (path.empty()) throw Error(ErrorCode::BadSpec, "a game file or --fixture is required");
  return load_game_file(path);
}

std::uint64_t apply_seed_override(std::uint64_t seed) {
  if (const char* env = std::getenv("MPG_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadSpec, "MPG_SEED must be an unsigned integer");
    }
  }
  return seed;
}

EdgeRef parse_edge(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::BadSpec, "edge must be written i,j");
  try {
    return {std::stoi(s.substr(0, comma)) - 1, std::stoi(s.substr(comma + 1)) - 1};
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadSpec, "edge must be written i,j");
  }
}

json pair_json(const PolicyPair& p) {
  json a = json::array();
  for (Vertex v : p.successor) a.push_back(v + 1);
  return a;
}

json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

json result_json(const SolveResult& r, const std::optional<Rational>& gamma_bar) {
  json j;
  j["pair"] = pair_json(r.pair);
  j["values"] = rationals_json(r.values);
  if (gamma_bar) {
    j["gamma"] = to_string(*gamma_bar);
  } else {
    j["lambda"] = to_string(r.lambda);
    j["u"] = rationals_json(r.u);
  }
  if (r.value_error) j["value_error"] = to_string(*r.value_error);
  j["halt"] = std::string(to_string(r.trace.halt));
  j["switches"] = r.trace.total_switches;
  j["gamma_updates"] = r.trace.gamma_updates;
  j["final_gamma"] = to_string(r.trace.final_gamma());
  if (r.trace.final_bits) j["final_bits"] = *r.trace.final_bits;
  if (r.certificate) {
    j["certificate"] = {{"inside_strict", r.certificate->inside_strict},
                        {"margin", r.certificate->margin ? to_string(*r.certificate->margin) : "inf"}};
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

// ---- subcommands -----------------------------------------------------------

struct GenArgs {
  FixtureArgs fixture;
  std::string config;
  int trial = 0;
  std::string shape = "bipartite";
  int n_max = 3;
  int n_min = 3;
  int n = 6;
  int extra = 0;
  std::string dist = "gaussian";
  double phi = 5.0;
  double mean = 0.0;
  std::uint64_t seed = 0;
  std::string output;
};

int run_gen(const GenArgs& a) {
  Game g;
  if (!a.fixture.name.empty()) {
    g = paper_fixture(a.fixture.name, a.fixture.params());
  } else if (!a.config.empty()) {
    ExperimentConfig cfg = config_from_json(read_file(a.config));
    cfg.seed = apply_seed_override(cfg.seed);
    g = trial_game(cfg, a.trial);
  } else {
    GraphSpec gs = a.shape == "ring" ? GraphSpec::ring_with_chords(a.n, a.extra)
                                     : GraphSpec::complete_bipartite(a.n_max, a.n_min);
    if (a.shape != "ring" && a.shape != "bipartite") throw Error(ErrorCode::BadSpec, "unknown shape " + a.shape);
    DistributionSpec ds;
    if (a.dist == "gaussian") {
      ds = DistributionSpec::gaussian(a.mean, 1.0 / a.phi);
    } else if (a.dist == "uniform") {
      ds = DistributionSpec::uniform(a.mean, 1.0 / a.phi);
    } else if (a.dist == "exponential") {
      ds = DistributionSpec::exponential(a.phi);
    } else {
      throw Error(ErrorCode::BadSpec, "unknown distribution " + a.dist);
    }
    const std::uint64_t seed = apply_seed_override(a.seed);
    g = sample_weights(gen_graph(gs, derive_seed(seed, 0)), ds, derive_seed(seed, 1));
  }
  write_output(a.output, save_game(g));
  return kOk;
}

struct SolveArgs {
  std::string game;
  FixtureArgs fixture;
  std::string discounted;
  bool oracle = false;
  bool use_float = false;
  std::string trace;
  std::string output;
};

int run_solve(const SolveArgs& a) {
  const Game g = load_input(a.game, a.fixture);
  SolverConfig cfg;
  cfg.mode = a.use_float ? ArithmeticMode::Float : ArithmeticMode::Exact;
  if (!a.trace.empty()) cfg.trace = TraceLevel::Events;
  std::optional<Rational> gamma_bar;
  if (!a.discounted.empty()) gamma_bar = parse_rational(a.discounted);
  SolveResult res;
  try {
    if (a.oracle) {
      WeightOracle oracle(g.weights());
      res = gamma_bar ? solve_discounted_truncated(oracle, g, *gamma_bar, cfg) : solve_mpg_truncated(oracle, g, cfg);
    } else {
      res = gamma_bar ? solve_discounted(g, *gamma_bar, cfg) : solve_mpg(g, cfg);
    }
  } catch (const CapHitError& e) {
    if (!a.trace.empty()) write_output(a.trace, trace_to_jsonl(e.trace()));
    throw;
  }
  if (!a.trace.empty()) write_output(a.trace, trace_to_jsonl(res.trace));
  write_output(a.output, result_json(res, gamma_bar).dump(2) + "\n");
  return kOk;
}

struct VerifyArgs {
  std::string game;
  std::string result;
};

PolicyPair pair_from_json(const Game& g, const json& j) {
  PolicyPair p;
  for (const auto& v : j.at("pair")) p.successor.push_back(v.get<int>() - 1);
  if (!is_legal(g, p)) throw Error(ErrorCode::ValidationError, "claimed pair is not legal");
  return p;
}

int run_verify(const VerifyArgs& a) {
  const Game g = load_game_file(a.game);
  json claim;
  try {
    claim = json::parse(read_file(a.result));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("result file: ") + e.what());
  }
  PolicyPair pair;
  try {
    pair = pair_from_json(g, claim);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field 'pair': ") + e.what());
  }
  if (claim.contains("gamma")) {
    const Rational gamma = parse_rational(claim["gamma"].get<std::string>());
    const bool optimal = is_discounted_optimal(g, pair, gamma);
    bool values_ok = true;
    if (claim.contains("values") && !claim.contains("value_error")) {
      const auto vals = discounted_value_zero_player(g, pair, gamma);
      for (std::size_t i = 0; i < vals.size(); ++i) {
        values_ok = values_ok && parse_rational(claim["values"].at(i).get<std::string>()) == vals[i];
      }
    }
    std::cout << (optimal && values_ok ? "verified" : "rejected") << ": discounted pair at gamma " << to_string(gamma)
              << "\n";
    return optimal && values_ok ? kOk : kVerifyFailed;
  }
  // Mean-payoff claim: the pair's Blackwell bias must solve the ergodic
  // equation with tight policy edges; small games fall back on enumeration.
  const MeanBiasSolution mb = blackwell_bias_zero_player(g, pair);
  bool optimal = mb.constant_value && check_ergodic_equation(g, {mb.lambda.front(), mb.u}).solves();
  if (!optimal && g.num_vertices() <= 8) {
    try {
      const auto bf = brute_force_solve(g);
      optimal = bf.is_optimal(pair);
    } catch (const Error&) {
    }
  }
  bool lambda_ok = true;
  if (claim.contains("lambda")) {
    const Rational claimed = parse_rational(claim["lambda"].get<std::string>());
    const Rational tol = claim.contains("value_error") ? parse_rational(claim["value_error"].get<std::string>()) : 0;
    lambda_ok = mb.constant_value && abs(claimed - mb.lambda.front()) <= tol;
  }
  std::cout << (optimal && lambda_ok ? "verified" : "rejected") << ": mean-payoff pair, lambda "
            << to_string(mb.lambda.front()) << "\n";
  return optimal && lambda_ok ? kOk : kVerifyFailed;
}

struct BenchArgs {
  std::string config;
  std::string output;
  int threads = 0;
  bool timings = false;
};

ExperimentConfig load_config(const std::string& path) {
  ExperimentConfig cfg = config_from_json(read_file(path));
  cfg.seed = apply_seed_override(cfg.seed);
  return cfg;
}

int run_bench(const BenchArgs& a) {
  ExperimentConfig cfg = load_config(a.config);
  if (a.threads > 0) cfg.threads = a.threads;
  if (a.timings) cfg.timings = true;
  const auto records = run_smoothed_trials(cfg);
  write_output(a.output.empty() ? cfg.output : a.output, trials_to_csv(records, cfg.timings));
  for (const auto& r : records) {
    if (r.verify_ran && !r.verified) return kVerifyFailed;
  }
  return kOk;
}

struct ScanArgs {
  std::string game;
  FixtureArgs fixture;
  std::string edge;
  std::string from = "0";
  std::string to = "1";
  std::size_t budget = 2000;
  std::string output;
};

int run_scan(const ScanArgs& a) {
  const Game g = load_input(a.game, a.fixture);
  const BreakpointCurve c =
      two_player_breakpoint_scan(g, parse_edge(a.edge), parse_rational(a.from), parse_rational(a.to), a.budget);
  write_output(a.output, curve_to_csv(c));
  if (!c.complete) {
    std::cerr << "mpgsolve: scan budget of " << a.budget << " solves exhausted; curve is partial\n";
    return kBudget;
  }
  return kOk;
}

struct TailArgs {
  std::string config;
  std::string output;
  int threads = 0;
};

int run_tail(const TailArgs& a) {
  ExperimentConfig cfg = load_config(a.config);
  if (a.threads > 0) cfg.threads = a.threads;
  const TailReport rep = condition_tail_report(cfg);
  write_output(a.output, rep.to_csv());
  return rep.pass() ? kOk : kVerifyFailed;
}

struct ProbeArgs {
  std::string game;
  FixtureArgs fixture;
  std::string delta;
  int samples = 100;
  std::uint64_t seed = 0;
};

int run_probe(const ProbeArgs& a) {
  const Game g = load_input(a.game, a.fixture);
  const SolveResult res = solve_mpg(g);
  if (!res.certificate) {
    std::cerr << "mpgsolve: the solution carries no strict cone certificate\n";
    return kVerifyFailed;
  }
  Rational delta;
  if (a.delta.empty()) {
    delta = theory_bounds(g.num_vertices(), g.num_edges(), 1, 1, 1).robustness_delta;
  } else {
    delta = parse_rational(a.delta);
  }
  const ProbeResult pr = robustness_probe(g, res.pair, delta, a.samples, apply_seed_override(a.seed));
  json j = {{"delta", to_string(delta)},
            {"samples", pr.samples},
            {"preserved", pr.preserved},
            {"fraction", pr.fraction}};
  j["counterexample"] = pr.counterexample ? rationals_json(*pr.counterexample) : json(nullptr);
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::CapHit:
    case ErrorCode::BudgetExhausted:
      return kBudget;
    case ErrorCode::NotCertified:
    case ErrorCode::NotSingleCycle:
      return kVerifyFailed;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Policy-iteration solver for mean-payoff and discounted games"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a game (random or catalog) as JSON");
  add_fixture_options(gen_cmd, gen.fixture);
  gen_cmd->add_option("--config", gen.config, "Experiment config; emits the game of --trial");
  gen_cmd->add_option("--trial", gen.trial, "Trial index within --config");
  gen_cmd->add_option("--shape", gen.shape, "bipartite or ring")->check(CLI::IsMember({"bipartite", "ring"}));
  gen_cmd->add_option("--n-max", gen.n_max, "Max vertices (bipartite)");
  gen_cmd->add_option("--n-min", gen.n_min, "Min vertices (bipartite)");
  gen_cmd->add_option("--n", gen.n, "Ring size");
  gen_cmd->add_option("--extra", gen.extra, "Ring chords");
  gen_cmd->add_option("--dist", gen.dist, "gaussian, uniform or exponential");
  gen_cmd->add_option("--phi", gen.phi, "Density bound (1/sigma, 1/width, or rate)");
  gen_cmd->add_option("--mean", gen.mean, "Weight mean in [-1,1]");
  gen_cmd->add_option("--seed", gen.seed, "Seed (MPG_SEED overrides)");
  gen_cmd->add_option("-o,--output", gen.output, "Output path (default stdout)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a game and print the result as JSON");
  solve_cmd->add_option("game", solve.game, "Game JSON file");
  add_fixture_options(solve_cmd, solve.fixture);
  solve_cmd->add_option("--discounted", solve.discounted, "Solve the discounted game at this discount");
  solve_cmd->add_flag("--oracle-model", solve.oracle, "Read weights through the truncating oracle");
  solve_cmd->add_flag("--float", solve.use_float, "Double-precision switching (throughput mode)");
  solve_cmd->add_option("--trace", solve.trace, "Write the solver trace as JSON lines");
  solve_cmd->add_option("-o,--output", solve.output, "Output path (default stdout)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a claimed result; exit 0 if optimal, 1 otherwise");
  verify_cmd->add_option("game", verify.game, "Game JSON file")->required();
  verify_cmd->add_option("result", verify.result, "Result JSON file")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run smoothed trials and emit CSV");
  bench_cmd->add_option("config", bench.config, "Experiment config JSON")->required();
  bench_cmd->add_option("-o,--output", bench.output, "CSV path (default: config output or stdout)");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads");
  bench_cmd->add_flag("--timings", bench.timings, "Add the wall_ms column");

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Breakpoint scan of the value in one edge weight");
  scan_cmd->add_option("game", scan.game, "Game JSON file");
  add_fixture_options(scan_cmd, scan.fixture);
  scan_cmd->add_option("--edge", scan.edge, "Edge i,j (1-based)")->required();
  scan_cmd->add_option("--from", scan.from, "Range start");
  scan_cmd->add_option("--to", scan.to, "Range end");
  scan_cmd->add_option("--budget", scan.budget, "Maximum number of exact solves");
  scan_cmd->add_option("-o,--output", scan.output, "CSV path (default stdout)");

  TailArgs tail;
  auto* tail_cmd = app.add_subcommand("tail", "Condition-number tail table against the theory bound");
  tail_cmd->add_option("config", tail.config, "Experiment config JSON")->required();
  tail_cmd->add_option("-o,--output", tail.output, "CSV path (default stdout)");
  tail_cmd->add_option("--threads", tail.threads, "Worker threads");

  ProbeArgs probe;
  auto* probe_cmd = app.add_subcommand("probe", "Robustness of the certified pair under sup-norm perturbations");
  probe_cmd->add_option("game", probe.game, "Game JSON file");
  add_fixture_options(probe_cmd, probe.fixture);
  probe_cmd->add_option("--delta", probe.delta, "Ball radius (default: theory value with phi = 1)");
  probe_cmd->add_option("--samples", probe.samples, "Number of sampled perturbations");
  probe_cmd->add_option("--seed", probe.seed, "Seed (MPG_SEED overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*verify_cmd) return run_verify(verify);
    if (*bench_cmd) return run_bench(bench);
    if (*scan_cmd) return run_scan(scan);
    if (*tail_cmd) return run_tail(tail);
    if (*probe_cmd) return run_probe(probe);
  } catch (const Error& e) {
    std::cerr << "mpgsolve: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "mpgsolve: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
