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

#include "mpg/random_instances.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "json_specs.hpp"
#include "mpg/ergodic.hpp"
#include "mpg/error.hpp"

namespace mpg {

using nlohmann::json;

GraphSpec GraphSpec::complete_bipartite(int n_max, int n_min) {
  GraphSpec s;
  s.shape = Shape::CompleteBipartite;
  s.n_max = n_max;
  s.n_min = n_min;
  return s;
}

GraphSpec GraphSpec::ring_with_chords(int n, int extra) {
  GraphSpec s;
  s.shape = Shape::RingWithChords;
  s.n = n;
  s.extra = extra;
  return s;
}

GraphSpec GraphSpec::fixture_graph(std::string name, FixtureParams params) {
  GraphSpec s;
  s.shape = Shape::Fixture;
  s.fixture = std::move(name);
  s.params = std::move(params);
  return s;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

Game bipartite(int a, int b) {
  std::vector<Player> owner(static_cast<std::size_t>(a + b), Player::Min);
  for (int v = 0; v < a; ++v) owner[static_cast<std::size_t>(v)] = Player::Max;
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i) {
    for (int j = a; j < a + b; ++j) {
      edges.push_back({i, j, 0});
      edges.push_back({j, i, 0});
    }
  }
  return Game(a + b, std::move(owner), std::move(edges));
}

Game ring(int n, const std::vector<std::pair<Vertex, Vertex>>& chords) {
  std::vector<Player> owner(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) owner[static_cast<std::size_t>(v)] = v % 2 == 0 ? Player::Max : Player::Min;
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, 0});
  for (auto [a, b] : chords) edges.push_back({a, b, 0});
  return Game(n, std::move(owner), std::move(edges));
}

std::vector<std::pair<Vertex, Vertex>> random_chords(int n, int extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::set<std::pair<Vertex, Vertex>> used;
  for (int v = 0; v < n; ++v) used.insert({v, (v + 1) % n});
  std::vector<std::pair<Vertex, Vertex>> out;
  while (static_cast<int>(out.size()) < extra) {
    std::pair<Vertex, Vertex> c{pick(rng), pick(rng)};
    if (used.insert(c).second) out.push_back(c);
  }
  return out;
}

}  // namespace

Game gen_graph(const GraphSpec& spec, std::uint64_t seed) {
  switch (spec.shape) {
    case GraphSpec::Shape::CompleteBipartite:
      if (spec.n_max < 1 || spec.n_min < 1) throw Error(ErrorCode::BadSpec, "bipartite sides must be positive");
      return bipartite(spec.n_max, spec.n_min);
    case GraphSpec::Shape::RingWithChords: {
      const int n = spec.n;
      if (n < 1) throw Error(ErrorCode::BadSpec, "ring size must be positive");
      if (spec.extra < 0) throw Error(ErrorCode::BadSpec, "chord count must be non-negative");
      if (n > 16) {
        // Chords into vertex 0: every dominion then contains vertex 0.
        if (spec.extra > n - 2) throw Error(ErrorCode::BadSpec, "too many chords for a ring of this size");
        std::vector<Vertex> sources;
        for (Vertex v = 1; v < n - 1; ++v) sources.push_back(v);
        std::shuffle(sources.begin(), sources.end(), std::mt19937_64(seed));
        std::vector<std::pair<Vertex, Vertex>> chords;
        for (int k = 0; k < spec.extra; ++k) chords.push_back({sources[static_cast<std::size_t>(k)], 0});
        return ring(n, chords);
      }
      if (spec.extra > n * n - n) throw Error(ErrorCode::BadSpec, "too many chords for a ring of this size");
      for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
        Game g = ring(n, random_chords(n, spec.extra, derive_seed(seed, attempt)));
        if (is_ergodic_bruteforce(g).ergodic) return g;
      }
      throw Error(ErrorCode::BadSpec, "no ergodic chord placement found");
    }
    case GraphSpec::Shape::Fixture:
      return paper_fixture(spec.fixture, spec.params);
  }
  throw Error(ErrorCode::BadSpec, "unknown graph shape");
}

DistributionSpec DistributionSpec::gaussian(double mean, double sigma) {
  DistributionSpec d;
  d.kind = Kind::Gaussian;
  d.mean = mean;
  d.sigma = sigma;
  return d;
}

DistributionSpec DistributionSpec::uniform(double center, double width) {
  DistributionSpec d;
  d.kind = Kind::Uniform;
  d.mean = center;
  d.width = width;
  return d;
}

DistributionSpec DistributionSpec::exponential(double rate) {
  DistributionSpec d;
  d.kind = Kind::Exponential;
  d.rate = rate;
  return d;
}

double DistributionSpec::phi() const {
  switch (kind) {
    case Kind::Gaussian: return 1.0 / sigma;
    case Kind::Uniform: return 1.0 / width;
    case Kind::Exponential: return rate;
  }
  return 1.0;
}

void DistributionSpec::validate(std::size_t num_edges) const {
  auto in_range = [](double m) { return std::isfinite(m) && m >= -1.0 && m <= 1.0; };
  switch (kind) {
    case Kind::Gaussian:
      if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(ErrorCode::BadSpec, "sigma must be positive");
      break;
    case Kind::Uniform:
      if (!(width > 0.0) || !std::isfinite(width)) throw Error(ErrorCode::BadSpec, "width must be positive");
      break;
    case Kind::Exponential:
      // mean 1/rate must stay within [-1,1]
      if (!(rate >= 1.0) || !std::isfinite(rate)) throw Error(ErrorCode::BadSpec, "rate must be at least 1");
      return;
  }
  switch (mean_mode) {
    case MeanMode::Constant:
      if (!in_range(mean)) throw Error(ErrorCode::BadSpec, "mean must lie in [-1,1]");
      break;
    case MeanMode::PerEdge:
      if (means.size() != num_edges) throw Error(ErrorCode::BadSpec, "one mean per edge is required");
      for (double m : means) {
        if (!in_range(m)) throw Error(ErrorCode::BadSpec, "every mean must lie in [-1,1]");
      }
      break;
    case MeanMode::RandomUniform:
      break;
  }
}

Game sample_weights(const Game& skeleton, const DistributionSpec& dist, std::uint64_t seed) {
  dist.validate(static_cast<std::size_t>(skeleton.num_edges()));
  std::vector<Rational> w;
  w.reserve(static_cast<std::size_t>(skeleton.num_edges()));
  for (EdgeId e = 0; e < skeleton.num_edges(); ++e) {
    const auto idx = static_cast<std::uint64_t>(e);
    double mean = dist.mean;
    if (dist.mean_mode == DistributionSpec::MeanMode::PerEdge) {
      mean = dist.means[static_cast<std::size_t>(e)];
    } else if (dist.mean_mode == DistributionSpec::MeanMode::RandomUniform) {
      std::mt19937_64 mrng(derive_seed(dist.mean_seed, idx));
      mean = std::uniform_real_distribution<double>(-1.0, 1.0)(mrng);
    }
    std::mt19937_64 rng(derive_seed(seed, idx));
    double x = 0.0;
    switch (dist.kind) {
      case DistributionSpec::Kind::Gaussian:
        x = std::normal_distribution<double>(mean, dist.sigma)(rng);
        break;
      case DistributionSpec::Kind::Uniform:
        x = std::uniform_real_distribution<double>(mean - dist.width / 2, mean + dist.width / 2)(rng);
        break;
      case DistributionSpec::Kind::Exponential:
        x = std::exponential_distribution<double>(dist.rate)(rng);
        break;
    }
    w.push_back(dyadic_from_double(x, 64));
  }
  return skeleton.with_weights(std::move(w));
}

namespace detail {

json graph_spec_json(const GraphSpec& s) {
  switch (s.shape) {
    case GraphSpec::Shape::CompleteBipartite:
      return {{"shape", "complete_bipartite"}, {"n_max", s.n_max}, {"n_min", s.n_min}};
    case GraphSpec::Shape::RingWithChords:
      return {{"shape", "ring_with_chords"}, {"n", s.n}, {"extra", s.extra}};
    case GraphSpec::Shape::Fixture: {
      json j = {{"shape", "fixture"}, {"name", s.fixture}, {"x", to_string(s.params.x)},
                {"eps", to_string(s.params.eps)}, {"n", s.params.n}};
      json ws = json::array();
      for (const auto& w : s.params.weights) ws.push_back(to_string(w));
      j["weights"] = std::move(ws);
      return j;
    }
  }
  return {};
}

namespace {

[[noreturn]] void spec_fail(const std::string& what) { throw Error(ErrorCode::BadSpec, what); }

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    spec_fail(std::string("field '") + key + "' has the wrong type");
  }
}

Rational rational_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return 0;
  if (it->is_string()) return parse_rational(it->get<std::string>());
  if (it->is_number_integer()) return Rational(it->get<long>());
  if (it->is_number_float()) return Rational(it->get<double>());
  spec_fail(std::string("field '") + key + "' must be a rational");
}

}  // namespace

GraphSpec graph_spec_from(const json& j) {
  if (!j.is_object()) spec_fail("graph spec must be an object");
  const auto shape = get_or<std::string>(j, "shape", "");
  if (shape == "complete_bipartite") {
    return GraphSpec::complete_bipartite(get_or<int>(j, "n_max", 3), get_or<int>(j, "n_min", 3));
  }
  if (shape == "ring_with_chords") return GraphSpec::ring_with_chords(get_or<int>(j, "n", 6), get_or<int>(j, "extra", 0));
  if (shape == "fixture") {
    FixtureParams p;
    p.x = rational_field(j, "x");
    p.eps = rational_field(j, "eps");
    p.n = get_or<int>(j, "n", 3);
    if (auto it = j.find("weights"); it != j.end() && it->is_array()) {
      for (const auto& w : *it) p.weights.push_back(w.is_string() ? parse_rational(w.get<std::string>()) : Rational(w.get<double>()));
    }
    return GraphSpec::fixture_graph(get_or<std::string>(j, "name", ""), std::move(p));
  }
  spec_fail("unknown graph shape '" + shape + "'");
}

json distribution_json(const DistributionSpec& d) {
  json j;
  switch (d.kind) {
    case DistributionSpec::Kind::Gaussian:
      j = {{"kind", "gaussian"}, {"sigma", d.sigma}};
      break;
    case DistributionSpec::Kind::Uniform:
      j = {{"kind", "uniform"}, {"width", d.width}};
      break;
    case DistributionSpec::Kind::Exponential:
      return {{"kind", "exponential"}, {"rate", d.rate}};
  }
  switch (d.mean_mode) {
    case DistributionSpec::MeanMode::Constant:
      j["mean"] = d.mean;
      break;
    case DistributionSpec::MeanMode::PerEdge:
      j["means"] = d.means;
      break;
    case DistributionSpec::MeanMode::RandomUniform:
      j["mean"] = "random";
      j["mean_seed"] = d.mean_seed;
      break;
  }
  return j;
}

DistributionSpec distribution_from(const json& j) {
  if (!j.is_object()) spec_fail("distribution spec must be an object");
  const auto kind = get_or<std::string>(j, "kind", "");
  DistributionSpec d;
  if (kind == "gaussian") {
    d.kind = DistributionSpec::Kind::Gaussian;
    if (j.contains("phi")) {
      d.sigma = 1.0 / get_or<double>(j, "phi", 5.0);
    } else {
      d.sigma = get_or<double>(j, "sigma", 0.2);
    }
  } else if (kind == "uniform") {
    d.kind = DistributionSpec::Kind::Uniform;
    d.width = get_or<double>(j, "width", 1.0);
  } else if (kind == "exponential") {
    d.kind = DistributionSpec::Kind::Exponential;
    d.rate = get_or<double>(j, "rate", 1.0);
    return d;
  } else {
    spec_fail("unknown distribution kind '" + kind + "'");
  }
  if (auto it = j.find("means"); it != j.end()) {
    d.mean_mode = DistributionSpec::MeanMode::PerEdge;
    d.means = get_or<std::vector<double>>(j, "means", {});
  } else if (auto m = j.find("mean"); m != j.end() && m->is_string()) {
    if (m->get<std::string>() != "random") spec_fail("field 'mean' must be a number or \"random\"");
    d.mean_mode = DistributionSpec::MeanMode::RandomUniform;
    d.mean_seed = get_or<std::uint64_t>(j, "mean_seed", 0);
  } else {
    d.mean = get_or<double>(j, "mean", 0.0);
  }
  return d;
}

}  // namespace detail

std::string to_json(const GraphSpec& s) { return detail::graph_spec_json(s).dump(); }
std::string to_json(const DistributionSpec& d) { return detail::distribution_json(d).dump(); }

GraphSpec graph_spec_from_json(const std::string& text) {
  try {
    return detail::graph_spec_from(json::parse(text));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadSpec, std::string("malformed JSON: ") + e.what());
  }
}

DistributionSpec distribution_spec_from_json(const std::string& text) {
  try {
    return detail::distribution_from(json::parse(text));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadSpec, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace mpg
