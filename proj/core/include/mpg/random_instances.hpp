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
#include <string>
#include <vector>

#include "mpg/fixtures.hpp"
#include "mpg/game.hpp"

namespace mpg {

struct GraphSpec {
  enum class Shape { CompleteBipartite, RingWithChords, Fixture };
  Shape shape = Shape::CompleteBipartite;
  int n_max = 3;  ///< complete bipartite
  int n_min = 3;
  int n = 6;      ///< ring size
  int extra = 0;  ///< ring chords
  std::string fixture;  ///< fixture name
  FixtureParams params;

  static GraphSpec complete_bipartite(int n_max, int n_min);
  static GraphSpec ring_with_chords(int n, int extra);
  static GraphSpec fixture_graph(std::string name, FixtureParams params = {});

  /// True for shapes that are ergodic by construction.
  bool guarantees_ergodic() const { return shape != Shape::Fixture; }
};

/// Skeleton with zero weights (fixtures keep their own weights).
///
///  - complete bipartite: Max vertices 0..n_max-1, then Min vertices, edges in
///    both directions between every Max/Min pair.
///  - ring with chords: ring i -> i+1 with owners alternating (even = Max) plus
///    `extra` random chords. Up to 16 vertices chords are resampled until the
///    brute-force ergodicity check passes; beyond that chords point to vertex 0.
///
/// Throws Error{BadSpec} for non-positive sizes or impossible chord counts.
Game gen_graph(const GraphSpec& spec, std::uint64_t seed);

struct DistributionSpec {
  enum class Kind { Gaussian, Uniform, Exponential };
  enum class MeanMode { Constant, PerEdge, RandomUniform };
  Kind kind = Kind::Gaussian;
  MeanMode mean_mode = MeanMode::Constant;
  double mean = 0.0;               ///< Constant mode
  std::vector<double> means;       ///< PerEdge mode, one per edge
  std::uint64_t mean_seed = 0;     ///< RandomUniform mode: means drawn from U[-1,1]
  double sigma = 0.2;              ///< gaussian standard deviation
  double width = 1.0;              ///< uniform support width
  double rate = 1.0;               ///< exponential rate

  static DistributionSpec gaussian(double mean, double sigma);
  static DistributionSpec uniform(double center, double width);
  static DistributionSpec exponential(double rate = 1.0);

  /// Density bound: 1/sigma, 1/width, or the rate.
  double phi() const;
  /// Throws Error{BadSpec} when parameters are invalid or a mean leaves [-1,1].
  void validate(std::size_t num_edges) const;
};

/// Per-edge independent draws rounded to 64 fractional bits. Edge e uses its
/// own stream seeded from (seed, e).
Game sample_weights(const Game& skeleton, const DistributionSpec& dist, std::uint64_t seed);

/// Mixes a seed with a stream index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

std::string to_json(const GraphSpec& s);
std::string to_json(const DistributionSpec& d);
GraphSpec graph_spec_from_json(const std::string& text);
DistributionSpec distribution_spec_from_json(const std::string& text);

}  // namespace mpg
