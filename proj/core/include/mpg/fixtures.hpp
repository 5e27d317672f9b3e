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

#include <string>
#include <string_view>
#include <vector>

#include "mpg/game.hpp"

namespace mpg {

/// Free parameters of the catalog games. Unused fields are ignored.
struct FixtureParams {
  Rational x = 0;    ///< parametrized edge weight ("non_convex", "unstable", "exponential")
  Rational eps = 0;  ///< small perturbation ("emerging_policies", "unstable_good_approx")
  int n = 3;         ///< family size ("exponential" has 2n vertices)
  /// Edge weights for the one-player cell examples, in the edge order listed
  /// by fixture_names(); missing entries default to 0.
  std::vector<Rational> weights;
};

/// Small hand-built games used throughout the tests and examples:
///
///  - "non_convex": value min{x/4, max{1, x/3 - 1}} in the weight x of (1,2).
///  - "exponential": 2n states; the value as a function of the weight x of
///    (4,2) has exponentially many breakpoints on [0,2].
///  - "emerging_policies": Min may switch to (1,3) once eps drops to 0.
///  - "unstable_good_approx": optimal Min policies change under a perturbation of (1,2).
///  - "unstable": value 0 for every x; optimal policies still depend on x.
///  - "blackwell": one-player game with a unique Blackwell-optimal policy but
///    several bias-induced ones.
///  - "one_player_3cycle": edges (1,1),(1,2),(2,1),(2,2).
///  - "one_player_4policies": edges (1,2),(1,3),(2,1),(2,2),(3,2).
///
/// Throws Error{UnknownFixture} for any other name.
Game paper_fixture(std::string_view name, const FixtureParams& params = {});

std::vector<std::string> fixture_names();

}  // namespace mpg
