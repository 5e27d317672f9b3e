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

#include <vector>

#include "mpg/game.hpp"

namespace mpg {

struct ValueIterationResult {
  std::vector<double> value;
  int iterations = 0;
};

/// Iterates v <- max/min_j { (1-gamma) r_ij + gamma v_j } from 0 in double
/// precision until successive iterates are within tol * (1 - gamma) in the
/// sup norm, which bounds the distance to the fixed point by tol * gamma.
/// Throws Error{BadDiscount} unless 0 < gamma < 1, Error{DomainError} unless tol > 0.
ValueIterationResult value_iteration_discounted(const Game& g, double gamma, double tol);

}  // namespace mpg
