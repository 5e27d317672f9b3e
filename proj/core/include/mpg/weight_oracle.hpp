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
#include <vector>

#include "mpg/rational.hpp"

namespace mpg {

/// Reveals hidden exact weights bit by bit. query(eps) cuts every weight's
/// binary expansion after k fractional digits, k the smallest integer with
/// 2^-k <= eps, so |r - r~| < 2^-k <= eps. Bits already revealed are not
/// counted twice.
class WeightOracle {
 public:
  explicit WeightOracle(std::vector<Rational> hidden);

  std::vector<Rational> query(const Rational& eps);

  int num_edges() const noexcept { return static_cast<int>(hidden_.size()); }
  /// Fractional bits revealed so far (-1 before the first query).
  int fractional_bits() const noexcept { return bits_; }
  /// Total number of bits revealed: sign and integer part on first contact,
  /// then each new fractional digit.
  std::uint64_t bit_queries() const noexcept { return counter_; }

  /// Escape hatch for tests and verification; solvers never call it.
  const std::vector<Rational>& hidden_weights() const noexcept { return hidden_; }

 private:
  std::vector<Rational> hidden_;
  int bits_ = -1;
  std::uint64_t counter_ = 0;
};

}  // namespace mpg
