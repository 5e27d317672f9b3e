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

#include "mpg/weight_oracle.hpp"

#include "mpg/error.hpp"

namespace mpg {

WeightOracle::WeightOracle(std::vector<Rational> hidden) : hidden_(std::move(hidden)) {}

std::vector<Rational> WeightOracle::query(const Rational& eps) {
  if (eps <= 0) throw Error(ErrorCode::DomainError, "oracle precision must be positive");
  const int k = bits_for_precision(eps);
  if (bits_ < 0) {
    for (const Rational& r : hidden_) {
      mpz_class whole = abs(r).get_num() / abs(r).get_den();
      counter_ += 1 + (whole == 0 ? 0 : mpz_sizeinbase(whole.get_mpz_t(), 2));
    }
    counter_ += static_cast<std::uint64_t>(k) * hidden_.size();
    bits_ = k;
  } else if (k > bits_) {
    counter_ += static_cast<std::uint64_t>(k - bits_) * hidden_.size();
    bits_ = k;
  }
  std::vector<Rational> out;
  out.reserve(hidden_.size());
  for (const Rational& r : hidden_) out.push_back(truncate_to_bits(r, bits_));
  return out;
}

}  // namespace mpg
