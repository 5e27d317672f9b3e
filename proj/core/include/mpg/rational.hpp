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

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mpg {

/// Exact rational number. All weights, values and biases on the exact paths are
/// carried in this type so that strict inequalities are decided without rounding.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal literal such as "-1.25" or "3e-2".
/// Throws Error{ParseError} on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

Rational abs(const Rational& q);

/// Exact value of 2^k for any integer k.
Rational pow2(long k);

/// Rounds x to the nearest multiple of 2^-bits (ties away from zero).
/// Every finite double is dyadic, so the result is exact.
Rational dyadic_from_double(double x, int bits = 64);

/// floor(q * 2^bits) / 2^bits: the binary expansion of q cut after `bits`
/// fractional digits. |q - result| < 2^-bits.
Rational truncate_to_bits(const Rational& q, int bits);

/// Smallest k >= 0 with 2^-k <= eps (eps > 0).
int bits_for_precision(const Rational& eps);

/// q^k for k >= 0 by repeated squaring.
Rational pow(const Rational& q, unsigned k);

/// Maximum absolute entry; 0 for an empty range.
Rational sup_norm(const std::vector<Rational>& v);

}  // namespace mpg
