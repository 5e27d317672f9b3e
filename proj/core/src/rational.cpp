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

#include "mpg/rational.hpp"

#include <cctype>
#include <cmath>

#include "mpg/error.hpp"

namespace mpg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::BadDiscount: return "BadDiscount";
    case ErrorCode::NotSingleCycle: return "NotSingleCycle";
    case ErrorCode::NotCertified: return "NotCertified";
    case ErrorCode::EdgeUsedByPolicy: return "EdgeUsedByPolicy";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::CapHit: return "CapHit";
    case ErrorCode::NotOnePlayer: return "NotOnePlayer";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::IOError: return "IOError";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw Error(ErrorCode::ParseError, "invalid rational literal '" + std::string(text) + "'");
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) bad_literal(text);
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) bad_literal(text);
  if (!int_part.empty() && !all_digits(int_part)) bad_literal(text);
  if (!frac_part.empty() && !all_digits(frac_part)) bad_literal(text);

  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class mantissa(digits.empty() ? "0" : digits, 10);
  exponent -= static_cast<long>(frac_part.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational out;
  if (exponent >= 0) {
    out = Rational(mantissa * scale);
  } else {
    out = Rational(mantissa, scale);
    out.canonicalize();
  }
  return negative ? Rational(-out) : out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad_literal(text);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+')) {
      num_digits.remove_prefix(1);
    }
    if (!all_digits(num_digits) || !all_digits(den)) bad_literal(text);
    mpz_class n(std::string(num_digits), 10);
    if (!num.empty() && num.front() == '-') n = -n;
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
  }
  return parse_decimal(s);
}

std::string to_string(const Rational& q) {
  return q.get_str();
}

double to_double(const Rational& q) {
  return q.get_d();
}

Rational abs(const Rational& q) {
  return q < 0 ? Rational(-q) : q;
}

Rational pow2(long k) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(k < 0 ? -k : k));
  if (k >= 0) return Rational(p);
  return Rational(mpz_class(1), p);
}

Rational dyadic_from_double(double x, int bits) {
  if (!std::isfinite(x)) throw Error(ErrorCode::DomainError, "non-finite sample");
  Rational exact(x);
  Rational scaled = exact * pow2(bits);
  // round half away from zero
  mpz_class num = scaled.get_num();
  mpz_class den = scaled.get_den();
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  mpz_class twice_r = 2 * abs(r);
  if (twice_r >= den) q += (num < 0 ? -1 : 1);
  Rational out(q, mpz_class(1));
  out *= pow2(-bits);
  return out;
}

Rational truncate_to_bits(const Rational& q, int bits) {
  Rational scaled = q * pow2(bits);
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational out(f);
  out *= pow2(-bits);
  return out;
}

int bits_for_precision(const Rational& eps) {
  if (eps <= 0) throw Error(ErrorCode::DomainError, "precision must be positive");
  int k = 0;
  Rational step = 1;
  while (step > eps) {
    step /= 2;
    ++k;
  }
  return k;
}

Rational pow(const Rational& q, unsigned k) {
  Rational result = 1;
  Rational base = q;
  while (k > 0) {
    if (k & 1U) result *= base;
    base *= base;
    k >>= 1U;
  }
  return result;
}

Rational sup_norm(const std::vector<Rational>& v) {
  Rational best = 0;
  for (const auto& x : v) {
    Rational a = abs(x);
    if (a > best) best = a;
  }
  return best;
}

}  // namespace mpg
