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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mpg/ergodic.hpp"
#include "mpg/game.hpp"

namespace mpg {

/// Affine piece slope * x + intercept on [left, right]; an empty bound is infinite.
struct CurvePiece {
  std::optional<Rational> left;
  std::optional<Rational> right;
  Rational slope;
  Rational intercept;
  std::vector<Vertex> witness_cycle;  ///< cycle realizing the piece

  Rational at(const Rational& x) const { return slope * x + intercept; }
};

struct BreakpointCurve {
  std::vector<CurvePiece> pieces;  ///< contiguous, left to right
  std::vector<Rational> breakpoints;
  bool complete = true;     ///< false when the scan budget ran out
  std::size_t solves = 0;   ///< exact solves spent (two-player scan)

  /// Value of the piece containing x; throws Error{DomainError} outside the pieces.
  Rational evaluate(const Rational& x) const;
  bool is_concave() const;
};

/// A threshold on the real line with both infinities.
struct ExtendedRational {
  int infinity = 0;  ///< -1 for -inf, +1 for +inf, 0 when finite
  Rational value;

  bool is_finite() const { return infinity == 0; }
  std::string str() const;
};

struct OnePlayerBreakpoints {
  BreakpointCurve curve;
  /// Largest x below which every optimal cycle uses the edge.
  ExtendedRational y;
};

/// Value of a strongly connected all-Min game as a function of the weight x
/// of `edge`, obtained as the lower envelope of all cycle-mean lines.
/// Errors: NotOnePlayer, NotStronglyConnected, TooLarge (n > 10), DomainError (no such edge).
OnePlayerBreakpoints one_player_breakpoints(const Game& g, EdgeRef edge);

/// Piecewise-affine reconstruction of x -> lambda(x) over [lo, hi] from exact
/// mean-payoff solves. Each solve contributes the local line of the returned
/// pair's cycle; pieces are accepted when the solved value at the midpoint (or
/// at the intersection of the endpoint lines) matches. Returns a flagged partial
/// curve when `budget` solves are spent. An empty range yields an empty curve.
BreakpointCurve two_player_breakpoint_scan(const Game& g, EdgeRef edge, const Rational& lo, const Rational& hi,
                                           std::size_t budget = 2000);

/// "x_left,x_right,slope,intercept" rows with a header line.
std::string curve_to_csv(const BreakpointCurve& curve);

}  // namespace mpg
