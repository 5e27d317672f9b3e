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

#include "mpg/game.hpp"

namespace mpg {

/// Decodes the JSON game format:
///
///   { "n": 3,
///     "owner": ["max", "min", "min"],
///     "edges": [ {"from": 1, "to": 2, "w": "1/3"}, ... ] }
///
/// Vertices are 1-based in the file. Weights may be rational ("p/q"),
/// decimal strings or JSON numbers; decimals are converted exactly.
/// Throws Error{ParseError} naming the offending field, or
/// Error{ValidationError} when the decoded game breaks an invariant.
Game load_game(std::string_view text);

/// Encodes g in the format accepted by load_game; weights are written as
/// exact "p/q" strings so that load_game(save_game(g)) == g.
std::string save_game(const Game& g);

Game load_game_file(const std::string& path);
void save_game_file(const Game& g, const std::string& path);

}  // namespace mpg
