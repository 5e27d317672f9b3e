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

#include <gtest/gtest.h>

#include <random>

#include "mpg/error.hpp"
#include "mpg/fixtures.hpp"
#include "mpg/game.hpp"
#include "mpg/game_io.hpp"
#include "mpg/rational.hpp"
#include "test_support.hpp"

using namespace mpg;
using mpg::testing::GameBuilder;
using mpg::testing::Q;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an mpg::Error";
  return ErrorCode::DomainError;
}

}  // namespace

TEST(Validate, SelfLoopIsLegal) {
  const Game g = GameBuilder{1, {Player::Max}, {}}.add(1, 1, 0).build();
  EXPECT_TRUE(validate_game(g).ok);
}

TEST(Validate, NonConvexFixtureIsLegal) {
  const Game g = paper_fixture("non_convex", {.x = 8});
  EXPECT_EQ(g.num_vertices(), 5);
  EXPECT_TRUE(validate_game(g).ok);
}

TEST(Validate, MissingOutEdgeIsReported) {
  const Game g = GameBuilder{2, {Player::Max, Player::Min}, {}}.add(1, 2, 0).build();
  const auto rep = validate_game(g);
  ASSERT_FALSE(rep.ok);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations[0].kind, Violation::Kind::MissingOutEdge);
  EXPECT_EQ(rep.violations[0].vertex, 1);
}

TEST(Validate, DuplicatesAndBadIndicesAreAllListed) {
  const Game g = GameBuilder{2, {Player::Max, Player::Min}, {}}
                     .add(1, 2, 0)
                     .add(1, 2, 1)
                     .add(2, 5, 0)
                     .add(2, 1, 0)
                     .build();
  const auto rep = validate_game(g);
  ASSERT_FALSE(rep.ok);
  bool dup = false, bad = false;
  for (const auto& v : rep.violations) {
    dup = dup || v.kind == Violation::Kind::DuplicateEdge;
    bad = bad || v.kind == Violation::Kind::BadIndex;
  }
  EXPECT_TRUE(dup);
  EXPECT_TRUE(bad);
}

TEST(Validate, EveryFixtureIsLegal) {
  for (const auto& name : fixture_names()) {
    EXPECT_TRUE(validate_game(paper_fixture(name)).ok) << name;
  }
  for (int n = 2; n <= 8; ++n) {
    EXPECT_TRUE(validate_game(paper_fixture("exponential", {.n = n})).ok) << n;
  }
}

TEST(Io, BlackwellRoundTrips) {
  const Game g = paper_fixture("blackwell");
  const Game back = load_game(save_game(g));
  EXPECT_TRUE(structurally_equal(g, back));
}

TEST(Io, RationalWeightIsExact) {
  const Game g = GameBuilder{1, {Player::Min}, {}}.add(1, 1, Q("1/3")).build();
  const Game back = load_game(save_game(g));
  EXPECT_EQ(back.weight(0, 0), Rational(1, 3));
  EXPECT_NE(save_game(g).find("\"1/3\""), std::string::npos);
}

TEST(Io, DecimalWeightIsExact) {
  const Game g = load_game(R"({"n":1,"owner":["max"],"edges":[{"from":1,"to":1,"w":"0.125"}]})");
  EXPECT_EQ(g.weight(0, 0), Rational(1, 8));
}

TEST(Io, MissingOwnerNamesTheField) {
  try {
    load_game(R"({"n":1,"edges":[{"from":1,"to":1,"w":"0"}]})");
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("owner"), std::string::npos);
  }
}

TEST(Io, InvalidGameIsValidationError) {
  EXPECT_EQ(code_of([] { load_game(R"({"n":2,"owner":["max","min"],"edges":[{"from":1,"to":2,"w":"0"}]})"); }),
            ErrorCode::ValidationError);
}

TEST(Io, RandomGamesRoundTrip) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const Game g = mpg::testing::random_bipartite(rng, 1 + k % 3, 1 + (k / 3) % 3, 50);
    EXPECT_TRUE(structurally_equal(g, load_game(save_game(g))));
    const Game f = mpg::testing::random_functional(rng, 1 + k % 7);
    EXPECT_TRUE(structurally_equal(f, load_game(save_game(f))));
  }
}

TEST(Fixtures, BlackwellWeights) {
  const Game g = paper_fixture("blackwell");
  EXPECT_EQ(g.num_vertices(), 3);
  EXPECT_TRUE(g.is_one_player(Player::Min));
  EXPECT_EQ(g.num_edges(), 7);
  EXPECT_EQ(g.weight(0, 1), 1);
  EXPECT_EQ(g.weight(0, 2), -1);
  EXPECT_EQ(g.weight(1, 0), 0);
  EXPECT_EQ(g.weight(1, 1), 0);
  EXPECT_EQ(g.weight(2, 0), 5);
  EXPECT_EQ(g.weight(2, 1), 3);
  EXPECT_EQ(g.weight(2, 2), 0);
}

TEST(Fixtures, NonConvexWeights) {
  const Game g = paper_fixture("non_convex", {.x = 8});
  EXPECT_EQ(g.weight(0, 1), 8);
  EXPECT_EQ(g.weight(4, 1), 2);
  EXPECT_EQ(g.weight(4, 0), -3);
  for (const auto& e : g.edges()) {
    const bool labelled = (e.from == 0 && e.to == 1) || e.from == 4;
    if (!labelled) EXPECT_EQ(e.weight, 0);
  }
}

TEST(Fixtures, ExponentialHasParametrizedEdge) {
  const Game g = paper_fixture("exponential", {.x = Q("3/7"), .n = 3});
  EXPECT_EQ(g.num_vertices(), 6);
  EXPECT_EQ(g.weight(3, 1), Rational(3, 7));
}

TEST(Fixtures, UnknownName) {
  EXPECT_EQ(code_of([] { paper_fixture("nope"); }), ErrorCode::UnknownFixture);
}

TEST(ScaleShift, AffineMap) {
  const Game g = GameBuilder{1, {Player::Max}, {}}.add(1, 1, 2).build();
  EXPECT_EQ(scale_shift_weights(g, 1, 1).weight(0, 0), 3);
  EXPECT_EQ(scale_shift_weights(g, 1, 0), g);
  EXPECT_EQ(scale_shift_weights(g, 3, -7).weight(0, 0), -1);
}

TEST(ScaleShift, RejectsNonPositiveScale) {
  const Game g = paper_fixture("blackwell");
  EXPECT_EQ(code_of([&] { scale_shift_weights(g, 0, 1); }), ErrorCode::NonPositiveScale);
  EXPECT_EQ(code_of([&] { scale_shift_weights(g, -2, 1); }), ErrorCode::NonPositiveScale);
}

TEST(ScaleShift, PreservesValidity) {
  const Game bad = GameBuilder{2, {Player::Max, Player::Min}, {}}.add(1, 2, 0).build();
  EXPECT_EQ(validate_game(scale_shift_weights(bad, 2, 1)).ok, validate_game(bad).ok);
  for (const auto& name : fixture_names()) {
    const Game g = paper_fixture(name);
    EXPECT_EQ(validate_game(scale_shift_weights(g, Q("5/2"), Q("-3"))).ok, validate_game(g).ok);
  }
}

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(to_string(Rational(-3, 2)), "-3/2");
  EXPECT_EQ(parse_rational("2.5"), Rational(5, 2));
  EXPECT_EQ(parse_rational("-0.75"), Rational(-3, 4));
  EXPECT_EQ(code_of([] { parse_rational("1/0"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_rational("abc"); }), ErrorCode::ParseError);
}

TEST(Rationals, Truncation) {
  EXPECT_EQ(bits_for_precision(Rational(1, 4)), 2);
  EXPECT_EQ(bits_for_precision(Rational(1, 5)), 3);
  EXPECT_EQ(truncate_to_bits(Rational(5, 8), 2), Rational(1, 2));
  EXPECT_EQ(truncate_to_bits(Rational(-5, 8), 2), Rational(-3, 4));  // floor, as in a binary expansion
  EXPECT_EQ(dyadic_from_double(0.375), Rational(3, 8));
}
