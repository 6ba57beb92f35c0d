/*
 * Copyright 2026 The regsep authors
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

#include "catch_amalgamated.hpp"
#include "regsep/game_io.hpp"
#include "regsep/generate.hpp"

using namespace regsep;

TEST_CASE("edge-priority format parses") {
    GameGraph g = parse_game("parity 2; start 1; 1 even 1:2->2; 2 odd 2:1->1;");
    CHECK(g.node_count() == 2);
    CHECK(g.priority_bound() == 2);
    CHECK(g.start() == 1);
    CHECK(g.owner(1) == Player::Even);
    CHECK(g.owner(2) == Player::Odd);
    CHECK(g.edges() == std::vector<Letter>{{1, 2, 2}, {2, 1, 1}});
}

TEST_CASE("the ordinal arrow form and the plain form coincide") {
    GameGraph arrow = parse_game("parity 2; start 1; 1 even 1:2->2; 2 odd 2:1->1;");
    GameGraph plain = parse_game("parity 2; start 1; 1 even 2:2; 2 odd 1:1;");
    CHECK(arrow == plain);
}

TEST_CASE("comments and multi-edge lines parse") {
    GameGraph g = parse_game(
        "# a comment\n"
        "parity 2;\n"
        "start 2;   # trailing comment\n"
        "1 even 2:2,1:1;\n"
        "2 odd 1:1;\n");
    CHECK(g.start() == 2);
    CHECK(g.edges() == std::vector<Letter>{{1, 1, 1}, {1, 2, 2}, {2, 1, 1}});
}

TEST_CASE("parse errors") {
    SECTION("a node without edges is rejected") {
        CHECK_THROWS_WITH(parse_game("parity 2; start 1; 1 even 2:2;"), Catch::Matchers::ContainsSubstring("no outgoing edge: 2"));
    }
    SECTION("missing start declaration") {
        CHECK_THROWS_WITH(parse_game("parity 1; 1 even 2:1;"), Catch::Matchers::ContainsSubstring("missing start"));
    }
    SECTION("syntax errors carry line numbers") {
        try {
            parse_game("parity 2;\nstart 1;\n1 even 2:2;\n2 odd zz;\n");
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line() == 4);
        }
    }
    SECTION("out-of-range ids and priorities") {
        CHECK_THROWS_WITH(parse_game("parity 1; start 1; 1 even 2:3;"),
                          Catch::Matchers::ContainsSubstring("out of range"));
        CHECK_THROWS_WITH(parse_game("parity 1; start 1; 1 even 0:1;"),
                          Catch::Matchers::ContainsSubstring("priority out of range"));
        CHECK_THROWS_WITH(parse_game("parity 1; start 2; 1 even 2:1;"),
                          Catch::Matchers::ContainsSubstring("start node out of range"));
    }
}

TEST_CASE("node-priority games convert by source stamping") {
    SECTION("priorities stamp outgoing edges") {
        GameGraph g = parse_game("parity 2;\n1 3 0 2,1;\n2 2 1 1;\n");
        CHECK(g.priority_bound() == 3);
        CHECK(g.owner(1) == Player::Even);
        CHECK(g.owner(2) == Player::Odd);
        CHECK(g.edges() == std::vector<Letter>{{1, 3, 1}, {1, 3, 2}, {2, 2, 1}});
        CHECK(g.start() == 1);  // first declared node
    }
    SECTION("zero-based ids shift and names are ignored") {
        GameGraph g = parse_game("parity 1;\n0 2 0 1 \"a\";\n1 1 1 0;\n");
        CHECK(g.node_count() == 2);
        CHECK(g.edges() == std::vector<Letter>{{1, 2, 2}, {2, 1, 1}});
    }
    SECTION("zero priorities get a parity-preserving bump") {
        GameGraph g = parse_game("parity 2;\n1 0 0 2;\n2 1 1 1;\n");
        CHECK(g.edges() == std::vector<Letter>{{1, 2, 2}, {2, 3, 1}});
    }
    SECTION("an explicit start is honored") {
        GameGraph g = parse_game("parity 2;\nstart 2;\n1 1 0 2;\n2 2 1 1;\n");
        CHECK(g.start() == 2);
    }
}

TEST_CASE("the generator honors its contract") {
    GameGraph g = gen_random({5, 3, 2.0, 0.5, 77});
    CHECK(g.node_count() == 5);
    CHECK(g.edge_count() >= 5);
    CHECK(g.edge_count() <= 10);
    CHECK(gen_random({5, 3, 2.0, 0.5, 77}) == g);
    CHECK(gen_random({5, 3, 2.0, 0.5, 78}) == gen_random({5, 3, 2.0, 0.5, 78}));
}

TEST_CASE("render and parse round-trip") {
    for (uint64_t seed = 0; seed < 120; ++seed) {
        GenSpec spec{1 + static_cast<int>(seed % 7), 1 + static_cast<int>(seed % 6), 1.0 + (seed % 5) * 0.5, 0.5,
                     seed * 13 + 1};
        GameGraph g = gen_random(spec);
        GameGraph back = parse_game(render_game(g));
        CHECK(back == g);
        CHECK(render_game(back) == render_game(g));
    }
}
