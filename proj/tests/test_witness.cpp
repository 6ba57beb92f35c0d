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
#include "regsep/baselines.hpp"
#include "regsep/generate.hpp"
#include "regsep/witness.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace regsep;

TEST_CASE("bad over emitted priorities") {
    auto bad = [](std::vector<int> pre, std::vector<int> cyc) { return bad_of_emitted(pre, cyc); };
    CHECK_FALSE(bad({}, {3}).has_value());
    CHECK(bad({}, {4, 3, 3}) == 2);
    CHECK(bad({}, {2, 4, 2}) == 0);
    CHECK(bad({3, 3, 3}, {2}) == 3);
    CHECK(bad({1, 1, 3}, {4, 1, 1, 1}) == 3);

    SECTION("three unrollings agree with ten") {
        std::mt19937_64 rng(31);
        for (int rep = 0; rep < 400; ++rep) {
            std::vector<int> pre(rng() % 5), cyc(1 + rng() % 5);
            for (int& x : pre) x = 1 + static_cast<int>(rng() % 7);
            for (int& x : cyc) x = 1 + static_cast<int>(rng() % 7);
            CHECK(bad_of_emitted(pre, cyc) == test_oracles::bad_by_unrolling(pre, cyc, 10));
        }
    }
}

TEST_CASE("witness runs on the two-component subgraph") {
    StrategySubgraph sg = fixtures::two_component_subgraph();
    GameTree tree = build_game_tree(sg);
    auto plays = sample_plays(sg, 25, 64, 2026);
    for (const LassoWord& play : plays) {
        WitnessRun run = build_witness_run(sg, play, &tree);
        auto bad = bad_of_lasso_run(run);
        REQUIRE(bad.has_value());
        CHECK(*bad <= static_cast<int>(sg.reachable_nodes().size()) - 1);

        // the run reads exactly the play
        auto expect_letter = [&](size_t i) -> Letter {
            const auto& pre = play.prefix;
            if (i < pre.size()) return pre[i];
            return play.cycle[(i - pre.size()) % play.cycle.size()];
        };
        for (size_t i = 0; i < run.step_count(); ++i) CHECK(run.step(i).transition.letter == expect_letter(i));

        // transitions chain together
        for (size_t i = 0; i + 1 < run.step_count(); ++i)
            CHECK(run.step(i).transition.target == run.step(i + 1).transition.source);

        // read priorities stay within the alphabet bound
        for (size_t i = 0; i < run.step_count(); ++i)
            CHECK(run.step(i).transition.letter.p <= 2 * ((sg.priority_bound() + 1) / 2));

        // the lifted run never rejects
        CHECK(run_avoids_rejection_in_safety(run, 6, 6));
    }

    SECTION("construction is deterministic") {
        WitnessRun a = build_witness_run(sg, plays[0], &tree);
        WitnessRun b = build_witness_run(sg, plays[0], &tree);
        REQUIRE(a.step_count() == b.step_count());
        CHECK(a.prefix.size() == b.prefix.size());
        for (size_t i = 0; i < a.step_count(); ++i) {
            CHECK(a.step(i).transition.priority == b.step(i).transition.priority);
            CHECK(a.step(i).transition.target == b.step(i).transition.target);
            CHECK(a.step(i).tag == b.step(i).tag);
        }
    }

    SECTION("the trace renders one line per step") {
        WitnessRun run = build_witness_run(sg, plays[0], &tree);
        std::string trace = run.to_trace_string();
        CHECK(std::count(trace.begin(), trace.end(), '\n') >= static_cast<long>(run.step_count()));
        CHECK(trace.find("valuable") != std::string::npos);
    }
}

TEST_CASE("the degenerate single-node run uses only even resets of register 1") {
    StrategySubgraph sg = fixtures::loop_subgraph(fixtures::even_loop_game());
    LassoWord play{{}, {{1, 2, 1}}};
    WitnessRun run = build_witness_run(sg, play);
    CHECK(run.prefix.empty());
    REQUIRE(run.cycle.size() == 1);
    CHECK(run.cycle[0].transition.kind == ResetKind::EvenReset);
    CHECK(run.cycle[0].transition.reset_register == 1);
    CHECK(run.cycle[0].tag == StepTag::Valuable);
    CHECK(bad_of_lasso_run(run) == 0);
}

TEST_CASE("witness preconditions are enforced") {
    StrategySubgraph sg = fixtures::two_component_subgraph();
    SECTION("plays must start at the start node") {
        LassoWord bad{{}, {{2, 2, 1}, {1, 1, 2}}};
        CHECK_THROWS_AS(build_witness_run(sg, bad), std::invalid_argument);
    }
    SECTION("plays must follow retained edges") {
        LassoWord bad{{}, {{1, 3, 3}, {3, 4, 1}}};  // (1,3,3) was dropped by the strategy
        CHECK_THROWS_AS(build_witness_run(sg, bad), std::invalid_argument);
    }
    SECTION("cycles must close") {
        LassoWord bad{{}, {{1, 1, 2}}};
        CHECK_THROWS_AS(build_witness_run(sg, bad), std::invalid_argument);
    }
}

TEST_CASE("witness invariants across a random corpus") {
    long runs = 0;
    for (uint64_t seed = 0; runs < 120 && seed < 800; ++seed) {
        GenSpec spec{2 + static_cast<int>(seed % 6), 1 + static_cast<int>(seed % 6),
                     1.0 + 0.25 * static_cast<double>(seed % 5), 0.6, seed * 6991 + 1};
        GameGraph g = gen_random(spec);
        BruteForceResult res = brute_force_solve(g);
        if (res.winner != Player::Even) continue;
        StrategySubgraph sg(g, res.strategy);
        GameTree tree = build_game_tree(sg);
        for (const LassoWord& play : sample_plays(sg, 3, 4 * g.node_count() + 8, seed)) {
            WitnessRun run = build_witness_run(sg, play, &tree);
            ++runs;
            auto bad = bad_of_lasso_run(run);
            REQUIRE(bad.has_value());
            CHECK(*bad <= g.node_count() - 1);

            // fragments nest and their recorded levels decrease with depth
            for (const RunFragment& f : run.fragments) {
                CHECK(f.level == tree.node(f.tree_node).level);
                CHECK(f.set_size == static_cast<int>(tree.node(f.tree_node).set.size()));
            }
            // resets never exceed the registers of the enclosing context
            for (size_t i = 0; i < run.step_count(); ++i) {
                const WitnessStep& st = run.step(i);
                CHECK(st.transition.reset_register <=
                      register_count(static_cast<int>(tree.node(st.frame_tree_node).set.size())));
            }
            CHECK(run_avoids_rejection_in_safety(run, g.node_count(), std::max(1, g.priority_bound())));
        }
    }
    CHECK(runs >= 100);
}
