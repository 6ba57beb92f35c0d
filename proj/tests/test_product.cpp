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

#include <set>

#include "catch_amalgamated.hpp"
#include "regsep/generate.hpp"
#include "regsep/product.hpp"
#include "support/fixtures.hpp"

using namespace regsep;

namespace {

/// A literal transcription of the synchronized-product definition, used as
/// a structural oracle: nodes are (position, state) pairs over explicit
/// state values, edges computed clause by clause.
template <class Aut>
struct NaiveProduct {
    struct Key {
        int pos;  // 1..n for nodes, n+1+j for edge j
        typename Aut::State state;
        auto operator<=>(const Key&) const = default;
    };
    std::set<Key> nodes;
    std::multiset<std::tuple<Key, int, Key>> edges;

    NaiveProduct(const GameGraph& g, const Aut& aut) {
        const int n = g.node_count();
        std::vector<typename Aut::State> states = aut.all_states();
        for (const auto& s : states) {
            for (int v = 1; v <= n; ++v) nodes.insert({v, s});
            for (int j = 0; j < g.edge_count(); ++j) nodes.insert({n + 1 + j, s});
        }
        std::vector<std::pair<int, typename Aut::State>> succ;
        for (const auto& s : states) {
            for (int j = 0; j < g.edge_count(); ++j) {
                const Letter& e = g.edges()[j];
                edges.insert({{e.u, s}, 1, {n + 1 + j, s}});
                aut.successors(s, e, succ);
                for (auto& [p, t] : succ) edges.insert({{n + 1 + j, s}, p, {e.v, t}});
            }
        }
    }
};

}  // namespace

TEST_CASE("the full product matches a literal transcription of the definition") {
    GameGraph g(2, 1, {Player::Even, Player::Even, Player::Odd}, {{1, 2, 2}, {2, 1, 1}, {2, 2, 2}});
    SECTION("with the register automaton") {
        RegisterAutomaton aut(2, 2);
        NaiveProduct naive(g, aut);
        ProductGame full = build_product_full(g, aut);
        CHECK(full.node_count() == naive.nodes.size());
        CHECK(full.edge_count() == naive.edges.size());

        // compare the edge multisets through explicit state values
        detail::StateInterner<RegisterState> states;
        for (const auto& s : aut.all_states()) states.intern(s);
        std::multiset<std::tuple<NaiveProduct<RegisterAutomaton>::Key, int, NaiveProduct<RegisterAutomaton>::Key>>
            got;
        auto key_of = [&](const ProductGame::Node& nd) {
            int pos = nd.edge_pos ? g.node_count() + 1 + nd.game_pos : nd.game_pos;
            return NaiveProduct<RegisterAutomaton>::Key{pos, states[nd.state_id]};
        };
        for (uint32_t v = 0; v < full.node_count(); ++v)
            for (auto [p, t] : full.edges_from(v)) got.insert({key_of(full.nodes[v]), p, key_of(full.nodes[t])});
        CHECK(got == naive.edges);
    }
    SECTION("with the safety automaton") {
        SafetyAutomaton aut(2, 2);
        NaiveProduct naive(g, aut);
        ProductGame full = build_product_full(g, aut);
        CHECK(full.node_count() == naive.nodes.size());
        CHECK(full.edge_count() == naive.edges.size());
    }
}

TEST_CASE("ownership and start follow the definition") {
    GameGraph g = fixtures::two_component_game();
    SafetyAutomaton aut(g.node_count(), g.priority_bound());
    ProductGame p = build_product(g, aut);
    CHECK(p.nodes[p.start].game_pos == g.start());
    CHECK_FALSE(p.nodes[p.start].edge_pos);
    for (uint32_t v = 0; v < p.node_count(); ++v) {
        const auto& nd = p.nodes[v];
        if (nd.edge_pos) {
            CHECK(nd.owner == Player::Even);
            for (auto [prio, t] : p.edges_from(v)) {
                CHECK_FALSE(p.nodes[t].edge_pos);
                CHECK(p.nodes[t].game_pos == g.edges()[nd.game_pos].v);
            }
        } else {
            CHECK(nd.owner == g.owner(nd.game_pos));
            auto out = p.edges_from(v);
            CHECK(out.size() == g.edges_from(nd.game_pos).size());
            for (auto [prio, t] : out) {
                CHECK(prio == 1);
                CHECK(p.nodes[t].edge_pos);
                CHECK(p.nodes[t].state_id == nd.state_id);
            }
        }
    }
}

TEST_CASE("reachable product sizes and caps") {
    SECTION("one-node loop with the safety automaton stays under 2 xi") {
        GameGraph g = fixtures::even_loop_game();
        SafetyAutomaton aut(1, 2);
        ProductGame p = build_product(g, aut);
        CHECK(p.node_count() <= 2 * aut.state_count());
        CHECK(p.node_count() == 4);
    }
    SECTION("the cap raises a resource error") {
        GameGraph g = fixtures::two_component_game();
        SafetyAutomaton aut(g.node_count(), g.priority_bound());
        CHECK_THROWS_AS(build_product(g, aut, 3), resource_limit_error);
    }
    SECTION("construction is deterministic") {
        GameGraph g = fixtures::two_component_game();
        RegisterAutomaton aut(g.node_count(), g.priority_bound());
        ProductGame a = build_product(g, aut);
        ProductGame b = build_product(g, aut);
        CHECK(a.edges == b.edges);
        CHECK(a.first == b.first);
        CHECK(a.start == b.start);
        REQUIRE(a.node_count() == b.node_count());
        for (size_t i = 0; i < a.node_count(); ++i) {
            CHECK(a.nodes[i].game_pos == b.nodes[i].game_pos);
            CHECK(a.nodes[i].state_id == b.nodes[i].state_id);
        }
    }
}

TEST_CASE("odd attractor fixpoints") {
    GameGraph g = fixtures::two_component_game();
    SafetyAutomaton aut(g.node_count(), g.priority_bound());
    ProductGame p = build_product(g, aut);
    SECTION("empty targets attract nothing") {
        std::vector<char> none(p.node_count(), 0);
        auto attr = odd_attractor(p, none);
        CHECK(std::count(attr.begin(), attr.end(), 1) == 0);
    }
    SECTION("full targets attract everything") {
        std::vector<char> all(p.node_count(), 1);
        auto attr = odd_attractor(p, all);
        CHECK(std::count(attr.begin(), attr.end(), 1) == static_cast<long>(p.node_count()));
    }
    SECTION("monotone in the target set") {
        std::mt19937_64 rng(17);
        std::vector<char> small(p.node_count(), 0), big(p.node_count(), 0);
        for (size_t i = 0; i < p.node_count(); ++i) {
            big[i] = rng() % 4 == 0;
            small[i] = big[i] && rng() % 2 == 0;
        }
        auto attr_small = odd_attractor(p, small);
        auto attr_big = odd_attractor(p, big);
        for (size_t i = 0; i < p.node_count(); ++i)
            if (attr_small[i]) CHECK(attr_big[i]);
    }
    SECTION("a forced chain of Even nodes is attracted") {
        // 1 -> 2 -> 3 all Even with single edges into an odd self-loop
        GameGraph chain(3, 1, {Player::Even, Player::Even, Player::Even, Player::Even},
                        {{1, 2, 2}, {2, 2, 3}, {3, 1, 3}});
        SafetyAutomaton s(3, 2);
        ProductGame cp = build_product(chain, s);
        std::vector<char> targets(cp.node_count(), 0);
        for (size_t i = 0; i < cp.node_count(); ++i) targets[i] = cp.nodes[i].rejecting;
        auto attr = odd_attractor(cp, targets);
        CHECK(attr[cp.start]);
        CHECK(solve_safety_product(cp) == Player::Odd);
    }
}

TEST_CASE("product solves on trivial games") {
    GameGraph even = fixtures::even_loop_game();
    GameGraph odd = fixtures::odd_loop_game();
    SECTION("safety path") {
        CHECK(solve_with_safety_separator(even).winner == Player::Even);
        CHECK(solve_with_safety_separator(odd).winner == Player::Odd);
    }
    SECTION("parity path") {
        CHECK(solve_with_register_separator(even).winner == Player::Even);
        CHECK(solve_with_register_separator(odd).winner == Player::Odd);
    }
    SECTION("an all-even game never rejects") {
        GameGraph g(2, 1, {Player::Odd, Player::Odd, Player::Odd}, {{1, 2, 2}, {2, 4, 1}, {2, 2, 2}});
        CHECK(solve_with_safety_separator(g).winner == Player::Even);
    }
    SECTION("reports carry product sizes") {
        SolveReport r = solve_with_safety_separator(even);
        CHECK(r.product_nodes == 4);
        CHECK(r.product_edges > 0);
        std::string rec = to_record(r, "loop", "lehtinen-safety");
        CHECK(rec.find("game=loop") != std::string::npos);
        CHECK(rec.find("winner=Even") != std::string::npos);
        CHECK(rec.find("product_nodes=4") != std::string::npos);
    }
}
