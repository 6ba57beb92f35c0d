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

#ifndef REGSEP_TESTS_FIXTURES_HPP
#define REGSEP_TESTS_FIXTURES_HPP

#include "regsep/game.hpp"

namespace regsep::fixtures {

/// Six-node game whose Even strategy below yields a winning subgraph with a
/// three-level decomposition: two components {1,2,3} and {4,5,6} at the top
/// cap, joined left-to-right by a priority-5 edge and closed back by a
/// priority-6 edge. Every cycle's maximum is even.
inline GameGraph two_component_game() {
    std::vector<Player> owner(7, Player::Odd);
    owner[1] = owner[3] = owner[4] = Player::Even;
    std::vector<Letter> edges = {{1, 1, 2}, {1, 3, 3}, {2, 2, 1}, {2, 1, 3}, {2, 5, 4}, {3, 4, 1}, {3, 2, 2},
                                 {4, 2, 5}, {4, 1, 4}, {5, 1, 6}, {5, 2, 4}, {6, 4, 4}, {6, 6, 1}};
    return GameGraph(6, 1, std::move(owner), std::move(edges));
}

inline PositionalStrategy two_component_strategy() {
    return {Player::Even, {{1, {1, 1, 2}}, {3, {3, 4, 1}}, {4, {4, 2, 5}}}};
}

inline StrategySubgraph two_component_subgraph() {
    return StrategySubgraph(two_component_game(), two_component_strategy());
}

/// One node, one even self-loop.
inline GameGraph even_loop_game() {
    return GameGraph(1, 1, {Player::Even, Player::Even}, {{1, 2, 1}});
}

/// One node, one odd self-loop.
inline GameGraph odd_loop_game() {
    return GameGraph(1, 1, {Player::Even, Player::Even}, {{1, 1, 1}});
}

inline StrategySubgraph loop_subgraph(const GameGraph& g) {
    PositionalStrategy tau{Player::Even, {}};
    for (int v = 1; v <= g.node_count(); ++v)
        if (g.owner(v) == Player::Even) tau.choice[v] = g.edges_from(v)[0];
    return StrategySubgraph(g, tau);
}

}  // namespace regsep::fixtures

#endif
