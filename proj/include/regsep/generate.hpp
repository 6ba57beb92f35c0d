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

#ifndef REGSEP_GENERATE_HPP
#define REGSEP_GENERATE_HPP

#include <cmath>

#include "regsep/game.hpp"

namespace regsep {

struct GenSpec {
    int n = 4;
    int d = 2;
    double density = 2.0;     // mean out-degree; every node keeps at least one edge
    double owner_bias = 0.5;  // probability a node belongs to Even
    uint64_t seed = 0;
};

/// Deterministic random game: one guaranteed out-edge per node plus extra
/// edges up to roughly density * n, duplicates collapsing set-wise.
inline GameGraph gen_random(const GenSpec& spec) {
    if (spec.n < 1 || spec.d < 1) throw std::invalid_argument("generator requires n >= 1 and d >= 1");
    if (spec.density < 1.0) throw std::invalid_argument("density below one cannot cover every node");
    std::mt19937_64 rng(spec.seed);
    auto below = [&](uint64_t bound) { return detail::draw_below(rng, bound); };

    std::vector<Player> owner(spec.n + 1, Player::Even);
    const uint64_t scale = uint64_t{1} << 32;
    const uint64_t threshold = static_cast<uint64_t>(spec.owner_bias * static_cast<double>(scale));
    for (int v = 1; v <= spec.n; ++v) owner[v] = below(scale) < threshold ? Player::Even : Player::Odd;

    std::vector<Letter> edges;
    for (int v = 1; v <= spec.n; ++v)
        edges.push_back({v, 1 + static_cast<int>(below(spec.d)), 1 + static_cast<int>(below(spec.n))});
    int target_m = static_cast<int>(std::lround(spec.density * spec.n));
    for (int i = spec.n; i < target_m; ++i)
        edges.push_back({1 + static_cast<int>(below(spec.n)), 1 + static_cast<int>(below(spec.d)),
                         1 + static_cast<int>(below(spec.n))});
    return GameGraph(spec.n, 1, std::move(owner), std::move(edges));
}

}  // namespace regsep

#endif
