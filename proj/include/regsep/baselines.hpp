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

#ifndef REGSEP_BASELINES_HPP
#define REGSEP_BASELINES_HPP

#include <optional>

#include "regsep/game.hpp"

namespace regsep {

class resource_limit_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Subgame view used by the recursive solver: alive masks over the nodes and
/// edges of a fixed arena, plus reverse adjacency for attractors.
struct Arena {
    explicit Arena(const GameGraph& g) : game(g), in_edges(g.node_count() + 1) {
        const auto& es = g.edges();
        for (size_t i = 0; i < es.size(); ++i) in_edges[es[i].v].push_back(static_cast<int>(i));
        first.assign(g.node_count() + 2, 0);
        for (const Letter& e : es) first[e.u + 1]++;
        for (int v = 1; v <= g.node_count(); ++v) first[v + 1] += first[v];
    }
    const GameGraph& game;
    std::vector<std::vector<int>> in_edges;  // edge indices by target
    std::vector<int> first;                  // CSR offsets by source

    int edge_source(int i) const { return game.edges()[i].u; }
    int edge_target(int i) const { return game.edges()[i].v; }
    int edge_priority(int i) const { return game.edges()[i].p; }
};

using Mask = std::vector<char>;

/// Attractor of player pi to a node set within the alive subgame, by the
/// standard backward counting fixpoint.
inline Mask node_attractor(const Arena& a, Player pi, const Mask& targets, const Mask& node_alive,
                           const Mask& edge_alive) {
    const int n = a.game.node_count();
    Mask in_attr(n + 1, 0);
    std::vector<int> escape(n + 1, 0);
    std::vector<int> work;
    for (int v = 1; v <= n; ++v) {
        if (!node_alive[v]) continue;
        for (int i = a.first[v]; i < a.first[v + 1]; ++i)
            if (edge_alive[i] && node_alive[a.edge_target(i)]) escape[v]++;
        if (targets[v]) {
            in_attr[v] = 1;
            work.push_back(v);
        }
    }
    for (size_t head = 0; head < work.size(); ++head) {
        int v = work[head];
        for (int i : a.in_edges[v]) {
            if (!edge_alive[i]) continue;
            int u = a.edge_source(i);
            if (!node_alive[u] || in_attr[u]) continue;
            if (a.game.owner(u) == pi || --escape[u] == 0) {
                in_attr[u] = 1;
                work.push_back(u);
            }
        }
    }
    return in_attr;
}

/// Attractor of player pi to an edge set F: the nodes from which pi can
/// force the play to traverse an F-edge. An owner node joins when some alive
/// edge is in F or leads into the set; an opponent node joins when all do.
inline Mask edge_attractor(const Arena& a, Player pi, const Mask& in_f, const Mask& node_alive,
                           const Mask& edge_alive) {
    const int n = a.game.node_count();
    Mask in_attr(n + 1, 0);
    std::vector<int> escape(n + 1, 0);
    std::vector<int> work;
    for (int v = 1; v <= n; ++v) {
        if (!node_alive[v]) continue;
        bool has_f = false;
        for (int i = a.first[v]; i < a.first[v + 1]; ++i) {
            if (!edge_alive[i] || !node_alive[a.edge_target(i)]) continue;
            if (in_f[i])
                has_f = true;
            else
                escape[v]++;
        }
        bool join = a.game.owner(v) == pi ? has_f : (has_f && escape[v] == 0);
        if (join) {
            in_attr[v] = 1;
            work.push_back(v);
        }
    }
    for (size_t head = 0; head < work.size(); ++head) {
        int v = work[head];
        for (int i : a.in_edges[v]) {
            if (!edge_alive[i] || in_f[i]) continue;  // F-edges already counted out
            int u = a.edge_source(i);
            if (!node_alive[u] || in_attr[u]) continue;
            if (a.game.owner(u) == pi || --escape[u] == 0) {
                in_attr[u] = 1;
                work.push_back(u);
            }
        }
    }
    return in_attr;
}

/// Recursive attractor decomposition adapted to edge priorities. With p the
/// maximum alive priority and alpha its player, the alpha edge-attractor to
/// the p-edges is removed together with the p-edges themselves; a play of
/// the remaining subgame either stays there forever or crosses a p-edge,
/// which is alpha's parity.
inline std::pair<Mask, Mask> zielonka_rec(const Arena& a, Mask node_alive, Mask edge_alive) {
    const int n = a.game.node_count();
    const auto& edges = a.game.edges();
    int p = 0;
    for (size_t i = 0; i < edges.size(); ++i)
        if (edge_alive[i] && node_alive[edges[i].u] && node_alive[edges[i].v]) p = std::max(p, edges[i].p);
    if (p == 0) return {Mask(n + 1, 0), Mask(n + 1, 0)};  // no alive nodes

    Player alpha = p % 2 == 0 ? Player::Even : Player::Odd;
    Mask in_f(edges.size(), 0);
    for (size_t i = 0; i < edges.size(); ++i)
        in_f[i] = edge_alive[i] && edges[i].p == p && node_alive[edges[i].u] && node_alive[edges[i].v];

    Mask attr = edge_attractor(a, alpha, in_f, node_alive, edge_alive);

    Mask sub_nodes = node_alive;
    for (int v = 1; v <= n; ++v)
        if (attr[v]) sub_nodes[v] = 0;
    Mask sub_edges = edge_alive;
    for (size_t i = 0; i < edges.size(); ++i)
        if (in_f[i] || attr[edges[i].u] || attr[edges[i].v]) sub_edges[i] = 0;

    auto [wa, wb] = zielonka_rec(a, sub_nodes, sub_edges);
    Mask& opp_region = alpha == Player::Even ? wb : wa;
    bool opp_empty = true;
    for (int v = 1; v <= n && opp_empty; ++v)
        if (opp_region[v]) opp_empty = false;
    if (opp_empty) {
        Mask all = node_alive;
        Mask none(n + 1, 0);
        return alpha == Player::Even ? std::make_pair(all, none) : std::make_pair(none, all);
    }

    Mask battr = node_attractor(a, opponent(alpha), opp_region, node_alive, edge_alive);
    Mask rest_nodes = node_alive;
    for (int v = 1; v <= n; ++v)
        if (battr[v]) rest_nodes[v] = 0;
    Mask rest_edges = edge_alive;
    for (size_t i = 0; i < edges.size(); ++i)
        if (battr[edges[i].u] || battr[edges[i].v]) rest_edges[i] = 0;
    auto [ra, rb] = zielonka_rec(a, rest_nodes, rest_edges);
    if (alpha == Player::Even) {
        for (int v = 1; v <= n; ++v)
            if (battr[v]) rb[v] = 1;
    } else {
        for (int v = 1; v <= n; ++v)
            if (battr[v]) ra[v] = 1;
    }
    return {ra, rb};
}

}  // namespace detail

/// Winning regions for both players via the recursive algorithm; index 1..n.
inline std::pair<std::vector<char>, std::vector<char>> zielonka_regions(const GameGraph& g) {
    detail::Arena a(g);
    detail::Mask nodes(g.node_count() + 1, 1);
    nodes[0] = 0;
    detail::Mask edges(g.edges().size(), 1);
    return detail::zielonka_rec(a, std::move(nodes), std::move(edges));
}

inline Player solve_zielonka(const GameGraph& g) {
    auto [we, wo] = zielonka_regions(g);
    return we[g.start()] ? Player::Even : Player::Odd;
}

namespace detail {

/// Small progress measures over edge priorities: one coordinate per odd
/// priority, bounded by the number of edges carrying it, compared
/// lexicographically with the highest coordinate most significant.
struct Measures {
    std::vector<uint32_t> bound;            // per odd coordinate
    std::vector<std::vector<uint32_t>> mu;  // per node, empty when top
    std::vector<char> top;

    int coords() const { return static_cast<int>(bound.size()); }

    // -1, 0, 1 comparison; top compares above everything.
    int cmp(int v, const std::vector<uint32_t>& other, bool other_top) const {
        if (top[v] && other_top) return 0;
        if (top[v]) return 1;
        if (other_top) return -1;
        for (int c = coords() - 1; c >= 0; --c) {
            if (mu[v][c] != other[c]) return mu[v][c] < other[c] ? -1 : 1;
        }
        return 0;
    }
};

inline bool measure_lex_less(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    for (int c = static_cast<int>(a.size()) - 1; c >= 0; --c)
        if (a[c] != b[c]) return a[c] < b[c];
    return false;
}

}  // namespace detail

/// Progress-measure lifting to fixpoint; Even wins from v iff mu(v) is not
/// top. Lifts are monotone by construction and verified to be so.
inline Player solve_spm(const GameGraph& g) {
    const int n = g.node_count();
    const int ncoords = (g.priority_bound() + 1) / 2;
    detail::Measures ms;
    ms.bound.assign(ncoords, 0);
    for (const Letter& e : g.edges())
        if (e.p % 2 == 1) ms.bound[(e.p - 1) / 2]++;
    ms.mu.assign(n + 1, std::vector<uint32_t>(ncoords, 0));
    ms.top.assign(n + 1, 0);

    // prog(m, p): least measure at least (even p) / strictly above (odd p)
    // m on the coordinates >= p.
    auto prog = [&](int w, int p, std::vector<uint32_t>& out, bool& out_top) {
        if (ms.top[w]) {
            out_top = true;
            return;
        }
        out_top = false;
        out = ms.mu[w];
        int cp = p % 2 == 1 ? (p - 1) / 2 : p / 2;  // lowest coordinate with priority >= p
        for (int c = 0; c < cp && c < ncoords; ++c) out[c] = 0;
        if (p % 2 == 1) {
            int c = cp;
            while (c < ncoords && out[c] == ms.bound[c]) ++c;
            if (c == ncoords) {
                out_top = true;
                return;
            }
            for (int i = cp; i < c; ++i) out[i] = 0;
            out[c]++;
        }
    };

    std::vector<std::vector<int>> preds(n + 1);
    for (const Letter& e : g.edges()) preds[e.v].push_back(e.u);
    for (auto& v : preds) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    std::vector<char> queued(n + 1, 1);
    std::vector<int> work;
    for (int v = 1; v <= n; ++v) work.push_back(v);
    std::vector<uint32_t> cand, best;
    bool cand_top, best_top;
    while (!work.empty()) {
        int v = work.back();
        work.pop_back();
        queued[v] = 0;
        bool first = true;
        best_top = false;
        for (const Letter& e : g.edges_from(v)) {
            prog(e.v, e.p, cand, cand_top);
            bool better;
            if (first)
                better = true;
            else if (g.owner(v) == Player::Even)
                better = !cand_top && (best_top || detail::measure_lex_less(cand, best));
            else
                better = cand_top || (!best_top && detail::measure_lex_less(best, cand));
            if (better) {
                best = cand;
                best_top = cand_top;
            }
            first = false;
        }
        int c = ms.cmp(v, best, best_top);
        if (c > 0) throw std::logic_error("progress measure lift would decrease");
        if (c < 0) {
            ms.mu[v] = best;
            ms.top[v] = best_top;
            for (int u : preds[v])
                if (!queued[u]) {
                    queued[u] = 1;
                    work.push_back(u);
                }
        }
    }
    return ms.top[g.start()] ? Player::Odd : Player::Even;
}

/// Result of exhaustive positional-strategy search: the winner from the
/// start node and a witnessing winning strategy.
struct BruteForceResult {
    Player winner;
    PositionalStrategy strategy;
};

namespace detail {

template <class Check>
std::optional<PositionalStrategy> find_winning_strategy(const GameGraph& g, Player pl, uint64_t bound,
                                                        Check&& winning) {
    std::vector<int> owned;
    uint64_t combos = 1;
    for (int v = 1; v <= g.node_count(); ++v)
        if (g.owner(v) == pl) {
            owned.push_back(v);
            uint64_t deg = g.edges_from(v).size();
            if (__builtin_mul_overflow(combos, deg, &combos) || combos > bound)
                throw resource_limit_error("strategy enumeration exceeds bound");
        }
    std::vector<size_t> pick(owned.size(), 0);
    while (true) {
        PositionalStrategy tau;
        tau.player = pl;
        for (size_t i = 0; i < owned.size(); ++i) tau.choice[owned[i]] = g.edges_from(owned[i])[pick[i]];
        StrategySubgraph sg(g, tau);
        if (winning(sg)) return tau;
        size_t i = 0;
        for (; i < owned.size(); ++i) {
            if (++pick[i] < g.edges_from(owned[i]).size()) break;
            pick[i] = 0;
        }
        if (i == owned.size()) return std::nullopt;
    }
}

}  // namespace detail

/// Enumerates Even's positional strategies and checks each strategy subgraph;
/// by positional determinacy exactly one side has a winning strategy, which
/// is returned as the witness.
inline BruteForceResult brute_force_solve(const GameGraph& g, uint64_t bound = 1000000) {
    auto even = detail::find_winning_strategy(g, Player::Even, bound,
                                              [](const StrategySubgraph& sg) { return check_strategy_winning(sg); });
    if (even) return {Player::Even, std::move(*even)};
    auto odd = detail::find_winning_strategy(
        g, Player::Odd, bound, [](const StrategySubgraph& sg) { return check_strategy_winning_for_odd(sg); });
    if (!odd) throw std::logic_error("neither player has a positional winning strategy");
    return {Player::Odd, std::move(*odd)};
}

inline Player brute_force_winner(const GameGraph& g, uint64_t bound = 1000000) {
    return brute_force_solve(g, bound).winner;
}

}  // namespace regsep

#endif
