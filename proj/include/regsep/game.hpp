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

#ifndef REGSEP_GAME_HPP
#define REGSEP_GAME_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace regsep {

enum class Player { Even, Odd };

inline Player opponent(Player p) { return p == Player::Even ? Player::Odd : Player::Even; }

inline const char* to_string(Player p) { return p == Player::Even ? "Even" : "Odd"; }

/// One element of the edge alphabet: (source node, priority, target node).
/// A Letter need not be an edge of any particular game.
struct Letter {
    int u;
    int p;
    int v;

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// An ultimately periodic word prefix . cycle^omega; the cycle is nonempty.
struct LassoWord {
    std::vector<Letter> prefix;
    std::vector<Letter> cycle;

    friend bool operator==(const LassoWord&, const LassoWord&) = default;
};

/// Parity of the largest priority occurring on the cycle decides the winner;
/// prefix priorities are irrelevant.
inline Player limsup_winner(const LassoWord& w) {
    if (w.cycle.empty()) throw std::invalid_argument("limsup_winner: empty cycle");
    int top = 0;
    for (const Letter& e : w.cycle) top = std::max(top, e.p);
    return top % 2 == 0 ? Player::Even : Player::Odd;
}

/// A finite edge-labeled parity game. Nodes are numbered 1..n, every node has
/// at least one outgoing edge, priorities lie in 1..d where d is the largest
/// priority present, and a designated start node is required.
class GameGraph {
  public:
    GameGraph(int node_count, int start, std::vector<Player> owners, std::vector<Letter> edges)
        : n_(node_count), start_(start), owner_(std::move(owners)), edges_(std::move(edges)) {
        if (n_ < 1) throw std::invalid_argument("game must have at least one node");
        if (static_cast<int>(owner_.size()) != n_ + 1)
            throw std::invalid_argument("owner vector must have one entry per node (index 0 unused)");
        if (start_ < 1 || start_ > n_) throw std::invalid_argument("start node out of range");
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        d_ = 0;
        for (const Letter& e : edges_) {
            if (e.u < 1 || e.u > n_ || e.v < 1 || e.v > n_)
                throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                                            std::to_string(e.p) + "," + std::to_string(e.v) + ")");
            if (e.p < 1) throw std::invalid_argument("priority out of range: " + std::to_string(e.p));
            d_ = std::max(d_, e.p);
        }
        first_.assign(n_ + 2, 0);
        for (const Letter& e : edges_) first_[e.u + 1]++;
        for (int v = 1; v <= n_; ++v) first_[v + 1] += first_[v];
        for (int v = 1; v <= n_; ++v)
            if (first_[v + 1] == first_[v])
                throw std::invalid_argument("no outgoing edge: " + std::to_string(v));
    }

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    /// Largest priority present on any edge.
    int priority_bound() const { return d_; }
    int start() const { return start_; }
    Player owner(int v) const { return owner_.at(v); }

    /// Outgoing edges of v, sorted by (priority, target).
    std::span<const Letter> edges_from(int v) const {
        return {edges_.data() + first_.at(v), edges_.data() + first_.at(v + 1)};
    }

    /// All edges, sorted by (source, priority, target).
    const std::vector<Letter>& edges() const { return edges_; }

    GameGraph with_start(int v) const {
        GameGraph g = *this;
        if (v < 1 || v > n_) throw std::invalid_argument("start node out of range");
        g.start_ = v;
        return g;
    }

    friend bool operator==(const GameGraph& a, const GameGraph& b) {
        return a.n_ == b.n_ && a.start_ == b.start_ && a.owner_ == b.owner_ && a.edges_ == b.edges_;
    }

  private:
    int n_;
    int d_;
    int start_;
    std::vector<Player> owner_;   // indexed 1..n
    std::vector<Letter> edges_;   // sorted
    std::vector<int> first_;      // CSR offsets into edges_, indexed 1..n+1
};

/// One chosen outgoing edge for each node owned by the strategy's player.
struct PositionalStrategy {
    Player player = Player::Even;
    std::map<int, Letter> choice;
};

/// The game restricted to a player's positional choices plus all opponent
/// edges, together with the nodes reachable from the start.
class StrategySubgraph {
  public:
    StrategySubgraph(const GameGraph& g, const PositionalStrategy& tau) : n_(g.node_count()), d_(g.priority_bound()), start_(g.start()) {
        std::vector<Letter> retained;
        for (int v = 1; v <= n_; ++v) {
            if (g.owner(v) == tau.player) {
                auto it = tau.choice.find(v);
                if (it == tau.choice.end())
                    throw std::invalid_argument("strategy chooses no edge for node " + std::to_string(v));
                const Letter& e = it->second;
                auto out = g.edges_from(v);
                if (e.u != v || std::find(out.begin(), out.end(), e) == out.end())
                    throw std::invalid_argument("strategy chooses a non-edge at node " + std::to_string(v));
                retained.push_back(e);
            } else {
                for (const Letter& e : g.edges_from(v)) retained.push_back(e);
            }
        }
        for (const auto& [v, e] : tau.choice) {
            if (v < 1 || v > n_ || g.owner(v) != tau.player)
                throw std::invalid_argument("strategy chooses for a node it does not own: " + std::to_string(v));
            (void)e;
        }
        std::sort(retained.begin(), retained.end());
        edges_ = std::move(retained);
        first_.assign(n_ + 2, 0);
        for (const Letter& e : edges_) first_[e.u + 1]++;
        for (int v = 1; v <= n_; ++v) first_[v + 1] += first_[v];

        // forward reachability from the start over retained edges
        std::vector<char> seen(n_ + 1, 0);
        std::queue<int> bfs;
        bfs.push(start_);
        seen[start_] = 1;
        while (!bfs.empty()) {
            int v = bfs.front();
            bfs.pop();
            for (const Letter& e : edges_from(v))
                if (!seen[e.v]) {
                    seen[e.v] = 1;
                    bfs.push(e.v);
                }
        }
        for (int v = 1; v <= n_; ++v)
            if (seen[v]) reachable_.push_back(v);
        seen_ = std::move(seen);
    }

    int node_count() const { return n_; }
    int priority_bound() const { return d_; }
    int start() const { return start_; }

    std::span<const Letter> edges_from(int v) const {
        return {edges_.data() + first_.at(v), edges_.data() + first_.at(v + 1)};
    }
    const std::vector<Letter>& retained_edges() const { return edges_; }

    /// V_tau: nodes reachable from the start within the subgraph, ascending.
    const std::vector<int>& reachable_nodes() const { return reachable_; }
    bool is_reachable(int v) const { return v >= 1 && v <= n_ && seen_[v]; }

    /// Retained edges with both endpoints reachable.
    std::vector<Letter> reachable_edges() const {
        std::vector<Letter> out;
        for (int v : reachable_)
            for (const Letter& e : edges_from(v))
                if (seen_[e.v]) out.push_back(e);
        return out;
    }

  private:
    int n_;
    int d_;
    int start_;
    std::vector<Letter> edges_;
    std::vector<int> first_;
    std::vector<int> reachable_;
    std::vector<char> seen_;
};

inline StrategySubgraph strategy_subgraph(const GameGraph& g, const PositionalStrategy& tau) {
    return StrategySubgraph(g, tau);
}

/// Strongly connected components of the graph (nodes, edges restricted to
/// priority <= priority_cap), in topological order: no edges into an earlier
/// component from a later one. Among valid topological orders, components are
/// emitted so that at every step the available component containing the
/// smallest node id comes first. Node sets are sorted ascending.
inline std::vector<std::vector<int>> tarjan_sccs(const std::vector<int>& nodes, std::span<const Letter> edges,
                                                 int priority_cap) {
    const int m = static_cast<int>(nodes.size());
    std::map<int, int> index_of;
    for (int i = 0; i < m; ++i) index_of[nodes[i]] = i;
    std::vector<std::vector<int>> adj(m);
    for (const Letter& e : edges) {
        if (e.p > priority_cap) continue;
        auto iu = index_of.find(e.u);
        auto iv = index_of.find(e.v);
        if (iu == index_of.end() || iv == index_of.end()) continue;
        adj[iu->second].push_back(iv->second);
    }

    // Tarjan, iterative.
    std::vector<int> low(m, 0), num(m, -1), comp(m, -1), stk;
    std::vector<char> on_stack(m, 0);
    int counter = 0, ncomp = 0;
    struct Frame {
        int v;
        size_t next_edge;
    };
    for (int root = 0; root < m; ++root) {
        if (num[root] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        num[root] = low[root] = counter++;
        stk.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next_edge < adj[f.v].size()) {
                int w = adj[f.v][f.next_edge++];
                if (num[w] == -1) {
                    num[w] = low[w] = counter++;
                    stk.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], num[w]);
                }
            } else {
                if (low[f.v] == num[f.v]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on_stack[w] = 0;
                        comp[w] = ncomp;
                        if (w == f.v) break;
                    }
                    ncomp++;
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }

    // Deterministic topological order on the condensation: Kahn's algorithm
    // with a min-heap keyed by the smallest node id in each component.
    std::vector<std::vector<int>> members(ncomp);
    for (int i = 0; i < m; ++i) members[comp[i]].push_back(nodes[i]);
    for (auto& s : members) std::sort(s.begin(), s.end());
    std::vector<int> indeg(ncomp, 0);
    std::vector<std::vector<int>> cadj(ncomp);
    for (int i = 0; i < m; ++i)
        for (int j : adj[i])
            if (comp[i] != comp[j]) cadj[comp[i]].push_back(comp[j]);
    for (auto& v : cadj) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        for (int c : v) indeg[c]++;
    }
    using HeapItem = std::pair<int, int>;  // (smallest node id, component)
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> ready;
    for (int c = 0; c < ncomp; ++c)
        if (indeg[c] == 0) ready.push({members[c].front(), c});
    std::vector<std::vector<int>> out;
    out.reserve(ncomp);
    while (!ready.empty()) {
        int c = ready.top().second;
        ready.pop();
        out.push_back(members[c]);
        for (int w : cadj[c])
            if (--indeg[w] == 0) ready.push({members[w].front(), w});
    }
    return out;
}

namespace detail {

/// True iff no cycle within the reachable part of the subgraph has its
/// maximum priority of the given parity. bad_parity = 1 rejects odd-max
/// cycles, bad_parity = 0 rejects even-max cycles.
inline bool no_cycle_with_max_parity(const StrategySubgraph& sg, int bad_parity) {
    std::vector<Letter> edges = sg.reachable_edges();
    const std::vector<int>& nodes = sg.reachable_nodes();
    for (int p = 1; p <= sg.priority_bound(); ++p) {
        if (p % 2 != bad_parity) continue;
        auto sccs = tarjan_sccs(nodes, edges, p);
        std::map<int, int> comp;
        for (size_t c = 0; c < sccs.size(); ++c)
            for (int v : sccs[c]) comp[v] = static_cast<int>(c);
        for (const Letter& e : edges)
            if (e.p == p && comp.at(e.u) == comp.at(e.v)) return false;
    }
    return true;
}

}  // namespace detail

/// True iff every cycle reachable from the start in the Even strategy
/// subgraph has even maximum priority: for each odd p, the SCCs of the
/// subgraph capped at p must contain no priority-p edge.
inline bool check_strategy_winning(const StrategySubgraph& sg) { return detail::no_cycle_with_max_parity(sg, 1); }

/// The dual check for an Odd strategy subgraph: every reachable cycle must
/// have odd maximum priority.
inline bool check_strategy_winning_for_odd(const StrategySubgraph& sg) {
    return detail::no_cycle_with_max_parity(sg, 0);
}

namespace detail {

/// Unbiased bounded draw from a 64-bit generator; avoids distribution
/// objects so streams are identical across standard library versions.
inline uint64_t draw_below(std::mt19937_64& rng, uint64_t bound) {
    if (bound <= 1) return 0;
    return static_cast<uint64_t>((static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

}  // namespace detail

/// Random lasso plays in the subgraph: walks from the start until a node
/// repeats, folded into prefix + cycle. Deterministic for a fixed seed.
inline std::vector<LassoWord> sample_plays(const StrategySubgraph& sg, int count, int max_len, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<LassoWord> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::vector<Letter> walk;
        std::vector<int> visited_at(sg.node_count() + 1, -1);
        int v = sg.start();
        visited_at[v] = 0;
        int cycle_from = -1;
        while (static_cast<int>(walk.size()) < max_len) {
            auto out_edges = sg.edges_from(v);
            if (out_edges.empty()) throw std::logic_error("subgraph node without outgoing edge");
            const Letter& e = out_edges[detail::draw_below(rng, out_edges.size())];
            walk.push_back(e);
            v = e.v;
            if (visited_at[v] >= 0) {
                cycle_from = visited_at[v];
                break;
            }
            visited_at[v] = static_cast<int>(walk.size());
        }
        if (cycle_from < 0) throw std::invalid_argument("sample_plays: max_len too small to close a lasso");
        LassoWord w;
        w.prefix.assign(walk.begin(), walk.begin() + cycle_from);
        w.cycle.assign(walk.begin() + cycle_from, walk.end());
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace regsep

#endif
