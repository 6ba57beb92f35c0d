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

#ifndef REGSEP_PRODUCT_HPP
#define REGSEP_PRODUCT_HPP

#include <chrono>
#include <concepts>
#include <sstream>

#include "regsep/baselines.hpp"
#include "regsep/safety_automaton.hpp"

namespace regsep {

/// What the product builder needs from an automaton. The two shipped
/// instances are RegisterAutomaton and SafetyAutomaton; any other separator
/// with this surface plugs in the same way.
template <class A>
concept SeparatorAutomaton = requires(const A a, const typename A::State s, const Letter e,
                                      std::vector<std::pair<int, typename A::State>>& out) {
    { a.initial_state() } -> std::convertible_to<typename A::State>;
    a.successors(s, e, out);
    { a.is_rejecting(s) } -> std::convertible_to<bool>;
    { a.max_emitted_priority() } -> std::convertible_to<int>;
};

/// The synchronized product of a game and an automaton. Positions are the
/// game's nodes and edges; from (u,s) a priority-1 edge leads to (e,s) for
/// every game edge e out of u, and from (e,s) one edge per automaton
/// transition on e leads to (target of e, successor state) with the
/// transition's priority. Node-position ownership is inherited,
/// edge-positions belong to Even.
struct ProductGame {
    struct Node {
        int game_pos;       // node id, or edge index into game.edges() when edge_pos
        bool edge_pos;
        uint32_t state_id;  // automaton state, interned in discovery order
        Player owner;
        bool rejecting;     // automaton component is a rejecting state
    };

    std::vector<Node> nodes;
    std::vector<uint32_t> first;                    // CSR offsets, size nodes+1
    std::vector<std::pair<int, uint32_t>> edges;    // (priority, target)
    int max_priority = 1;
    uint32_t start = 0;

    size_t node_count() const { return nodes.size(); }
    size_t edge_count() const { return edges.size(); }

    std::span<const std::pair<int, uint32_t>> edges_from(uint32_t v) const {
        return {edges.data() + first[v], edges.data() + first[v + 1]};
    }

    /// Renumbers the product as an ordinary game graph (node i+1 for product
    /// node i) so the classical solvers can run on it.
    GameGraph to_game_graph() const {
        std::vector<Player> owner(nodes.size() + 1, Player::Even);
        std::vector<Letter> gedges;
        gedges.reserve(edges.size());
        for (size_t v = 0; v < nodes.size(); ++v) {
            owner[v + 1] = nodes[v].owner;
            for (const auto& [p, t] : edges_from(static_cast<uint32_t>(v)))
                gedges.push_back({static_cast<int>(v) + 1, p, static_cast<int>(t) + 1});
        }
        return GameGraph(static_cast<int>(nodes.size()), static_cast<int>(start) + 1, std::move(owner),
                         std::move(gedges));
    }
};

inline constexpr uint64_t kDefaultProductNodeCap = 10000000;

namespace detail {

template <class State>
class StateInterner {
  public:
    uint32_t intern(const State& s) {
        uint64_t h = state_hash_of(s);
        auto& slot = by_hash_[h];
        for (uint32_t id : slot)
            if (states_[id] == s) return id;
        uint32_t id = static_cast<uint32_t>(states_.size());
        states_.push_back(s);
        slot.push_back(id);
        return id;
    }
    const State& operator[](uint32_t id) const { return states_[id]; }
    size_t size() const { return states_.size(); }

  private:
    static uint64_t state_hash_of(const RegisterState& s) { return RegisterStateHash{}(s); }
    template <class S>
    static uint64_t state_hash_of(const S& s) {
        return s.hash();
    }
    std::vector<State> states_;
    std::unordered_map<uint64_t, std::vector<uint32_t>> by_hash_;
};

}  // namespace detail

/// Reachable fragment of the synchronized product, explored breadth-first
/// from (start node, initial state) with a deterministic worklist. Exceeding
/// the node cap raises resource_limit_error, never a truncated result.
template <SeparatorAutomaton Aut>
ProductGame build_product(const GameGraph& g, const Aut& aut, uint64_t node_cap = kDefaultProductNodeCap) {
    ProductGame p;
    detail::StateInterner<typename Aut::State> interner;
    // key: position (node id, or n+1+edge index) and interned state
    std::unordered_map<uint64_t, uint32_t> ids;
    const int n = g.node_count();

    auto intern_node = [&](int pos, bool edge_pos, const typename Aut::State& s) -> std::pair<uint32_t, bool> {
        uint32_t sid = interner.intern(s);
        uint64_t key = (static_cast<uint64_t>(pos) << 32) | sid;
        auto [it, fresh] = ids.try_emplace(key, static_cast<uint32_t>(p.nodes.size()));
        if (fresh) {
            Player owner = edge_pos ? Player::Even : g.owner(pos);
            p.nodes.push_back({edge_pos ? pos - (n + 1) : pos, edge_pos, sid, owner, aut.is_rejecting(s)});
            if (p.nodes.size() > node_cap) throw resource_limit_error("product exceeds node cap");
        }
        return {it->second, fresh};
    };

    auto [start_id, _] = intern_node(g.start(), false, aut.initial_state());
    p.start = start_id;
    p.first.push_back(0);
    std::vector<std::pair<int, typename Aut::State>> moves;
    for (uint32_t head = 0; head < p.nodes.size(); ++head) {
        ProductGame::Node node = p.nodes[head];
        if (!node.edge_pos) {
            // copy: the interner's storage may reallocate while new states
            // are added below
            typename Aut::State s = interner[node.state_id];
            for (const Letter& e : g.edges_from(node.game_pos)) {
                int edge_index = static_cast<int>(&e - g.edges().data());
                auto [tid, fresh] = intern_node(n + 1 + edge_index, true, s);
                (void)fresh;
                p.edges.emplace_back(1, tid);
            }
        } else {
            const Letter& e = g.edges()[node.game_pos];
            aut.successors(interner[node.state_id], e, moves);
            for (auto& [prio, t] : moves) {
                auto [tid, fresh] = intern_node(e.v, false, t);
                (void)fresh;
                p.edges.emplace_back(prio, tid);
                p.max_priority = std::max(p.max_priority, prio);
            }
        }
        p.first.push_back(static_cast<uint32_t>(p.edges.size()));
    }
    return p;
}

/// The full, non-reachability-pruned product over every automaton state;
/// exponential, used to verify the closed-form size formulas on small
/// instances. Requires the automaton to enumerate its states.
template <SeparatorAutomaton Aut>
ProductGame build_product_full(const GameGraph& g, const Aut& aut) {
    ProductGame p;
    const int n = g.node_count();
    const int m = g.edge_count();
    std::vector<typename Aut::State> states = aut.all_states();
    const size_t q = states.size();
    detail::StateInterner<typename Aut::State> interner;
    for (const auto& s : states) interner.intern(s);

    auto node_id = [&](int v, uint32_t sid) { return static_cast<uint32_t>((v - 1) * q + sid); };
    auto edge_id = [&](int ei, uint32_t sid) { return static_cast<uint32_t>(n * q + ei * q + sid); };

    for (int v = 1; v <= n; ++v)
        for (uint32_t sid = 0; sid < q; ++sid)
            p.nodes.push_back({v, false, sid, g.owner(v), aut.is_rejecting(states[sid])});
    for (int ei = 0; ei < m; ++ei)
        for (uint32_t sid = 0; sid < q; ++sid)
            p.nodes.push_back({ei, true, sid, Player::Even, aut.is_rejecting(states[sid])});

    uint32_t init = interner.intern(aut.initial_state());
    p.start = node_id(g.start(), init);

    p.first.push_back(0);
    std::vector<std::pair<int, typename Aut::State>> moves;
    for (const auto& node : p.nodes) {
        if (!node.edge_pos) {
            for (const Letter& e : g.edges_from(node.game_pos)) {
                int edge_index = static_cast<int>(&e - g.edges().data());
                p.edges.emplace_back(1, edge_id(edge_index, node.state_id));
            }
        } else {
            const Letter& e = g.edges()[node.game_pos];
            aut.successors(states[node.state_id], e, moves);
            for (auto& [prio, t] : moves) {
                uint32_t sid = interner.intern(t);
                if (sid >= q) throw std::logic_error("automaton transition leaves the enumerated state set");
                p.edges.emplace_back(prio, node_id(e.v, sid));
                p.max_priority = std::max(p.max_priority, prio);
            }
        }
        p.first.push_back(static_cast<uint32_t>(p.edges.size()));
    }
    return p;
}

/// Least set containing the targets and closed under Odd forcing one step
/// into it: an Odd node joins when some successor is in, an Even node when
/// all are. Linear in the reachable edges via out-degree counters.
inline std::vector<char> odd_attractor(const ProductGame& p, const std::vector<char>& targets) {
    const size_t n = p.node_count();
    std::vector<char> in_attr(n, 0);
    std::vector<uint32_t> escape(n, 0);
    std::vector<std::vector<uint32_t>> preds(n);
    for (uint32_t v = 0; v < n; ++v) {
        auto out = p.edges_from(v);
        escape[v] = static_cast<uint32_t>(out.size());
        for (const auto& [prio, t] : out) preds[t].push_back(v);
    }
    std::vector<uint32_t> work;
    for (uint32_t v = 0; v < n; ++v)
        if (targets[v]) {
            in_attr[v] = 1;
            work.push_back(v);
        }
    for (size_t head = 0; head < work.size(); ++head) {
        uint32_t v = work[head];
        for (uint32_t u : preds[v]) {
            if (in_attr[u]) continue;
            if (p.nodes[u].owner == Player::Odd || --escape[u] == 0) {
                in_attr[u] = 1;
                work.push_back(u);
            }
        }
    }
    return in_attr;
}

/// Safety solve of a product built from the safety automaton: Odd wins iff
/// she can force the play into the rejecting component, computed as the Odd
/// attractor to the rejecting nodes. Linear time in the product.
inline Player solve_safety_product(const ProductGame& p) {
    std::vector<char> targets(p.node_count(), 0);
    for (size_t v = 0; v < p.node_count(); ++v) targets[v] = p.nodes[v].rejecting;
    std::vector<char> attr = odd_attractor(p, targets);
    return attr[p.start] ? Player::Odd : Player::Even;
}

/// Parity solve of a product built from the register automaton, via the
/// baseline recursive solver; the cross-check path for the fast safety
/// route.
inline Player solve_parity_product(const ProductGame& p) {
    GameGraph g = p.to_game_graph();
    return solve_zielonka(g);
}

/// Machine-readable solver outcome; wall_ms is excluded from golden
/// comparisons.
struct SolveReport {
    Player winner = Player::Even;
    uint64_t product_nodes = 0;
    uint64_t product_edges = 0;
    double wall_ms = 0.0;
};

inline std::string to_record(const SolveReport& r, const std::string& game_id, const std::string& algorithm) {
    std::ostringstream os;
    os << "game=" << game_id << " algorithm=" << algorithm << " winner=" << to_string(r.winner)
       << " product_nodes=" << r.product_nodes << " product_edges=" << r.product_edges << " wall_time_ms=" << r.wall_ms;
    return os.str();
}

namespace detail {

template <class F>
SolveReport timed_solve(F&& run) {
    auto t0 = std::chrono::steady_clock::now();
    SolveReport r = run();
    auto t1 = std::chrono::steady_clock::now();
    r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return r;
}

}  // namespace detail

/// The fast path: product with the safety automaton, solved by attractor.
inline SolveReport solve_with_safety_separator(const GameGraph& g, uint64_t node_cap = kDefaultProductNodeCap) {
    return detail::timed_solve([&] {
        SafetyAutomaton aut(g.node_count(), std::max(1, g.priority_bound()));
        ProductGame p = build_product(g, aut, node_cap);
        SolveReport r;
        r.winner = solve_safety_product(p);
        r.product_nodes = p.node_count();
        r.product_edges = p.edge_count();
        return r;
    });
}

/// The original reduction: product with the register automaton, solved as a
/// parity game with 2*rn+1 priorities.
inline SolveReport solve_with_register_separator(const GameGraph& g, uint64_t node_cap = kDefaultProductNodeCap) {
    return detail::timed_solve([&] {
        RegisterAutomaton aut(g.node_count(), std::max(1, g.priority_bound()));
        ProductGame p = build_product(g, aut, node_cap);
        SolveReport r;
        r.winner = solve_parity_product(p);
        r.product_nodes = p.node_count();
        r.product_edges = p.edge_count();
        return r;
    });
}

}  // namespace regsep

#endif
