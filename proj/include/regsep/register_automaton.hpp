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

#ifndef REGSEP_REGISTER_AUTOMATON_HPP
#define REGSEP_REGISTER_AUTOMATON_HPP

#include <cassert>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include "regsep/game.hpp"

namespace regsep {

/// Number of registers sufficient for games with n nodes: 1 + floor(log2 n).
inline int register_count(int n) {
    if (n < 1) throw std::invalid_argument("register_count requires n >= 1");
    int r = 1;
    while (n >>= 1) ++r;
    return r;
}

/// A non-increasing sequence <r_rn, ..., r_2, r_1> of register values in
/// 1..d. Stored lowest index first: regs()[i] is register i+1, so the stored
/// vector is non-decreasing.
class RegisterState {
  public:
    RegisterState() = default;
    explicit RegisterState(std::vector<int> low_first) : r_(std::move(low_first)) {
        for (size_t i = 0; i + 1 < r_.size(); ++i)
            if (r_[i] > r_[i + 1]) throw std::invalid_argument("register sequence must be non-increasing");
        for (int x : r_)
            if (x < 1) throw std::invalid_argument("register value out of range");
    }
    static RegisterState all_ones(int count) { return RegisterState(std::vector<int>(count, 1)); }

    int count() const { return static_cast<int>(r_.size()); }
    /// Value of register k, 1-based from the lowest.
    int reg(int k) const { return r_.at(k - 1); }
    const std::vector<int>& regs() const { return r_; }

    /// Update by priority p: the k registers below p all become p, where k is
    /// the greatest index with r_1,...,r_k < p.
    RegisterState updated(int p) const {
        RegisterState s = *this;
        for (int i = 0; i < s.count() && s.r_[i] < p; ++i) s.r_[i] = p;
        return s;
    }

    /// The k-reset: registers below k shift up one position, register 1
    /// becomes 1, registers above k are unchanged. Returns the new state and
    /// whether the reset is even (register k held an even value).
    std::pair<RegisterState, bool> reset(int k) const {
        if (k < 1 || k > count()) throw std::invalid_argument("reset index out of range");
        RegisterState s = *this;
        bool even = r_[k - 1] % 2 == 0;
        for (int i = k - 1; i >= 1; --i) s.r_[i] = s.r_[i - 1];
        s.r_[0] = 1;
        return {s, even};
    }

    /// Rendered highest register first, matching the written convention.
    std::string to_string() const {
        std::string out = "<";
        for (int i = count() - 1; i >= 0; --i) {
            out += std::to_string(r_[i]);
            if (i > 0) out += ",";
        }
        return out + ">";
    }

    friend bool operator==(const RegisterState&, const RegisterState&) = default;
    friend auto operator<=>(const RegisterState&, const RegisterState&) = default;

  private:
    std::vector<int> r_;
};

struct RegisterStateHash {
    size_t operator()(const RegisterState& s) const {
        size_t h = 0xcbf29ce484222325ull;
        for (int x : s.regs()) h = (h ^ static_cast<size_t>(x)) * 0x100000001b3ull;
        return h;
    }
};

enum class ResetKind { NonReset, EvenReset, OddReset };

/// One transition of the register automaton: the update by the letter,
/// optionally followed by a k-reset. reset_register is 0 for the non-reset
/// transition. The emitted priority is 1 (non-reset), 2k (even reset) or
/// 2k+1 (odd reset).
struct RegTransition {
    RegisterState source;
    Letter letter;
    int reset_register = 0;
    ResetKind kind = ResetKind::NonReset;
    int priority = 1;
    RegisterState target;
};

/// The nondeterministic parity automaton over registers, represented
/// implicitly: states and transitions are computed on demand, never tabled.
/// An odd priority bound is rounded up to the next even number.
class RegisterAutomaton {
  public:
    using State = RegisterState;

    RegisterAutomaton(int n, int d) : n_(n), requested_d_(d) {
        if (n < 1 || d < 1) throw std::invalid_argument("automaton requires n >= 1 and d >= 1");
        d_ = d % 2 == 0 ? d : d + 1;
        rn_ = register_count(n);
    }

    int node_bound() const { return n_; }
    int priority_bound() const { return d_; }
    int requested_priority_bound() const { return requested_d_; }
    bool rounded_priority_bound() const { return d_ != requested_d_; }
    int registers() const { return rn_; }
    /// Largest priority the automaton can emit.
    int max_emitted_priority() const { return 2 * rn_ + 1; }

    State initial_state() const { return RegisterState::all_ones(rn_); }

    bool is_rejecting(const State&) const { return false; }

    void require_letter(const Letter& e) const {
        if (e.u < 1 || e.u > n_ || e.v < 1 || e.v > n_ || e.p < 1 || e.p > d_)
            throw std::invalid_argument("letter outside the automaton's alphabet");
    }

    /// All rn+1 transitions reading e from s: the non-reset transition and
    /// one k-reset per register, applied after the update.
    std::vector<RegTransition> transitions(const State& s, const Letter& e) const {
        require_letter(e);
        if (s.count() != rn_) throw std::invalid_argument("state has wrong register count");
        std::vector<RegTransition> out;
        out.reserve(rn_ + 1);
        RegisterState up = s.updated(e.p);
        out.push_back({s, e, 0, ResetKind::NonReset, 1, up});
        for (int k = 1; k <= rn_; ++k) {
            auto [t, even] = up.reset(k);
            out.push_back({s, e, k, even ? ResetKind::EvenReset : ResetKind::OddReset, even ? 2 * k : 2 * k + 1,
                           std::move(t)});
        }
        return out;
    }

    /// Successor view used by the product builder; same order as
    /// transitions() but without the per-transition source copies.
    void successors(const State& s, const Letter& e, std::vector<std::pair<int, State>>& out) const {
        require_letter(e);
        out.clear();
        out.reserve(rn_ + 1);
        RegisterState up = s.updated(e.p);
        out.emplace_back(1, up);
        for (int k = 1; k <= rn_; ++k) {
            auto [t, even] = up.reset(k);
            out.emplace_back(even ? 2 * k : 2 * k + 1, std::move(t));
        }
    }

    /// Number of states: non-increasing rn-sequences over 1..d, the binomial
    /// C(rn + d - 1, rn). Throws on overflow rather than wrapping.
    uint64_t state_count() const { return binomial_checked(rn_ + d_ - 1, rn_); }

    /// Every state, materialized; exponential, intended for small n and d.
    std::vector<State> all_states() const {
        std::vector<State> out;
        std::vector<int> cur(rn_, 1);
        enumerate(cur, 0, 1, out);
        return out;
    }

    static uint64_t binomial_checked(int n, int k) {
        if (k < 0 || k > n) return 0;
        k = std::min(k, n - k);
        uint64_t acc = 1;
        for (int i = 1; i <= k; ++i) {
            // acc * (n - k + i) / i stays integral at every step
            uint64_t num = static_cast<uint64_t>(n - k + i);
            uint64_t g = std::gcd(acc, static_cast<uint64_t>(i));
            uint64_t acc2 = acc / g;
            uint64_t den = static_cast<uint64_t>(i) / g;
            uint64_t g2 = std::gcd(num, den);
            num /= g2;
            den /= g2;
            if (den != 1) throw std::logic_error("binomial: non-integral intermediate");
            uint64_t prod;
            if (__builtin_mul_overflow(acc2, num, &prod)) throw std::overflow_error("state count overflows 64 bits");
            acc = prod;
        }
        return acc;
    }

  private:
    void enumerate(std::vector<int>& cur, int idx, int min_value, std::vector<State>& out) const {
        if (idx == rn_) {
            out.push_back(RegisterState(cur));
            return;
        }
        // filled lowest register first and non-decreasing, which is exactly
        // the stored form of a non-increasing <r_rn,...,r_1>
        for (int v = min_value; v <= d_; ++v) {
            cur[idx] = v;
            enumerate(cur, idx + 1, v, out);
        }
    }

    int n_;
    int requested_d_;
    int d_;
    int rn_;
};

namespace detail {

/// Reachable lasso-position graph of an automaton reading w. Positions
/// 0..|prefix|-1 then |prefix|..L-1 for the cycle; the successor of the last
/// position wraps to |prefix|.
template <class Aut>
struct LassoProduct {
    struct Edge {
        int priority;
        int target;
    };
    std::vector<std::pair<int, typename Aut::State>> nodes;  // (position, state)
    std::vector<std::vector<Edge>> adj;

    LassoProduct(const Aut& aut, const LassoWord& w) {
        if (w.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
        const int pre = static_cast<int>(w.prefix.size());
        const int len = pre + static_cast<int>(w.cycle.size());
        auto letter_at = [&](int pos) -> const Letter& {
            return pos < pre ? w.prefix[pos] : w.cycle[pos - pre];
        };
        auto next_pos = [&](int pos) { return pos + 1 < len ? pos + 1 : pre; };
        std::unordered_map<uint64_t, std::vector<std::pair<typename Aut::State, int>>> bucket;
        auto intern = [&](int pos, const typename Aut::State& s) -> std::pair<int, bool> {
            uint64_t h = static_cast<uint64_t>(pos) * 0x9e3779b97f4a7c15ull ^ state_hash(s);
            auto& vec = bucket[h];
            for (auto& [st, id] : vec)
                if (st == s && nodes[id].first == pos) return {id, false};
            int id = static_cast<int>(nodes.size());
            nodes.emplace_back(pos, s);
            adj.emplace_back();
            vec.emplace_back(s, id);
            return {id, true};
        };
        std::vector<std::pair<int, typename Aut::State>> work;
        intern(0, aut.initial_state());
        work.emplace_back(0, aut.initial_state());
        std::vector<std::pair<int, typename Aut::State>> succ;
        for (size_t head = 0; head < work.size(); ++head) {
            auto [pos, s] = work[head];
            auto [id, _] = intern(pos, s);
            std::vector<std::pair<int, typename Aut::State>> moves;
            aut.successors(s, letter_at(pos), moves);
            for (auto& [prio, t] : moves) {
                auto [tid, fresh] = intern(next_pos(pos), t);
                adj[id].push_back({prio, tid});
                if (fresh) work.emplace_back(next_pos(pos), t);
            }
        }
    }

    static uint64_t state_hash(const RegisterState& s) { return RegisterStateHash{}(s); }
    template <class S>
    static uint64_t state_hash(const S& s) {
        return s.hash();
    }
};

/// True iff the graph has a reachable cycle whose maximum edge priority is
/// even: for each even q, the SCCs of the subgraph capped at q are examined
/// for a priority-q edge.
template <class G>
bool has_even_max_cycle(const G& g, int max_priority) {
    const int n = static_cast<int>(g.nodes.size());
    for (int q = 2; q <= max_priority; q += 2) {
        // Tarjan restricted to edges with priority <= q.
        std::vector<int> low(n), num(n, -1), comp(n, -1);
        std::vector<int> stack_nodes;
        std::vector<char> on_stack(n, 0);
        int counter = 0, ncomp = 0;
        struct Frame {
            int v;
            size_t i;
        };
        for (int root = 0; root < n; ++root) {
            if (num[root] != -1) continue;
            std::vector<Frame> call{{root, 0}};
            num[root] = low[root] = counter++;
            stack_nodes.push_back(root);
            on_stack[root] = 1;
            while (!call.empty()) {
                Frame& f = call.back();
                if (f.i < g.adj[f.v].size()) {
                    const auto& e = g.adj[f.v][f.i++];
                    if (e.priority > q) continue;
                    int w = e.target;
                    if (num[w] == -1) {
                        num[w] = low[w] = counter++;
                        stack_nodes.push_back(w);
                        on_stack[w] = 1;
                        call.push_back({w, 0});
                    } else if (on_stack[w]) {
                        low[f.v] = std::min(low[f.v], num[w]);
                    }
                } else {
                    if (low[f.v] == num[f.v]) {
                        while (true) {
                            int w = stack_nodes.back();
                            stack_nodes.pop_back();
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
        for (int v = 0; v < n; ++v)
            for (const auto& e : g.adj[v])
                if (e.priority == q && comp[v] == comp[e.target]) return true;
    }
    return false;
}

}  // namespace detail

/// Nondeterministic membership: true iff some run of the automaton reading
/// the lasso is accepting, decided by even-priority-capped SCC sweeps over
/// the reachable (position, state) graph.
inline bool lasso_accepted_by(const RegisterAutomaton& aut, const LassoWord& w) {
    detail::LassoProduct<RegisterAutomaton> g(aut, w);
    return detail::has_even_max_cycle(g, aut.max_emitted_priority());
}

}  // namespace regsep

#endif
