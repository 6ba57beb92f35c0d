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

#ifndef REGSEP_SAFETY_AUTOMATON_HPP
#define REGSEP_SAFETY_AUTOMATON_HPP

#include <optional>

#include "regsep/register_automaton.hpp"

namespace regsep {

/// A live state pairs a register state with rn+1 counters in 1..n, stored
/// lowest first: counters()[k] is c_k. The rejecting state is a distinct
/// variant, so live-state invariants stay total.
class SafetyState {
  public:
    static SafetyState rejecting() { return SafetyState(); }
    static SafetyState live(RegisterState regs, std::vector<int> counters) {
        SafetyState q;
        q.live_.emplace(Live{std::move(regs), std::move(counters)});
        return q;
    }

    bool is_rejecting() const { return !live_.has_value(); }
    const RegisterState& regs() const { return live_.value().regs; }
    const std::vector<int>& counters() const { return live_.value().counters; }
    int counter(int k) const { return counters().at(k); }

    std::string to_string() const {
        if (is_rejecting()) return "rej";
        std::string out = "(" + regs().to_string() + ",<";
        const auto& c = counters();
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
            out += std::to_string(c[i]);
            if (i > 0) out += ",";
        }
        return out + ">)";
    }

    uint64_t hash() const {
        if (is_rejecting()) return 0x5851f42d4c957f2dull;
        uint64_t h = RegisterStateHash{}(regs());
        for (int x : counters()) h = (h ^ static_cast<uint64_t>(x)) * 0x100000001b3ull;
        return h;
    }

    friend bool operator==(const SafetyState&, const SafetyState&) = default;
    friend auto operator<=>(const SafetyState&, const SafetyState&) = default;

  private:
    struct Live {
        RegisterState regs;
        std::vector<int> counters;
        friend bool operator==(const Live&, const Live&) = default;
        friend auto operator<=>(const Live&, const Live&) = default;
    };
    std::optional<Live> live_;
};

/// The register automaton extended with counters and a rejecting sink. Live
/// transitions emit priority 2; transitions into (and within) the sink emit
/// priority 1, so a run is accepting iff it never leaves the live states.
class SafetyAutomaton {
  public:
    using State = SafetyState;

    SafetyAutomaton(int n, int d) : reg_(n, d) {}

    int node_bound() const { return reg_.node_bound(); }
    int priority_bound() const { return reg_.priority_bound(); }
    int requested_priority_bound() const { return reg_.requested_priority_bound(); }
    bool rounded_priority_bound() const { return reg_.rounded_priority_bound(); }
    int registers() const { return reg_.registers(); }
    int max_emitted_priority() const { return 2; }
    const RegisterAutomaton& register_automaton() const { return reg_; }

    State initial_state() const {
        return SafetyState::live(reg_.initial_state(), std::vector<int>(reg_.registers() + 1, reg_.node_bound()));
    }

    bool is_rejecting(const State& q) const { return q.is_rejecting(); }

    /// Lift of one register transition onto the counters. An even reset of
    /// register k keeps counters k and above and refills those below with n;
    /// an odd priority 2k+1 (k = 0 for the non-reset transition) decrements
    /// counter k and refills those below, falling into the sink when the
    /// counter is exhausted.
    std::pair<int, State> lift(const State& q, const RegTransition& t) const {
        const int n = reg_.node_bound();
        std::vector<int> c = q.counters();
        if (t.kind == ResetKind::EvenReset) {
            for (int i = 0; i < t.reset_register; ++i) c[i] = n;
            return {2, SafetyState::live(t.target, std::move(c))};
        }
        int k = t.kind == ResetKind::NonReset ? 0 : t.reset_register;
        if (c[k] == 1) return {1, SafetyState::rejecting()};
        c[k] -= 1;
        for (int i = 0; i < k; ++i) c[i] = n;
        return {2, SafetyState::live(t.target, std::move(c))};
    }

    /// rn+1 transitions from a live state (one per register transition); a
    /// single priority-1 self-loop from the sink.
    std::vector<std::pair<int, State>> transitions(const State& q, const Letter& e) const {
        reg_.require_letter(e);
        std::vector<std::pair<int, State>> out;
        if (q.is_rejecting()) {
            out.emplace_back(1, SafetyState::rejecting());
            return out;
        }
        for (const RegTransition& t : reg_.transitions(q.regs(), e)) out.push_back(lift(q, t));
        return out;
    }

    /// Same order as transitions(), avoiding the intermediate RegTransition
    /// records; this is the hot path of product construction.
    void successors(const State& q, const Letter& e, std::vector<std::pair<int, State>>& out) const {
        reg_.require_letter(e);
        out.clear();
        if (q.is_rejecting()) {
            out.emplace_back(1, SafetyState::rejecting());
            return;
        }
        const int n = reg_.node_bound();
        const int rn = reg_.registers();
        out.reserve(rn + 1);
        RegisterState up = q.regs().updated(e.p);
        auto lift_counters = [&](int k, bool even_reset) -> std::optional<std::vector<int>> {
            std::vector<int> c = q.counters();
            if (even_reset) {
                for (int i = 0; i < k; ++i) c[i] = n;
                return c;
            }
            if (c[k] == 1) return std::nullopt;
            c[k] -= 1;
            for (int i = 0; i < k; ++i) c[i] = n;
            return c;
        };
        if (auto c = lift_counters(0, false))
            out.emplace_back(2, SafetyState::live(up, std::move(*c)));
        else
            out.emplace_back(1, SafetyState::rejecting());
        for (int k = 1; k <= rn; ++k) {
            auto [t, even] = up.reset(k);
            if (auto c = lift_counters(k, even))
                out.emplace_back(2, SafetyState::live(std::move(t), std::move(*c)));
            else
                out.emplace_back(1, SafetyState::rejecting());
        }
    }

    /// eta * n^(rn+1) + 1, checked against 64-bit overflow.
    uint64_t state_count() const {
        uint64_t eta = reg_.state_count();
        uint64_t pw = 1;
        for (int i = 0; i <= reg_.registers(); ++i) {
            if (__builtin_mul_overflow(pw, static_cast<uint64_t>(reg_.node_bound()), &pw))
                throw std::overflow_error("state count overflows 64 bits");
        }
        uint64_t total;
        if (__builtin_mul_overflow(eta, pw, &total) || __builtin_add_overflow(total, uint64_t{1}, &total))
            throw std::overflow_error("state count overflows 64 bits");
        return total;
    }

    /// Every state including the sink; exponential, for small n and d only.
    std::vector<State> all_states() const {
        std::vector<State> out;
        out.push_back(SafetyState::rejecting());
        std::vector<int> counters(reg_.registers() + 1, 1);
        for (const RegisterState& rs : reg_.all_states()) enumerate_counters(rs, counters, 0, out);
        return out;
    }

  private:
    void enumerate_counters(const RegisterState& rs, std::vector<int>& c, size_t idx,
                            std::vector<State>& out) const {
        if (idx == c.size()) {
            out.push_back(SafetyState::live(rs, c));
            return;
        }
        for (int v = 1; v <= reg_.node_bound(); ++v) {
            c[idx] = v;
            enumerate_counters(rs, c, idx + 1, out);
        }
    }

    RegisterAutomaton reg_;
};

/// True iff some run on the lasso avoids the rejecting sink forever, i.e.
/// the reachable (position, live state) graph contains a cycle.
inline bool lasso_accepted_by(const SafetyAutomaton& aut, const LassoWord& w) {
    struct LiveView {
        const SafetyAutomaton& aut;
        using State = SafetyAutomaton::State;
        State initial_state() const { return aut.initial_state(); }
        void successors(const State& q, const Letter& e, std::vector<std::pair<int, State>>& out) const {
            out.clear();
            for (auto& [p, t] : aut.transitions(q, e))
                if (!t.is_rejecting()) out.emplace_back(p, std::move(t));
        }
    };
    detail::LassoProduct<LiveView> g(LiveView{aut}, w);
    // Any lasso run through live states repeats a node; every such repeat is
    // a cycle of priority-2 edges.
    return detail::has_even_max_cycle(g, 2);
}

}  // namespace regsep

#endif
