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

#ifndef REGSEP_COUNTEREXAMPLES_HPP
#define REGSEP_COUNTEREXAMPLES_HPP

#include <functional>
#include <memory>
#include <set>

#include "regsep/baselines.hpp"
#include "regsep/safety_automaton.hpp"

namespace regsep {

/// A deterministic policy resolving the register automaton's nondeterminism:
/// 0 picks the non-reset transition, k >= 1 resets register k. For the cycle
/// detection to be sound, the choice must be a function of (state, next
/// letter, fingerprint); the fingerprint exposes any internal state and is
/// constant for stateless policies.
struct ResolverStrategy {
    std::string name;
    std::function<int(std::span<const Letter> read, const RegisterState& state, const Letter& next)> choose;
    std::function<uint64_t()> fingerprint = [] { return uint64_t{0}; };
};

inline ResolverStrategy never_reset_strategy() {
    return {"never-reset", [](std::span<const Letter>, const RegisterState&, const Letter&) { return 0; }};
}

/// Resets the lowest register that would hold an odd value after the update,
/// or takes the non-reset transition when all are even.
inline ResolverStrategy lowest_odd_register_strategy() {
    return {"lowest-odd-register", [](std::span<const Letter>, const RegisterState& s, const Letter& e) {
                RegisterState up = s.updated(e.p);
                for (int k = 1; k <= up.count(); ++k)
                    if (up.reg(k) % 2 == 1) return k;
                return 0;
            }};
}

/// Pseudo-random choices driven by a small linear congruential generator;
/// the tiny state space keeps the induced play eventually periodic.
inline ResolverStrategy seeded_random_strategy(uint64_t seed) {
    auto state = std::make_shared<uint32_t>(static_cast<uint32_t>(seed % 251));
    ResolverStrategy st;
    st.name = "seeded-random";
    st.choose = [state](std::span<const Letter>, const RegisterState& s, const Letter&) {
        *state = (*state * 37 + 11) % 251;
        return static_cast<int>(*state % static_cast<uint32_t>(s.count() + 1));
    };
    st.fingerprint = [state] { return static_cast<uint64_t>(*state); };
    return st;
}

/// Outcome of driving the word construction against a resolver strategy.
struct ResolverVerdict {
    LassoWord word;          // the constructed adversarial word, folded
    bool run_accepting;      // whether the strategy's run on it is accepting
    bool word_limsup_even;
    bool word_in_language;   // membership of the word in L(R), checked independently
    bool strategy_failed;    // rejecting run on an accepted word
    int steps_used;
};

/// Drives the inductive word construction against a transition strategy:
/// starting from (1,2,1), each step appends (1,2,1) after a non-reset,
/// (1,2k+2,1) after an odd k-reset and (1,2k+1,1) after an even k-reset, so
/// the appended priorities flip the parity the run commits to. Requires
/// d >= 2*rn(n)+2 so every appended letter stays in the alphabet. The
/// eventual (state, next letter, fingerprint) cycle is detected, verified
/// for one period, and classified.
inline ResolverVerdict adversarial_word_vs_strategy(int n, int d, const ResolverStrategy& strategy,
                                                    int max_steps = 1 << 16) {
    RegisterAutomaton aut(n, d);
    const int rn = aut.registers();
    if (aut.priority_bound() < 2 * rn + 2)
        throw std::invalid_argument("construction needs d >= 2*rn(n)+2");

    struct Config {
        RegisterState state;
        Letter next;
        uint64_t fp;
        auto operator<=>(const Config&) const = default;
    };
    std::map<Config, int> seen;
    std::vector<Letter> word;
    std::vector<int> choices;
    std::vector<int> emitted;
    RegisterState s = aut.initial_state();
    Letter next{1, 2, 1};

    auto step = [&]() {
        int k = strategy.choose(word, s, next);
        if (k < 0 || k > rn) throw std::invalid_argument("strategy chose an invalid transition");
        RegisterState up = s.updated(next.p);
        word.push_back(next);
        choices.push_back(k);
        if (k == 0) {
            emitted.push_back(1);
            s = up;
            next = {1, 2, 1};
        } else {
            auto [t, even] = up.reset(k);
            emitted.push_back(even ? 2 * k : 2 * k + 1);
            s = std::move(t);
            next = even ? Letter{1, 2 * k + 1, 1} : Letter{1, 2 * k + 2, 1};
        }
    };

    int cycle_from = -1, cycle_to = -1;
    for (int t = 0; t < max_steps; ++t) {
        Config c{s, next, strategy.fingerprint()};
        auto [it, fresh] = seen.try_emplace(c, t);
        if (!fresh) {
            cycle_from = it->second;
            cycle_to = t;
            break;
        }
        step();
    }
    if (cycle_from < 0) throw resource_limit_error("step budget exceeded before cycle detection");

    // verify one period: the strategy contract makes the repeat exact
    const int period = cycle_to - cycle_from;
    for (int i = 0; i < period; ++i) {
        step();
        if (word.back() != word[cycle_from + i] || choices.back() != choices[cycle_from + i])
            throw std::invalid_argument("strategy is not a function of (state, letter, fingerprint)");
    }

    ResolverVerdict v;
    v.steps_used = cycle_to;
    v.word.prefix.assign(word.begin(), word.begin() + cycle_from);
    v.word.cycle.assign(word.begin() + cycle_from, word.begin() + cycle_to);
    int run_max = *std::max_element(emitted.begin() + cycle_from, emitted.begin() + cycle_to);
    v.run_accepting = run_max % 2 == 0;
    v.word_limsup_even = limsup_winner(v.word) == Player::Even;
    v.word_in_language = lasso_accepted_by(aut, v.word);
    v.strategy_failed = !v.run_accepting && v.word_in_language;
    return v;
}

/// Witness separating the safety automaton's language from limsup-even: the
/// word (1,1,1)^{k+1} (1,2,1)^omega, where k is the longest rejection-free
/// run on ones, found by breadth-first search over live states. Verifies the
/// witness is rejected despite its even limsup.
struct SafetyGapWitness {
    LassoWord word;
    int k;
};

inline SafetyGapWitness safety_language_gap_witness(int n, int d, size_t state_cap = 1000000) {
    SafetyAutomaton aut(n, d);
    const Letter one{1, 1, 1};
    std::set<SafetyState> frontier{aut.initial_state()};
    int k = 0;
    size_t visited = 1;
    for (int depth = 1;; ++depth) {
        std::set<SafetyState> next;
        for (const SafetyState& q : frontier)
            for (auto& [prio, t] : aut.transitions(q, one))
                if (!t.is_rejecting()) next.insert(std::move(t));
        if (next.empty()) break;
        visited += next.size();
        if (visited > state_cap)
            throw std::logic_error("rejection-free runs on ones do not die out");
        k = depth;
        frontier = std::move(next);
    }
    SafetyGapWitness w;
    w.k = k;
    w.word.prefix.assign(k + 1, one);
    w.word.cycle.assign(1, Letter{1, 2, 1});
    if (limsup_winner(w.word) != Player::Even) throw std::logic_error("gap witness limsup is not even");
    if (lasso_accepted_by(aut, w.word)) throw std::logic_error("gap witness unexpectedly accepted");
    return w;
}

}  // namespace regsep

#endif
