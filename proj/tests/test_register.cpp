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
#include "regsep/register_automaton.hpp"
#include "support/oracles.hpp"

using namespace regsep;

namespace {

RegisterState st(std::initializer_list<int> high_first) {
    std::vector<int> low(high_first);
    std::reverse(low.begin(), low.end());
    return RegisterState(low);
}

}  // namespace

TEST_CASE("register count") {
    CHECK(register_count(1) == 1);
    CHECK(register_count(8) == 4);
    CHECK(register_count(1000) == 10);
    CHECK(register_count(2) == 2);
    CHECK(register_count(7) == 3);
}

TEST_CASE("update writes the priority into every lower register below it") {
    CHECK(st({1, 1}).updated(3) == st({3, 3}));
    CHECK(st({4, 2}).updated(3) == st({4, 3}));
    CHECK(st({4, 2}).updated(1) == st({4, 2}));

    SECTION("matches the greatest-k search oracle everywhere") {
        RegisterAutomaton aut(4, 6);
        for (const RegisterState& s : aut.all_states())
            for (int p = 1; p <= 6; ++p) CHECK(s.updated(p) == test_oracles::update_by_search(s, p));
    }
}

TEST_CASE("k-reset shifts the lower registers and reports the parity") {
    auto [a, a_even] = st({4, 3}).reset(2);
    CHECK(a == st({3, 1}));
    CHECK(a_even);
    auto [b, b_even] = st({4, 3}).reset(1);
    CHECK(b == st({4, 1}));
    CHECK_FALSE(b_even);
    auto [c, c_even] = st({1, 1}).reset(1);
    CHECK(c == st({1, 1}));
    CHECK_FALSE(c_even);
}

TEST_CASE("update and reset preserve the non-increasing invariant") {
    for (int n : {1, 2, 4}) {
        for (int d : {2, 4, 6}) {
            RegisterAutomaton aut(n, d);
            for (const RegisterState& s : aut.all_states()) {
                for (int p = 1; p <= d; ++p) {
                    RegisterState up = s.updated(p);
                    for (int i = 1; i < up.count(); ++i) CHECK(up.reg(i) <= up.reg(i + 1));
                    for (int k = 1; k <= up.count(); ++k) {
                        auto [r, even] = up.reset(k);
                        (void)even;
                        for (int i = 1; i < r.count(); ++i) CHECK(r.reg(i) <= r.reg(i + 1));
                    }
                }
            }
        }
    }
}

TEST_CASE("the transition relation is total with one transition per choice") {
    RegisterAutomaton aut(2, 4);
    SECTION("worked example") {
        auto ts = aut.transitions(st({1, 1}), {1, 3, 2});
        REQUIRE(ts.size() == 3);
        CHECK(ts[0].priority == 1);
        CHECK(ts[0].target == st({3, 3}));
        CHECK(ts[0].kind == ResetKind::NonReset);
        CHECK(ts[1].priority == 3);
        CHECK(ts[1].target == st({3, 1}));
        CHECK(ts[1].kind == ResetKind::OddReset);
        CHECK(ts[2].priority == 5);
        CHECK(ts[2].target == st({3, 1}));
        CHECK(ts[2].kind == ResetKind::OddReset);
    }
    SECTION("even values yield even resets") {
        auto ts = aut.transitions(st({2, 2}), {1, 1, 1});
        REQUIRE(ts.size() == 3);
        CHECK(ts[1].kind == ResetKind::EvenReset);
        CHECK(ts[1].priority == 2);
        CHECK(ts[2].kind == ResetKind::EvenReset);
        CHECK(ts[2].priority == 4);
    }
    SECTION("always rn+1 transitions, matching the successor view") {
        std::vector<std::pair<int, RegisterState>> succ;
        for (const RegisterState& s : aut.all_states())
            for (int u = 1; u <= 2; ++u)
                for (int p = 1; p <= 4; ++p)
                    for (int v = 1; v <= 2; ++v) {
                        auto ts = aut.transitions(s, {u, p, v});
                        REQUIRE(ts.size() == static_cast<size_t>(aut.registers() + 1));
                        aut.successors(s, {u, p, v}, succ);
                        REQUIRE(succ.size() == ts.size());
                        for (size_t i = 0; i < ts.size(); ++i) {
                            CHECK(succ[i].first == ts[i].priority);
                            CHECK(succ[i].second == ts[i].target);
                        }
                    }
    }
    SECTION("letters outside the alphabet are rejected") {
        CHECK_THROWS_AS(aut.transitions(st({1, 1}), {1, 5, 1}), std::invalid_argument);
        CHECK_THROWS_AS(aut.transitions(st({1, 1}), {3, 1, 1}), std::invalid_argument);
    }
}

TEST_CASE("state counts match exhaustive enumeration") {
    CHECK(RegisterAutomaton(2, 4).state_count() == 10);
    CHECK(RegisterAutomaton(1, 2).state_count() == 2);
    CHECK(RegisterAutomaton(2, 2).state_count() == 3);
    for (int n = 1; n <= 8; ++n)
        for (int d : {2, 4, 6}) {
            RegisterAutomaton aut(n, d);
            auto all = aut.all_states();
            CHECK(aut.state_count() == all.size());
            std::set<RegisterState> dedup(all.begin(), all.end());
            CHECK(dedup.size() == all.size());
        }
    SECTION("odd priority bounds round up") {
        RegisterAutomaton aut(2, 3);
        CHECK(aut.priority_bound() == 4);
        CHECK(aut.rounded_priority_bound());
        CHECK(aut.state_count() == 10);
    }
    SECTION("overflow is detected, not wrapped") {
        CHECK_THROWS_AS(RegisterAutomaton(1 << 30, 500).state_count(), std::overflow_error);
    }
}

TEST_CASE("no reachable state leaves the value range") {
    RegisterAutomaton aut(2, 4);
    std::set<RegisterState> seen{aut.initial_state()};
    std::vector<RegisterState> frontier{aut.initial_state()};
    std::vector<std::pair<int, RegisterState>> succ;
    while (!frontier.empty()) {
        std::vector<RegisterState> next;
        for (const RegisterState& s : frontier)
            for (int p = 1; p <= 4; ++p) {
                aut.successors(s, {1, p, 1}, succ);
                for (auto& [prio, t] : succ) {
                    for (int i = 1; i <= t.count(); ++i) {
                        CHECK(t.reg(i) >= 1);
                        CHECK(t.reg(i) <= 4);
                    }
                    if (seen.insert(t).second) next.push_back(t);
                }
            }
        frontier = std::move(next);
    }
    CHECK(seen.size() <= aut.state_count());
}

TEST_CASE("lasso membership matches the limsup classification") {
    SECTION("rejects an odd word") {
        RegisterAutomaton aut(1, 4);
        CHECK_FALSE(lasso_accepted_by(aut, {{}, {{1, 3, 1}}}));
    }
    SECTION("accepts even-cycle words") {
        RegisterAutomaton aut(1, 2);
        CHECK(lasso_accepted_by(aut, {{}, {{1, 2, 1}}}));
        CHECK(lasso_accepted_by(aut, {{{1, 1, 1}}, {{1, 1, 1}, {1, 2, 1}}}));
    }
    SECTION("random lassos agree with limsup, and the reset-lowest-register run witnesses acceptance") {
        std::mt19937_64 rng(23);
        for (int rep = 0; rep < 400; ++rep) {
            int n = 1 + static_cast<int>(rng() % 3);
            int d = 2 * (1 + static_cast<int>(rng() % 3));
            RegisterAutomaton aut(n, d);
            LassoWord w;
            int pre = static_cast<int>(rng() % 4);
            int cyc = 1 + static_cast<int>(rng() % 4);
            auto letter = [&]() -> Letter {
                return {1 + static_cast<int>(rng() % n), 1 + static_cast<int>(rng() % d),
                        1 + static_cast<int>(rng() % n)};
            };
            for (int i = 0; i < pre; ++i) w.prefix.push_back(letter());
            for (int i = 0; i < cyc; ++i) w.cycle.push_back(letter());
            bool expect = limsup_winner(w) == Player::Even;
            CHECK(lasso_accepted_by(aut, w) == expect);
            if (expect) {
                // the explicit witness run: reset register 1 on the top
                // cycle priority, otherwise take the non-reset transition
                int top = 0;
                for (const Letter& e : w.cycle) top = std::max(top, e.p);
                RegisterState s = aut.initial_state();
                std::vector<int> emitted_cycle;
                auto run_letter = [&](const Letter& e, bool record) {
                    RegisterState up = s.updated(e.p);
                    if (e.p == top) {
                        auto [t, even] = up.reset(1);
                        if (record) emitted_cycle.push_back(even ? 2 : 3);
                        s = std::move(t);
                    } else {
                        if (record) emitted_cycle.push_back(1);
                        s = std::move(up);
                    }
                };
                for (const Letter& e : w.prefix) run_letter(e, false);
                for (int spin = 0; spin < n + 2; ++spin)
                    for (const Letter& e : w.cycle) run_letter(e, false);
                for (const Letter& e : w.cycle) run_letter(e, true);
                CHECK(*std::max_element(emitted_cycle.begin(), emitted_cycle.end()) == 2);
            }
        }
    }
}
