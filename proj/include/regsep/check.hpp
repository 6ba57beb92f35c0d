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

#ifndef REGSEP_CHECK_HPP
#define REGSEP_CHECK_HPP

#include "regsep/counterexamples.hpp"
#include "regsep/game_io.hpp"
#include "regsep/generate.hpp"
#include "regsep/product.hpp"
#include "regsep/witness.hpp"

namespace regsep {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

namespace check_detail {

inline std::string describe(long n, const char* what) { return std::to_string(n) + " " + what; }

/// All games with the given node count: priorities in 1..2, out-degree 1 or
/// 2, every owner assignment, start node 1.
template <class F>
void for_each_small_game(int n, F&& fn) {
    std::vector<std::vector<std::vector<Letter>>> node_choices(n + 1);
    for (int v = 1; v <= n; ++v) {
        std::vector<Letter> u;
        for (int p = 1; p <= 2; ++p)
            for (int t = 1; t <= n; ++t) u.push_back({v, p, t});
        auto& out = node_choices[v];
        for (size_t i = 0; i < u.size(); ++i) {
            out.push_back({u[i]});
            for (size_t j = i + 1; j < u.size(); ++j) out.push_back({u[i], u[j]});
        }
    }
    std::vector<size_t> pick(n + 1, 0);
    while (true) {
        for (uint32_t ow = 0; ow < (1u << n); ++ow) {
            std::vector<Player> owner(n + 1, Player::Even);
            for (int v = 1; v <= n; ++v)
                if (ow & (1u << (v - 1))) owner[v] = Player::Odd;
            std::vector<Letter> edges;
            for (int v = 1; v <= n; ++v)
                for (const Letter& e : node_choices[v][pick[v]]) edges.push_back(e);
            fn(GameGraph(n, 1, std::move(owner), std::move(edges)));
        }
        int v = 1;
        for (; v <= n; ++v) {
            if (++pick[v] < node_choices[v].size()) break;
            pick[v] = 0;
        }
        if (v > n) break;
    }
}

/// The seeded 500-game corpus: full sweeps for n <= 6, d trimmed as n grows
/// so the quasi-polynomial safety products stay within the time budget.
template <class F>
void for_each_corpus_game(uint64_t seed, F&& fn) {
    uint64_t i = 0;
    auto emit = [&](int n, int d) {
        GenSpec spec{n, d, 1.0 + 0.25 * static_cast<double>(i % 7), 0.5, (seed + ++i) * 1000003 + 17};
        fn(gen_random(spec), i);
    };
    for (int n = 1; n <= 6; ++n)
        for (int d = 1; d <= 6; ++d)
            for (int rep = 0; rep < 12; ++rep) emit(n, d);
    for (int d = 1; d <= 6; ++d)
        for (int rep = 0; rep < 8; ++rep) emit(7, d);
    for (int d = 1; d <= 2; ++d)
        for (int rep = 0; rep < 10; ++rep) emit(8, d);
}

template <class F>
CheckResult timed(int id, const std::string& name, F&& body) {
    CheckResult r;
    r.id = id;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        r.detail = body();
        r.passed = true;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

}  // namespace check_detail

/// 1: the safety path, the register-parity path, and the three baselines
/// name the same winner on the seeded corpus and on every small game.
inline CheckResult check_solver_agreement(uint64_t seed) {
    using namespace check_detail;
    return timed(1, "solver-agreement", [seed] {
        long random_games = 0, exhaustive_games = 0;
        auto verify = [&](const GameGraph& g, const std::string& where) {
            Player z = solve_zielonka(g);
            Player s = solve_spm(g);
            Player b = brute_force_winner(g);
            Player fast = solve_with_safety_separator(g).winner;
            Player slow = solve_with_register_separator(g).winner;
            require(z == s && s == b && b == fast && fast == slow,
                    "solver disagreement on " + where + ":\n" + render_game(g));
        };
        for_each_corpus_game(seed, [&](const GameGraph& g, uint64_t idx) {
            verify(g, "corpus game " + std::to_string(idx));
            ++random_games;
        });
        for (int n = 1; n <= 3; ++n)
            for_each_small_game(n, [&](const GameGraph& g) {
                verify(g, "exhaustive game");
                ++exhaustive_games;
            });
        return std::to_string(random_games) + " random + " + std::to_string(exhaustive_games) +
               " exhaustive games agree";
    });
}

/// 2: closed-form state counts match exhaustive enumeration.
inline CheckResult check_state_counts(uint64_t) {
    using namespace check_detail;
    return timed(2, "automaton-state-counts", [] {
        long checked = 0;
        for (int n = 1; n <= 6; ++n)
            for (int d : {2, 4, 6}) {
                RegisterAutomaton r(n, d);
                require(r.state_count() == r.all_states().size(),
                        "register state count mismatch at n=" + std::to_string(n) + " d=" + std::to_string(d));
                SafetyAutomaton s(n, d);
                require(s.state_count() == s.all_states().size(),
                        "safety state count mismatch at n=" + std::to_string(n) + " d=" + std::to_string(d));
                checked += 2;
            }
        return describe(checked, "count formulas match enumeration");
    });
}

/// 3: non-pruned product sizes match the closed forms.
inline CheckResult check_product_sizes(uint64_t seed) {
    using namespace check_detail;
    return timed(3, "product-size-formulas", [seed] {
        long checked = 0;
        for (int n = 1; n <= 3; ++n)
            for (int d = 1; d <= 4; ++d)
                for (int rep = 0; rep < 3; ++rep) {
                    GenSpec spec{n, d, 1.0 + 0.5 * rep, 0.5, seed + 7919 * checked + rep};
                    GameGraph g = gen_random(spec);
                    uint64_t m = g.edge_count();
                    RegisterAutomaton r(n, std::max(1, g.priority_bound()));
                    uint64_t eta = r.state_count();
                    uint64_t rn = r.registers();
                    ProductGame pr = build_product_full(g, r);
                    require(pr.node_count() == (n + m) * eta, "register product node count off the formula");
                    require(pr.edge_count() == m * eta * (rn + 2), "register product edge count off the formula");
                    SafetyAutomaton s(n, std::max(1, g.priority_bound()));
                    uint64_t xi = s.state_count();
                    ProductGame ps = build_product_full(g, s);
                    require(ps.node_count() == (n + m) * xi, "safety product node count off the formula");
                    require(ps.edge_count() == m * xi + m * ((xi - 1) * (rn + 1) + 1),
                            "safety product edge count off the exact form");
                    require(ps.edge_count() <= m * xi * (rn + 2), "safety product edge count above the bound");
                    ++checked;
                }
        return describe(checked, "games match the size formulas exactly");
    });
}

/// 4: plays following Odd's winning positional strategy are rejected by
/// both automata.
inline CheckResult check_odd_play_rejection(uint64_t seed) {
    using namespace check_detail;
    return timed(4, "odd-play-rejection", [seed] {
        long games = 0, lassos = 0;
        for (uint64_t i = 0; i < 160; ++i) {
            GenSpec spec{1 + static_cast<int>(i % 7), 1 + static_cast<int>((i / 7) % 5),
                         1.0 + 0.25 * static_cast<double>(i % 6), 0.5, (seed + i) * 911 + 3};
            GameGraph g = gen_random(spec);
            BruteForceResult res = brute_force_solve(g);
            if (res.winner != Player::Odd) continue;
            StrategySubgraph sg(g, res.strategy);
            RegisterAutomaton r(g.node_count(), std::max(1, g.priority_bound()));
            SafetyAutomaton s(g.node_count(), std::max(1, g.priority_bound()));
            for (const LassoWord& w : sample_plays(sg, 20, 4 * g.node_count() + 8, seed ^ i)) {
                require(limsup_winner(w) == Player::Odd, "sampled odd-strategy play not won by Odd");
                require(!lasso_accepted_by(r, w), "register automaton accepted an odd winning play");
                require(!lasso_accepted_by(s, w), "safety automaton accepted an odd winning play");
                ++lassos;
            }
            ++games;
        }
        require(games >= 30, "too few Odd-won games in the corpus");
        return std::to_string(lassos) + " lassos from " + std::to_string(games) + " Odd-won games rejected";
    });
}

/// 5: over every short lasso, register-automaton membership coincides with
/// the limsup winner.
inline CheckResult check_register_language(uint64_t) {
    using namespace check_detail;
    return timed(5, "register-language-exhaustive", [] {
        long count = 0;
        for (int n : {1, 2})
            for (int d : {2, 4}) {
                RegisterAutomaton aut(n, d);
                std::vector<Letter> sigma;
                for (int u = 1; u <= n; ++u)
                    for (int p = 1; p <= d; ++p)
                        for (int v = 1; v <= n; ++v) sigma.push_back({u, p, v});
                const size_t a_sz = sigma.size();
                for (int len = 1; len <= 5; ++len) {
                    std::vector<size_t> idx(len, 0);
                    while (true) {
                        LassoWord w;
                        for (int cut = 0; cut < len; ++cut) {
                            w.prefix.clear();
                            w.cycle.clear();
                            for (int i = 0; i < cut; ++i) w.prefix.push_back(sigma[idx[i]]);
                            for (int i = cut; i < len; ++i) w.cycle.push_back(sigma[idx[i]]);
                            bool expect = limsup_winner(w) == Player::Even;
                            if (lasso_accepted_by(aut, w) != expect)
                                throw std::runtime_error("membership mismatch at n=" + std::to_string(n) +
                                                         " d=" + std::to_string(d));
                            ++count;
                        }
                        int i = 0;
                        for (; i < len; ++i) {
                            if (++idx[i] < a_sz) break;
                            idx[i] = 0;
                        }
                        if (i == len) break;
                    }
                }
            }
        return describe(count, "lassos match the limsup classification");
    });
}

namespace check_detail {

template <class F>
void for_each_witness_run(uint64_t seed, long wanted_runs, F&& fn) {
    long runs = 0;
    for (uint64_t i = 0; runs < wanted_runs; ++i) {
        if (i > 4000) throw std::runtime_error("not enough Even-won games generated");
        GenSpec spec{2 + static_cast<int>(i % 6), 1 + static_cast<int>((i / 6) % 6),
                     1.0 + 0.25 * static_cast<double>(i % 6), 0.6, (seed + i) * 6151 + 5};
        GameGraph g = gen_random(spec);
        BruteForceResult res = brute_force_solve(g);
        if (res.winner != Player::Even) continue;
        StrategySubgraph sg(g, res.strategy);
        GameTree tree = build_game_tree(sg);
        for (const LassoWord& play : sample_plays(sg, 5, 4 * g.node_count() + 8, seed ^ (i * 31))) {
            WitnessRun run = build_witness_run(sg, play, &tree);
            fn(g, sg, run);
            ++runs;
            if (runs >= wanted_runs) break;
        }
    }
}

}  // namespace check_detail

/// 6: constructed witness runs respect the bad bound; the per-context
/// invariants are enforced during construction and re-checked here.
inline CheckResult check_witness_bad_bound(uint64_t seed) {
    using namespace check_detail;
    return timed(6, "witness-run-bad-bound", [seed] {
        long runs = 0;
        for_each_witness_run(seed, 220, [&](const GameGraph& g, const StrategySubgraph& sg, const WitnessRun& run) {
            auto bad = bad_of_lasso_run(run);
            require(bad.has_value(), "witness run has an odd-dominated cycle");
            require(*bad <= static_cast<int>(sg.reachable_nodes().size()) - 1, "bad exceeds |V_tau|-1");
            require(*bad <= g.node_count() - 1, "bad exceeds n-1");
            for (size_t i = 0; i < run.step_count(); ++i) {
                const WitnessStep& st = run.step(i);
                require(st.transition.letter.p <= 2 * ((sg.priority_bound() + 1) / 2),
                        "read priority above the alphabet bound");
            }
            ++runs;
        });
        return describe(runs, "witness runs satisfy bad <= n-1 and the context invariants");
    });
}

/// 7: the same runs, lifted through the safety automaton, never reach the
/// rejecting sink.
inline CheckResult check_witness_safety_lift(uint64_t seed) {
    using namespace check_detail;
    return timed(7, "witness-run-safety-lift", [seed] {
        long runs = 0;
        for_each_witness_run(seed + 101, 220, [&](const GameGraph& g, const StrategySubgraph&, const WitnessRun& run) {
            require(run_avoids_rejection_in_safety(run, g.node_count(), std::max(1, g.priority_bound())),
                    "lifted witness run reached the rejecting sink");
            ++runs;
        });
        return describe(runs, "lifted runs avoid the rejecting sink");
    });
}

/// 8: every canned resolver strategy loses to its adversarial word.
inline CheckResult check_resolver_adversary(uint64_t seed) {
    using namespace check_detail;
    return timed(8, "resolver-adversary", [seed] {
        long checked = 0;
        for (int n : {2, 4}) {
            int d = 2 * register_count(n) + 2;
            for (ResolverStrategy st :
                 {never_reset_strategy(), lowest_odd_register_strategy(), seeded_random_strategy(seed + n)}) {
                ResolverVerdict v = adversarial_word_vs_strategy(n, d, st);
                require(!v.run_accepting, st.name + " run unexpectedly accepting (would flag a membership bug)");
                require(v.word_limsup_even, st.name + " adversarial word is not limsup-even");
                require(v.word_in_language, st.name + " adversarial word rejected by the automaton");
                require(v.strategy_failed, st.name + " did not fail on its adversarial word");
                ++checked;
            }
        }
        return describe(checked, "strategies fail on their adversarial words");
    });
}

/// 9: the computed gap word is limsup-even yet rejected by the safety
/// automaton.
inline CheckResult check_safety_language_gap(uint64_t) {
    using namespace check_detail;
    return timed(9, "safety-language-gap", [] {
        long checked = 0;
        std::string ks;
        for (int n : {1, 2})
            for (int d : {2, 4}) {
                SafetyGapWitness w = safety_language_gap_witness(n, d);
                require(limsup_winner(w.word) == Player::Even, "gap witness not limsup-even");
                require(!lasso_accepted_by(SafetyAutomaton(n, d), w.word), "gap witness accepted");
                require(lasso_accepted_by(RegisterAutomaton(n, d), w.word), "gap witness outside L(R)");
                ks += (ks.empty() ? "k=" : ",") + std::to_string(w.k);
                ++checked;
            }
        return std::to_string(checked) + " gap witnesses rejected (" + ks + ")";
    });
}

/// 10: solving the safety product stays near-linear: when the reachable
/// edge count roughly doubles along the ring family, the solve time grows
/// by less than a factor of three.
inline CheckResult check_safety_solve_linearity(uint64_t) {
    using namespace check_detail;
    return timed(10, "safety-solve-linearity", [] {
        std::vector<int> sizes{181, 256, 362, 512};
        std::vector<double> best_ms;
        std::vector<uint64_t> edge_counts;
        for (int L : sizes) {
            std::vector<Player> owner(L + 1, Player::Odd);
            std::vector<Letter> edges;
            for (int v = 1; v <= L; ++v) edges.push_back({v, 2, v % L + 1});
            GameGraph g(L, 1, std::move(owner), std::move(edges));
            SafetyAutomaton aut(L, 2);
            ProductGame p = build_product(g, aut, 40000000ull);
            require(solve_safety_product(p) == Player::Even, "ring family winner changed");
            double best = 1e18;
            for (int rep = 0; rep < 7; ++rep) {
                auto t0 = std::chrono::steady_clock::now();
                volatile Player w = solve_safety_product(p);
                (void)w;
                auto t1 = std::chrono::steady_clock::now();
                best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
            }
            best_ms.push_back(best);
            edge_counts.push_back(p.edge_count());
        }
        std::ostringstream os;
        for (size_t i = 1; i < sizes.size(); ++i) {
            double edge_ratio = static_cast<double>(edge_counts[i]) / static_cast<double>(edge_counts[i - 1]);
            double time_ratio = best_ms[i] / std::max(best_ms[i - 1], 1e-6);
            require(edge_ratio > 1.6 && edge_ratio < 2.6, "ring family no longer doubles its edges");
            require(time_ratio < 3.0, "solve time grew by " + std::to_string(time_ratio) + "x on an edge doubling");
            os << (i > 1 ? ", " : "") << "x" << time_ratio;
        }
        return "time ratios per doubling: " + os.str();
    });
}

/// Runs the chosen criteria (all when ids is empty), in order.
inline std::vector<CheckResult> run_checks(uint64_t seed, const std::vector<int>& ids = {}) {
    auto wanted = [&](int id) { return ids.empty() || std::find(ids.begin(), ids.end(), id) != ids.end(); };
    std::vector<CheckResult> out;
    if (wanted(1)) out.push_back(check_solver_agreement(seed));
    if (wanted(2)) out.push_back(check_state_counts(seed));
    if (wanted(3)) out.push_back(check_product_sizes(seed));
    if (wanted(4)) out.push_back(check_odd_play_rejection(seed));
    if (wanted(5)) out.push_back(check_register_language(seed));
    if (wanted(6)) out.push_back(check_witness_bad_bound(seed));
    if (wanted(7)) out.push_back(check_witness_safety_lift(seed));
    if (wanted(8)) out.push_back(check_resolver_adversary(seed));
    if (wanted(9)) out.push_back(check_safety_language_gap(seed));
    if (wanted(10)) out.push_back(check_safety_solve_linearity(seed));
    return out;
}

/// Named suites for the command line.
inline const std::map<std::string, std::vector<int>>& check_suites() {
    static const std::map<std::string, std::vector<int>> suites = {
        {"oracle", {1}},          {"sizes", {2, 3}},    {"rejection", {4}}, {"language", {5, 9}},
        {"witness", {6, 7}},      {"resolver", {8}},    {"linearity", {10}},
    };
    return suites;
}

}  // namespace regsep

#endif
