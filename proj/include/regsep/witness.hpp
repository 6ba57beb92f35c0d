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

#ifndef REGSEP_WITNESS_HPP
#define REGSEP_WITNESS_HPP

#include <optional>

#include "regsep/game_tree.hpp"
#include "regsep/safety_automaton.hpp"

namespace regsep {

enum class StepTag { Preparatory, Valuable, Regressive };

inline const char* to_string(StepTag t) {
    switch (t) {
        case StepTag::Preparatory: return "preparatory";
        case StepTag::Valuable: return "valuable";
        case StepTag::Regressive: return "regressive";
    }
    return "?";
}

/// One transition of a constructed run, together with the tree context that
/// consumed the letter. Transitions consumed at depth > 0 form the blocks of
/// local transitions of their ancestors.
struct WitnessStep {
    RegTransition transition;
    StepTag tag;
    int frame_level;      // k of the consuming tree node
    int frame_tree_node;  // index into the game tree
    int frame_instance;   // unique per frame activation
    int frame_depth;      // 0 at the root context
};

/// A context interval of the run: the steps consumed while the tree node was
/// on the context stack (including its descendants' steps). Eternal
/// fragments never close; their tail is periodic with the run's cycle.
struct RunFragment {
    int tree_node;
    int level;
    int set_size;
    int instance;
    size_t start;
    size_t end;    // one past the last step; meaningful when !eternal
    bool eternal;
    RegisterState entry_state;
};

/// A run of the register automaton reading a lasso play, produced by the
/// deterministic tree-guided construction, in folded form.
struct WitnessRun {
    std::vector<WitnessStep> prefix;
    std::vector<WitnessStep> cycle;
    std::vector<RunFragment> fragments;
    int registers = 1;
    int reachable_nodes = 1;  // |V_tau| of the subgraph the run was built for

    std::vector<int> emitted_prefix() const {
        std::vector<int> out;
        out.reserve(prefix.size());
        for (const auto& s : prefix) out.push_back(s.transition.priority);
        return out;
    }
    std::vector<int> emitted_cycle() const {
        std::vector<int> out;
        out.reserve(cycle.size());
        for (const auto& s : cycle) out.push_back(s.transition.priority);
        return out;
    }

    const WitnessStep& step(size_t i) const { return i < prefix.size() ? prefix[i] : cycle[i - prefix.size()]; }
    size_t step_count() const { return prefix.size() + cycle.size(); }

    /// Debug trace, one transition per line; no stability guarantee.
    std::string to_trace_string() const {
        std::ostringstream os;
        for (size_t i = 0; i < step_count(); ++i) {
            const WitnessStep& s = step(i);
            if (i == prefix.size()) os << "-- cycle --\n";
            os << s.transition.source.to_string() << " --(" << s.transition.letter.u << ","
               << s.transition.letter.p << "," << s.transition.letter.v << ")/" << s.transition.priority << "-> "
               << s.transition.target.to_string() << "  " << (s.frame_depth > 0 ? "local-" : "")
               << to_string(s.tag) << " depth=" << s.frame_depth << " level=" << s.frame_level;
            if (s.transition.reset_register > 0) os << " reset=" << s.transition.reset_register;
            os << "\n";
        }
        return os.str();
    }
};

/// The largest m such that some infix of the run emits m copies of an odd
/// priority with nothing higher in between; nullopt when the cycle's maximum
/// emission is odd (the count is unbounded). Three cycle unrollings suffice:
/// odd priorities below the even cycle maximum are cut in every cycle copy,
/// and priorities above it stop occurring after the prefix.
inline std::optional<int> bad_of_emitted(std::span<const int> prefix, std::span<const int> cycle) {
    if (cycle.empty()) throw std::invalid_argument("bad_of_emitted: empty cycle");
    int cyc_max = *std::max_element(cycle.begin(), cycle.end());
    if (cyc_max % 2 == 1) return std::nullopt;
    std::vector<int> seq(prefix.begin(), prefix.end());
    for (int i = 0; i < 3; ++i) seq.insert(seq.end(), cycle.begin(), cycle.end());
    int top = 0;
    for (int x : seq) top = std::max(top, x);
    int best = 0;
    for (int p = 1; p <= top; p += 2) {
        int count = 0;
        for (int x : seq) {
            if (x > p)
                count = 0;
            else if (x == p)
                best = std::max(best, ++count);
        }
    }
    return best;
}

inline std::optional<int> bad_of_lasso_run(const WitnessRun& run) {
    auto pre = run.emitted_prefix();
    auto cyc = run.emitted_cycle();
    return bad_of_emitted(pre, cyc);
}

namespace detail {

/// The deterministic transition machine of the run construction. One frame
/// per open tree context; the top frame consumes each play edge as a
/// preparatory reset, a valuable reset, a regressive non-reset, or hands it
/// to a freshly pushed child context.
class WitnessMachine {
  public:
    WitnessMachine(const StrategySubgraph& sg, const GameTree& tree)
        : tree_(tree), rn_(register_count(sg.node_count())), state_(RegisterState::all_ones(rn_)) {
        push_frame(tree.root());
    }

    struct Emitted {
        RegTransition transition;
        StepTag tag;
        int frame_level;
        int frame_tree_node;
        int frame_instance;
        int frame_depth;
    };

    Emitted consume(const Letter& e, std::vector<RunFragment>& closed, size_t step_index) {
        while (true) {
            Frame& f = frames_.back();
            const GameTree::Node& nd = tree_.node(f.tree_node);
            const int k = nd.level;
            if (e.p > 2 * k || !tree_.contains(f.tree_node, e.u) || !tree_.contains(f.tree_node, e.v)) {
                if (frames_.size() == 1)
                    throw std::invalid_argument("play leaves the reachable strategy subgraph");
                close_frame(closed, step_index);
                continue;
            }
            if (k == 0) throw std::logic_error("edge consumed at a leaf context");
            int ordinal = tree_.child_ordinal(f.tree_node, e.u);
            int child = nd.children[ordinal];
            bool stays = e.p <= 2 * k - 1 && tree_.contains(child, e.v);
            if (stays && e.p == 2 * k - 1)
                throw std::logic_error("odd-cap edge inside a component survived tree construction");

            if (f.active_child == -1) {
                if (!stays) return emit_tail(f, k, nd, e);
                f.active_child = child;
                f.prep.clear();
                f.prep_next = 0;
                if (ordinal >= 1) {
                    // second or later sibling: plan one reset per register
                    // among 1..rn(|child|) currently holding an odd value
                    // above 1
                    int limit = register_count(static_cast<int>(tree_.node(child).set.size()));
                    for (int j = 1; j <= limit; ++j) {
                        int val = state_.reg(j);
                        if (val > 1 && val % 2 == 1) f.prep.push_back(j);
                    }
                }
            } else {
                if (f.active_child != child) throw std::logic_error("context switched child without a tail step");
                if (!stays) {
                    f.active_child = -1;
                    return emit_tail(f, k, nd, e);
                }
            }
            // block in progress
            if (f.prep_next < f.prep.size()) {
                int j = f.prep[f.prep_next++];
                return emit(f, StepTag::Preparatory, j, e);
            }
            push_frame(child);
        }
    }

    /// Machine configuration for cycle detection; excludes bookkeeping ids.
    std::vector<int> config() const {
        std::vector<int> c = state_.regs();
        for (const Frame& f : frames_) {
            c.push_back(-1);
            c.push_back(f.tree_node);
            c.push_back(f.active_child);
            for (size_t i = f.prep_next; i < f.prep.size(); ++i) c.push_back(f.prep[i]);
        }
        return c;
    }

    void finalize_fragments(std::vector<RunFragment>& closed, size_t step_index) {
        while (!frames_.empty()) {
            Frame& f = frames_.back();
            closed.push_back({f.tree_node, tree_.node(f.tree_node).level,
                              static_cast<int>(tree_.node(f.tree_node).set.size()), f.instance, f.first_step,
                              step_index, true, f.entry_state});
            frames_.pop_back();
        }
    }

    const RegisterState& state() const { return state_; }

  private:
    struct Frame {
        int tree_node;
        int instance;
        size_t first_step;
        RegisterState entry_state;
        int active_child = -1;
        std::vector<int> prep;
        size_t prep_next = 0;
    };

    void push_frame(int tree_node) {
        frames_.push_back({tree_node, next_instance_++, steps_so_far_, state_, -1, {}, 0});
    }

    void close_frame(std::vector<RunFragment>& closed, size_t step_index) {
        Frame& f = frames_.back();
        closed.push_back({f.tree_node, tree_.node(f.tree_node).level,
                          static_cast<int>(tree_.node(f.tree_node).set.size()), f.instance, f.first_step,
                          step_index, false, f.entry_state});
        frames_.pop_back();
    }

    Emitted emit_tail(Frame& f, int k, const GameTree::Node& nd, const Letter& e) {
        if (e.p == 2 * k) {
            int top_reg = register_count(static_cast<int>(nd.set.size()));
            return emit(f, StepTag::Valuable, top_reg, e);
        }
        return emit(f, StepTag::Regressive, 0, e);
    }

    Emitted emit(Frame& f, StepTag tag, int reset_k, const Letter& e) {
        RegisterState up = state_.updated(e.p);
        RegTransition t;
        if (reset_k == 0) {
            t = {state_, e, 0, ResetKind::NonReset, 1, up};
        } else {
            auto [target, even] = up.reset(reset_k);
            t = {state_, e, reset_k, even ? ResetKind::EvenReset : ResetKind::OddReset,
                 even ? 2 * reset_k : 2 * reset_k + 1, std::move(target)};
        }
        state_ = t.target;
        ++steps_so_far_;
        return {std::move(t), tag, tree_.node(f.tree_node).level, f.tree_node, f.instance,
                static_cast<int>(frames_.size()) - 1};
    }

    const GameTree& tree_;
    int rn_;
    RegisterState state_;
    std::vector<Frame> frames_;
    int next_instance_ = 0;
    size_t steps_so_far_ = 0;
};

inline void validate_play(const StrategySubgraph& sg, const LassoWord& play) {
    if (play.cycle.empty()) throw std::invalid_argument("play cycle must be nonempty");
    int at = sg.start();
    auto check_step = [&](const Letter& e) {
        if (e.u != at) throw std::invalid_argument("play is not a path: source mismatch");
        auto out = sg.edges_from(e.u);
        if (std::find(out.begin(), out.end(), e) == out.end())
            throw std::invalid_argument("play uses an edge outside the strategy subgraph");
        at = e.v;
    };
    for (const Letter& e : play.prefix) check_step(e);
    int cycle_entry = at;
    for (const Letter& e : play.cycle) check_step(e);
    if (at != cycle_entry) throw std::invalid_argument("play cycle does not close");
}

}  // namespace detail

/// Constructs the run of the register automaton on a winning play by the
/// tree-guided procedure, checking its contract as it goes: no resets above
/// rn(|S|) within a context, no odd resets of register rn(|S|) once it holds
/// an even value >= 2k, per-context bad bounded by |S|-1, and registers
/// 1..rn(|S|) never holding an odd value above 2k. Violations throw
/// logic_error with diagnostics, since a violation would contradict the
/// construction's guarantees.
inline WitnessRun build_witness_run(const StrategySubgraph& sg, const LassoWord& play, const GameTree* tree_in = nullptr,
                                    size_t step_budget = 1000000) {
    detail::validate_play(sg, play);
    GameTree local_tree;
    const GameTree* tree = tree_in;
    if (!tree) {
        local_tree = build_game_tree(sg);
        tree = &local_tree;
    }

    detail::WitnessMachine machine(sg, *tree);
    std::vector<WitnessStep> steps;
    std::vector<RunFragment> fragments;

    auto letter_at = [&](size_t i) -> const Letter& {
        if (i < play.prefix.size()) return play.prefix[i];
        return play.cycle[(i - play.prefix.size()) % play.cycle.size()];
    };

    // Consume the prefix, then whole cycle repetitions until the machine's
    // configuration at a cycle boundary repeats.
    std::map<std::vector<int>, size_t> boundary_seen;  // config -> step count at boundary
    size_t pos = 0;
    for (; pos < play.prefix.size(); ++pos) {
        auto em = machine.consume(letter_at(pos), fragments, steps.size());
        steps.push_back({em.transition, em.tag, em.frame_level, em.frame_tree_node, em.frame_instance, em.frame_depth});
        if (steps.size() > step_budget) throw resource_limit_error("witness construction exceeded step budget");
    }
    size_t fold_from = 0, fold_to = 0;
    while (true) {
        auto [it, fresh] = boundary_seen.try_emplace(machine.config(), steps.size());
        if (!fresh) {
            fold_from = it->second;
            fold_to = steps.size();
            break;
        }
        for (size_t i = 0; i < play.cycle.size(); ++i, ++pos) {
            auto em = machine.consume(letter_at(pos), fragments, steps.size());
            steps.push_back(
                {em.transition, em.tag, em.frame_level, em.frame_tree_node, em.frame_instance, em.frame_depth});
            if (steps.size() > step_budget) throw resource_limit_error("witness construction exceeded step budget");
        }
    }

    // One extra period, for fragment bookkeeping only: frames that survive a
    // full period never close.
    const size_t period = fold_to - fold_from;
    std::vector<WitnessStep> extra;
    if (period == 0) throw std::logic_error("witness machine produced an empty period");
    for (size_t i = 0; i < period; ++i, ++pos) {
        auto em = machine.consume(letter_at(pos), fragments, fold_to + i);
        extra.push_back({em.transition, em.tag, em.frame_level, em.frame_tree_node, em.frame_instance, em.frame_depth});
    }
    machine.finalize_fragments(fragments, fold_to + period);

    WitnessRun run;
    run.registers = register_count(sg.node_count());
    run.reachable_nodes = static_cast<int>(sg.reachable_nodes().size());
    run.prefix.assign(steps.begin(), steps.begin() + fold_from);
    run.cycle.assign(steps.begin() + fold_from, steps.end());

    // Fragment checks. Steps at index >= fold_to come from the bookkeeping
    // period and continue the folded cycle exactly.
    auto step_at = [&](size_t i) -> const WitnessStep& { return i < fold_to ? steps[i] : extra[i - fold_to]; };
    const size_t total = fold_to + period;
    for (RunFragment& f : fragments) {
        const size_t lo = f.start;
        const size_t hi = f.eternal ? total : f.end;
        const int rn_s = register_count(f.set_size);
        const int k = f.level;
        bool entry_even_high = f.entry_state.reg(rn_s) % 2 == 0 && f.entry_state.reg(rn_s) >= 2 * k;
        bool seen_own_valuable = false;
        for (int j = 1; j <= rn_s; ++j) {
            int val = f.entry_state.reg(j);
            if (val % 2 == 1 && val > 2 * k)
                throw std::logic_error("register holds an odd value above 2k at context entry");
        }
        for (size_t i = lo; i < hi; ++i) {
            const WitnessStep& st = step_at(i);
            const RegTransition& t = st.transition;
            if (t.reset_register > rn_s)
                throw std::logic_error("reset above rn(|S|) inside a context fragment");
            if (st.frame_instance == f.instance && st.tag == StepTag::Valuable) {
                if (t.kind == ResetKind::OddReset) throw std::logic_error("valuable transition made an odd reset");
                seen_own_valuable = true;
            }
            bool odd_top_reset = t.reset_register == rn_s && t.kind == ResetKind::OddReset;
            if (odd_top_reset && entry_even_high)
                throw std::logic_error("odd reset of register rn(|S|) despite even entry value >= 2k");
            if (odd_top_reset && seen_own_valuable)
                throw std::logic_error("odd reset of register rn(|S|) after a valuable transition");
            for (int j = 1; j <= rn_s; ++j) {
                int val = t.target.reg(j);
                if (val % 2 == 1 && val > 2 * k)
                    throw std::logic_error("register holds an odd value above 2k inside a context fragment");
            }
        }
        // bad over the fragment: finite for closed fragments, periodic tail
        // for eternal ones
        std::optional<int> frag_bad;
        if (f.eternal) {
            std::vector<int> pre, cyc;
            for (size_t i = lo; i < fold_to; ++i) pre.push_back(step_at(i).transition.priority);
            for (size_t i = fold_from; i < fold_to; ++i) cyc.push_back(step_at(i).transition.priority);
            if (lo >= fold_from) {
                // fragment starts inside the cycle: rotate so the tail is
                // its own periodic word
                pre.clear();
                cyc.clear();
                for (size_t i = lo; i < lo + period; ++i) cyc.push_back(step_at(i).transition.priority);
            }
            frag_bad = bad_of_emitted(pre, cyc);
        } else {
            std::vector<int> pre;
            for (size_t i = lo; i < hi; ++i) pre.push_back(step_at(i).transition.priority);
            if (pre.empty()) {
                frag_bad = 0;
            } else {
                // finite fragment: append an even cap above every odd
                // emission so the scanner treats the sequence as-is
                std::vector<int> cyc{2 * run.registers + 2};
                frag_bad = bad_of_emitted(pre, cyc);
            }
        }
        if (!frag_bad.has_value() || *frag_bad > f.set_size - 1)
            throw std::logic_error("fragment bad exceeds |S|-1");
    }
    run.fragments = std::move(fragments);
    return run;
}

/// Feeds the run's transition choices through the safety automaton: the
/// lifted run must never reach the rejecting sink. True when it stays live
/// forever (decided by cycling the folded run until the safety state
/// repeats at the cycle boundary).
inline bool run_avoids_rejection_in_safety(const WitnessRun& run, int n, int d) {
    SafetyAutomaton aut(n, d);
    SafetyState q = aut.initial_state();
    auto apply = [&](const WitnessStep& st) -> bool {
        if (q.regs() != st.transition.source) throw std::invalid_argument("run does not start from the lifted state");
        auto [prio, next] = aut.lift(q, st.transition);
        (void)prio;
        q = std::move(next);
        return !q.is_rejecting();
    };
    for (const WitnessStep& st : run.prefix)
        if (!apply(st)) return false;
    std::map<SafetyState, bool> seen;
    while (true) {
        if (auto [it, fresh] = seen.try_emplace(q, true); !fresh) return true;
        for (const WitnessStep& st : run.cycle)
            if (!apply(st)) return false;
    }
}

}  // namespace regsep

#endif
