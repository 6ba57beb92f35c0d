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

#ifndef REGSEP_GAME_TREE_HPP
#define REGSEP_GAME_TREE_HPP

#include "regsep/game.hpp"

namespace regsep {

/// Raised when a level-k tree node contains a priority-(2k-1) edge, which
/// witnesses an odd-maximum cycle: the strategy was not winning.
class tree_invariant_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The recursive SCC decomposition of a winning strategy subgraph by
/// descending priority caps. The root covers the reachable nodes at level
/// ceil(d/2); the children of (k,S) are the topologically ordered SCCs of
/// the subgraph capped at 2k-1, one level down; leaves sit at level 0.
class GameTree {
  public:
    struct Node {
        int level;
        std::vector<int> set;  // sorted ascending
        int parent;            // -1 at the root
        std::vector<int> children;
    };

    const Node& node(int idx) const { return nodes_.at(idx); }
    int root() const { return 0; }
    int size() const { return static_cast<int>(nodes_.size()); }

    bool contains(int idx, int game_node) const {
        const auto& s = nodes_[idx].set;
        return std::binary_search(s.begin(), s.end(), game_node);
    }

    /// Index into node(idx).children of the child whose set holds game_node.
    int child_ordinal(int idx, int game_node) const {
        const Node& nd = nodes_[idx];
        for (size_t i = 0; i < nd.children.size(); ++i)
            if (contains(nd.children[i], game_node)) return static_cast<int>(i);
        throw std::invalid_argument("game node not covered by any child");
    }

    /// fst_l: the set of the leftmost descendant of idx at the given level.
    const std::vector<int>& leftmost_descendant_set(int idx, int level) const {
        const Node* nd = &nodes_.at(idx);
        if (level < 0 || level >= nd->level)
            throw std::invalid_argument("leftmost descendant level must satisfy 0 <= l < k");
        while (nd->level > level) nd = &nodes_[nd->children.front()];
        return nd->set;
    }

    /// Debug listing, one node per line, children indented under their
    /// parent; no stability guarantee.
    std::string to_string() const {
        std::string out;
        std::function<void(int, int)> emit = [&](int idx, int depth) {
            const Node& nd = nodes_[idx];
            out += std::string(2 * depth, ' ') + "(" + std::to_string(nd.level) + ",{";
            for (size_t i = 0; i < nd.set.size(); ++i) {
                out += std::to_string(nd.set[i]);
                if (i + 1 < nd.set.size()) out += ",";
            }
            out += "})\n";
            for (int c : nd.children) emit(c, depth + 1);
        };
        if (!nodes_.empty()) emit(0, 0);
        return out;
    }

    friend GameTree build_game_tree(const StrategySubgraph& sg);

  private:
    std::vector<Node> nodes_;
};

/// Builds the full tree down to level 0. Deterministic: sibling order is the
/// canonical topological order of tarjan_sccs. Throws tree_invariant_error
/// when the subgraph admits an odd-maximum cycle.
inline GameTree build_game_tree(const StrategySubgraph& sg) {
    GameTree t;
    std::vector<Letter> edges = sg.reachable_edges();
    int root_level = (sg.priority_bound() + 1) / 2;

    struct Item {
        int level;
        std::vector<int> set;
        int parent;
    };
    std::vector<Item> stack;
    stack.push_back({root_level, sg.reachable_nodes(), -1});
    // depth-first so each node's children end up contiguous and in order
    while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        int idx = static_cast<int>(t.nodes_.size());
        t.nodes_.push_back({it.level, it.set, it.parent, {}});
        if (it.parent >= 0) t.nodes_[it.parent].children.push_back(idx);
        if (it.level == 0) {
            if (it.set.size() != 1)
                throw tree_invariant_error("level-0 tree node is not a singleton");
            continue;
        }
        std::vector<Letter> inner;
        for (const Letter& e : edges)
            if (std::binary_search(it.set.begin(), it.set.end(), e.u) &&
                std::binary_search(it.set.begin(), it.set.end(), e.v))
                inner.push_back(e);
        int cap = 2 * it.level - 1;
        auto sccs = tarjan_sccs(it.set, inner, cap);
        for (const auto& scc : sccs)
            for (const Letter& e : inner)
                if (e.p == cap && std::binary_search(scc.begin(), scc.end(), e.u) &&
                    std::binary_search(scc.begin(), scc.end(), e.v))
                    throw tree_invariant_error("priority " + std::to_string(cap) +
                                               " edge inside a level-" + std::to_string(it.level) +
                                               " component: strategy is not winning");
        // push in reverse so children are visited left to right
        for (auto rit = sccs.rbegin(); rit != sccs.rend(); ++rit)
            stack.push_back({it.level - 1, std::move(*rit), idx});
    }
    return t;
}

}  // namespace regsep

#endif
