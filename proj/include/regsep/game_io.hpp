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

#ifndef REGSEP_GAME_IO_HPP
#define REGSEP_GAME_IO_HPP

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "regsep/game.hpp"

namespace regsep {

class parse_error : public std::runtime_error {
  public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

namespace detail {

struct Token {
    std::string text;
    int line;
};

// Splits into words and the punctuation ';' ':' ',' '->'; '#' starts a comment.
inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == ';' || c == ':' || c == ',') {
            out.push_back({std::string(1, c), line});
            ++i;
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({"->", line});
            i += 2;
        } else if (c == '"') {
            size_t j = i + 1;
            while (j < text.size() && text[j] != '"') ++j;
            if (j == text.size()) throw parse_error(line, "unterminated string");
            out.push_back({std::string(text.substr(i, j - i + 1)), line});
            i = j + 1;
        } else {
            size_t j = i;
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ';' &&
                   text[j] != ':' && text[j] != ',' && text[j] != '#' &&
                   !(text[j] == '-' && j + 1 < text.size() && text[j + 1] == '>'))
                ++j;
            out.push_back({std::string(text.substr(i, j - i)), line});
            i = j;
        }
    }
    return out;
}

class TokenStream {
  public:
    explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}
    bool done() const { return pos_ >= toks_.size(); }
    const Token& peek(size_t ahead = 0) const {
        static const Token eof{"", 0};
        return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : eof;
    }
    Token next() {
        if (done()) throw parse_error(last_line(), "unexpected end of input");
        return toks_[pos_++];
    }
    void expect(const std::string& t) {
        Token tok = next();
        if (tok.text != t) throw parse_error(tok.line, "expected '" + t + "', got '" + tok.text + "'");
    }
    int next_int(const std::string& what) {
        Token tok = next();
        try {
            size_t used = 0;
            int v = std::stoi(tok.text, &used);
            if (used != tok.text.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw parse_error(tok.line, "expected " + what + ", got '" + tok.text + "'");
        }
    }
    int last_line() const { return toks_.empty() ? 1 : toks_.back().line; }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

inline GameGraph parse_edge_priority(TokenStream& ts, int n) {
    std::optional<int> start;
    std::vector<Player> owner(n + 1, Player::Even);
    std::vector<char> declared(n + 1, 0);
    std::vector<Letter> edges;
    while (!ts.done()) {
        Token head = ts.next();
        if (head.text == "start") {
            start = ts.next_int("start node");
            ts.expect(";");
            continue;
        }
        int id;
        try {
            id = std::stoi(head.text);
        } catch (...) {
            throw parse_error(head.line, "expected node id, got '" + head.text + "'");
        }
        if (id < 1 || id > n) throw parse_error(head.line, "node id out of range: " + std::to_string(id));
        if (declared[id]) throw parse_error(head.line, "duplicate node: " + std::to_string(id));
        declared[id] = 1;
        Token own = ts.next();
        if (own.text == "even")
            owner[id] = Player::Even;
        else if (own.text == "odd")
            owner[id] = Player::Odd;
        else
            throw parse_error(own.line, "expected 'even' or 'odd', got '" + own.text + "'");
        while (true) {
            int a = ts.next_int("priority");
            ts.expect(":");
            int b = ts.next_int("target node");
            int p, t;
            if (ts.peek().text == "->") {
                // ordinal-prefixed form "<k>:<p>-><t>": the leading number is
                // an edge ordinal and is ignored.
                ts.next();
                p = b;
                t = ts.next_int("target node");
            } else {
                p = a;
                t = b;
            }
            if (t < 1 || t > n) throw parse_error(head.line, "node id out of range: " + std::to_string(t));
            if (p < 1) throw parse_error(head.line, "priority out of range: " + std::to_string(p));
            edges.push_back({id, p, t});
            Token sep = ts.next();
            if (sep.text == ";") break;
            if (sep.text != ",") throw parse_error(sep.line, "expected ',' or ';', got '" + sep.text + "'");
        }
    }
    if (!start) throw parse_error(ts.last_line(), "missing start declaration");
    for (int v = 1; v <= n; ++v)
        if (!declared[v]) throw std::invalid_argument("no outgoing edge: " + std::to_string(v));
    return GameGraph(n, *start, std::move(owner), std::move(edges));
}

inline GameGraph parse_node_priority(TokenStream& ts, int max_id) {
    struct NodeDecl {
        int id;
        int prio;
        Player owner;
        std::vector<int> succs;
    };
    std::optional<int> start;
    std::vector<NodeDecl> decls;
    bool saw_zero = false;
    int min_prio = INT32_MAX;
    while (!ts.done()) {
        Token head = ts.next();
        if (head.text == "start") {
            start = ts.next_int("start node");
            ts.expect(";");
            continue;
        }
        NodeDecl nd;
        try {
            nd.id = std::stoi(head.text);
        } catch (...) {
            throw parse_error(head.line, "expected node id, got '" + head.text + "'");
        }
        nd.prio = ts.next_int("priority");
        int who = ts.next_int("owner (0 or 1)");
        if (who != 0 && who != 1) throw parse_error(head.line, "owner must be 0 or 1");
        nd.owner = who == 0 ? Player::Even : Player::Odd;
        while (true) {
            nd.succs.push_back(ts.next_int("successor"));
            if (ts.peek().text != ",") break;
            ts.next();
        }
        if (!ts.peek().text.empty() && ts.peek().text[0] == '"') ts.next();  // optional name
        ts.expect(";");
        if (nd.id == 0) saw_zero = true;
        min_prio = std::min(min_prio, nd.prio);
        decls.push_back(std::move(nd));
    }
    if (decls.empty()) throw parse_error(ts.last_line(), "no nodes declared");
    int shift = saw_zero ? 1 : 0;
    int n = max_id + shift;
    // Edge priorities must be >= 1; a parity-preserving bump keeps winners.
    int prio_shift = min_prio < 1 ? 2 * ((1 - min_prio + 1) / 2) : 0;
    std::vector<Player> owner(n + 1, Player::Even);
    std::vector<Letter> edges;
    std::vector<char> declared(n + 1, 0);
    for (const NodeDecl& nd : decls) {
        int id = nd.id + shift;
        if (id < 1 || id > n) throw std::invalid_argument("node id out of range: " + std::to_string(nd.id));
        if (declared[id]) throw std::invalid_argument("duplicate node: " + std::to_string(nd.id));
        declared[id] = 1;
        owner[id] = nd.owner;
        for (int s : nd.succs) {
            int t = s + shift;
            if (t < 1 || t > n) throw std::invalid_argument("node id out of range: " + std::to_string(s));
            edges.push_back({id, nd.prio + prio_shift, t});
        }
    }
    for (int v = 1; v <= n; ++v)
        if (!declared[v]) throw std::invalid_argument("no outgoing edge: " + std::to_string(v - shift));
    int start_node = start ? *start + shift : decls.front().id + shift;
    return GameGraph(n, start_node, std::move(owner), std::move(edges));
}

}  // namespace detail

/// Parses a game in the edge-priority format, or in the conventional
/// node-priority layout (detected by the owner field being 0/1 instead of
/// even/odd), where every edge is stamped with its source node's priority.
inline GameGraph parse_game(std::string_view text) {
    detail::TokenStream ts(detail::tokenize(text));
    if (ts.done()) throw parse_error(1, "empty input");
    ts.expect("parity");
    int header = ts.next_int("node count");
    ts.expect(";");
    if (header < 0) throw parse_error(1, "node count must be nonnegative");
    // Edge-priority node lines read "<id> <even|odd> ..."; node-priority
    // lines read "<id> <priority> <owner01> ...". Scan past any number of
    // "start <v>;" statements to the first node line and peek its shape.
    size_t ahead = 0;
    while (ts.peek(ahead).text == "start") ahead += 3;
    const std::string& discr = ts.peek(ahead + 1).text;
    if (discr == "even" || discr == "odd") return detail::parse_edge_priority(ts, header);
    return detail::parse_node_priority(ts, header);
}

/// Renders the edge-priority format with a stable ordering: nodes ascending,
/// each node's edges by (priority, target). parse_game(render_game(g)) == g.
inline std::string render_game(const GameGraph& g) {
    std::ostringstream os;
    os << "parity " << g.node_count() << ";\n";
    os << "start " << g.start() << ";\n";
    for (int v = 1; v <= g.node_count(); ++v) {
        os << v << ' ' << (g.owner(v) == Player::Even ? "even" : "odd") << ' ';
        bool first = true;
        for (const Letter& e : g.edges_from(v)) {
            if (!first) os << ',';
            os << e.p << ':' << e.v;
            first = false;
        }
        os << ";\n";
    }
    return os.str();
}

}  // namespace regsep

#endif
