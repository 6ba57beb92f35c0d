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

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "regsep/check.hpp"
#include "regsep/regsep.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitResource = 3;

regsep::GameGraph load_game(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw regsep::parse_error(0, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return regsep::parse_game(buf.str());
}

struct Algorithms {
    static const std::vector<std::string>& names() {
        static const std::vector<std::string> v{"lehtinen-safety", "lehtinen-parity", "zielonka", "spm", "brute"};
        return v;
    }

    static regsep::SolveReport run(const std::string& algo, const regsep::GameGraph& g, uint64_t cap) {
        using namespace regsep;
        if (algo == "lehtinen-safety") return solve_with_safety_separator(g, cap);
        if (algo == "lehtinen-parity") return solve_with_register_separator(g, cap);
        return detail::timed_solve([&] {
            SolveReport r;
            if (algo == "zielonka")
                r.winner = solve_zielonka(g);
            else if (algo == "spm")
                r.winner = solve_spm(g);
            else if (algo == "brute")
                r.winner = brute_force_winner(g);
            else
                throw CLI::ValidationError("unknown algorithm: " + algo);
            return r;
        });
    }
};

void print_report(const regsep::SolveReport& r, const std::string& game_id, const std::string& algo,
                  const std::string& format, int start) {
    if (format == "records") {
        std::ostringstream os;
        os << "game=" << game_id << " algorithm=" << algo;
        if (start > 0) os << " start=" << start;
        os << " winner=" << to_string(r.winner) << " product_nodes=" << r.product_nodes
           << " product_edges=" << r.product_edges << " wall_time_ms=" << r.wall_ms;
        std::cout << os.str() << "\n";
    } else {
        if (start > 0) std::cout << "start " << start << ": ";
        std::cout << "winner: " << to_string(r.winner);
        if (r.product_nodes > 0)
            std::cout << "  (algorithm " << algo << ", product " << r.product_nodes << " nodes / "
                      << r.product_edges << " edges)";
        else
            std::cout << "  (algorithm " << algo << ")";
        std::cout << "\n";
    }
}

int cmd_solve(const std::string& path, const std::string& algorithm, uint64_t cap, bool all_starts,
              const std::string& format) {
    regsep::GameGraph g = load_game(path);
    std::vector<std::string> algos;
    if (algorithm == "all")
        algos = Algorithms::names();
    else
        algos.push_back(algorithm);
    std::vector<int> starts;
    if (all_starts)
        for (int v = 1; v <= g.node_count(); ++v) starts.push_back(v);
    else
        starts.push_back(0);  // designated start only
    for (int s : starts) {
        regsep::GameGraph inst = s > 0 ? g.with_start(s) : g;
        for (const std::string& a : algos) print_report(Algorithms::run(a, inst, cap), path, a, format, s);
    }
    return 0;
}

int cmd_gen(int n, int d, int count, uint64_t seed, double density, double owner_bias, const std::string& out_dir) {
    for (int i = 0; i < count; ++i) {
        regsep::GenSpec spec{n, d, density, owner_bias, seed + static_cast<uint64_t>(i)};
        regsep::GameGraph g = regsep::gen_random(spec);
        std::string text = regsep::render_game(g);
        if (out_dir.empty()) {
            std::cout << text;
            if (i + 1 < count) std::cout << "\n";
        } else {
            std::string path = out_dir + "/g" + std::to_string(seed + static_cast<uint64_t>(i)) + ".pg";
            std::ofstream f(path);
            if (!f) throw std::runtime_error("cannot write " + path);
            f << text;
        }
    }
    return 0;
}

int cmd_stats(int n, int d, uint64_t m) {
    using namespace regsep;
    RegisterAutomaton r(n, d);
    SafetyAutomaton s(n, d);
    if (r.rounded_priority_bound())
        std::cout << "note: priority bound rounded up to " << r.priority_bound() << "\n";
    std::cout << "n=" << n << " d=" << r.priority_bound() << "\n";
    std::cout << "registers rn(n) = " << r.registers() << "\n";
    std::cout << "register automaton states eta = " << r.state_count() << "\n";
    std::cout << "safety automaton states xi = " << s.state_count() << "\n";
    uint64_t nodes_r, edges_r, nodes_s, edges_s;
    uint64_t nm = static_cast<uint64_t>(n) + m;
    uint64_t rn2 = static_cast<uint64_t>(r.registers()) + 2;
    if (__builtin_mul_overflow(nm, r.state_count(), &nodes_r) ||
        __builtin_mul_overflow(m * r.state_count(), rn2, &edges_r) ||
        __builtin_mul_overflow(nm, s.state_count(), &nodes_s) ||
        __builtin_mul_overflow(m * s.state_count(), rn2, &edges_s))
        throw std::overflow_error("product size overflows 64 bits");
    std::cout << "register product for m=" << m << ": " << nodes_r << " nodes, " << edges_r << " edges, "
              << 2 * r.registers() + 1 << " priorities\n";
    std::cout << "safety product for m=" << m << ": " << nodes_s << " nodes, <= " << edges_s << " edges\n";
    return 0;
}

int cmd_check(uint64_t seed, const std::string& suite) {
    std::vector<int> ids;
    if (!suite.empty()) {
        auto it = regsep::check_suites().find(suite);
        if (it == regsep::check_suites().end()) throw CLI::ValidationError("unknown suite: " + suite);
        ids = it->second;
    }
    auto results = regsep::run_checks(seed, ids);
    bool all_ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << "  (" << r.detail << ", "
                  << r.seconds << " s)\n";
        all_ok = all_ok && r.passed;
    }
    std::cout << (all_ok ? "all checks passed" : "CHECK FAILURES") << "\n";
    return all_ok ? 0 : 1;
}

int cmd_bench(int n, int d, int count, uint64_t seed, const std::string& algorithm, uint64_t cap, int jobs,
              const std::string& format) {
    using namespace regsep;
    std::vector<std::string> algos;
    if (algorithm == "all")
        algos = {"lehtinen-safety", "lehtinen-parity", "zielonka", "spm"};
    else
        algos.push_back(algorithm);
    std::vector<GameGraph> games;
    for (int i = 0; i < count; ++i)
        games.push_back(gen_random({n, d, 2.0, 0.5, seed + static_cast<uint64_t>(i)}));

    struct Row {
        int game;
        std::string algo;
        SolveReport report;
    };
    std::vector<Row> rows;
    std::mutex mtx;
    std::atomic<int> next{0};
    auto worker = [&] {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= static_cast<int>(games.size())) return;
            std::vector<Row> local;
            for (const std::string& a : algos) local.push_back({i, a, Algorithms::run(a, games[i], cap)});
            std::lock_guard<std::mutex> lock(mtx);
            for (auto& r : local) rows.push_back(std::move(r));
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.game != b.game ? a.game < b.game : a.algo < b.algo;
    });
    bool agree = true;
    for (int i = 0; i < count; ++i) {
        std::optional<Player> w;
        for (const Row& r : rows)
            if (r.game == i) {
                if (!w) w = r.report.winner;
                agree = agree && *w == r.report.winner;
            }
    }
    for (const Row& r : rows)
        print_report(r.report, "g" + std::to_string(seed + static_cast<uint64_t>(r.game)), r.algo, format, 0);
    if (!agree) {
        std::cerr << "solver disagreement in bench corpus\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parity game solving via register separators"};
    app.require_subcommand(1);

    std::string path, algorithm = "lehtinen-safety", bench_algorithm = "all", format = "text", suite, out_dir;
    uint64_t seed = 0, cap = regsep::kDefaultProductNodeCap, m = 0;
    int n = 4, d = 2, count = 1, jobs = 1;
    bool all_starts = false;

    auto* solve = app.add_subcommand("solve", "solve a game file");
    solve->add_option("path", path, "game file")->required();
    solve->add_option("--algorithm", algorithm,
                      "lehtinen-safety (default), lehtinen-parity, zielonka, spm, brute, or all");
    solve->add_option("--cap", cap, "product node cap");
    solve->add_flag("--all-starts", all_starts, "solve once per start node");
    solve->add_option("--format", format, "text or records")->check(CLI::IsMember({"text", "records"}));

    auto* gen = app.add_subcommand("gen", "generate random games");
    gen->add_option("--n", n, "node count");
    gen->add_option("--d", d, "priority bound");
    gen->add_option("--count", count, "number of games");
    gen->add_option("--seed", seed, "generator seed");
    double density = 2.0, owner_bias = 0.5;
    gen->add_option("--density", density, "mean out-degree");
    gen->add_option("--owner-bias", owner_bias, "probability a node is Even's");
    gen->add_option("--out", out_dir, "write one .pg file per game into this directory");

    auto* stats = app.add_subcommand("stats", "print automaton and product sizes");
    stats->add_option("--n", n, "node count")->required();
    stats->add_option("--d", d, "priority bound")->required();
    stats->add_option("--m", m, "edge count for the product bounds (default 2n)");

    auto* check = app.add_subcommand("check", "run the property suites");
    check->add_option("--seed", seed, "corpus seed");
    check->add_option("--suite", suite, "oracle, sizes, rejection, language, witness, resolver, or linearity");

    auto* bench = app.add_subcommand("bench", "compare solvers on a random corpus");
    bench->add_option("--n", n, "node count");
    bench->add_option("--d", d, "priority bound");
    bench->add_option("--count", count, "number of games");
    bench->add_option("--seed", seed, "generator seed");
    bench->add_option("--algorithm", bench_algorithm, "one algorithm or all (default all)");
    bench->add_option("--cap", cap, "product node cap");
    bench->add_option("--jobs", jobs, "worker threads");
    bench->add_option("--format", format, "text or records")->check(CLI::IsMember({"text", "records"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(path, algorithm, cap, all_starts, format);
        if (gen->parsed()) return cmd_gen(n, d, count, seed, density, owner_bias, out_dir);
        if (stats->parsed()) return cmd_stats(n, d, m > 0 ? m : 2 * static_cast<uint64_t>(n));
        if (check->parsed()) return cmd_check(seed, suite);
        if (bench->parsed()) return cmd_bench(n, d, count, seed, bench_algorithm, cap, jobs, format);
    } catch (const regsep::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const regsep::resource_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
