#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "iipg/generators.hpp"
#include "iipg/lift.hpp"
#include "iipg/parity.hpp"
#include "iipg/powerset.hpp"
#include "iipg/search.hpp"
#include "iipg/simulated.hpp"

namespace fs = std::filesystem;
using namespace iipg;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool looks_like_game(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (ls >> tok) return tok == "iipg";
    }
    return false;
}

DirectedGraph load_graph(const std::string& path) {
    std::string text = read_file(path);
    if (looks_like_game(text)) return parse_game(text).graph;
    return parse_digraph(text);
}

ImperfectGame load_game(const std::string& path) {
    std::string text = read_file(path);
    if (!looks_like_game(text)) throw invalid_input(path + ": expected an iipg game file");
    return parse_game(text);
}

// batch helper: run `one` over every recognized file in a directory
int run_batch(const std::string& path, int jobs, const std::function<std::string(const std::string&)>& one) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        if (ext == ".iipg" || ext == ".dg") files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    std::vector<std::string> outputs(files.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= files.size()) return;
            try {
                outputs[i] = one(files[i]);
            } catch (const std::exception& e) {
                outputs[i] = std::string("error ") + e.what() + "\n";
                failed = true;
            }
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (size_t i = 0; i < files.size(); ++i) {
        std::istringstream lines(outputs[i]);
        std::string line;
        while (std::getline(lines, line))
            std::cout << fs::path(files[i]).filename().string() << " " << line << "\n";
    }
    return failed ? 2 : 0;
}

std::string solve_report(const ImperfectGame& g, bool regions, bool strategy) {
    std::ostringstream out;
    bool direct = g.is_perfect_information() && (g.condition.kind == CondKind::parity ||
                                                 g.condition.kind == CondKind::reachability ||
                                                 g.condition.kind == CondKind::safety);
    SolveResult res;
    if (direct) {
        ParityArena a = arena_from_game(g);
        if (g.condition.kind == CondKind::parity) {
            res = solve_parity(a);
        } else {
            Bitset t(a.n);
            for (int v : g.condition.target) t.set(v);
            res = g.condition.kind == CondKind::reachability ? solve_reachability(a, t)
                                                             : solve_safety(a, t);
        }
        out << "winner " << (res.win0.test(g.initial) ? 0 : 1) << "\n";
    } else {
        PowersetGame pg = powerset_construct(g);
        PowersetArena pa = solve_arena(pg);
        res = pa.kind == CondKind::reachability ? solve_reachability(pa.arena, pa.target)
                                                : solve_parity(pa.arena);
        out << "winner " << (res.win0.test(0) ? 0 : 1) << "\n";
    }
    if (regions) {
        out << "region0";
        res.win0.for_each([&](int v) { out << " " << v; });
        out << "\nregion1";
        res.win1.for_each([&](int v) { out << " " << v; });
        out << "\n";
    }
    if (strategy) {
        for (size_t v = 0; v < res.strat0.size(); ++v)
            if (res.strat0[v] >= 0) out << "strat0 " << v << " " << res.strat0[v] << "\n";
        for (size_t v = 0; v < res.strat1.size(); ++v)
            if (res.strat1[v] >= 0) out << "strat1 " << v << " " << res.strat1[v] << "\n";
    }
    return out.str();
}

std::string width_report_line(const DirectedGraph& g, const std::string& measure, int robbers,
                              bool restricted, bool witness) {
    std::ostringstream out;
    WidthReport rep;
    if (measure == "dw") {
        rep = restricted ? restricted_dag_width(g) : dag_width(g, true);
    } else if (measure == "nmdw") {
        rep = dag_width(g, false);
    } else if (measure == "dpw") {
        rep = directed_path_width(g, true);
    } else if (measure == "tw") {
        rep = tree_width(g);
    } else if (measure == "ent") {
        rep = entanglement(g);
    } else if (measure == "dwr") {
        rep = multi_robber_width(g, robbers, true);
    } else {
        throw invalid_input("unknown measure '" + measure + "'");
    }
    out << measure << " " << rep.value << "\n";
    if (witness) {
        for (const auto& [key, ann] : rep.witness.moves)
            out << "(" << key.a.str() << " | " << key.b.str() << ") -> " << ann.str() << "\n";
        for (const auto& u : rep.play) out << "place " << u.str() << "\n";
    }
    return out.str();
}

ImperfectGame generate_family(const std::string& family, const std::vector<int>& params,
                              uint64_t seed, int cap, bool& is_graph, DirectedGraph& graph_out) {
    auto need = [&](size_t k) {
        if (params.size() != k)
            throw invalid_input("generate " + family + ": expected " + std::to_string(k) +
                                " parameter(s)");
    };
    is_graph = false;
    if (family == "cycles") {
        need(1);
        return gen_cycles_gadget(params[0], cap);
    }
    if (family == "paths") {
        need(1);
        return gen_paths_gadget(params[0], cap);
    }
    if (family == "halfgrid") {
        need(1);
        return gen_halfgrid(params[0], cap);
    }
    if (family == "doubletree") {
        need(1);
        return gen_double_tree(params[0], cap);
    }
    if (family == "fig4") {
        need(0);
        return gen_fig4();
    }
    if (family == "lextree") {
        need(2);
        is_graph = true;
        graph_out = gen_lex_tree(params[0], params[1], cap);
        return {};
    }
    if (family == "offhanded") {
        need(1);
        is_graph = true;
        graph_out = gen_offhanded(params[0], cap);
        return {};
    }
    if (family == "random") {
        if (params.size() < 2 || params.size() > 4)
            throw invalid_input("generate random: <positions> <maxcolor> [classsize] [maxout]");
        RandomGameSpec spec;
        spec.positions = params[0];
        spec.max_color = params[1];
        if (params.size() > 2) spec.class_size = params[2];
        if (params.size() > 3) spec.max_out = params[3];
        spec.seed = seed;
        return gen_random(spec, cap);
    }
    throw invalid_input("unknown family '" + family +
                        "' (cycles, paths, halfgrid, doubletree, fig4, lextree, offhanded, random)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parity games with imperfect information and graph searching measures"};
    app.require_subcommand(1);

    std::string in_path, measure = "dw", family, kind = "dw";
    std::vector<int> params;
    int robbers = 1, jobs = 1, cap = kDefaultPositionCap;
    uint64_t seed = 1;
    bool regions = false, strategy = false, restricted = false, witness = false;

    auto* c_validate = app.add_subcommand("validate", "check observability conditions");
    c_validate->add_option("file", in_path)->required();
    c_validate->add_option("--jobs", jobs, "parallel workers for directory input");

    auto* c_powerset = app.add_subcommand("powerset", "emit the knowledge-set game");
    c_powerset->add_option("file", in_path)->required();

    auto* c_solve = app.add_subcommand("solve", "winner at the initial position");
    c_solve->add_option("file", in_path)->required();
    c_solve->add_flag("--regions", regions, "print both winning regions");
    c_solve->add_flag("--strategy", strategy, "print positional strategies");

    auto* c_width = app.add_subcommand("width", "graph searching measures");
    c_width->add_option("file", in_path)->required();
    c_width->add_option("--measure", measure, "dw|nmdw|dpw|tw|ent|dwr")->required();
    c_width->add_option("--robbers", robbers, "robber count for dwr");
    c_width->add_flag("--restricted", restricted, "cops placed only in the robber's reach");
    c_width->add_flag("--witness", witness, "dump the winning strategy");
    c_width->add_option("--jobs", jobs, "parallel workers for directory input");

    auto* c_simulate = app.add_subcommand("simulate", "solve a parity game via the simulated game");
    c_simulate->add_option("file", in_path)->required();

    auto* c_generate = app.add_subcommand("generate", "write a game or graph family to stdout");
    c_generate->add_option("family", family)->required();
    c_generate->add_option("params", params, "family parameters");
    c_generate->add_option("--seed", seed, "seed for the random family");
    c_generate->add_option("--cap", cap, "position cap");

    auto* c_lift = app.add_subcommand("lift", "run a strategy lift against an adversary");
    c_lift->add_option("file", in_path)->required();
    c_lift->add_option("--kind", kind, "dw|dpw")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_validate->parsed()) {
            auto one = [](const std::string& p) -> std::string {
                auto report = validate(load_game(p));
                if (report.empty()) return "ok\n";
                std::string out;
                for (const auto& v : report) out += v.condition + ": " + v.message + "\n";
                throw invalid_input(out);
            };
            if (fs::is_directory(in_path)) return run_batch(in_path, jobs, one);
            auto report = validate(load_game(in_path));
            if (report.empty()) {
                std::cout << "ok\n";
                return 0;
            }
            for (const auto& v : report) std::cerr << v.condition << ": " << v.message << "\n";
            return 2;
        }
        if (c_powerset->parsed()) {
            ImperfectGame g = load_game(in_path);
            PowersetGame pg = powerset_construct(g);
            DeterminizedPowerset det = determinize(pg);
            std::cout << serialize_game(det.game);
            for (int i = 0; i < det.base_count; ++i) {
                std::cout << "# members " << i << " :";
                for (int v : pg.members[i]) std::cout << " " << v;
                std::cout << "\n";
            }
            return 0;
        }
        if (c_solve->parsed()) {
            std::cout << solve_report(load_game(in_path), regions, strategy);
            return 0;
        }
        if (c_width->parsed()) {
            auto one = [&](const std::string& p) {
                return width_report_line(load_graph(p), measure, robbers, restricted, witness);
            };
            if (fs::is_directory(in_path)) return run_batch(in_path, jobs, one);
            std::cout << one(in_path);
            return 0;
        }
        if (c_simulate->parsed()) {
            ImperfectGame g = load_game(in_path);
            if (!g.is_perfect_information() || g.condition.kind != CondKind::parity)
                throw invalid_input("simulate needs a perfect-information parity game");
            ParityArena arena = arena_from_game(g);
            WidthReport rep = dag_width(g.graph, false);
            SimStats stats;
            int w = simulate_solve(arena, g.graph, rep.witness, &stats, g.initial);
            std::cout << "winner " << w << "\n";
            std::cout << "cops " << rep.cops << "\n";
            std::cout << "states " << stats.peak_memo << "\n";
            return 0;
        }
        if (c_generate->parsed()) {
            bool is_graph = false;
            DirectedGraph graph;
            ImperfectGame g = generate_family(family, params, seed, cap, is_graph, graph);
            std::cout << (is_graph ? serialize_digraph(graph) : serialize_game(g));
            return 0;
        }
        if (c_lift->parsed()) {
            ImperfectGame g = load_game(in_path);
            int r = imperfection_radius(g);
            PowersetGame pg = powerset_construct(g);
            if (kind == "dw") {
                WidthReport rep = dag_width(g.graph, false);
                int budget = rep.cops * r * (1 << (r - 1));
                auto f = rep.witness.as_function(g.graph);
                LiftReplayReport rr = replay_dw_lift(g, pg, f);
                std::cout << "cops " << rr.max_cops << "\n";
                std::cout << "steps " << rr.max_depth << "\n";
                std::cout << "monotone " << (rr.monotone ? "yes" : "no") << "\n";
                std::cout << "captured " << (rr.captured ? "yes" : "no") << "\n";
                std::cout << "budget " << budget << "\n";
                return rr.captured ? 0 : 2;
            }
            if (kind == "dpw") {
                WidthReport rep = directed_path_width(g.graph, true);
                DpwLiftResult lr = lift_dpw(g, pg, rep.play);
                std::cout << "cops " << lr.max_cops << "\n";
                std::cout << "steps " << lr.steps << "\n";
                std::cout << "monotone " << (lr.monotone ? "yes" : "no") << "\n";
                std::cout << "cleared " << (lr.cleared ? "yes" : "no") << "\n";
                std::cout << "budget " << rep.cops * (1 << (r - 1)) << "\n";
                return 0;
            }
            throw invalid_input("lift --kind must be dw or dpw");
        }
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
