#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "iipg/game.hpp"

namespace iipg {

constexpr int kDefaultPositionCap = 5000;

namespace detail {

inline void check_cap(long long positions, int cap, const char* family) {
    if (positions > cap)
        throw invalid_input(std::string(family) + ": " + std::to_string(positions) +
                            " positions exceed the cap of " + std::to_string(cap));
}

// structural gadgets: every position Player 1, color 1 (Player 1 wins all
// infinite plays), parity condition
inline ImperfectGame gadget_shell(int n) {
    ImperfectGame g;
    g.owner.assign(n, 1);
    g.color.assign(n, 1);
    g.pos_class.resize(n);
    for (int v = 0; v < n; ++v) g.pos_class[v] = v;
    g.initial = 0;
    g.condition = WinningCondition::parity();
    return g;
}

}  // namespace detail

// Disjoint union of n directed 2-cycles with self-loops, entered from v0 by
// indistinguishable actions; toggling actions flip one cycle each. The
// knowledge graph is the n-dimensional toggle cube.
inline ImperfectGame gen_cycles_gadget(int n, int cap = kDefaultPositionCap) {
    if (n < 2 || n % 2 != 0) throw invalid_input("gen_cycles_gadget: n must be even and >= 2");
    detail::check_cap(2LL * n + 1, cap, "gen_cycles_gadget");
    int total = 2 * n + 1;
    ImperfectGame g = detail::gadget_shell(total);
    auto pos = [&](int i, int j) { return 1 + 2 * (i - 1) + j; };  // i in 1..n, j in 0..1

    // actions: a_i = i, not_i = n + i
    for (int i = 1; i <= n; ++i) g.act_class[i] = 0;  // all a_i indistinguishable
    for (int i = 1; i <= n; ++i) {
        g.edges.push_back({0, i, pos(i, 0)});
        for (int j = 0; j <= 1; ++j) {
            g.edges.push_back({pos(i, j), n + i, pos(i, 1 - j)});
            for (int k = 1; k <= n; ++k)
                if (k != i) g.edges.push_back({pos(i, j), n + k, pos(i, j)});
        }
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= 1; ++j) g.pos_class[pos(i, j)] = 1;  // one class of all 2n
    g.pos_class[0] = 0;
    g.rebuild_graph();
    return g;
}

// Two undirected n-paths with self-loops under the opposite path's movement
// actions; the knowledge graph contains an n x n grid.
inline ImperfectGame gen_paths_gadget(int n, int cap = kDefaultPositionCap) {
    if (n < 2) throw invalid_input("gen_paths_gadget: n must be >= 2");
    detail::check_cap(2LL * n + 1, cap, "gen_paths_gadget");
    ImperfectGame g = detail::gadget_shell(2 * n + 1);
    auto pos = [&](int p, int j) { return 1 + (p - 1) * n + (j - 1); };  // p in 1..2, j in 1..n

    // actions: entries 1,2 (one class); left/right per path 3..6
    g.act_class[1] = 0;
    g.act_class[2] = 0;
    const int L1 = 3, R1 = 4, L2 = 5, R2 = 6;
    g.edges.push_back({0, 1, pos(1, 1)});
    g.edges.push_back({0, 2, pos(2, 1)});
    for (int j = 1; j <= n; ++j) {
        if (j < n) g.edges.push_back({pos(1, j), R1, pos(1, j + 1)});
        if (j > 1) g.edges.push_back({pos(1, j), L1, pos(1, j - 1)});
        g.edges.push_back({pos(1, j), L2, pos(1, j)});
        g.edges.push_back({pos(1, j), R2, pos(1, j)});
        if (j < n) g.edges.push_back({pos(2, j), R2, pos(2, j + 1)});
        if (j > 1) g.edges.push_back({pos(2, j), L2, pos(2, j - 1)});
        g.edges.push_back({pos(2, j), L1, pos(2, j)});
        g.edges.push_back({pos(2, j), R1, pos(2, j)});
    }
    for (int p = 1; p <= 2; ++p)
        for (int j = 1; j <= n; ++j) g.pos_class[pos(p, j)] = 1;
    g.pos_class[0] = 0;
    g.rebuild_graph();
    return g;
}

// n undirected row paths plus an apex v0 with directed edges to every vertex.
// Observation pairs vertices of neighboring rows by the parity pattern of
// the figure; all actions fall in one class.
inline ImperfectGame gen_halfgrid(int n, int cap = kDefaultPositionCap) {
    if (n < 4 || n % 2 != 0) throw invalid_input("gen_halfgrid: n must be even and >= 4");
    detail::check_cap(1LL * n * n + 1, cap, "gen_halfgrid");
    ImperfectGame g = detail::gadget_shell(n * n + 1);
    auto pos = [&](int i, int j) { return 1 + (i - 1) * n + (j - 1); };  // row i, column j

    int action = 0;
    auto edge = [&](int u, int v) {
        g.edges.push_back({u, action, v});
        g.act_class[action] = 0;  // Player 0 distinguishes no actions here
        ++action;
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            edge(0, pos(i, j));
            if (j < n) {
                edge(pos(i, j), pos(i, j + 1));
                edge(pos(i, j + 1), pos(i, j));
            }
        }

    int cls = n * n + 1;  // fresh labels, clear of the singleton defaults
    for (int i = 1; i < n; ++i)
        for (int j = 1; j <= n; ++j) {
            bool paired = (i % 2 == 1 && j % 2 == 0) || (i % 2 == 0 && j % 2 == 1);
            if (paired) {
                g.pos_class[pos(i, j)] = cls;
                g.pos_class[pos(i + 1, j)] = cls;
                ++cls;
            }
        }
    // remaining vertices keep their singleton default; normalize labels
    std::map<int, int> remap;
    for (int v = 0; v < g.size(); ++v) {
        auto [it, fresh] = remap.emplace(g.pos_class[v], (int)remap.size());
        (void)fresh;
        g.pos_class[v] = it->second;
    }
    g.rebuild_graph();
    return g;
}

// Two binary trees of depth n: T1 undirected with self-loops, T2 undirected,
// and a one-way bridge T1 -> middle -> T2 whose endpoints arepairwise
// indistinguishable, so the knowledge graph links the trees both ways.
inline ImperfectGame gen_double_tree(int n, int cap = kDefaultPositionCap) {
    if (n < 2 || n % 2 != 0) throw invalid_input("gen_double_tree: n must be even and >= 2");
    long long per_tree = (1LL << n) - 1;
    detail::check_cap(3 * per_tree + 1, cap, "gen_double_tree");

    // tier 0 = T1, tier 1 = middle, tier 2 = T2; nodes indexed heap-style
    // within a tier: node 1 is the root, children 2t and 2t+1
    auto id = [&](int tier, long long node) { return (int)(1 + tier * per_tree + (node - 1)); };
    int total = (int)(3 * per_tree + 1);
    ImperfectGame g = detail::gadget_shell(total);

    int action = 0;
    auto edge = [&](int u, int v) { g.edges.push_back({u, action++, v}); };
    // all actions indistinguishable
    g.edges.reserve(8 * per_tree);

    edge(0, id(0, 1));  // v0 -> root of T1
    for (long long t = 1; t <= per_tree; ++t) {
        if (2 * t + 1 <= per_tree) {
            edge(id(0, t), id(0, 2 * t));  // T1 tree edges, undirected
            edge(id(0, 2 * t), id(0, t));
            edge(id(0, t), id(0, 2 * t + 1));
            edge(id(0, 2 * t + 1), id(0, t));
            edge(id(2, t), id(2, 2 * t));  // T2 tree edges, undirected
            edge(id(2, 2 * t), id(2, t));
            edge(id(2, t), id(2, 2 * t + 1));
            edge(id(2, 2 * t + 1), id(2, t));
        }
        edge(id(0, t), id(0, t));  // T1 self-loops
        edge(id(0, t), id(1, t));  // u <-> alpha(u)
        edge(id(1, t), id(0, t));
        edge(id(1, t), id(2, t));  // alpha(u) -> beta(alpha(u))
    }
    for (const auto& e : g.edges) g.act_class[e.action] = 0;

    for (long long t = 1; t <= per_tree; ++t) {
        g.pos_class[id(0, t)] = (int)t;  // u ~ beta(alpha(u))
        g.pos_class[id(2, t)] = (int)t;
        g.pos_class[id(1, t)] = (int)(per_tree + t);
    }
    g.pos_class[0] = 0;
    std::map<int, int> remap;
    for (int v = 0; v < g.size(); ++v) {
        auto [it, fresh] = remap.emplace(g.pos_class[v], (int)remap.size());
        (void)fresh;
        g.pos_class[v] = it->second;
    }
    g.rebuild_graph();
    return g;
}

// The six-vertex example whose translated monotone strategy turns
// non-monotone on the knowledge graph.
inline ImperfectGame gen_fig4() {
    ImperfectGame g = detail::gadget_shell(6);
    // vertices: 0 = v0, 1..5 as drawn
    g.edges = {
        {0, 1, 1},  // v0 -> 1,  class {1,2}
        {0, 2, 2},  // v0 -> 2
        {1, 3, 3},  // 1 -> 3,   class {3,4}
        {2, 4, 4},  // 2 -> 4
        {2, 5, 5},  // 2 -> 5
        {4, 6, 1},  // 4 -> 1,   class {6,7}
        {4, 7, 2},  // 4 -> 2
        {5, 8, 2},  // 5 -> 2
    };
    g.act_class = {{1, 0}, {2, 0}, {3, 1}, {4, 1}, {6, 2}, {7, 2}};
    g.pos_class = {0, 1, 1, 2, 2, 3};
    g.rebuild_graph();
    return g;
}

// Lexicographic product of the full undirected tree with branching degree
// ceil(r/2)+2 and height r+1 with the k-clique.
inline DirectedGraph gen_lex_tree(int k, int r, int cap = kDefaultPositionCap) {
    if (k < 1 || r < 1) throw invalid_input("gen_lex_tree: k and r must be >= 1");
    long long branching = r / 2 + (r % 2) + 2;  // ceil(r/2) + 2
    long long nodes = 0, level = 1;
    for (int l = 0; l <= r; ++l) {
        nodes += level;
        level *= branching;
    }
    detail::check_cap(nodes * k, cap, "gen_lex_tree");

    // BFS ids for tree nodes; vertex = tree node * k + clique index
    DirectedGraph g((int)(nodes * k));
    auto vid = [&](long long node, int c) { return (int)(node * k + c); };
    std::vector<long long> parent(nodes, -1);
    {
        long long next = 1;
        std::vector<std::pair<long long, int>> frontier{{0, 0}};  // (node, depth)
        for (size_t i = 0; i < frontier.size(); ++i) {
            auto [node, depth] = frontier[i];
            if (depth == r) continue;
            for (long long b = 0; b < branching; ++b) {
                parent[next] = node;
                frontier.push_back({next, depth + 1});
                ++next;
            }
        }
    }
    for (long long t = 0; t < nodes; ++t) {
        for (int c1 = 0; c1 < k; ++c1)
            for (int c2 = 0; c2 < k; ++c2)
                if (c1 != c2) g.add_edge(vid(t, c1), vid(t, c2));
        if (parent[t] >= 0)
            for (int c1 = 0; c1 < k; ++c1)
                for (int c2 = 0; c2 < k; ++c2) {
                    g.add_edge(vid(t, c1), vid(parent[t], c2));
                    g.add_edge(vid(parent[t], c2), vid(t, c1));
                }
    }
    return g;
}

// Disjoint union of an undirected and a directed tree of branching degree
// n+1 and depth n+1, with one-way bridges between them. Cheap for free cops,
// expensive for cops restricted to the robber's reachable area.
inline DirectedGraph gen_offhanded(int n, int cap = kDefaultPositionCap) {
    if (n < 1) throw invalid_input("gen_offhanded: n must be >= 1");
    long long branching = n + 1;
    long long per_tree = 0, level = 1;
    for (int l = 0; l <= n; ++l) {
        per_tree += level;
        level *= branching;
    }
    detail::check_cap(2 * per_tree, cap, "gen_offhanded");

    DirectedGraph g((int)(2 * per_tree));
    // BFS ids per tree; tag 0 tree first
    std::vector<long long> parent(per_tree, -1);
    std::vector<int> childidx(per_tree, -1);  // which child of its parent (0-based)
    {
        long long next = 1;
        std::vector<std::pair<long long, int>> frontier{{0, 0}};
        for (size_t i = 0; i < frontier.size(); ++i) {
            auto [node, depth] = frontier[i];
            if (depth == n) continue;
            for (long long b = 0; b < branching; ++b) {
                parent[next] = node;
                childidx[next] = (int)b;
                frontier.push_back({next, depth + 1});
                ++next;
            }
        }
    }
    auto t0 = [&](long long node) { return (int)node; };
    auto t1 = [&](long long node) { return (int)(per_tree + node); };
    for (long long v = 0; v < per_tree; ++v) {
        if (parent[v] >= 0) {
            g.add_edge(t0(v), t0(parent[v]));  // undirected tree
            g.add_edge(t0(parent[v]), t0(v));
            g.add_edge(t1(v), t1(parent[v]));  // directed tree: child -> parent
        }
        g.add_edge(t0(v), t1(v));  // v -> v'
        // first n children of the directed tree point back at the twin parent
        if (parent[v] >= 0 && childidx[v] < n) g.add_edge(t1(v), t0(parent[v]));
    }
    return g;
}

// ---------------------------------------------------------------------------
// Seeded random games with bounded observation classes.

struct RandomGameSpec {
    int positions = 8;
    int max_color = 3;   // colors drawn from 0..max_color
    int class_size = 2;  // bound r on observation class sizes
    int min_out = 1;
    int max_out = 3;
    bool acyclic = false;
    CondKind condition = CondKind::parity;
    uint64_t seed = 1;
};

inline ImperfectGame gen_random(const RandomGameSpec& spec, int cap = kDefaultPositionCap) {
    if (spec.positions < 1) throw invalid_input("gen_random: needs at least one position");
    if (spec.class_size < 1) throw invalid_input("gen_random: class size must be >= 1");
    if (spec.min_out < 0 || spec.max_out < spec.min_out)
        throw invalid_input("gen_random: bad out-degree range");
    detail::check_cap(spec.positions, cap, "gen_random");
    std::mt19937_64 rng(spec.seed);
    auto rnd = [&](int lo, int hi) { return lo + (int)(rng() % (uint64_t)(hi - lo + 1)); };

    int n = spec.positions;
    ImperfectGame g;
    g.owner.resize(n);
    g.color.resize(n);
    g.pos_class.assign(n, -1);
    g.initial = 0;
    g.condition = WinningCondition::parity();

    for (int v = 0; v < n; ++v) {
        g.owner[v] = rnd(0, 1);
        g.color[v] = rnd(0, spec.max_color);
    }

    // classes: group same-owner same-color positions, never the initial one
    std::map<std::pair<int, int>, std::vector<int>> pools;
    for (int v = 1; v < n; ++v) pools[{g.owner[v], g.color[v]}].push_back(v);
    int next_class = 0;
    g.pos_class[0] = next_class++;
    std::vector<std::vector<int>> classes;
    for (auto& [key, pool] : pools) {
        (void)key;
        std::shuffle(pool.begin(), pool.end(), rng);
        size_t i = 0;
        while (i < pool.size()) {
            int sz = std::min<int>(rnd(1, spec.class_size), (int)(pool.size() - i));
            std::vector<int> cls(pool.begin() + i, pool.begin() + i + sz);
            std::sort(cls.begin(), cls.end());
            for (int v : cls) g.pos_class[v] = next_class;
            ++next_class;
            classes.push_back(std::move(cls));
            i += sz;
        }
    }
    classes.push_back({0});

    // edges per class in synchronized slots so conditions 2 and 3 hold; a
    // slot is dropped for the whole class when some member cannot take a
    // fresh target (keeps a simple graph and equal Player-0 action sets)
    int next_action = 1;
    std::vector<std::set<int>> used(n);
    for (const auto& cls : classes) {
        int slots = rnd(spec.min_out, spec.max_out);
        for (int s = 0; s < slots; ++s) {
            std::vector<int> targets(cls.size(), -1);
            bool feasible = true;
            for (size_t i = 0; i < cls.size() && feasible; ++i) {
                int lo = spec.acyclic ? cls[i] + 1 : 0;
                feasible = false;
                for (int attempt = 0; attempt < 8 && lo <= n - 1; ++attempt) {
                    int t = rnd(lo, n - 1);
                    if (!used[cls[i]].count(t)) {
                        targets[i] = t;
                        feasible = true;
                        break;
                    }
                }
            }
            if (!feasible) continue;
            for (size_t i = 0; i < cls.size(); ++i) used[cls[i]].insert(targets[i]);
            if (g.owner[cls[0]] == 0) {
                int a = next_action++;  // the very same action at every member
                for (size_t i = 0; i < cls.size(); ++i) g.edges.push_back({cls[i], a, targets[i]});
            } else {
                int cls_id = next_action++;  // distinct actions, one observation class
                for (size_t i = 0; i < cls.size(); ++i) {
                    int a = next_action++;
                    if (cls.size() > 1) g.act_class[a] = cls_id;
                    g.edges.push_back({cls[i], a, targets[i]});
                }
            }
        }
    }
    g.rebuild_graph();

    if (spec.condition == CondKind::reachability) {
        std::vector<int> target;
        for (int v = 0; v < n; ++v)
            if (rng() % 4 == 0) target.push_back(v);
        if (target.empty()) target.push_back(n - 1);
        g.condition = WinningCondition::reach(target);
    }

    auto report = validate(g);
    if (!report.empty())
        throw internal_error("gen_random produced an invalid game: " + report.front().message);
    return g;
}

}  // namespace iipg
