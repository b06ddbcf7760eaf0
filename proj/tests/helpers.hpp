#pragma once

#include <functional>
#include <random>
#include <set>
#include <vector>

#include "iipg/digraph.hpp"
#include "iipg/game.hpp"
#include "iipg/parity.hpp"
#include "iipg/powerset.hpp"

namespace testutil {

using namespace iipg;

inline DirectedGraph random_digraph(int n, double p, std::mt19937_64& rng) {
    DirectedGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && (rng() % 1000) < (uint64_t)(p * 1000)) g.add_edge(u, v);
    return g;
}

// canonical form by minimizing the adjacency matrix over all vertex
// permutations; exact for the small n used in the exhaustive suites
inline std::vector<uint64_t> canonical_form(const DirectedGraph& g) {
    int n = g.size();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<uint64_t> best;
    do {
        std::vector<uint64_t> rows(n, 0);
        for (auto [u, v] : g.edges()) rows[perm[u]] |= uint64_t(1) << perm[v];
        if (best.empty() || rows < best) best = rows;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// sample `count` pairwise non-isomorphic weakly connected digraphs with
// n_min..n_max vertices
inline std::vector<DirectedGraph> connected_digraph_corpus(int count, int n_min, int n_max,
                                                           uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<std::vector<uint64_t>> seen;
    std::vector<DirectedGraph> out;
    while ((int)out.size() < count) {
        int n = n_min + (int)(rng() % (uint64_t)(n_max - n_min + 1));
        double p = 0.15 + (rng() % 50) / 100.0;
        DirectedGraph g = random_digraph(n, p, rng);
        if (!is_weakly_connected(g)) continue;
        if (!seen.insert(canonical_form(g)).second) continue;
        out.push_back(std::move(g));
    }
    return out;
}

// --------------------------------------------------------------------------
// Independent oracles (never share code with the solvers they check).

// reachability closure by naive iteration over the edge list
inline std::set<int> reach_oracle(const std::vector<std::pair<int, int>>& edges,
                                  const std::vector<int>& sources, const std::set<int>& blocked) {
    std::set<int> seen;
    for (int s : sources)
        if (!blocked.count(s)) seen.insert(s);
    bool grew = true;
    while (grew) {
        grew = false;
        for (auto [u, v] : edges)
            if (seen.count(u) && !blocked.count(v) && seen.insert(v).second) grew = true;
    }
    return seen;
}

// SCC of v via mutual reachability
inline std::set<int> scc_oracle(const DirectedGraph& g, const std::set<int>& blocked, int v) {
    auto edges = g.edges();
    std::vector<std::pair<int, int>> kept;
    for (auto [a, b] : edges)
        if (!blocked.count(a) && !blocked.count(b)) kept.push_back({a, b});
    std::set<int> fwd = reach_oracle(kept, {v}, {});
    std::set<int> comp;
    for (int u : fwd) {
        auto back = reach_oracle(kept, {u}, {});
        if (back.count(v)) comp.insert(u);
    }
    return comp;
}

// backward-induction attractor for finite reachability, brute force
inline std::set<int> attractor_oracle(const ParityArena& a, const std::set<int>& target,
                                      int player) {
    std::set<int> attr = target;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int v = 0; v < a.n; ++v) {
            if (attr.count(v)) continue;
            bool take;
            if (a.owner[v] == player) {
                take = false;
                for (int w : a.succ[v])
                    if (attr.count(w)) take = true;
            } else {
                take = true;  // vacuous for dead-ends: stuck opponent loses
                for (int w : a.succ[v])
                    if (!attr.count(w)) take = false;
            }
            if (take) {
                attr.insert(v);
                grew = true;
            }
        }
    }
    return attr;
}

// Parity oracle by explicit cycle analysis over positional strategy
// profiles: Player 0 wins at v iff some positional choice of his edges
// leaves the opponent no reachable odd cycle and no reachable Player-0
// dead-end. Exponential; for tiny games only.
namespace detail {

inline bool opponent_beats(const ParityArena& a, const std::vector<int>& choice0, int start) {
    // restricted graph: Player 0 follows choice0, Player 1 moves freely
    int n = a.n;
    std::vector<std::vector<int>> succ(n);
    for (int v = 0; v < n; ++v) {
        if (a.owner[v] == 0) {
            if (choice0[v] >= 0) succ[v].push_back(choice0[v]);
        } else {
            succ[v] = a.succ[v];
        }
    }
    // vertices reachable from start
    std::vector<bool> seen(n, false);
    std::vector<int> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : succ[u])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    for (int v = 0; v < n; ++v)
        if (seen[v] && succ[v].empty() && a.owner[v] == 0) return true;  // P0 stuck
    // odd cycle: an odd-colored vertex x on a cycle within colors >= col(x)
    for (int x = 0; x < n; ++x) {
        if (!seen[x] || (a.color[x] & 1) == 0) continue;
        // cycle through x using vertices of color >= col(x), inside `seen`
        std::vector<bool> vis(n, false);
        std::vector<int> st;
        for (int w : succ[x])
            if (seen[w] && a.color[w] >= a.color[x] && !vis[w]) {
                vis[w] = true;
                st.push_back(w);
            }
        bool cyc = vis[x];
        while (!st.empty() && !cyc) {
            int u = st.back();
            st.pop_back();
            if (u == x) {
                cyc = true;
                break;
            }
            for (int w : succ[u])
                if (seen[w] && a.color[w] >= a.color[x] && !vis[w]) {
                    vis[w] = true;
                    st.push_back(w);
                    if (w == x) cyc = true;
                }
        }
        if (cyc) return true;
    }
    return false;
}

}  // namespace detail

inline std::vector<int> parity_winners_oracle(const ParityArena& a) {
    int n = a.n;
    std::vector<int> p0(n);
    std::vector<int> winner(n, 1);
    std::function<void(int)> enumerate = [&](int v) {
        if (v == n) {
            for (int s = 0; s < n; ++s)
                if (winner[s] == 1 && !detail::opponent_beats(a, p0, s)) winner[s] = 0;
            return;
        }
        if (a.owner[v] != 0 || a.succ[v].empty()) {
            p0[v] = -1;
            enumerate(v + 1);
            return;
        }
        for (int w : a.succ[v]) {
            p0[v] = w;
            enumerate(v + 1);
        }
    };
    enumerate(0);
    return winner;
}

// Depth-bounded minimax over the knowledge game with observation splits
// resolved adversarially; Player 0 wins a knowledge set only when every
// member is a target. This is the alternating-algorithm reading of the
// acyclic-membership argument.
inline int acyclic_reach_minimax(const PowersetGame& pg) {
    Bitset target(pg.game.size());
    for (int t : pg.game.condition.target) target.set(t);
    int cap = pg.game.size() + 1;

    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (size_t e = 0; e < pg.game.edges.size(); ++e)
        groups[{pg.game.edges[e].src, pg.source_action[e]}].push_back(pg.game.edges[e].dst);

    std::function<bool(int, int)> win0 = [&](int v, int depth) -> bool {
        if (target.test(v)) return true;
        if (depth > cap) return false;
        bool has_move = false;
        if (pg.game.owner[v] == 0) {
            for (auto& [key, targets] : groups) {
                if (key.first != v) continue;
                has_move = true;
                bool all = true;
                for (int w : targets)
                    if (!win0(w, depth + 1)) all = false;
                if (all) return true;
            }
            return has_move ? false : false;  // stuck Player 0 loses
        }
        for (auto& [key, targets] : groups) {
            if (key.first != v) continue;
            for (int w : targets) {
                has_move = true;
                if (!win0(w, depth + 1)) return false;
            }
        }
        return has_move ? true : true;  // stuck Player 1 loses
    };
    return win0(0, 0) ? 0 : 1;
}

}  // namespace testutil
