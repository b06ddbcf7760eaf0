#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "iipg/game.hpp"

namespace iipg {

// Perfect-information arena in adjacency-list form. The solvers below all
// honor the dead-end rule: the player to move with no outgoing edge loses.
struct ParityArena {
    int n = 0;
    std::vector<int> owner;
    std::vector<int> color;
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;

    static ParityArena make(int n) {
        ParityArena a;
        a.n = n;
        a.owner.assign(n, 1);
        a.color.assign(n, 0);
        a.succ.resize(n);
        a.pred.resize(n);
        return a;
    }

    void add_edge(int u, int v) {
        succ[u].push_back(v);
        pred[v].push_back(u);
    }

    void finalize() {
        for (auto& s : succ) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
        for (auto& p : pred) {
            std::sort(p.begin(), p.end());
            p.erase(std::unique(p.begin(), p.end()), p.end());
        }
    }
};

inline ParityArena arena_from_game(const ImperfectGame& g) {
    if (!g.is_perfect_information())
        throw invalid_input("solver needs a perfect-information game; run the powerset first");
    ParityArena a = ParityArena::make(g.size());
    a.owner = g.owner;
    a.color = g.color;
    for (auto [u, v] : g.graph.edges()) a.add_edge(u, v);
    a.finalize();
    return a;
}

struct SolveResult {
    Bitset win0, win1;
    // positional strategies: chosen successor per position, -1 if undefined
    std::vector<int> strat0, strat1;

    const Bitset& win(int player) const { return player == 0 ? win0 : win1; }
    const std::vector<int>& strat(int player) const { return player == 0 ? strat0 : strat1; }
};

// Least set X >= target from which `player` can force reaching target,
// restricted to `domain`. A position of the opponent with no successors in
// the domain is vacuously attracted (the opponent is stuck and loses), which
// is exactly the dead-end convention.
inline Bitset attractor(const ParityArena& a, const Bitset& domain, Bitset target, int player,
                        std::vector<int>* strategy = nullptr) {
    target &= domain;
    std::vector<int> cnt(a.n, 0);
    std::vector<int> queue;
    for (int v = domain.first(); v >= 0; v = domain.next(v)) {
        if (a.owner[v] != player) {
            for (int w : a.succ[v])
                if (domain.test(w)) ++cnt[v];
            if (cnt[v] == 0 && !target.test(v)) target.set(v);  // stuck opponent
        }
    }
    Bitset attr = target;
    attr.for_each([&](int v) { queue.push_back(v); });
    while (!queue.empty()) {
        int w = queue.back();
        queue.pop_back();
        for (int v : a.pred[w]) {
            if (!domain.test(v) || attr.test(v)) continue;
            if (a.owner[v] == player) {
                attr.set(v);
                if (strategy) (*strategy)[v] = w;
                queue.push_back(v);
            } else if (--cnt[v] == 0) {
                attr.set(v);
                queue.push_back(v);
            }
        }
    }
    // distance-decreasing strategy inside the original target is not needed;
    // positions there already satisfy the objective.
    return attr;
}

inline Bitset attractor(const ParityArena& a, const Bitset& target, int player,
                        std::vector<int>* strategy = nullptr) {
    Bitset dom(a.n);
    for (int i = 0; i < a.n; ++i) dom.set(i);
    return attractor(a, dom, target, player, strategy);
}

namespace detail {

// Zielonka recursion on the subgame induced by `dom`. Assumes every position
// in `dom` has a successor in `dom` (dead-ends are removed by the caller).
inline void zielonka(const ParityArena& a, Bitset dom, SolveResult& res) {
    if (dom.none()) return;
    int c = -1;
    for (int v = dom.first(); v >= 0; v = dom.next(v))
        if (c < 0 || a.color[v] < c) c = a.color[v];
    int p = c & 1 ? 1 : 0;

    Bitset heads(a.n);
    for (int v = dom.first(); v >= 0; v = dom.next(v))
        if (a.color[v] == c) heads.set(v);

    std::vector<int>& sp = p == 0 ? res.strat0 : res.strat1;
    std::vector<int> astrat(a.n, -1);
    Bitset A = attractor(a, dom, heads, p, &astrat);

    SolveResult sub;
    sub.win0 = Bitset(a.n);
    sub.win1 = Bitset(a.n);
    sub.strat0.assign(a.n, -1);
    sub.strat1.assign(a.n, -1);
    zielonka(a, dom - A, sub);

    const Bitset& wopp = p == 0 ? sub.win1 : sub.win0;
    if (wopp.none()) {
        // p wins everywhere in dom: attract to heads, inside heads pick any
        // successor staying in dom (min id for determinism)
        for (int v = dom.first(); v >= 0; v = dom.next(v)) {
            if (a.owner[v] != p) continue;
            if (astrat[v] >= 0)
                sp[v] = astrat[v];
            else if ((p == 0 ? sub.strat0 : sub.strat1)[v] >= 0)
                sp[v] = (p == 0 ? sub.strat0 : sub.strat1)[v];
            else
                for (int w : a.succ[v])
                    if (dom.test(w)) {
                        sp[v] = w;
                        break;
                    }
        }
        Bitset& wp = p == 0 ? res.win0 : res.win1;
        wp |= dom;
    } else {
        std::vector<int> bstrat(a.n, -1);
        Bitset B = attractor(a, dom, wopp, 1 - p, &bstrat);
        std::vector<int>& so = p == 0 ? res.strat1 : res.strat0;
        const std::vector<int>& sub_so = p == 0 ? sub.strat1 : sub.strat0;
        for (int v = B.first(); v >= 0; v = B.next(v)) {
            if (a.owner[v] != 1 - p) continue;
            if (sub_so[v] >= 0)
                so[v] = sub_so[v];
            else if (bstrat[v] >= 0)
                so[v] = bstrat[v];
        }
        SolveResult rest;
        rest.win0 = Bitset(a.n);
        rest.win1 = Bitset(a.n);
        rest.strat0.assign(a.n, -1);
        rest.strat1.assign(a.n, -1);
        zielonka(a, dom - B, rest);
        res.win0 |= rest.win0;
        res.win1 |= rest.win1;
        Bitset& wo = p == 0 ? res.win1 : res.win0;
        wo |= B;
        for (int v = 0; v < a.n; ++v) {
            if (rest.strat0[v] >= 0 && res.strat0[v] < 0) res.strat0[v] = rest.strat0[v];
            if (rest.strat1[v] >= 0 && res.strat1[v] < 0) res.strat1[v] = rest.strat1[v];
        }
    }
}

}  // namespace detail

// Exact winning regions and positional strategies (Zielonka). Dead-ends are
// routed to absorbing sinks internally so the recursion sees a total arena.
inline SolveResult solve_parity(const ParityArena& a) {
    ParityArena b = ParityArena::make(a.n + 2);
    int z0 = a.n, z1 = a.n + 1;  // sink won by Player 0 / Player 1
    b.owner[z0] = 1;
    b.color[z0] = 0;
    b.owner[z1] = 0;
    b.color[z1] = 1;
    b.add_edge(z0, z0);
    b.add_edge(z1, z1);
    for (int v = 0; v < a.n; ++v) {
        b.owner[v] = a.owner[v];
        b.color[v] = a.color[v];
        for (int w : a.succ[v]) b.add_edge(v, w);
        if (a.succ[v].empty()) b.add_edge(v, a.owner[v] == 0 ? z1 : z0);
    }
    b.finalize();

    SolveResult r;
    r.win0 = Bitset(b.n);
    r.win1 = Bitset(b.n);
    r.strat0.assign(b.n, -1);
    r.strat1.assign(b.n, -1);
    Bitset dom(b.n);
    for (int i = 0; i < b.n; ++i) dom.set(i);
    detail::zielonka(b, dom, r);

    SolveResult out;
    out.win0 = Bitset(a.n);
    out.win1 = Bitset(a.n);
    out.strat0.assign(a.n, -1);
    out.strat1.assign(a.n, -1);
    for (int v = 0; v < a.n; ++v) {
        if (r.win0.test(v)) out.win0.set(v);
        if (r.win1.test(v)) out.win1.set(v);
        if (r.strat0[v] >= 0 && r.strat0[v] < a.n) out.strat0[v] = r.strat0[v];
        if (r.strat1[v] >= 0 && r.strat1[v] < a.n) out.strat1[v] = r.strat1[v];
    }
    return out;
}

inline SolveResult solve_parity(const ImperfectGame& g) { return solve_parity(arena_from_game(g)); }

inline SolveResult solve_reachability(const ParityArena& a, const Bitset& target) {
    SolveResult r;
    r.strat0.assign(a.n, -1);
    r.strat1.assign(a.n, -1);
    r.win0 = attractor(a, target, 0, &r.strat0);
    Bitset dom(a.n);
    for (int i = 0; i < a.n; ++i) dom.set(i);
    r.win1 = dom - r.win0;
    // Player 1 keeps the play inside his region (its complement-attractor
    // closure guarantees a successor exists for his positions there).
    for (int v = r.win1.first(); v >= 0; v = r.win1.next(v))
        if (a.owner[v] == 1)
            for (int w : a.succ[v])
                if (r.win1.test(w)) {
                    r.strat1[v] = w;
                    break;
                }
    return r;
}

inline SolveResult solve_safety(const ParityArena& a, const Bitset& bad) {
    SolveResult r;
    r.strat0.assign(a.n, -1);
    r.strat1.assign(a.n, -1);
    r.win1 = attractor(a, bad, 1, &r.strat1);
    Bitset dom(a.n);
    for (int i = 0; i < a.n; ++i) dom.set(i);
    r.win0 = dom - r.win1;
    for (int v = r.win0.first(); v >= 0; v = r.win0.next(v))
        if (a.owner[v] == 0)
            for (int w : a.succ[v])
                if (r.win0.test(w)) {
                    r.strat0[v] = w;
                    break;
                }
    return r;
}

// ---------------------------------------------------------------------------
// Sequence-forcing -> reachability reduction: run the game in product with a
// window of the last colors seen; the target is any state whose full window
// is an admissible tuple. The window is made observable by refining position
// classes (colors are observable, so this adds no illegal information).

inline ImperfectGame reduce_sequence_forcing(const ImperfectGame& g) {
    if (g.condition.kind != CondKind::sequence_forcing)
        throw invalid_input("reduce_sequence_forcing: condition is not sequence-forcing");
    const int k = g.condition.seq_len;
    if (k <= 0) throw invalid_input("reduce_sequence_forcing: window length must be positive");

    struct State {
        int v;
        std::vector<int> window;  // last <= k colors including the current position
        bool operator==(const State& o) const { return v == o.v && window == o.window; }
    };
    struct StateHash {
        size_t operator()(const State& s) const {
            size_t h = std::hash<int>()(s.v);
            for (int c : s.window) h = hash_combine(h, std::hash<int>()(c));
            return h;
        }
    };

    std::unordered_map<State, int, StateHash> ids;
    std::vector<State> states;
    auto intern = [&](State s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = (int)states.size();
        ids.emplace(s, id);
        states.push_back(std::move(s));
        return id;
    };

    State init{g.initial, {g.color[g.initial]}};
    intern(init);

    ImperfectGame out;
    std::vector<GameEdge> edges;
    for (size_t i = 0; i < states.size(); ++i) {
        State cur = states[i];  // copy: states grows below
        for (const auto& e : g.edges) {
            if (e.src != cur.v) continue;
            State nxt;
            nxt.v = e.dst;
            nxt.window = cur.window;
            nxt.window.push_back(g.color[e.dst]);
            if ((int)nxt.window.size() > k)
                nxt.window.erase(nxt.window.begin(), nxt.window.end() - k);
            edges.push_back({(int)i, e.action, intern(std::move(nxt))});
        }
    }

    int m = (int)states.size();
    out.owner.resize(m);
    out.color.resize(m);
    out.pos_class.resize(m);
    out.edges = std::move(edges);
    out.initial = 0;
    out.act_class = g.act_class;

    // class = (source class, window); dense relabeling
    std::map<std::pair<int, std::vector<int>>, int> cls;
    std::vector<int> target;
    for (int i = 0; i < m; ++i) {
        const State& s = states[i];
        out.owner[i] = g.owner[s.v];
        out.color[i] = g.color[s.v];
        auto key = std::make_pair(g.pos_class[s.v], s.window);
        auto [it, fresh] = cls.emplace(key, (int)cls.size());
        (void)fresh;
        out.pos_class[i] = it->second;
        if ((int)s.window.size() == k)
            for (const auto& tup : g.condition.seq_set)
                if (tup == s.window) {
                    target.push_back(i);
                    break;
                }
    }
    DirectedGraph graph(m);
    for (const auto& e : out.edges) graph.add_edge(e.src, e.dst);
    out.graph = std::move(graph);
    std::sort(out.edges.begin(), out.edges.end());
    out.condition = WinningCondition::reach(target);
    return out;
}

// Safety -> parity on a modified game: bad vertices become absorbing with an
// odd color, everything else gets color 0. Requires the bad set to be closed
// under the observation classes so colors stay observable.
inline ImperfectGame reduce_safety(const ImperfectGame& g) {
    if (g.condition.kind != CondKind::safety)
        throw invalid_input("reduce_safety: condition is not safety");
    Bitset bad(g.size());
    for (int v : g.condition.target) bad.set(v);
    for (int u = 0; u < g.size(); ++u)
        for (int v = 0; v < g.size(); ++v)
            if (g.pos_class[u] == g.pos_class[v] && bad.test(u) != bad.test(v))
                throw invalid_input("safety bad-set must be closed under observation classes");
    ImperfectGame out = g;
    int loop_action = -1000000;  // below any synthesized id in use
    std::vector<GameEdge> edges;
    for (const auto& e : g.edges)
        if (!bad.test(e.src)) edges.push_back(e);
    for (int v = 0; v < g.size(); ++v) {
        out.color[v] = bad.test(v) ? 1 : 0;
        if (bad.test(v)) edges.push_back({v, loop_action--, v});
    }
    out.edges = std::move(edges);
    out.rebuild_graph();
    out.condition = WinningCondition::parity();
    return out;
}

}  // namespace iipg
