#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "iipg/bitset.hpp"
#include "iipg/errors.hpp"

namespace iipg {

// Directed graph over dense vertex ids 0..n-1, no multi-edges.
// Immutable once built; all derived graphs are fresh values.
class DirectedGraph {
public:
    DirectedGraph() : n_(0) {}
    explicit DirectedGraph(int n) : n_(n), succ_(n, Bitset(n)) {}

    int size() const { return n_; }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        succ_[u].set(v);
    }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return succ_[u].test(v);
    }

    const Bitset& out(int v) const {
        check_vertex(v);
        return succ_[v];
    }

    int edge_count() const {
        int m = 0;
        for (const auto& s : succ_) m += s.count();
        return m;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> es;
        for (int u = 0; u < n_; ++u)
            succ_[u].for_each([&](int v) { es.emplace_back(u, v); });
        return es;
    }

    Bitset empty_set() const { return Bitset(n_); }
    Bitset full_set() const {
        Bitset b(n_);
        for (int i = 0; i < n_; ++i) b.set(i);
        return b;
    }

    // Union of out-neighbourhoods of `from`.
    Bitset post(const Bitset& from) const {
        Bitset out(n_);
        from.for_each([&](int v) { out |= succ_[v]; });
        return out;
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw invalid_input("vertex id " + std::to_string(v) + " out of range [0," +
                                std::to_string(n_) + ")");
    }
    void check_set(const Bitset& s) const {
        if (s.size_bits() != n_) throw invalid_input("vertex set sized for a different graph");
    }

private:
    int n_;
    std::vector<Bitset> succ_;
};

// All vertices reachable from sources \ blocked along paths avoiding blocked.
inline Bitset reach(const DirectedGraph& g, const Bitset& sources, const Bitset& blocked) {
    g.check_set(sources);
    g.check_set(blocked);
    Bitset seen = sources;
    seen -= blocked;
    Bitset frontier = seen;
    while (frontier.any()) {
        Bitset next = g.post(frontier);
        next -= blocked;
        next -= seen;
        seen |= next;
        frontier = std::move(next);
    }
    return seen;
}

inline Bitset reach(const DirectedGraph& g, int source, const Bitset& blocked) {
    Bitset s(g.size());
    s.set(source);
    return reach(g, s, blocked);
}

// Strongly connected component of v in the subgraph induced by the vertices
// outside `blocked` (flap_U(v) when restricted to the component notion).
inline Bitset scc_and_flap(const DirectedGraph& g, const Bitset& blocked, int v) {
    g.check_vertex(v);
    g.check_set(blocked);
    if (blocked.test(v)) throw invalid_input("scc_and_flap: vertex is blocked");
    Bitset fwd = reach(g, v, blocked);
    // backward reachability restricted to fwd
    Bitset comp(g.size());
    comp.set(v);
    Bitset frontier = comp;
    while (frontier.any()) {
        Bitset next(g.size());
        fwd.for_each([&](int u) {
            if (!comp.test(u) && g.out(u).intersects(frontier)) next.set(u);
        });
        comp |= next;
        frontier = std::move(next);
    }
    return comp;
}

inline DirectedGraph symmetric_closure(const DirectedGraph& g) {
    DirectedGraph h(g.size());
    for (auto [u, v] : g.edges()) {
        h.add_edge(u, v);
        h.add_edge(v, u);
    }
    return h;
}

inline bool is_acyclic(const DirectedGraph& g) {
    // Kahn's algorithm; a self-loop is a cycle.
    int n = g.size();
    std::vector<int> indeg(n, 0);
    for (auto [u, v] : g.edges()) {
        if (u == v) return false;
        indeg[v]++;
    }
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        ++seen;
        g.out(u).for_each([&](int v) {
            if (--indeg[v] == 0) stack.push_back(v);
        });
    }
    return seen == n;
}

inline bool is_weakly_connected(const DirectedGraph& g) {
    if (g.size() == 0) return true;
    DirectedGraph h = symmetric_closure(g);
    return reach(h, 0, h.empty_set()).count() == g.size();
}

// ---------------------------------------------------------------------------
// Plain digraph text format:
//   graph <n>
//   e <u> <v>
// '#' starts a comment, canonical form sorts edges by (u,v).

inline DirectedGraph parse_digraph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    DirectedGraph g;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "graph") {
            if (!(ls >> n) || n < 0)
                throw invalid_input("line " + std::to_string(lineno) + ": bad vertex count");
            g = DirectedGraph(n);
        } else if (tok == "e") {
            if (n < 0) throw invalid_input("line " + std::to_string(lineno) + ": edge before graph header");
            int u, v;
            if (!(ls >> u >> v))
                throw invalid_input("line " + std::to_string(lineno) + ": malformed edge");
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw invalid_input("line " + std::to_string(lineno) + ": edge endpoint out of range");
            g.add_edge(u, v);
        } else {
            throw invalid_input("line " + std::to_string(lineno) + ": unknown token '" + tok + "'");
        }
    }
    if (n < 0) throw invalid_input("missing 'graph <n>' header");
    return g;
}

inline std::string serialize_digraph(const DirectedGraph& g) {
    std::string out = "graph " + std::to_string(g.size()) + "\n";
    auto es = g.edges();
    std::sort(es.begin(), es.end());
    for (auto [u, v] : es) out += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

}  // namespace iipg
