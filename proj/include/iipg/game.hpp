#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "iipg/digraph.hpp"

namespace iipg {

enum class CondKind { parity, reachability, safety, sequence_forcing };

struct WinningCondition {
    CondKind kind = CondKind::parity;
    std::vector<int> target;                 // reach / safe vertex set
    int seq_len = 0;                         // sequence_forcing window length
    std::vector<std::vector<int>> seq_set;   // admissible color tuples, each of length seq_len

    static WinningCondition parity() { return {}; }
    static WinningCondition reach(std::vector<int> t) {
        WinningCondition c;
        c.kind = CondKind::reachability;
        c.target = std::move(t);
        return c;
    }
    static WinningCondition safe(std::vector<int> t) {
        WinningCondition c;
        c.kind = CondKind::safety;
        c.target = std::move(t);
        return c;
    }
    static WinningCondition seq(int k, std::vector<std::vector<int>> s) {
        WinningCondition c;
        c.kind = CondKind::sequence_forcing;
        c.seq_len = k;
        c.seq_set = std::move(s);
        return c;
    }
};

struct GameEdge {
    int src;
    int action;
    int dst;
    bool operator<(const GameEdge& o) const {
        return std::tie(src, action, dst) < std::tie(o.src, o.action, o.dst);
    }
    bool operator==(const GameEdge& o) const {
        return src == o.src && action == o.action && dst == o.dst;
    }
};

// Two-player game arena with imperfect information for Player 0.
// Positions carry owner, color, and an observation class; actions carry an
// observation class. Perfect information = all classes singletons.
struct ImperfectGame {
    DirectedGraph graph;                 // underlying edge structure
    std::vector<int> owner;              // 0 or 1 per position
    std::vector<int> color;              // non-negative, 0 is legal
    std::vector<int> pos_class;          // observation class id per position
    std::vector<GameEdge> edges;         // canonical order (src, action, dst)
    std::unordered_map<int, int> act_class;  // action id -> class id; absent = singleton
    int initial = 0;
    WinningCondition condition;

    int size() const { return (int)owner.size(); }

    int action_class_of(int action) const {
        auto it = act_class.find(action);
        // Undeclared actions sit in a singleton class keyed by their own id,
        // offset so synthesized ids never collide with declared class ids.
        return it == act_class.end() ? ~action : it->second;
    }

    bool same_action_class(int a, int b) const {
        return action_class_of(a) == action_class_of(b);
    }

    std::vector<int> class_members(int v) const {
        std::vector<int> m;
        for (int u = 0; u < size(); ++u)
            if (pos_class[u] == pos_class[v]) m.push_back(u);
        return m;
    }

    // action set available at v
    std::set<int> act(int v) const {
        std::set<int> a;
        for (const auto& e : edges)
            if (e.src == v) a.insert(e.action);
        return a;
    }

    std::optional<int> successor(int v, int action) const {
        for (const auto& e : edges)
            if (e.src == v && e.action == action) return e.dst;
        return std::nullopt;
    }

    bool is_perfect_information() const;

    void rebuild_graph() {
        DirectedGraph g(size());
        for (const auto& e : edges) g.add_edge(e.src, e.dst);
        graph = std::move(g);
        std::sort(edges.begin(), edges.end());
    }
};

inline int imperfection_radius(const ImperfectGame& g) {
    std::map<int, int> count;
    int r = 1;
    for (int v = 0; v < g.size(); ++v) r = std::max(r, ++count[g.pos_class[v]]);
    return g.size() == 0 ? 1 : r;
}

inline bool ImperfectGame::is_perfect_information() const {
    return imperfection_radius(*this) == 1;
}

// ---------------------------------------------------------------------------
// Validation: observability conditions 1-4 plus structural invariants.
// Violations are data, not failures.

struct Violation {
    std::string condition;  // e.g. "condition-1", "determinism"
    std::string message;
    std::vector<int> witnesses;
};

inline std::vector<Violation> validate(const ImperfectGame& g) {
    std::vector<Violation> out;
    int n = g.size();

    // determinism: |vE_a| <= 1
    for (size_t i = 1; i < g.edges.size(); ++i) {
        const auto& a = g.edges[i - 1];
        const auto& b = g.edges[i];
        if (a.src == b.src && a.action == b.action)
            out.push_back({"determinism",
                           "position " + std::to_string(a.src) + " has two edges with action " +
                               std::to_string(a.action),
                           {a.src}});
    }

    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (g.pos_class[u] != g.pos_class[v]) continue;
            if (g.owner[u] != g.owner[v])
                out.push_back({"condition-1",
                               "equivalent positions " + std::to_string(u) + " and " +
                                   std::to_string(v) + " have different owners",
                               {u, v}});
            if (g.owner[u] == 0 && g.owner[v] == 0 && g.act(u) != g.act(v))
                out.push_back({"condition-3",
                               "equivalent Player-0 positions " + std::to_string(u) + " and " +
                                   std::to_string(v) + " offer different action sets",
                               {u, v}});
            if (g.color[u] != g.color[v])
                out.push_back({"condition-4",
                               "equivalent positions " + std::to_string(u) + " and " +
                                   std::to_string(v) + " have different colors",
                               {u, v}});
        }

    // condition 2 on Player-0 positions: distinct available actions must be
    // distinguishable (Player 1's positions may offer indistinguishable
    // parallel actions; that is how knowledge sets grow).
    for (int v = 0; v < n; ++v) {
        if (g.owner[v] != 0) continue;
        auto acts = g.act(v);
        for (auto it = acts.begin(); it != acts.end(); ++it)
            for (auto jt = std::next(it); jt != acts.end(); ++jt)
                if (g.same_action_class(*it, *jt))
                    out.push_back({"condition-2",
                                   "position " + std::to_string(v) + " offers equivalent actions " +
                                       std::to_string(*it) + " and " + std::to_string(*jt),
                                   {v}});
    }

    if (n > 0) {
        int members = 0;
        for (int v = 0; v < n; ++v)
            if (g.pos_class[v] == g.pos_class[g.initial]) ++members;
        if (members != 1)
            out.push_back({"initial-class",
                           "initial class has " + std::to_string(members) + " members",
                           {g.initial}});
    }

    if (g.condition.kind == CondKind::sequence_forcing)
        for (const auto& t : g.condition.seq_set)
            if ((int)t.size() != g.condition.seq_len)
                out.push_back({"sequence-length",
                               "sequence tuple of length " + std::to_string(t.size()) +
                                   " in a length-" + std::to_string(g.condition.seq_len) +
                                   " condition",
                               {}});

    return out;
}

// ---------------------------------------------------------------------------
// iipg text format (bit-exact, LF, ASCII).

namespace detail {

inline std::vector<std::vector<std::string>> tokenize_lines(const std::string& text,
                                                            std::vector<int>& linenos) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) {
            rows.push_back(std::move(toks));
            linenos.push_back(lineno);
        }
    }
    return rows;
}

inline int parse_uint(const std::string& tok, int lineno, const char* what) {
    try {
        size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::exception();
        return (int)v;
    } catch (...) {
        throw invalid_input("line " + std::to_string(lineno) + ": bad " + what + " '" + tok + "'");
    }
}

}  // namespace detail

inline ImperfectGame parse_game(const std::string& text) {
    std::vector<int> linenos;
    auto rows = detail::tokenize_lines(text, linenos);
    if (rows.empty() || rows[0].size() != 2 || rows[0][0] != "iipg" || rows[0][1] != "1")
        throw invalid_input("line 1: expected header 'iipg 1'");

    ImperfectGame g;
    int n = -1;
    bool saw_init = false, saw_cond = false;
    std::vector<bool> declared;
    int synth_action = -1;  // synthesized ids grow downward to stay off user ids

    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        int ln = linenos[r];
        const std::string& kw = row[0];
        auto need = [&](size_t k) {
            if (row.size() < k)
                throw invalid_input("line " + std::to_string(ln) + ": too few tokens for '" + kw + "'");
        };
        if (kw == "positions") {
            need(2);
            n = detail::parse_uint(row[1], ln, "position count");
            g.owner.assign(n, 1);
            g.color.assign(n, 0);
            g.pos_class.assign(n, 0);
            declared.assign(n, false);
            for (int v = 0; v < n; ++v) g.pos_class[v] = v;  // default singleton classes
        } else if (kw == "pos") {
            need(5);
            if (n < 0) throw invalid_input("line " + std::to_string(ln) + ": pos before positions");
            int id = detail::parse_uint(row[1], ln, "position id");
            if (id >= n) throw invalid_input("line " + std::to_string(ln) + ": position id " +
                                             row[1] + " out of range");
            if (declared[id])
                throw invalid_input("line " + std::to_string(ln) + ": duplicate position id " + row[1]);
            declared[id] = true;
            int own = detail::parse_uint(row[2], ln, "owner");
            if (own > 1) throw invalid_input("line " + std::to_string(ln) + ": owner must be 0 or 1");
            g.owner[id] = own;
            g.color[id] = detail::parse_uint(row[3], ln, "color");
            g.pos_class[id] = n + detail::parse_uint(row[4], ln, "position class");
        } else if (kw == "act") {
            need(3);
            int a = detail::parse_uint(row[1], ln, "action id");
            g.act_class[a] = detail::parse_uint(row[2], ln, "action class");
        } else if (kw == "edge") {
            if (n < 0) throw invalid_input("line " + std::to_string(ln) + ": edge before positions");
            int src, act, dst;
            if (row.size() == 4) {
                src = detail::parse_uint(row[1], ln, "edge source");
                act = detail::parse_uint(row[2], ln, "action id");
                dst = detail::parse_uint(row[3], ln, "edge target");
            } else if (row.size() == 3) {
                // action omitted: synthesize a fresh singleton-class action
                src = detail::parse_uint(row[1], ln, "edge source");
                dst = detail::parse_uint(row[2], ln, "edge target");
                act = synth_action--;
            } else {
                throw invalid_input("line " + std::to_string(ln) + ": edge needs 2 or 3 arguments");
            }
            if (src >= n || dst >= n)
                throw invalid_input("line " + std::to_string(ln) + ": edge endpoint " +
                                    std::to_string(std::max(src, dst)) + " unknown");
            g.edges.push_back({src, act, dst});
        } else if (kw == "init") {
            need(2);
            g.initial = detail::parse_uint(row[1], ln, "initial id");
            if (n < 0 || g.initial >= n)
                throw invalid_input("line " + std::to_string(ln) + ": initial id out of range");
            saw_init = true;
        } else if (kw == "cond") {
            need(2);
            saw_cond = true;
            const std::string& kind = row[1];
            if (kind == "parity") {
                g.condition = WinningCondition::parity();
            } else if (kind == "reach" || kind == "safe") {
                std::vector<int> t;
                for (size_t i = 2; i < row.size(); ++i)
                    t.push_back(detail::parse_uint(row[i], ln, "target id"));
                g.condition = kind == "reach" ? WinningCondition::reach(t) : WinningCondition::safe(t);
            } else if (kind == "seq") {
                need(3);
                int k = detail::parse_uint(row[2], ln, "sequence length");
                std::vector<std::vector<int>> tuples;
                std::vector<int> cur;
                for (size_t i = 3; i < row.size(); ++i) {
                    if (row[i] == ";") {
                        if (!cur.empty()) tuples.push_back(cur);
                        cur.clear();
                    } else {
                        cur.push_back(detail::parse_uint(row[i], ln, "color"));
                    }
                }
                if (!cur.empty()) tuples.push_back(cur);
                for (const auto& t : tuples)
                    if ((int)t.size() != k)
                        throw invalid_input("line " + std::to_string(ln) +
                                            ": sequence tuple has wrong length");
                g.condition = WinningCondition::seq(k, tuples);
            } else {
                throw invalid_input("line " + std::to_string(ln) + ": unknown condition '" + kind + "'");
            }
        } else {
            throw invalid_input("line " + std::to_string(ln) + ": unknown token '" + kw + "'");
        }
    }

    if (n < 0) throw invalid_input("missing 'positions' section");
    if (!saw_init) throw invalid_input("missing 'init' line");
    if (!saw_cond) throw invalid_input("missing 'cond' line");

    g.rebuild_graph();

    // normalize class labels to dense ids in order of first occurrence
    std::map<int, int> remap;
    for (int v = 0; v < n; ++v) {
        auto [it, fresh] = remap.emplace(g.pos_class[v], (int)remap.size());
        g.pos_class[v] = it->second;
        (void)fresh;
    }

    // non-singleton initial class is rejected at parse time
    int members = 0;
    for (int v = 0; v < n; ++v)
        if (g.pos_class[v] == g.pos_class[g.initial]) ++members;
    if (members != 1)
        throw invalid_input("initial position " + std::to_string(g.initial) +
                            " lies in a non-singleton class");

    // condition targets in range
    for (int t : g.condition.target)
        if (t < 0 || t >= n) throw invalid_input("condition target " + std::to_string(t) + " unknown");

    return g;
}

inline std::string serialize_game(const ImperfectGame& g) {
    std::string out = "iipg 1\n";
    out += "positions " + std::to_string(g.size()) + "\n";
    for (int v = 0; v < g.size(); ++v)
        out += "pos " + std::to_string(v) + " " + std::to_string(g.owner[v]) + " " +
               std::to_string(g.color[v]) + " " + std::to_string(g.pos_class[v]) + "\n";

    // emit act lines only for actions in non-singleton classes
    std::map<int, std::vector<int>> by_class;
    for (auto [a, c] : g.act_class) by_class[c].push_back(a);
    std::map<int, int> cls;  // action -> class, filtered and emitted in action order
    for (auto& [c, actions] : by_class)
        if (actions.size() > 1)
            for (int a : actions) cls[a] = c;
    for (auto [a, c] : cls) out += "act " + std::to_string(a) + " " + std::to_string(c) + "\n";

    auto es = g.edges;
    std::sort(es.begin(), es.end());
    for (const auto& e : es) {
        if (e.action < 0)  // synthesized action: emit in the 2-token form
            out += "edge " + std::to_string(e.src) + " " + std::to_string(e.dst) + "\n";
        else
            out += "edge " + std::to_string(e.src) + " " + std::to_string(e.action) + " " +
                   std::to_string(e.dst) + "\n";
    }
    out += "init " + std::to_string(g.initial) + "\n";
    switch (g.condition.kind) {
        case CondKind::parity:
            out += "cond parity\n";
            break;
        case CondKind::reachability:
        case CondKind::safety: {
            out += g.condition.kind == CondKind::reachability ? "cond reach" : "cond safe";
            auto t = g.condition.target;
            std::sort(t.begin(), t.end());
            for (int v : t) out += " " + std::to_string(v);
            out += "\n";
            break;
        }
        case CondKind::sequence_forcing: {
            out += "cond seq " + std::to_string(g.condition.seq_len);
            for (const auto& tup : g.condition.seq_set) {
                out += " ;";
                for (int c : tup) out += " " + std::to_string(c);
            }
            out += "\n";
            break;
        }
    }
    return out;
}

// structural equality (same ids); used for round-trip checks
inline bool games_equal(const ImperfectGame& a, const ImperfectGame& b) {
    if (a.size() != b.size() || a.initial != b.initial) return false;
    if (a.owner != b.owner || a.color != b.color) return false;
    if (a.condition.kind != b.condition.kind) return false;
    auto ta = a.condition.target, tb = b.condition.target;
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    if (ta != tb || a.condition.seq_len != b.condition.seq_len ||
        a.condition.seq_set != b.condition.seq_set)
        return false;
    for (int u = 0; u < a.size(); ++u)
        for (int v = 0; v < a.size(); ++v)
            if ((a.pos_class[u] == a.pos_class[v]) != (b.pos_class[u] == b.pos_class[v]))
                return false;
    auto ea = a.edges, eb = b.edges;
    if (ea.size() != eb.size()) return false;
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    for (size_t i = 0; i < ea.size(); ++i) {
        if (ea[i].src != eb[i].src || ea[i].dst != eb[i].dst) return false;
        // action ids may differ (synthesis); class partition must agree
        for (size_t j = 0; j < ea.size(); ++j)
            if (a.same_action_class(ea[i].action, ea[j].action) !=
                b.same_action_class(eb[i].action, eb[j].action))
                return false;
    }
    return true;
}

}  // namespace iipg
