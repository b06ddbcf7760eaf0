#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "iipg/game.hpp"
#include "iipg/parity.hpp"

namespace iipg {

// Knowledge-set game produced by the powerset construction. `game` is a
// perfect-information game (all classes singleton, every edge its own
// action); `members` maps each knowledge position back to the source
// positions it may stand for, and `source_action` records the source action
// class (by least representative) behind each edge of `game`.
struct PowersetGame {
    ImperfectGame game;
    std::vector<std::vector<int>> members;
    std::vector<int> source_action;  // aligned with game.edges

    int position_of(const std::vector<int>& member_set) const {
        for (size_t i = 0; i < members.size(); ++i)
            if (members[i] == member_set) return (int)i;
        return -1;
    }
};

// Post_B(S): all b-successors of members of S, for b in the class of `action`.
inline Bitset post(const ImperfectGame& g, const Bitset& S, int action) {
    g.graph.check_set(S);
    Bitset out(g.size());
    int cls = g.action_class_of(action);
    for (const auto& e : g.edges)
        if (S.test(e.src) && g.action_class_of(e.action) == cls) out.set(e.dst);
    return out;
}

namespace detail {

// least action id per action class, over actions that actually occur
inline std::map<int, int> class_representatives(const ImperfectGame& g) {
    std::map<int, int> rep;  // class -> least action
    for (const auto& e : g.edges) {
        int c = g.action_class_of(e.action);
        auto it = rep.find(c);
        if (it == rep.end() || e.action < it->second) rep[c] = e.action;
    }
    return rep;
}

}  // namespace detail

// Reif's construction, restricted to the part reachable from {v0}. Sequence
// forcing and safety sources are reduced first, so the result is always a
// parity or reachability game. Knowledge sets are canonical sorted member
// lists; ids are assigned in BFS order from {v0}.
inline PowersetGame powerset_construct(const ImperfectGame& input) {
    const ImperfectGame* src = &input;
    ImperfectGame reduced;
    if (input.condition.kind == CondKind::sequence_forcing) {
        reduced = reduce_sequence_forcing(input);
        src = &reduced;
    } else if (input.condition.kind == CondKind::safety) {
        reduced = reduce_safety(input);
        src = &reduced;
    }
    const ImperfectGame& g = *src;
    const int n = g.size();

    {
        int members_of_initial = 0;
        for (int v = 0; v < n; ++v)
            if (g.pos_class[v] == g.pos_class[g.initial]) ++members_of_initial;
        if (members_of_initial != 1)
            throw invalid_input("powerset: initial class must be a singleton");
    }

    // per-class member lists and per-source-position action classes
    auto reps = detail::class_representatives(g);
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> member_lists;
    auto intern = [&](const std::vector<int>& ms) {
        auto it = ids.find(ms);
        if (it != ids.end()) return it->second;
        int id = (int)member_lists.size();
        ids.emplace(ms, id);
        member_lists.push_back(ms);
        // owner/color uniformity over members (conditions 1 and 4)
        for (size_t j = 1; j < ms.size(); ++j)
            if (g.owner[ms[j]] != g.owner[ms[0]] || g.color[ms[j]] != g.color[ms[0]])
                throw invalid_input("powerset: knowledge set mixes owners or colors (invalid game)");
        return id;
    };
    intern({g.initial});

    struct RawEdge {
        int src, rep, dst;
        bool operator<(const RawEdge& o) const {
            return std::tie(src, rep, dst) < std::tie(o.src, o.rep, o.dst);
        }
    };
    std::vector<RawEdge> raw;

    for (int cur = 0; cur < (int)member_lists.size(); ++cur) {
        std::vector<int> ms = member_lists[cur];  // copy: list grows below
        Bitset S(n);
        for (int v : ms) S.set(v);
        for (auto [cls, rep] : reps) {
            Bitset p = post(g, S, rep);
            if (p.none()) continue;
            // split by position class, targets ordered by least member
            std::map<int, std::vector<int>> split;
            p.for_each([&](int v) { split[g.pos_class[v]].push_back(v); });
            std::map<int, std::vector<int>> ordered;
            for (auto& [c, vs] : split) ordered[vs.front()] = vs;
            for (auto& [least, vs] : ordered) {
                (void)least;
                raw.push_back({cur, rep, intern(vs)});
            }
        }
    }

    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end(),
                          [](const RawEdge& a, const RawEdge& b) {
                              return a.src == b.src && a.rep == b.rep && a.dst == b.dst;
                          }),
              raw.end());

    PowersetGame out;
    int m = (int)member_lists.size();
    out.members = std::move(member_lists);
    out.game.owner.resize(m);
    out.game.color.resize(m);
    out.game.pos_class.resize(m);
    for (int i = 0; i < m; ++i) {
        out.game.owner[i] = g.owner[out.members[i][0]];
        out.game.color[i] = g.color[out.members[i][0]];
        out.game.pos_class[i] = i;  // perfect information
    }
    out.game.initial = 0;
    out.game.edges.reserve(raw.size());
    out.source_action.reserve(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        out.game.edges.push_back({raw[i].src, (int)i, raw[i].dst});
        out.source_action.push_back(raw[i].rep);
    }
    out.game.rebuild_graph();

    if (g.condition.kind == CondKind::parity) {
        out.game.condition = WinningCondition::parity();
    } else {
        // reachability: Player 0 surely wins only where all possibilities won
        Bitset target(n);
        for (int t : g.condition.target) target.set(t);
        std::vector<int> lifted;
        for (int i = 0; i < m; ++i) {
            bool all = true;
            for (int v : out.members[i])
                if (!target.test(v)) all = false;
            if (all) lifted.push_back(i);
        }
        out.game.condition = WinningCondition::reach(lifted);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lemma-1 history lifting: every history of the powerset game, together with
// a chosen final member, lifts to a classwise-matching history of the source.

struct LiftedHistory {
    std::vector<int> positions;  // u_0 ... u_n in the source game
    std::vector<int> actions;    // a'_1 ... a'_n, actions[i] taken at positions[i]
};

inline LiftedHistory lift_history(const ImperfectGame& src, const PowersetGame& pg,
                                  const std::vector<int>& path, int target) {
    if (path.empty()) throw invalid_input("lift_history: empty history");
    const int steps = (int)path.size() - 1;
    // class rep per step: least-action edge between consecutive positions
    std::vector<int> step_rep(steps, -1);
    for (int i = 0; i < steps; ++i) {
        for (size_t e = 0; e < pg.game.edges.size(); ++e) {
            const auto& edge = pg.game.edges[e];
            if (edge.src == path[i] && edge.dst == path[i + 1]) {
                step_rep[i] = pg.source_action[e];
                break;  // edges sorted: first hit has least action id
            }
        }
        if (step_rep[i] < 0)
            throw invalid_input("lift_history: history is not a path in the powerset game");
    }

    LiftedHistory out;
    out.positions.assign(steps + 1, -1);
    out.actions.assign(steps, -1);
    {
        const auto& last = pg.members[path[steps]];
        if (std::find(last.begin(), last.end(), target) == last.end())
            throw invalid_input("lift_history: target is not a member of the final position");
    }
    out.positions[steps] = target;
    for (int i = steps - 1; i >= 0; --i) {
        int found_u = -1, found_a = -1;
        int want_cls = src.action_class_of(step_rep[i]);
        for (const auto& e : src.edges) {  // canonical order: least (src, action)
            if (e.dst != out.positions[i + 1]) continue;
            if (src.action_class_of(e.action) != want_cls) continue;
            const auto& ms = pg.members[path[i]];
            if (std::find(ms.begin(), ms.end(), e.src) == ms.end()) continue;
            if (found_u < 0 || e.src < found_u || (e.src == found_u && e.action < found_a)) {
                found_u = e.src;
                found_a = e.action;
            }
        }
        if (found_u < 0)
            throw internal_error("lift_history: no source edge behind a powerset edge");
        out.positions[i] = found_u;
        out.actions[i] = found_a;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Solve view: the knowledge game with the split among observation outcomes
// resolved adversarially. A Player-0 knowledge set picks an action class; if
// the class splits into several observable targets, an intermediate Player-1
// choice node (colored like its predecessor) picks among them.

struct PowersetArena {
    ParityArena arena;
    Bitset target;  // reachability targets over arena positions
    CondKind kind = CondKind::parity;
    int base_count = 0;  // arena positions [0, base_count) are knowledge sets
};

inline PowersetArena solve_arena(const PowersetGame& pg) {
    const int m = (int)pg.members.size();
    struct Group {
        int src;
        int rep;
        std::vector<int> targets;
    };
    std::vector<Group> splits;
    std::vector<std::vector<std::pair<int, int>>> direct(m);  // src -> (dst or split id)

    std::map<std::pair<int, int>, std::vector<int>> by_class;
    for (size_t e = 0; e < pg.game.edges.size(); ++e)
        by_class[{pg.game.edges[e].src, pg.source_action[e]}].push_back(pg.game.edges[e].dst);

    int extra = 0;
    for (auto& [key, targets] : by_class) {
        auto [s, rep] = key;
        if (pg.game.owner[s] == 0 && targets.size() > 1) {
            splits.push_back({s, rep, targets});
            direct[s].push_back({m + extra, 1});
            ++extra;
        } else {
            for (int t : targets) direct[s].push_back({t, 0});
        }
    }

    PowersetArena out;
    out.kind = pg.game.condition.kind;
    out.base_count = m;
    out.arena = ParityArena::make(m + extra);
    for (int i = 0; i < m; ++i) {
        out.arena.owner[i] = pg.game.owner[i];
        out.arena.color[i] = pg.game.color[i];
    }
    for (size_t s = 0; s < splits.size(); ++s) {
        out.arena.owner[m + s] = 1;
        out.arena.color[m + s] = pg.game.color[splits[s].src];
        for (int t : splits[s].targets) out.arena.add_edge(m + (int)s, t);
    }
    for (int v = 0; v < m; ++v)
        for (auto [t, is_split] : direct[v]) {
            (void)is_split;
            out.arena.add_edge(v, t);
        }
    out.arena.finalize();
    out.target = Bitset(m + extra);
    if (out.kind == CondKind::reachability)
        for (int t : pg.game.condition.target) out.target.set(t);
    return out;
}

// Winner at {v0} of the source game, via the powerset.
inline int solve_via_powerset(const ImperfectGame& g) {
    PowersetGame pg = powerset_construct(g);
    PowersetArena pa = solve_arena(pg);
    if (pa.kind == CondKind::reachability)
        return solve_reachability(pa.arena, pa.target).win0.test(0) ? 0 : 1;
    return solve_parity(pa.arena).win0.test(0) ? 0 : 1;
}

// The solve view as a standalone game (what the powerset subcommand emits):
// knowledge positions first, then the Player-1 choice positions resolving
// observation splits. Solving this game directly equals solving the source.
struct DeterminizedPowerset {
    ImperfectGame game;
    int base_count = 0;
};

inline DeterminizedPowerset determinize(const PowersetGame& pg) {
    PowersetArena pa = solve_arena(pg);
    DeterminizedPowerset out;
    out.base_count = pa.base_count;
    ImperfectGame& g = out.game;
    int n = pa.arena.n;
    g.owner = pa.arena.owner;
    g.color = pa.arena.color;
    g.pos_class.resize(n);
    for (int v = 0; v < n; ++v) g.pos_class[v] = v;
    g.initial = 0;
    int action = 0;
    for (int v = 0; v < n; ++v)
        for (int w : pa.arena.succ[v]) g.edges.push_back({v, action++, w});
    g.rebuild_graph();
    if (pa.kind == CondKind::reachability)
        g.condition = WinningCondition::reach(pa.target.to_vector());
    else
        g.condition = WinningCondition::parity();
    return out;
}

}  // namespace iipg
