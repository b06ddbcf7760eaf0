#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "iipg/digraph.hpp"

namespace iipg {

enum class Measure { dw, nmdw, dpw, tw, ent, dwr, dw_restricted };

inline const char* measure_name(Measure m) {
    switch (m) {
        case Measure::dw: return "dw";
        case Measure::nmdw: return "nmdw";
        case Measure::dpw: return "dpw";
        case Measure::tw: return "tw";
        case Measure::ent: return "ent";
        case Measure::dwr: return "dwr";
        case Measure::dw_restricted: return "dw-restricted";
    }
    return "?";
}

struct StateKey {
    Bitset a, b;
    bool operator==(const StateKey& o) const { return a == o.a && b == o.b; }
};
struct StateKeyHash {
    size_t operator()(const StateKey& k) const { return hash_combine(k.a.hash(), k.b.hash()); }
};

// Positional cop strategy: announced placement per cop-turn configuration.
// Internally keyed on a quotient of (U, R); resolve via announce().
struct CopStrategy {
    Measure kind = Measure::dw;
    int k = 0;
    int robbers = 1;
    bool monotone = false;
    enum class KeyKind { front_territory, cops_territory };
    KeyKind key_kind = KeyKind::front_territory;
    std::unordered_map<StateKey, Bitset, StateKeyHash> moves;
    std::vector<std::string> witness_play;  // one capture play against a greedy robber

    std::optional<Bitset> announce(const DirectedGraph& g, const Bitset& cops,
                                   const Bitset& robber_set) const {
        Bitset territory = reach(g, robber_set, cops);
        StateKey key;
        if (key_kind == KeyKind::front_territory) {
            key = {cops & g.post(territory), territory};
        } else {
            key = {cops, territory};
        }
        auto it = moves.find(key);
        if (it == moves.end()) return std::nullopt;
        return it->second;
    }

    std::function<std::optional<Bitset>(const Bitset&, const Bitset&)> as_function(
        const DirectedGraph& g) const {
        return [this, &g](const Bitset& cops, const Bitset& robber_set) {
            return announce(g, cops, robber_set);
        };
    }
};

struct WidthReport {
    Measure measure = Measure::dw;
    int cops = 0;            // minimal winning cop count
    int value = 0;           // reported value: cops, or cops-1 for tw/dpw
    CopStrategy witness;     // winning strategy at `cops` (where extracted)
    std::vector<Bitset> play;  // dpw: the clearing placement sequence
};

namespace detail {

// all subsets of `items` of size 1..maxsz, as bitsets over nbits
inline void combinations(const std::vector<int>& items, int maxsz, int nbits,
                         std::vector<Bitset>& out) {
    int n = (int)items.size();
    maxsz = std::min(maxsz, n);
    std::vector<int> idx;
    std::function<void(int)> rec = [&](int start) {
        if (!idx.empty()) {
            Bitset b(nbits);
            for (int i : idx) b.set(items[i]);
            out.push_back(std::move(b));
        }
        if ((int)idx.size() == maxsz) return;
        for (int i = start; i < n; ++i) {
            idx.push_back(i);
            rec(i + 1);
            idx.pop_back();
        }
    };
    rec(0);
}

// all cop sets of size <= k (including the empty set)
inline std::vector<Bitset> all_copsets(int n, int k) {
    std::vector<int> verts(n);
    for (int i = 0; i < n; ++i) verts[i] = i;
    std::vector<Bitset> out;
    out.push_back(Bitset(n));
    combinations(verts, k, n, out);
    return out;
}

// unions of up to `r` of the given reach masks, deduplicated
inline std::vector<Bitset> bounded_unions(const std::vector<Bitset>& masks, int r, int nbits) {
    std::vector<Bitset> distinct;
    for (const auto& m : masks) {
        bool seen = false;
        for (const auto& d : distinct)
            if (d == m) {
                seen = true;
                break;
            }
        if (!seen) distinct.push_back(m);
    }
    std::vector<Bitset> out;
    std::unordered_set<Bitset, BitsetHash> dedup;
    int n = (int)distinct.size();
    std::vector<int> idx;
    std::function<void(int)> rec = [&](int start) {
        if (!idx.empty()) {
            Bitset u(nbits);
            for (int i : idx) u |= distinct[i];
            if (dedup.insert(u).second) out.push_back(u);
        }
        if ((int)idx.size() == std::min(r, n)) return;
        for (int i = start; i < n; ++i) {
            idx.push_back(i);
            rec(i + 1);
            idx.pop_back();
        }
    };
    rec(0);
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Monotone cops-and-robbers solver (visible robbers, robber-monotone plays).
//
// States are (front, territory) pairs: the territory T = Reach_{G-U}(R) and
// the front B = U & N+(T). In a monotone play no cop on the front may ever be
// lifted, cops behind the front are irrelevant and removable, and announced
// placements may be restricted to sets that cover at least one territory
// vertex. Every such move strictly shrinks the territory, so the state space
// is a DAG and one memoized top-down pass solves the game exactly. The
// enumerative solver below serves as the independent cross-check.
class MonotoneCopSolver {
public:
    MonotoneCopSolver(const DirectedGraph& g, int k, int robbers)
        : g_(g), k_(k), robbers_(robbers) {
        if (k < 0) throw invalid_input("cop count must be non-negative");
        if (robbers < 1) throw invalid_input("robber count must be positive");
    }

    bool cops_win_from_start() {
        bool all = true;
        for (const auto& t0 : initial_territories())
            if (!win(Bitset(g_.size()), t0)) all = false;
        return all;
    }

    std::vector<Bitset> escaping_initials() {
        std::vector<Bitset> out;
        for (const auto& t0 : initial_territories())
            if (!win(Bitset(g_.size()), t0)) out.push_back(t0);
        return out;
    }

    CopStrategy extract_strategy() const {
        CopStrategy s;
        s.kind = robbers_ == 1 ? Measure::dw : Measure::dwr;
        s.k = k_;
        s.robbers = robbers_;
        s.monotone = true;
        s.key_kind = CopStrategy::KeyKind::front_territory;
        for (const auto& [key, e] : memo_)
            if (e.win) s.moves.emplace(key, e.ann);
        return s;
    }

private:
    struct Entry {
        bool win;
        Bitset ann;
    };

    std::vector<Bitset> initial_territories() {
        std::vector<Bitset> reaches;
        Bitset nothing(g_.size());
        for (int v = 0; v < g_.size(); ++v) reaches.push_back(reach(g_, v, nothing));
        auto t0s = detail::bounded_unions(reaches, robbers_, g_.size());
        // larger territories first: refutations tend to come from them
        std::sort(t0s.begin(), t0s.end(),
                  [](const Bitset& a, const Bitset& b) { return a.count() > b.count(); });
        return t0s;
    }

    bool win(const Bitset& front, const Bitset& territory) {
        StateKey key{front, territory};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second.win;

        int budget = k_ - front.count();
        bool won = false;
        Bitset winning_ann(g_.size());
        if (budget > 0) {
            auto tverts = territory.to_vector();
            std::vector<Bitset> placements;
            detail::combinations(tverts, budget, g_.size(), placements);
            Bitset outside = g_.full_set() - territory;

            for (const auto& a : placements) {
                Bitset uprime = front | a;
                Bitset remain = territory - a;
                if (remain.none()) {  // all robbers covered
                    won = true;
                    winning_ann = uprime;
                    break;
                }
                // robber replies: new territories inside the old one
                std::vector<Bitset> reaches;
                Bitset blocked = outside | a;
                remain.for_each([&](int v) { reaches.push_back(reach(g_, v, blocked)); });
                auto targets = robbers_ == 1 ? std::move(reaches)
                                             : detail::bounded_unions(reaches, robbers_, g_.size());
                std::sort(targets.begin(), targets.end(), [](const Bitset& x, const Bitset& y) {
                    return x.count() > y.count();
                });
                targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
                bool all = true;
                for (const auto& t : targets) {
                    if (!win(uprime & g_.post(t), t)) {
                        all = false;
                        break;
                    }
                }
                if (all) {
                    won = true;
                    winning_ann = uprime;
                    break;
                }
            }
        }
        memo_.emplace(key, Entry{won, winning_ann});
        return won;
    }

    const DirectedGraph& g_;
    int k_;
    int robbers_;
    std::unordered_map<StateKey, Entry, StateKeyHash> memo_;
};

// ---------------------------------------------------------------------------
// Enumerative reachability-game solver over explicit configuration spaces.
// OR nodes are cop-turn configurations, AND nodes are (configuration,
// announcement) pairs; the cop player wins exactly the backward attractor of
// the capture configurations. Rules types plug in the concrete game.

template <class Rules>
struct CopGameResult {
    std::vector<typename Rules::State> states;
    std::vector<char> copwin;
    std::vector<Bitset> win_ann;  // winning announcement per cop-winning state
    std::vector<int> initial_ids;
    bool cops_win = false;  // from the dummy first position
};

template <class Rules>
CopGameResult<Rules> solve_cop_game(Rules& rules) {
    using State = typename Rules::State;
    CopGameResult<Rules> res;
    std::unordered_map<State, int, typename Rules::Hash> ids;

    auto intern = [&](const State& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = (int)res.states.size();
        ids.emplace(s, id);
        res.states.push_back(s);
        return id;
    };

    for (const auto& s : rules.initial_states()) res.initial_ids.push_back(intern(s));
    for (const auto& s : rules.extra_roots()) intern(s);

    struct AndNode {
        int parent;
        int ann_index;
        int pending;
    };
    std::vector<AndNode> ands;
    std::vector<std::vector<int>> and_of_or;   // OR -> its AND nodes
    std::vector<std::vector<int>> preds;       // OR -> AND nodes having it as reply
    std::vector<std::vector<Bitset>> anns_of;  // OR -> announcement list
    std::vector<int> ready;                    // AND nodes with pending == 0

    for (size_t cur = 0; cur < res.states.size(); ++cur) {
        and_of_or.emplace_back();
        anns_of.push_back(rules.announcements(res.states[cur]));
        std::vector<State> reply_states;
        for (size_t ai = 0; ai < anns_of[cur].size(); ++ai) {
            reply_states.clear();
            if (!rules.replies(res.states[cur], anns_of[cur][ai], reply_states)) continue;
            int aid = (int)ands.size();
            ands.push_back({(int)cur, (int)ai, (int)reply_states.size()});
            and_of_or[cur].push_back(aid);
            if (reply_states.empty()) {
                ready.push_back(aid);
            } else {
                for (const auto& rs : reply_states) {
                    int rid = intern(rs);
                    if ((size_t)rid >= preds.size()) preds.resize(rid + 1);
                    preds[rid].push_back(aid);
                }
            }
        }
    }
    preds.resize(res.states.size());

    res.copwin.assign(res.states.size(), 0);
    res.win_ann.assign(res.states.size(), Bitset());
    std::vector<char> and_won(ands.size(), 0);
    while (!ready.empty()) {
        int aid = ready.back();
        ready.pop_back();
        if (and_won[aid]) continue;
        and_won[aid] = 1;
        int orid = ands[aid].parent;
        if (res.copwin[orid]) continue;
        res.copwin[orid] = 1;
        res.win_ann[orid] = anns_of[orid][ands[aid].ann_index];
        for (int pa : preds[orid])
            if (!and_won[pa] && --ands[pa].pending == 0) ready.push_back(pa);
    }

    res.cops_win = true;
    for (int id : res.initial_ids)
        if (!res.copwin[id]) res.cops_win = false;
    return res;
}

// Literal cops-and-robbers game over explicitly enumerated size-<=k cop
// sets, with r visible robbers. States quotient robber placements by their
// cop-free reach set. Covers the non-monotone game (nmdw for r=1) and, with
// `monotone`, the literal monotone game that cross-checks MonotoneCopSolver.
struct CopsAndRobbersRules {
    using State = StateKey;  // (cops, territory)
    using Hash = StateKeyHash;

    const DirectedGraph& g;
    int k;
    int robbers;
    bool monotone;
    bool restricted;
    bool seed_all_pairs = false;  // explore every (cops, territory) pair
    std::vector<Bitset> copsets;

    CopsAndRobbersRules(const DirectedGraph& gr, int cops, int robber_count, bool monotone_game,
                        bool restrict_placements = false)
        : g(gr),
          k(cops),
          robbers(robber_count),
          monotone(monotone_game),
          restricted(restrict_placements),
          copsets(detail::all_copsets(gr.size(), cops)) {}

    std::vector<State> initial_states() const {
        std::vector<State> out;
        std::vector<Bitset> reaches;
        Bitset nothing(g.size());
        for (int v = 0; v < g.size(); ++v) reaches.push_back(reach(g, v, nothing));
        for (const auto& t : detail::bounded_unions(reaches, robbers, g.size()))
            out.push_back({Bitset(g.size()), t});
        return out;
    }

    std::vector<State> extra_roots() const {
        std::vector<State> out;
        if (!seed_all_pairs) return out;
        for (const auto& u : copsets) {
            std::unordered_set<Bitset, BitsetHash> seen;
            for (int v = 0; v < g.size(); ++v) {
                if (u.test(v)) continue;
                Bitset t = reach(g, v, u);
                if (seen.insert(t).second) out.push_back({u, t});
            }
        }
        return out;
    }

    std::vector<Bitset> announcements(const State& s) const {
        if (!restricted) return copsets;
        std::vector<Bitset> out;
        for (const auto& u : copsets)
            if ((u - s.a).subset_of(s.b)) out.push_back(u);
        return out;
    }

    bool replies(const State& s, const Bitset& uprime, std::vector<State>& out) const {
        Bitset rstar = reach(g, s.b, s.a & uprime);
        if (monotone && (s.a - uprime).intersects(rstar)) return false;  // non-monotone move
        Bitset open = rstar - uprime;
        std::vector<Bitset> reaches;
        open.for_each([&](int v) { reaches.push_back(reach(g, v, uprime)); });
        for (const auto& t : detail::bounded_unions(reaches, robbers, g.size()))
            out.push_back({uprime, t});
        return true;
    }
};

// Entanglement game: the cops may only ever step onto the robber's current
// vertex; the robber must move along an edge every round.
struct EntRules {
    struct State {
        Bitset cops;
        int robber;
        bool operator==(const State& o) const { return robber == o.robber && cops == o.cops; }
    };
    struct Hash {
        size_t operator()(const State& s) const {
            return hash_combine(s.cops.hash(), std::hash<int>()(s.robber));
        }
    };

    const DirectedGraph& g;
    int k;

    EntRules(const DirectedGraph& gr, int cops) : g(gr), k(cops) {}

    std::vector<State> initial_states() const {
        std::vector<State> out;
        for (int v = 0; v < g.size(); ++v) out.push_back({Bitset(g.size()), v});
        return out;
    }

    std::vector<State> extra_roots() const { return {}; }

    std::vector<Bitset> announcements(const State& s) const {
        std::vector<Bitset> out;
        out.push_back(s.cops);  // do nothing
        if (s.cops.count() < k) {
            Bitset u = s.cops;
            u.set(s.robber);
            out.push_back(u);  // a fresh cop lands on the robber
        }
        s.cops.for_each([&](int v) {  // move the cop from v onto the robber
            Bitset u = s.cops;
            u.reset(v);
            u.set(s.robber);
            out.push_back(u);
        });
        return out;
    }

    bool replies(const State& s, const Bitset& uprime, std::vector<State>& out) const {
        g.out(s.robber).for_each([&](int v) {
            if (!uprime.test(v)) out.push_back({uprime, v});
        });
        return true;
    }
};

// ---------------------------------------------------------------------------
// Directed path-width: the one-player contamination game against an
// invisible robber. State = (current placement, contaminated set).

struct DpwOutcome {
    bool cleared = false;
    std::vector<Bitset> play;  // placements including the initial empty set
};

inline DpwOutcome dpw_clears(const DirectedGraph& g, int cops, bool monotone) {
    auto copsets = detail::all_copsets(g.size(), cops);
    struct Node {
        StateKey key;
        int parent;
        int ann;
    };
    std::vector<Node> nodes;
    std::unordered_set<StateKey, StateKeyHash> seen;
    StateKey start{Bitset(g.size()), g.full_set()};
    nodes.push_back({start, -1, -1});
    seen.insert(start);

    for (size_t cur = 0; cur < nodes.size(); ++cur) {
        StateKey state = nodes[cur].key;  // copy: nodes reallocates
        for (size_t ai = 0; ai < copsets.size(); ++ai) {
            const Bitset& unext = copsets[ai];
            Bitset rnext = reach(g, state.b, state.a & unext) - unext;
            if (monotone && !rnext.subset_of(state.b)) continue;
            StateKey nk{unext, rnext};
            if (!seen.insert(nk).second) continue;
            nodes.push_back({nk, (int)cur, (int)ai});
            if (rnext.none()) {
                DpwOutcome out;
                out.cleared = true;
                std::vector<Bitset> rev;
                for (int i = (int)nodes.size() - 1; i >= 0; i = nodes[i].parent)
                    rev.push_back(nodes[i].key.a);
                out.play.assign(rev.rbegin(), rev.rend());
                return out;
            }
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Full game solve for one cop budget.

struct GameOutcome {
    bool cop_win = false;
    CopStrategy strategy;
    std::vector<Bitset> escaping_initials;
};

inline GameOutcome solve_dag_width_game(const DirectedGraph& g, int k, bool monotone,
                                        bool restricted = false) {
    if (k < 0) throw invalid_input("cop count must be non-negative");
    GameOutcome out;
    if (monotone && !restricted) {
        MonotoneCopSolver solver(g, k, 1);
        out.cop_win = solver.cops_win_from_start();
        if (out.cop_win)
            out.strategy = solver.extract_strategy();
        else
            out.escaping_initials = solver.escaping_initials();
        return out;
    }
    CopsAndRobbersRules rules(g, k, 1, monotone, restricted);
    rules.seed_all_pairs = !monotone;  // total strategies for the lift and Next
    auto res = solve_cop_game(rules);
    out.cop_win = res.cops_win;
    out.strategy.kind = monotone ? Measure::dw_restricted : Measure::nmdw;
    out.strategy.k = k;
    out.strategy.monotone = monotone;
    out.strategy.key_kind = CopStrategy::KeyKind::cops_territory;
    for (size_t i = 0; i < res.states.size(); ++i)
        if (res.copwin[i]) out.strategy.moves.emplace(res.states[i], res.win_ann[i]);
    for (int id : res.initial_ids)
        if (!res.copwin[id]) out.escaping_initials.push_back(res.states[id].b);
    return out;
}

// ---------------------------------------------------------------------------
// Width measures: ascending search for the least winning cop count.

inline WidthReport dag_width(const DirectedGraph& g, bool monotone = true) {
    WidthReport rep;
    rep.measure = monotone ? Measure::dw : Measure::nmdw;
    for (int k = 0; k <= g.size() + 1; ++k) {
        auto out = solve_dag_width_game(g, k, monotone);
        if (out.cop_win) {
            rep.cops = rep.value = k;
            rep.witness = std::move(out.strategy);
            return rep;
        }
    }
    throw internal_error("dag_width: no winning cop count found");
}

inline WidthReport multi_robber_width(const DirectedGraph& g, int robbers, bool monotone = true) {
    if (robbers < 1) throw invalid_input("robber count must be positive");
    WidthReport rep;
    rep.measure = Measure::dwr;
    for (int k = 0; k <= g.size() + 1; ++k) {
        if (monotone) {
            MonotoneCopSolver solver(g, k, robbers);
            if (solver.cops_win_from_start()) {
                rep.cops = rep.value = k;
                rep.witness = solver.extract_strategy();
                return rep;
            }
        } else {
            CopsAndRobbersRules rules(g, k, robbers, false);
            auto res = solve_cop_game(rules);
            if (res.cops_win) {
                rep.cops = rep.value = k;
                return rep;
            }
        }
    }
    throw internal_error("multi_robber_width: no winning cop count found");
}

inline WidthReport tree_width(const DirectedGraph& g) {
    WidthReport rep = dag_width(symmetric_closure(g), true);
    rep.measure = Measure::tw;
    rep.value = rep.cops - 1;
    return rep;
}

inline WidthReport entanglement(const DirectedGraph& g) {
    WidthReport rep;
    rep.measure = Measure::ent;
    for (int k = 0; k <= g.size(); ++k) {
        EntRules rules(g, k);
        auto res = solve_cop_game(rules);
        if (res.cops_win) {
            rep.cops = rep.value = k;
            return rep;
        }
    }
    throw internal_error("entanglement: no winning cop count found");
}

inline WidthReport directed_path_width(const DirectedGraph& g, bool monotone = true) {
    WidthReport rep;
    rep.measure = Measure::dpw;
    for (int c = 0; c <= g.size(); ++c) {
        auto out = dpw_clears(g, c, monotone);
        if (out.cleared) {
            rep.cops = c;
            rep.value = c - 1;
            rep.play = std::move(out.play);
            return rep;
        }
    }
    throw internal_error("directed_path_width: graph not cleared with n cops");
}

inline WidthReport restricted_dag_width(const DirectedGraph& g) {
    WidthReport rep;
    rep.measure = Measure::dw_restricted;
    for (int k = 0; k <= g.size() + 1; ++k) {
        auto out = solve_dag_width_game(g, k, true, true);
        if (out.cop_win) {
            rep.cops = rep.value = k;
            rep.witness = std::move(out.strategy);
            return rep;
        }
    }
    throw internal_error("restricted_dag_width: no winning cop count found");
}

// ---------------------------------------------------------------------------
// Strategy replay against an exhaustive robber adversary. Verifies capture,
// the cop budget, and (optionally) monotonicity straight from the game
// definition, independent of any solver internals.

struct ReplayReport {
    bool captured = true;
    bool monotone = true;
    bool active = true;  // every move placed a new, robber-reachable cop
    int max_cops = 0;
    int max_depth = 0;
    std::string failure;  // empty when captured

    bool ok(bool require_monotone) const { return captured && (!require_monotone || monotone); }
};

using StrategyFn = std::function<std::optional<Bitset>(const Bitset&, const Bitset&)>;

inline ReplayReport replay_cop_strategy(const DirectedGraph& g, const StrategyFn& f, int robbers,
                                        bool require_monotone) {
    ReplayReport rep;
    enum { kOpen = 0, kOnStack = 1, kDone = 2 };
    std::unordered_map<StateKey, char, StateKeyHash> mark;

    std::function<bool(const Bitset&, const Bitset&, int)> visit = [&](const Bitset& cops,
                                                                       const Bitset& rset,
                                                                       int depth) -> bool {
        rep.max_depth = std::max(rep.max_depth, depth);
        StateKey key{cops, rset};
        auto [it, fresh] = mark.emplace(key, kOnStack);
        if (!fresh) {
            if (it->second == kDone) return true;
            rep.captured = false;
            rep.failure = "position repeats: cops=" + cops.str() + " robbers=" + rset.str();
            return false;
        }
        auto ann = f(cops, rset);
        if (!ann) {
            rep.captured = false;
            rep.failure = "strategy undefined at cops=" + cops.str() + " robbers=" + rset.str();
            it->second = kDone;
            return false;
        }
        rep.max_cops = std::max(rep.max_cops, ann->count());
        Bitset newcops = *ann - cops;
        if (newcops.none() || !newcops.subset_of(reach(g, rset, cops))) rep.active = false;
        Bitset rstar = reach(g, rset, cops & *ann);
        if ((cops - *ann).intersects(rstar)) {
            rep.monotone = false;
            if (require_monotone) {
                rep.captured = false;
                rep.failure = "non-monotone move at cops=" + cops.str() + " robbers=" + rset.str();
                mark[key] = kDone;
                return false;
            }
        }
        Bitset open = rstar - *ann;
        bool ok = true;
        if (open.any()) {
            std::vector<Bitset> singles;
            open.for_each([&](int v) {
                Bitset b(g.size());
                b.set(v);
                singles.push_back(b);
            });
            auto targets =
                robbers == 1 ? std::move(singles) : detail::bounded_unions(singles, robbers, g.size());
            for (const auto& t : targets)
                if (!visit(*ann, t, depth + 1)) {
                    ok = false;
                    break;
                }
        }
        mark[key] = kDone;
        return ok;
    };

    Bitset nothing(g.size());
    std::vector<Bitset> singles;
    for (int v = 0; v < g.size(); ++v) {
        Bitset b(g.size());
        b.set(v);
        singles.push_back(b);
    }
    auto starts = robbers == 1 ? singles : detail::bounded_unions(singles, robbers, g.size());
    for (const auto& r0 : starts)
        if (!visit(nothing, r0, 1)) break;
    return rep;
}

}  // namespace iipg
