#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "iipg/powerset.hpp"
#include "iipg/search.hpp"

namespace iipg {

// front_G(v, A): the inclusion-minimal B <= A with Reach_{G-A}(v) =
// Reach_{G-B}(v); concretely the members of A reachable from v via paths
// whose interior avoids A.
inline Bitset front(const DirectedGraph& g, int v, const Bitset& A) {
    g.check_vertex(v);
    g.check_set(A);
    if (A.test(v)) throw invalid_input("front: vertex lies inside the blocking set");
    Bitset interior = reach(g, v, A);
    return g.post(interior) & A;
}

// ---------------------------------------------------------------------------
// Active normalization: skip cop moves that only shuffle cops behind the
// front. The result places at least one new, robber-reachable cop per move.

inline CopStrategy normalize_active(const DirectedGraph& g, const CopStrategy& f) {
    auto fn = f.as_function(g);
    ReplayReport pre = replay_cop_strategy(g, fn, 1, true);
    if (!pre.ok(true))
        throw invalid_input("normalize_active: input strategy is not a monotone winning strategy (" +
                            pre.failure + ")");

    // fast-forward f against a stationary robber until the front moves or
    // the robber is about to be covered
    auto skip_forward = [&](const Bitset& fcops, int v) -> Bitset {
        Bitset single(g.size());
        single.set(v);
        Bitset prev_front = front(g, v, fcops);
        Bitset cur = fcops;
        size_t fuel = f.moves.size() + 2;
        while (fuel-- > 0) {
            auto nxt = fn(cur, single);
            if (!nxt) throw invalid_input("normalize_active: strategy undefined while skipping");
            if (nxt->test(v)) return *nxt;  // covering the robber is never behind the front
            Bitset nf = front(g, v, *nxt);
            if (nf != prev_front) return *nxt;
            cur = *nxt;
        }
        throw invalid_input("normalize_active: strategy never advances the front");
    };

    // Materialize over the play DAG. The normalized side carries fewer cops
    // than the consulted strategy (new placements outside the robber's reach
    // are dropped), so each state pairs the slim cop set with the cop set f
    // itself would have.
    CopStrategy out;
    out.kind = f.kind;
    out.k = f.k;
    out.robbers = 1;
    out.monotone = true;
    out.key_kind = CopStrategy::KeyKind::cops_territory;

    struct Item {
        Bitset slim, fside;
        int v;
    };
    std::vector<Item> work;
    std::unordered_set<StateKey, StateKeyHash> seen;
    for (int v = 0; v < g.size(); ++v) work.push_back({Bitset(g.size()), Bitset(g.size()), v});
    while (!work.empty()) {
        Item it = work.back();
        work.pop_back();
        Bitset rset(g.size());
        rset.set(it.v);
        Bitset territory = reach(g, rset, it.slim);
        StateKey key{it.slim, territory};
        if (!seen.insert(key).second) continue;
        Bitset raw = skip_forward(it.fside, it.v);
        Bitset ann = (raw & it.slim) | (raw & territory);  // keep what is kept or reachable
        out.moves.emplace(key, ann);
        Bitset rstar = reach(g, rset, it.slim & ann);
        Bitset open = rstar - ann;
        open.for_each([&](int w) { work.push_back({ann, raw, w}); });
    }
    return out;
}

// ---------------------------------------------------------------------------
// Non-monotone DAG-width lift: a winning k-cop strategy on the source graph
// drives a memory strategy on the powerset graph. The memory is one branch
// per member of the current knowledge vertex: the source-game position the
// cops of that branch are reacting to. Robber moves on the powerset graph
// are translated branchwise through history lifting; the powerset
// announcement covers every knowledge vertex that meets some branch's cops.

class DwLift {
public:
    DwLift(const ImperfectGame& src, const PowersetGame& pg, StrategyFn f)
        : src_(&src), pg_(&pg), f_(std::move(f)) {
        int m = (int)pg.members.size();
        covers_.assign(src.size(), Bitset(m));
        for (int i = 0; i < m; ++i)
            for (int s : pg.members[i]) covers_[s].set(i);
    }

    // branch memory: cop set, robber vertex, announced next cop set (source)
    struct Branch {
        Bitset cops;
        int vertex;
        Bitset next_cops;
    };

    // robber entered at powerset position r0; returns the first announcement
    Bitset begin(int r0) {
        branches_.clear();
        cur_ = r0;
        cover_cur_ = Bitset((int)pg_->members.size());
        for (int u : pg_->members[r0]) {
            Branch b{Bitset(src_->size()), u, Bitset(src_->size())};
            b.next_cops = query(b.cops, u);
            branches_.push_back(std::move(b));
        }
        cover_next_ = cover_of_branches();
        return cover_next_;
    }

    // robber moved to powerset position `to`; returns the next announcement
    Bitset step(int to) {
        Bitset blocked = cover_cur_ & cover_next_;
        std::vector<int> path = find_path(cur_, to, blocked);
        if (path.empty())
            throw invalid_input("lift: illegal robber move on the powerset graph");

        std::vector<Branch> next;
        for (int w : pg_->members[to]) {
            LiftedHistory lifted = lift_history(*src_, *pg_, path, w);
            int u0 = lifted.positions.front();
            const Branch* parent = nullptr;
            for (const auto& b : branches_)
                if (b.vertex == u0) {
                    parent = &b;
                    break;
                }
            if (!parent) throw internal_error("lift: no branch for a lifted history start");
            // the lifted path must avoid the branch's retained cops
            Bitset kept = parent->cops & parent->next_cops;
            for (int x : lifted.positions)
                if (kept.test(x))
                    throw internal_error("lift: lifted path crosses retained cops");
            Branch b{parent->next_cops, w, Bitset(src_->size())};
            b.next_cops = query(b.cops, w);
            next.push_back(std::move(b));
        }
        branches_ = std::move(next);
        cur_ = to;
        cover_cur_ = cover_next_;
        cover_next_ = cover_of_branches();
        return cover_next_;
    }

    const std::vector<Branch>& branches() const { return branches_; }
    const Bitset& announced_cover() const { return cover_next_; }
    const Bitset& placed_cover() const { return cover_cur_; }
    int robber_at() const { return cur_; }

private:
    Bitset query(const Bitset& cops, int v) {
        Bitset single(src_->size());
        single.set(v);
        auto ann = f_(cops, single);
        if (!ann)
            throw invalid_input("lift: source strategy undefined at cops=" + cops.str() +
                                " robber=" + std::to_string(v));
        return *ann;
    }

    Bitset cover_of_branches() const {
        Bitset cover((int)pg_->members.size());
        for (const auto& b : branches_)
            b.next_cops.for_each([&](int s) { cover |= covers_[s]; });
        return cover;
    }

    // least-id BFS path in the powerset graph avoiding `blocked`
    std::vector<int> find_path(int from, int to, const Bitset& blocked) const {
        const DirectedGraph& pgr = pg_->game.graph;
        std::vector<int> parent(pgr.size(), -2);
        std::vector<int> queue{from};
        parent[from] = -1;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int cur = queue[qi];
            if (cur == to) break;
            pgr.out(cur).for_each([&](int w) {
                if (parent[w] == -2 && !blocked.test(w)) {
                    parent[w] = cur;
                    queue.push_back(w);
                }
            });
        }
        if (parent[to] == -2) return {};
        std::vector<int> path;
        for (int x = to; x != -1; x = parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
    }

    const ImperfectGame* src_;
    const PowersetGame* pg_;
    StrategyFn f_;
    std::vector<Branch> branches_;
    std::vector<Bitset> covers_;  // source vertex -> powerset vertices containing it
    Bitset cover_cur_, cover_next_;
    int cur_ = -1;
};

// ---------------------------------------------------------------------------
// Exhaustive replay of the lifted strategy on the powerset graph. The lift's
// future behaviour depends only on its branch leaves, so the play tree is
// deduplicated into a DAG over (branch leaves, robber vertex).

struct LiftReplayReport {
    bool captured = true;
    bool monotone = true;
    int max_cops = 0;
    int max_depth = 0;
    long long states = 0;
    std::string failure;
};

namespace detail {

struct LiftStateKey {
    std::vector<uint64_t> digest;
    bool operator==(const LiftStateKey& o) const { return digest == o.digest; }
};
struct LiftStateKeyHash {
    size_t operator()(const LiftStateKey& k) const {
        size_t h = 0x2545f4914f6cdd1dull;
        for (uint64_t x : k.digest) h = hash_combine(h, std::hash<uint64_t>()(x));
        return h;
    }
};

inline LiftStateKey lift_key(const DwLift& lift) {
    LiftStateKey key;
    std::vector<std::vector<uint64_t>> parts;
    for (const auto& b : lift.branches()) {
        std::vector<uint64_t> p{(uint64_t)b.vertex, b.cops.hash(), b.next_cops.hash()};
        parts.push_back(std::move(p));
    }
    std::sort(parts.begin(), parts.end());
    key.digest.push_back((uint64_t)lift.robber_at());
    for (const auto& p : parts) key.digest.insert(key.digest.end(), p.begin(), p.end());
    return key;
}

}  // namespace detail

inline LiftReplayReport replay_dw_lift(const ImperfectGame& src, const PowersetGame& pg,
                                       const StrategyFn& f, int budget_cap = -1) {
    LiftReplayReport rep;
    const DirectedGraph& pgr = pg.game.graph;
    enum { kOnStack = 1, kDone = 2 };
    std::unordered_map<detail::LiftStateKey, char, detail::LiftStateKeyHash> mark;

    std::function<bool(const DwLift&, int)> visit = [&](const DwLift& lift, int depth) -> bool {
        rep.max_depth = std::max(rep.max_depth, depth);
        ++rep.states;
        auto key = detail::lift_key(lift);
        auto [it, fresh] = mark.emplace(key, kOnStack);
        if (!fresh) {
            if (it->second == kDone) return true;
            rep.captured = false;
            rep.failure = "lifted play can loop";
            return false;
        }
        const Bitset& placed = lift.placed_cover();
        const Bitset& ann = lift.announced_cover();
        rep.max_cops = std::max(rep.max_cops, ann.count());
        if (budget_cap >= 0 && ann.count() > budget_cap) {
            rep.captured = false;
            rep.failure = "cop budget exceeded: " + std::to_string(ann.count());
            it->second = kDone;
            return false;
        }
        Bitset rset(pgr.size());
        rset.set(lift.robber_at());
        Bitset rstar = reach(pgr, rset, placed & ann);
        if ((placed - ann).intersects(rstar)) rep.monotone = false;
        Bitset open = rstar - ann;
        bool ok = true;
        for (int w = open.first(); w >= 0 && ok; w = open.next(w)) {
            DwLift child = lift;
            child.step(w);
            if (!visit(child, depth + 1)) ok = false;
        }
        mark[key] = kDone;
        return ok;
    };

    for (int r0 = 0; r0 < pgr.size() && rep.captured; ++r0) {
        DwLift lift(src, pg, f);
        lift.begin(r0);
        visit(lift, 1);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Directed path-width lift: replace each source placement U by the set of
// knowledge vertices meeting U. For a monotone clearing play on the source
// this clears the powerset graph monotonely within a 2^{r-1} blowup.

struct DpwLiftResult {
    std::vector<Bitset> play;  // placements on the powerset graph
    int max_cops = 0;
    int steps = 0;
    bool monotone = true;
    bool cleared = false;
};

inline DpwLiftResult lift_dpw(const ImperfectGame& src, const PowersetGame& pg,
                              const std::vector<Bitset>& play) {
    // the input must be the unique play of a monotone winning strategy
    if (play.empty() || play.front().any())
        throw invalid_input("lift_dpw: play must start with the empty placement");
    {
        Bitset r = src.graph.full_set();
        for (size_t i = 1; i < play.size(); ++i) {
            Bitset rn = reach(src.graph, r, play[i - 1] & play[i]) - play[i];
            if (!rn.subset_of(r)) throw invalid_input("lift_dpw: input play is not monotone");
            r = std::move(rn);
        }
        if (r.any()) throw invalid_input("lift_dpw: input play does not clear the graph");
    }

    const DirectedGraph& pgr = pg.game.graph;
    int m = pgr.size();
    std::vector<Bitset> covers(src.size(), Bitset(m));
    for (int i = 0; i < m; ++i)
        for (int s : pg.members[i]) covers[s].set(i);

    DpwLiftResult out;
    out.play.reserve(play.size());
    for (const auto& u : play) {
        Bitset c(m);
        u.for_each([&](int s) { c |= covers[s]; });
        out.max_cops = std::max(out.max_cops, c.count());
        out.play.push_back(std::move(c));
    }
    out.steps = (int)out.play.size() - 1;

    Bitset r(m);
    for (int i = 0; i < m; ++i) r.set(i);
    for (size_t i = 1; i < out.play.size(); ++i) {
        Bitset rn = reach(pgr, r, out.play[i - 1] & out.play[i]) - out.play[i];
        if (!rn.subset_of(r)) {
            out.monotone = false;
            throw internal_error("lift_dpw: lifted play turned non-monotone");
        }
        r = std::move(rn);
    }
    out.cleared = r.none();
    if (!out.cleared) throw internal_error("lift_dpw: lifted play does not clear the powerset graph");
    return out;
}

}  // namespace iipg
