#pragma once
#include <set>

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "iipg/parity.hpp"
#include "iipg/search.hpp"

namespace iipg {

// Marker for the paper's "-" entry: a vertex that should not be reached.
constexpr int kNoColor = -1;

// Significance order: a is better for Player 0 than b iff a is even and b is
// odd, or both even and a < b, or both odd and a > b.
inline bool sig_less(int a, int b) {
    bool ae = (a & 1) == 0, be = (b & 1) == 0;
    if (ae != be) return ae;
    return ae ? a < b : a > b;
}

inline int sig_best(int a, int b) { return sig_less(a, b) ? a : b; }

// natural-order minimum with min(-, c) = c
inline int mincol(int a, int b) {
    if (a == kNoColor) return b;
    if (b == kNoColor) return a;
    return std::min(a, b);
}

// A promise record: when the play re-enters `domain` at w, Player 0 claimed
// the colors seen since leaving are no worse than promise[w].
struct Record {
    Bitset domain;              // F
    int c = kNoColor;           // minimal color seen since the promise
    std::vector<int> promise;   // aligned with domain.to_vector(); kNoColor = "-"

    int promise_at(int v) const {
        int idx = 0;
        for (int x = domain.first(); x >= 0; x = domain.next(x), ++idx)
            if (x == v) return promise[idx];
        throw invalid_input("record: vertex outside the promise domain");
    }
    bool operator==(const Record& o) const {
        return c == o.c && domain == o.domain && promise == o.promise;
    }
};

inline Record update_record(Record r, int cprime) {
    r.c = mincol(r.c, cprime);
    return r;
}

using History = std::vector<Record>;

inline History update_history(History h, int cprime) {
    for (auto& r : h) r = update_record(std::move(r), cprime);
    return h;
}

// keep only the newest record
inline History hist_keep_last(History h) {
    if (h.size() <= 1) return h;
    return {h.back()};
}

struct Triple {
    int u, c, w;
    bool operator==(const Triple& o) const { return u == o.u && c == o.c && w == o.w; }
};

// Winner of a trace that closed a cycle: the last triple must repeat an
// earlier one; the winner is the parity of the minimal color on the cycle.
inline int winner_of_cycle(const std::vector<Triple>& pi) {
    if (pi.empty()) throw invalid_input("winner_of_cycle: empty trace");
    int first = -1;
    for (int i = 0; i + 1 < (int)pi.size(); ++i)
        if (pi[i] == pi.back()) {
            first = i;
            break;
        }
    if (first < 0) throw invalid_input("winner_of_cycle: trace does not end in a cycle");
    int m = pi[first].c;
    for (int i = first; i < (int)pi.size(); ++i) m = std::min(m, pi[i].c);
    return m & 1;
}

// ---------------------------------------------------------------------------
// The simulated game driven by a cops-and-robbers strategy: Next(S,v,H) is
// the cop answer f(S,v), the first subgame is f(empty, v0), and Hist keeps
// only the newest record. With a winning (possibly non-monotone) strategy
// every play is finite, so a memoized AND-OR evaluation solves the game.

struct InducedSim {
    StrategyFn next;  // (S, {v}) -> cop answer
    Bitset s0;
    int k = 0;
};

inline InducedSim induced_next_hist(const DirectedGraph& g, const CopStrategy& f) {
    ReplayReport rep = replay_cop_strategy(g, f.as_function(g), 1, false);
    if (!rep.captured)
        throw invalid_input("induced_next_hist: strategy does not capture the robber (" +
                            rep.failure + ")");
    InducedSim out;
    out.k = f.k;
    auto base = f.as_function(g);
    out.next = [base, &g](const Bitset& cops, const Bitset& rset) -> std::optional<Bitset> {
        auto ann = base(cops, rset);
        if (ann) return ann;
        return base(Bitset(g.size()), rset);  // restart answer: always defined for winning f
    };
    Bitset v0set(g.size());
    v0set.set(0);
    auto s0 = out.next(Bitset(g.size()), v0set);
    if (!s0) throw invalid_input("induced_next_hist: no answer at the initial position");
    out.s0 = *s0;
    return out;
}

struct SimStats {
    long long positions = 0;     // evaluated round positions
    long long peak_memo = 0;
    int cop_k = 0;
    double state_budget = 0;     // |V|^{k+2} * |C|^{2k} * k^k
    long long repeat_cutoffs = 0;
};

// The solver expands the reachable simulated-game graph explicitly (round
// positions plus the announce/accept-or-reject choice layer) and computes
// Player 0's attractor to his terminal wins. Positions left unresolved by
// the fixpoint are plays Player 0 cannot force to an end, i.e. repeatable
// plays, and fall to Player 1: a winning Player 0 never revisits a position,
// and with a winning cop strategy behind Next honest play cannot loop.
class SimulatedSolver {
public:
    SimulatedSolver(const ParityArena& arena, InducedSim induced)
        : a_(arena), sim_(std::move(induced)) {
        for (int v = 0; v < a_.n; ++v) colors_.push_back(a_.color[v]);
        std::sort(colors_.begin(), colors_.end());
        colors_.erase(std::unique(colors_.begin(), colors_.end()), colors_.end());
        nat_colors_ = colors_;
        if (nat_colors_.size() > 7)
            throw invalid_input("simulated: more than seven distinct colors is out of budget");
        // colors ordered best-first for deterministic profile enumeration
        std::sort(colors_.begin(), colors_.end(), sig_less);
        stats_.cop_k = sim_.k;
        int k = std::max(1, sim_.k);
        stats_.state_budget = std::pow((double)std::max(1, a_.n), k + 2) *
                              std::pow((double)std::max<size_t>(1, colors_.size()), 2 * k) *
                              std::pow((double)k, k);
    }

    int solve(int v0) {
        Pos start;
        start.s = sim_.s0;
        start.v = v0;
        start.h = empty_obligations();
        int root = intern(start);
        // announce nodes grow reject children for the currently dominant
        // profiles only; wins are monotone, so iterating to a fixpoint is
        // exact and never retracts
        while (true) {
            expand_all();
            attract();
            if (!resolve_announces()) break;
        }
        stats_.peak_memo = (long long)positions_.size();
        root_ = root;
        return nodes_[root].won ? 0 : 1;
    }

    const SimStats& stats() const { return stats_; }

    std::string describe(int node) const {
        if (node == kWin0) return "WIN0";
        if (node == kWin1) return "WIN1";
        auto pit = pos_of_node_.find(node);
        if (pit == pos_of_node_.end())
            return std::string("choice p") + std::to_string(nodes_[node].player) + " #" +
                   std::to_string(node);
        const Pos& p = positions_[pit->second];
        std::string s = "#" + std::to_string(node) + " pos v=" + std::to_string(p.v) +
                        " S=" + p.s.str() + " trace{";
        for (auto [x, m] : p.pi.seen) s += std::to_string(x) + ":" + std::to_string(m) + " ";
        s += "} min=" + std::to_string(p.pi.min_all);
        if (p.h.covered.size_bits() && p.h.covered.any()) s += " covered=" + p.h.covered.str();
        return s;
    }

    // diagnostic: one Player-1-winning line from the root; at his choice
    // nodes Player 1 prefers a move that revisits an unresolved node (the
    // cycle witness), otherwise the first unresolved child
    std::vector<std::string> losing_line(int max_steps = 60) const {
        std::vector<std::string> out;
        std::set<int> seen;
        int cur = root_;
        for (int step = 0; step < max_steps; ++step) {
            out.push_back(describe(cur));
            if (cur == kWin0 || cur == kWin1) break;
            if (!seen.insert(cur).second) {
                out.push_back("(cycle closes here)");
                break;
            }
            int next = -1;
            if (nodes_[cur].player == 1) {
                for (int s : nodes_[cur].succ)
                    if (!nodes_[s].won && seen.count(s)) next = s;
            }
            if (next < 0)
                for (int s : nodes_[cur].succ)
                    if (!nodes_[s].won) {
                        next = s;
                        break;
                    }
            if (next < 0) {
                out.push_back("(stuck)");
                break;
            }
            cur = next;
        }
        return out;
    }

    // diagnostic: which components of the position drive the state count
    std::vector<std::pair<std::string, long long>> state_composition() const {
        std::set<std::vector<uint64_t>> s_set, trace_set, obl_set, sv_set;
        long long max_obl = 0;
        for (const auto& p : positions_) {
            s_set.insert({p.s.hash()});
            sv_set.insert({p.s.hash(), (uint64_t)p.v});
            std::vector<uint64_t> tr{(uint64_t)(p.pi.min_all + 1)};
            for (auto [x, m] : p.pi.seen) tr.push_back((uint64_t)(x * 100 + m));
            trace_set.insert(tr);
            std::vector<uint64_t> ob{p.h.covered.hash()};
            for (uint64_t t : p.h.fail) ob.push_back(t);
            obl_set.insert(ob);
            max_obl = std::max(max_obl, (long long)p.h.covered.count());
        }
        return {{"positions", (long long)positions_.size()},
                {"distinct S", (long long)s_set.size()},
                {"distinct (S,v)", (long long)sv_set.size()},
                {"distinct traces", (long long)trace_set.size()},
                {"distinct obligation maps", (long long)obl_set.size()},
                {"max obligations", max_obl}};
    }

    // diagnostic: children of a node with win status
    std::vector<std::pair<int, bool>> children(int node) const {
        std::vector<std::pair<int, bool>> out;
        for (int s : nodes_[node].succ) out.push_back({s, (bool)nodes_[s].won});
        return out;
    }
    int node_player(int node) const { return nodes_[node].player; }

    // diagnostic: can Player 1 force a terminal win from the root, or does
    // he win only through unresolved (cyclic) play?
    bool opponent_forces_terminal() const {
        std::vector<char> won1(nodes_.size(), 0);
        won1[kWin1] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            for (size_t i = 2; i < nodes_.size(); ++i) {
                if (won1[i] || nodes_[i].succ.empty()) continue;
                bool take;
                if (nodes_[i].player == 1) {
                    take = false;
                    for (int s : nodes_[i].succ) take |= won1[s];
                } else {
                    take = true;
                    for (int s : nodes_[i].succ) take &= (bool)won1[s];
                }
                if (take) {
                    won1[i] = 1;
                    grew = true;
                }
            }
        }
        return won1[root_];
    }

private:
    // The trace needs only, per vertex the play returned to, the minimal
    // color seen since its first visit (plus the overall minimum for the
    // promise checks): a re-entry closes a cycle whose winner is the parity
    // of that stored minimum. This is exactly the (c,w)-pair accounting that
    // gives the simulated game its small memory footprint. A vertex's own
    // entry starts at its color: the trip that first brought the play there
    // lies before the cycle, while later trips (including the closing one)
    // lie inside it.
    struct Trace {
        std::vector<std::pair<int, int>> seen;  // (vertex, min color since), sorted by vertex
        int min_all = kNoColor;

        // arrival at w with trip summary `trip`; returns the cycle winner if
        // w closes a cycle, -1 otherwise
        int append(int trip, int col_w, int w) {
            int upd = mincol(trip, col_w);
            min_all = mincol(min_all, upd);
            for (auto& [x, m] : seen) m = mincol(m, upd);
            for (auto& [x, m] : seen)
                if (x == w) return m & 1;
            seen.insert(std::lower_bound(seen.begin(), seen.end(), std::make_pair(w, -1)),
                        {w, col_w});
            return -1;
        }
        bool operator==(const Trace& o) const { return min_all == o.min_all && seen == o.seen; }
    };

    // Retained promises, decomposed per vertex. An obligation (c, p) fails
    // on arrival iff min(m, c, u) is worse than p under the significance
    // order, where m is the era minimum at the check and u the minimum of
    // the exit colors folded in by Update since. Everything the future can
    // observe of a vertex's obligations is therefore the boolean table over
    // (u, m) with indices in the color list plus one slot for "none":
    // Update(x) reindexes rows by u -> min(u, x), new promises OR their
    // table in, and obligation sets inducing equal tables merge. `covered`
    // remembers domain membership itself: arriving there ends the play even
    // when every promise is honored.
    struct Obligations {
        Bitset covered;
        std::vector<uint64_t> fail;  // per vertex, bit u * M + m

        bool operator==(const Obligations& o) const {
            return covered == o.covered && fail == o.fail;
        }
    };

    struct Pos {
        Bitset s;
        int v = 0;
        Obligations h;
        Trace pi;

        bool operator==(const Pos& o) const {
            return v == o.v && s == o.s && pi == o.pi && h == o.h;
        }
    };
    struct PosHash {
        size_t operator()(const Pos& p) const {
            size_t h = hash_combine(p.s.hash(), std::hash<int>()(p.v));
            h = hash_combine(h, std::hash<int>()(p.pi.min_all));
            for (auto [x, m] : p.pi.seen)
                h = hash_combine(h, std::hash<int>()(x * 1315423911 + m));
            h = hash_combine(h, p.h.covered.hash());
            for (uint64_t t : p.h.fail) h = hash_combine(h, std::hash<uint64_t>()(t));
            return h;
        }
    };

    // color index in the ascending list; kNoColor maps to the extra slot
    int cidx(int color) const {
        if (color == kNoColor) return (int)nat_colors_.size();
        for (size_t i = 0; i < nat_colors_.size(); ++i)
            if (nat_colors_[i] == color) return (int)i;
        throw internal_error("simulated: unknown color");
    }

    Obligations empty_obligations() const {
        Obligations h;
        h.covered = Bitset(a_.n);
        h.fail.assign(a_.n, 0);
        return h;
    }

    // the (u, m) failure table of one promise p made with running color c;
    // p = kNoColor forbids returning at all
    uint64_t pair_table(int c, int p) const {
        const int M = (int)nat_colors_.size() + 1;
        if (p == kNoColor) return M * M >= 64 ? ~0ull : (1ull << (M * M)) - 1;
        uint64_t t = 0;
        for (int u = 0; u < M; ++u)
            for (int m = 0; m < M; ++m) {
                int e = std::min({cidx(c), u, m});  // c is a real color, so e < M-1
                int realized = nat_colors_[e];
                if (!(realized == p || sig_less(realized, p))) t |= 1ull << (u * M + m);
            }
        return t;
    }

    Obligations with_update(Obligations h, int color) const {
        const int M = (int)nat_colors_.size() + 1;
        int ix = cidx(color);
        for (auto& t : h.fail) {
            if (!t) continue;
            uint64_t nt = 0;
            for (int u = 0; u < M; ++u) {
                uint64_t row = (t >> (std::min(u, ix) * M)) & ((1ull << M) - 1);
                nt |= row << (u * M);
            }
            t = nt;
        }
        return h;
    }

    Obligations with_record(Obligations h, const Bitset& domain, int c,
                            const std::vector<int>& promise) const {
        int idx = 0;
        for (int w = domain.first(); w >= 0; w = domain.next(w), ++idx) {
            h.covered.set(w);
            h.fail[w] |= pair_table(c, promise[idx]);
        }
        return h;
    }

    // node graph: player-0 nodes win when some successor wins, player-1
    // nodes when all do; kWin0/kWin1 are sentinel terminals
    static constexpr int kWin0 = 0, kWin1 = 1;
    struct Node {
        int player = 0;
        bool won = false;
        int pending = 0;
        std::vector<int> succ;
    };

    int new_node(int player) {
        nodes_.push_back({player, false, 0, {}});
        return (int)nodes_.size() - 1;
    }

    int intern(const Pos& p) {
        auto it = ids_.find(p);
        if (it != ids_.end()) return it->second;
        // the asymptotic bound leaves room for constant bookkeeping; tiny
        // games need the floor
        double cap = std::min(std::max(stats_.state_budget * 4, 1e4), 3e6);
        if ((long long)positions_.size() >= (long long)cap)
            throw internal_error("simulated: state budget exceeded");
        int id = new_node(a_.owner[p.v]);
        ids_.emplace(p, id);
        positions_.push_back(p);
        queue_.push_back(id);
        pos_of_node_[id] = (int)positions_.size() - 1;
        return id;
    }

    // trace append plus steps 5 and 6: a terminal sentinel or the interned
    // follow-up position. Re-entry into any recorded subgame checks every
    // promise Player 0 made for that vertex.
    int append_then_check(Pos pos, int c, int w) {
        int cycle = pos.pi.append(c, a_.color[w], w);
        pos.v = w;
        if (pos.h.covered.test(w)) {  // step 5
            const int M = (int)nat_colors_.size() + 1;
            int bit = M * M - M + cidx(pos.pi.min_all);  // u = "no more updates"
            return (pos.h.fail[w] >> bit) & 1 ? kWin1 : kWin0;
        }
        if (cycle >= 0) return cycle == 0 ? kWin0 : kWin1;  // step 6
        return intern(std::move(pos));
    }

    // A pending announcement round: Player 0 names a promise per subgame
    // vertex, Player 1 accepts one or rejects. A weaker promise is never
    // worse for the rejection future (its failure table is smaller) and the
    // accept branch sees only min(col(v'), promise), so the profiles worth
    // building are, per vertex, the weakest promise whose accept branch
    // Player 0 wins, or "-" if there is none. Which accepts he wins is only
    // known at the fixpoint, so reject children are added iteratively.
    struct Announce {
        int or_node;
        int vnext;
        std::vector<int> svec;
        std::vector<std::vector<int>> accept_child;  // [vertex][color option]
        Pos base;                                    // position before the move
        std::optional<Bitset> snext;
        std::set<std::vector<int>> built;  // profiles already materialized
    };

    // successor node for the move pos.v -> vnext
    int after_move(const Pos& pos, int vnext) {
        if (pos.s.test(vnext) || pos.h.covered.test(vnext))
            return append_then_check(pos, a_.color[vnext], vnext);

        Announce ann;
        ann.or_node = new_node(0);
        ann.vnext = vnext;
        ann.svec = pos.s.to_vector();
        ann.base = pos;
        ann.accept_child.assign(ann.svec.size(), std::vector<int>((int)colors_.size(), kWin1));
        for (size_t i = 0; i < ann.svec.size(); ++i)
            for (size_t opt = 0; opt < colors_.size(); ++opt)
                ann.accept_child[i][opt] =
                    append_then_check(pos, mincol(a_.color[vnext], colors_[opt]), ann.svec[i]);
        int id = ann.or_node;
        announces_.push_back(std::move(ann));
        return id;
    }

    // materialize the currently dominant profile of every announcement;
    // returns whether anything new was added
    bool resolve_announces() {
        bool changed = false;
        for (size_t a = 0; a < announces_.size(); ++a) {
            Announce& ann = announces_[a];
#ifdef IIPG_SIM_FULL_PROFILES
            // exhaustive reference mode: materialize every profile once
            long long total = 1;
            for (size_t i = 0; i < ann.svec.size(); ++i) total *= (long long)colors_.size() + 1;
            for (long long code = 0; code < total; ++code) {
                std::vector<int> profile(ann.svec.size(), kNoColor);
                std::vector<int> accepts;
                long long cc = code;
                bool skip = false;
                for (size_t i = 0; i < ann.svec.size(); ++i) {
                    int opt = (int)(cc % ((long long)colors_.size() + 1));
                    cc /= (long long)colors_.size() + 1;
                    if (opt == (int)colors_.size()) continue;
                    profile[i] = colors_[opt];
                    accepts.push_back(ann.accept_child[i][opt]);
                }
                if (skip || !ann.built.insert(profile).second) continue;
                changed = true;
                Pos rej;
                rej.h = with_record(with_update(ann.base.h, a_.color[ann.vnext]), ann.base.s,
                                    a_.color[ann.vnext], profile);
                if (!ann.snext) {
                    ann.snext = sim_.next(ann.base.s, single(ann.vnext));
                    if (!ann.snext) throw internal_error("simulated: Next undefined");
                }
                rej.s = *ann.snext;
                rej.v = ann.vnext;
                std::vector<int> and_succ = accepts;
                and_succ.push_back(intern(std::move(rej)));
                int prof_and = new_node(1);
                nodes_[prof_and].succ = std::move(and_succ);
                nodes_[announces_[a].or_node].succ.push_back(prof_and);
            }
            continue;
#endif
            std::vector<int> profile(ann.svec.size(), kNoColor);
            std::vector<int> accepts;
            for (size_t i = 0; i < ann.svec.size(); ++i) {
                // weakest promise whose accept branch is currently won
                for (size_t opt = colors_.size(); opt-- > 0;) {
                    int child = ann.accept_child[i][opt];
                    bool won = child == kWin0 || (child != kWin1 && nodes_[child].won);
                    if (won) {
                        // colors_ is sorted best-first: the last winning
                        // option is the weakest promise
                        profile[i] = colors_[opt];
                        accepts.push_back(child);
                        break;
                    }
                }
            }
            if (!ann.built.insert(profile).second) continue;
            changed = true;
            Pos rej;
            rej.h = with_record(with_update(ann.base.h, a_.color[ann.vnext]), ann.base.s,
                                a_.color[ann.vnext], profile);
            if (!ann.snext) {
                ann.snext = sim_.next(ann.base.s, single(ann.vnext));
                if (!ann.snext) throw internal_error("simulated: Next undefined");
            }
            rej.s = *ann.snext;
            rej.v = ann.vnext;
            std::vector<int> and_succ = accepts;
            and_succ.push_back(intern(std::move(rej)));
            int prof_and = new_node(1);
            nodes_[prof_and].succ = std::move(and_succ);
            nodes_[announces_[a].or_node].succ.push_back(prof_and);
        }
        return changed;
    }

    void expand_all() {
        while (!queue_.empty()) {
            int id = queue_.back();
            queue_.pop_back();
            Pos pos = positions_[pos_of_node_[id]];  // copy: vectors reallocate
            ++stats_.positions;
            const auto& succ = a_.succ[pos.v];
            std::vector<int> out;
            if (succ.empty())
                out.push_back(a_.owner[pos.v] == 0 ? kWin1 : kWin0);  // stuck player loses
            else
                for (int w : succ) out.push_back(after_move(pos, w));
            nodes_[id].succ = std::move(out);
        }
    }

    void attract() {
        std::vector<std::vector<int>> preds(nodes_.size());
        for (size_t i = 2; i < nodes_.size(); ++i) {
            nodes_[i].pending = (int)nodes_[i].succ.size();
            for (int s : nodes_[i].succ) preds[s].push_back((int)i);
        }
        std::vector<int> work{kWin0};
        nodes_[kWin0].won = true;
        while (!work.empty()) {
            int id = work.back();
            work.pop_back();
            for (int p : preds[id]) {
                if (nodes_[p].won) continue;
                if (nodes_[p].player == 0 || --nodes_[p].pending == 0) {
                    nodes_[p].won = true;
                    work.push_back(p);
                }
            }
        }
    }

    Bitset single(int v) const {
        Bitset b(a_.n);
        b.set(v);
        return b;
    }

    const ParityArena& a_;
    InducedSim sim_;
    std::vector<int> colors_;
    std::vector<int> nat_colors_;  // ascending, for the obligation tables
    std::vector<Node> nodes_ = {{0, false, 0, {}}, {1, false, 0, {}}};  // kWin0, kWin1
    std::vector<Pos> positions_;
    std::unordered_map<Pos, int, PosHash> ids_;
    std::unordered_map<int, int> pos_of_node_;
    std::vector<int> queue_;
    SimStats stats_;
    int root_ = -1;
    std::vector<Announce> announces_;
};

// Winner at v0 of a perfect-information parity game, computed through the
// simulated game induced by a winning cop strategy for the game graph.
inline int simulate_solve(const ParityArena& arena, const DirectedGraph& graph,
                          const CopStrategy& f, SimStats* stats = nullptr, int v0 = 0) {
    InducedSim induced = induced_next_hist(graph, f);
    SimulatedSolver solver(arena, std::move(induced));
    int w = solver.solve(v0);
    if (stats) *stats = solver.stats();
    return w;
}

}  // namespace iipg
