#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "iipg/generators.hpp"
#include "iipg/lift.hpp"

using namespace iipg;

namespace {

// all subsets of `a` as bitsets
std::vector<Bitset> subsets(const Bitset& a, int nbits) {
    auto verts = a.to_vector();
    std::vector<Bitset> out;
    for (int mask = 0; mask < (1 << verts.size()); ++mask) {
        Bitset b(nbits);
        for (size_t i = 0; i < verts.size(); ++i)
            if (mask & (1 << i)) b.set(verts[i]);
        out.push_back(b);
    }
    return out;
}

}  // namespace

TEST_CASE("front basics") {
    DirectedGraph p(3);
    p.add_edge(0, 1);
    p.add_edge(1, 2);
    CHECK(front(p, 0, Bitset::of(3, {1, 2})) == Bitset::of(3, {1}));  // 2 hides behind 1
    CHECK(front(p, 2, Bitset::of(3, {0})).none());                    // unreachable blockers
    CHECK_THROWS_AS(front(p, 1, Bitset::of(3, {1})), invalid_input);
}

TEST_CASE("front is the unique minimal blocking subset") {
    std::mt19937_64 rng(97);
    for (int t = 0; t < 60; ++t) {
        auto g = testutil::random_digraph(6, 0.35, rng);
        int v = (int)(rng() % 6);
        Bitset a(6);
        for (int x = 0; x < 6; ++x)
            if (x != v && rng() % 2) a.set(x);
        if (a.count() > 5) continue;
        Bitset b = front(g, v, a);
        Bitset full = reach(g, v, a);
        CHECK(reach(g, v, b) == full);
        for (const auto& sub : subsets(b, 6)) {
            if (sub == b) continue;
            CHECK(reach(g, v, sub) != full);
        }
    }
}

TEST_CASE("normalize_active is the identity on already-active strategies") {
    std::mt19937_64 rng(113);
    for (int t = 0; t < 15; ++t) {
        auto g = testutil::random_digraph(5 + (int)(rng() % 3), 0.3, rng);
        auto rep = dag_width(g, true);  // extraction is active by construction
        auto norm = normalize_active(g, rep.witness);
        auto rr = replay_cop_strategy(g, norm.as_function(g), 1, true);
        CHECK(rr.ok(true));
        CHECK(rr.active);
        CHECK(rr.max_cops <= rep.cops);
        // pointwise fixpoint on every reachable position of the normal form
        for (const auto& [key, ann] : norm.moves) {
            for (int v = key.b.first(); v >= 0; v = key.b.next(v)) {
                Bitset rset(g.size());
                rset.set(v);
                if (reach(g, rset, key.a) != key.b) continue;
                auto orig = rep.witness.announce(g, key.a, rset);
                REQUIRE(orig.has_value());
                CHECK(*orig == ann);
                break;
            }
        }
    }
}

TEST_CASE("normalize_active skips parking moves") {
    // path 0 -> 1 -> 2 plus an isolated vertex 3; a strategy that parks a
    // cop on 3 first and only then chases is compressed to the chase
    DirectedGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);

    CopStrategy wasteful;
    wasteful.k = 2;
    wasteful.monotone = true;
    wasteful.key_kind = CopStrategy::KeyKind::cops_territory;
    auto put = [&](std::initializer_list<int> cops, std::initializer_list<int> terr,
                   std::initializer_list<int> ann) {
        wasteful.moves[{Bitset::of(4, cops), Bitset::of(4, terr)}] = Bitset::of(4, ann);
    };
    // robber anywhere: park on 3, then cover the robber's component top-down
    put({}, {0, 1, 2}, {3});
    put({3}, {0, 1, 2}, {3, 0});
    put({0, 3}, {1, 2}, {1, 3});
    put({0, 3}, {2}, {2, 3});
    put({1, 3}, {2}, {2, 3});
    put({}, {1, 2}, {3});
    put({3}, {1, 2}, {1, 3});
    put({}, {2}, {3});
    put({3}, {2}, {2, 3});
    put({}, {3}, {3});

    auto pre = replay_cop_strategy(g, wasteful.as_function(g), 1, true);
    REQUIRE(pre.ok(true));
    CHECK(!pre.active);

    auto norm = normalize_active(g, wasteful);
    auto post = replay_cop_strategy(g, norm.as_function(g), 1, true);
    CHECK(post.ok(true));
    CHECK(post.active);
    CHECK(post.max_cops <= 2);
    // the normalized first move goes straight for the robber's region
    Bitset terr = Bitset::of(4, {0, 1, 2});
    auto first = norm.announce(g, Bitset(4), Bitset::of(4, {0}));
    REQUIRE(first.has_value());
    CHECK(first->subset_of(terr));
}

TEST_CASE("normalize_active rejects broken strategies") {
    DirectedGraph g(2);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    CopStrategy idle;
    idle.k = 1;
    idle.key_kind = CopStrategy::KeyKind::cops_territory;
    idle.moves[{Bitset(2), Bitset::of(2, {0, 1})}] = Bitset(2);  // never places anything
    CHECK_THROWS_AS(normalize_active(g, idle), invalid_input);
}

TEST_CASE("normalize_active is idempotent on solver strategies") {
    std::mt19937_64 rng(127);
    for (int t = 0; t < 10; ++t) {
        auto g = testutil::random_digraph(6, 0.3, rng);
        auto norm = normalize_active(g, dag_width(g, true).witness);
        auto norm2 = normalize_active(g, norm);
        for (const auto& [key, ann] : norm2.moves) {
            auto it = norm.moves.find(key);
            REQUIRE(it != norm.moves.end());
            CHECK(it->second == ann);
        }
    }
}

TEST_CASE("perfect information: the lifted dw strategy is the source strategy") {
    RandomGameSpec spec;
    spec.positions = 6;
    spec.class_size = 1;
    spec.seed = 5;
    auto g = gen_random(spec);
    auto pg = powerset_construct(g);
    auto nm = dag_width(g.graph, false);
    auto rr = replay_dw_lift(g, pg, nm.witness.as_function(g.graph), nm.cops);
    CHECK(rr.captured);
    CHECK(rr.max_cops <= nm.cops);  // r = 1: no blowup at all
}

TEST_CASE("figure-4 lift reproduces the non-monotone play") {
    auto g = gen_fig4();
    auto pg = powerset_construct(g);
    std::map<std::vector<int>, int> id;
    for (size_t i = 0; i < pg.members.size(); ++i) id[pg.members[i]] = (int)i;
    int p_v0 = id[{0}], p_12 = id[{1, 2}], p_34 = id[{3, 4}], p_5 = id[{5}];

    // the paper's partial two-cop strategy on the source graph
    auto f = [&](const Bitset& cops, const Bitset& rset) -> std::optional<Bitset> {
        auto key = std::make_pair(cops.to_vector(), rset.to_vector());
        std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<int>> table = {
            {{{}, {0}}, {0}},       {{{0}, {1}}, {0, 1}}, {{{0, 1}, {3}}, {0, 3}},
            {{{0}, {2}}, {0, 5}},   {{{0, 5}, {4}}, {0, 4, 5}},
        };
        auto it = table.find(key);
        if (it == table.end()) return std::nullopt;
        return Bitset::of(6, it->second);
    };

    DwLift lift(g, pg, f);
    Bitset ann1 = lift.begin(p_v0);  // cops occupy {v0}
    CHECK(ann1 == Bitset::of((int)pg.members.size(), {p_v0}));

    Bitset ann2 = lift.step(p_12);  // cops cover {v0}, {1,2} and {5}
    CHECK(ann2.test(p_12));
    CHECK(ann2.test(p_5));

    Bitset ann3 = lift.step(p_34);
    // the cop on {1,2} is lifted while {3,4} -> {1,2} stays open: non-monotone
    CHECK(!ann3.test(p_12));
    Bitset placed = ann2;
    Bitset rset((int)pg.members.size());
    rset.set(p_34);
    Bitset rstar = reach(pg.game.graph, rset, placed & ann3);
    CHECK((placed - ann3).intersects(rstar));
    CHECK(rstar.test(p_12));
}

TEST_CASE("random bounded games: lift captures within the Prop 6 budget") {
    int done = 0;
    for (uint64_t seed = 1; done < 25; ++seed) {
        RandomGameSpec spec;
        spec.positions = 6 + (int)(seed % 3);
        spec.class_size = 2;
        spec.seed = seed;
        auto g = gen_random(spec);
        int r = imperfection_radius(g);
        auto pg = powerset_construct(g);
        auto nm = dag_width(g.graph, false);
        int budget = nm.cops * r * (1 << (r - 1));
        auto rr = replay_dw_lift(g, pg, nm.witness.as_function(g.graph), budget);
        CHECK(rr.captured);
        CHECK(rr.max_cops <= budget);
        ++done;
    }
}

TEST_CASE("dpw lift clears the powerset monotonely within the Prop 7 budget") {
    SUBCASE("cycles gadget") {
        auto g = gen_cycles_gadget(2);
        auto pg = powerset_construct(g);
        auto rep = directed_path_width(g.graph, true);
        auto lr = lift_dpw(g, pg, rep.play);
        CHECK(lr.cleared);
        CHECK(lr.monotone);
        int r = imperfection_radius(g);
        CHECK(lr.max_cops <= rep.cops * (1 << (r - 1)));
    }
    SUBCASE("random bounded games") {
        int done = 0;
        for (uint64_t seed = 1; done < 25; ++seed) {
            RandomGameSpec spec;
            spec.positions = 6 + (int)(seed % 3);
            spec.class_size = 2;
            spec.seed = seed * 31 + 7;
            auto g = gen_random(spec);
            int r = imperfection_radius(g);
            auto pg = powerset_construct(g);
            auto rep = directed_path_width(g.graph, true);
            auto lr = lift_dpw(g, pg, rep.play);
            CHECK(lr.cleared);
            CHECK(lr.monotone);
            CHECK(lr.max_cops <= rep.cops * (1 << (r - 1)));
            // every step's cop set covers exactly the knowledge sets meeting it
            REQUIRE(lr.play.size() == rep.play.size());
            for (size_t i = 0; i < lr.play.size(); ++i) {
                Bitset want((int)pg.members.size());
                for (size_t p = 0; p < pg.members.size(); ++p)
                    for (int s : pg.members[p])
                        if (rep.play[i].test(s)) want.set((int)p);
                CHECK(lr.play[i] == want);
            }
            ++done;
        }
    }
}

TEST_CASE("dpw lift rejects garbage plays") {
    auto g = gen_cycles_gadget(2);
    auto pg = powerset_construct(g);
    CHECK_THROWS_AS(lift_dpw(g, pg, {}), invalid_input);
    // a play that never clears
    std::vector<Bitset> lazy{Bitset(g.size()), Bitset::of(g.size(), {0})};
    CHECK_THROWS_AS(lift_dpw(g, pg, lazy), invalid_input);
}
