#include <doctest.h>

#include "helpers.hpp"
#include "iipg/generators.hpp"
#include "iipg/search.hpp"
#include "iipg/simulated.hpp"

using namespace iipg;

TEST_CASE("significance order") {
    CHECK(sig_less(2, 1));   // even beats odd
    CHECK(sig_less(0, 2));   // both even, smaller better
    CHECK(sig_less(3, 1));   // both odd, larger better
    CHECK(!sig_less(1, 3));
    CHECK(sig_best(2, 1) == 2);
}

TEST_CASE("significance order is total") {
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b) {
            if (a != b) CHECK(sig_less(a, b) != sig_less(b, a));
            if (a == b) CHECK(!sig_less(a, b));
            for (int c = 0; c < 16; ++c)
                if (sig_less(a, b) && sig_less(b, c)) CHECK(sig_less(a, c));
        }
}

TEST_CASE("record updates take natural minima") {
    Record r;
    r.domain = Bitset::of(4, {1, 2});
    r.c = 3;
    r.promise = {0, kNoColor};
    CHECK(update_record(r, 2).c == 2);
    r.c = kNoColor;
    CHECK(update_record(r, 5).c == 5);
    CHECK(update_history({}, 7).empty());
    History h{r};
    CHECK(update_history(h, 1).front().c == 1);
}

TEST_CASE("winner of a closed cycle") {
    auto tri = [](int u, int c, int w) { return Triple{u, c, w}; };
    CHECK(winner_of_cycle({tri(0, 2, 1), tri(1, 4, 0), tri(0, 2, 1)}) == 0);
    CHECK(winner_of_cycle({tri(0, 2, 1), tri(1, 1, 0), tri(0, 2, 1)}) == 1);
    // the prefix color 1 is excluded from the cycle segment
    CHECK(winner_of_cycle({tri(9, 1, 0), tri(0, 2, 0), tri(0, 2, 0)}) == 0);
    CHECK_THROWS_AS(winner_of_cycle({tri(0, 2, 1)}), invalid_input);
    CHECK_THROWS_AS(winner_of_cycle({}), invalid_input);
}

TEST_CASE("induced next and hist") {
    auto g = gen_fig4().graph;  // any small graph with cycles
    auto rep = dag_width(g, false);
    auto sim = induced_next_hist(g, rep.witness);
    CHECK(sim.k == rep.cops);
    // first subgame answers the robber standing on the initial position
    Bitset v0(g.size());
    v0.set(0);
    auto direct = rep.witness.announce(g, Bitset(g.size()), v0);
    REQUIRE(direct.has_value());
    CHECK(sim.s0 == *direct);
    // keep-last rule
    Record r1, r2;
    r1.domain = Bitset::of(3, {0});
    r1.c = 1;
    r1.promise = {0};
    r2.domain = Bitset::of(3, {1});
    r2.c = 2;
    r2.promise = {2};
    auto kept = hist_keep_last({r1, r2});
    REQUIRE(kept.size() == 1);
    CHECK(kept.front() == r2);
}

TEST_CASE("induced next rejects non-winning strategies") {
    DirectedGraph g(2);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    CopStrategy lazy;
    lazy.k = 1;
    lazy.key_kind = CopStrategy::KeyKind::cops_territory;
    lazy.moves[{Bitset(2), Bitset::of(2, {0, 1})}] = Bitset(2);
    CHECK_THROWS_AS(induced_next_hist(g, lazy), invalid_input);
}

TEST_CASE("self loops") {
    for (int color = 0; color <= 1; ++color) {
        ImperfectGame g;
        g.owner = {1};
        g.color = {color};
        g.pos_class = {0};
        g.initial = 0;
        g.edges = {{0, 0, 0}};
        g.rebuild_graph();
        auto arena = arena_from_game(g);
        auto rep = dag_width(g.graph, false);
        SimStats st;
        CHECK(simulate_solve(arena, g.graph, rep.witness, &st) == color % 2);
    }
}

TEST_CASE("every simulated play of an acyclic game is finite") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        RandomGameSpec spec;
        spec.positions = 6;
        spec.class_size = 1;
        spec.acyclic = true;
        spec.seed = seed;
        auto g = gen_random(spec);
        auto rep = dag_width(g.graph, false);
        CHECK(rep.cops == 1);
        auto arena = arena_from_game(g);
        SimStats st;
        simulate_solve(arena, g.graph, rep.witness, &st);  // throws on unbounded plays
        CHECK(st.positions <= (long long)st.state_budget);
    }
}

TEST_CASE("simulated winner equals Zielonka on random games") {
    int done = 0;
    for (uint64_t seed = 1; done < 40 && seed < 400; ++seed) {
        RandomGameSpec spec;
        spec.positions = 6 + (int)(seed % 4);
        spec.max_color = 3;
        spec.class_size = 1;
        spec.seed = seed;
        auto g = gen_random(spec);
        auto nm = dag_width(g.graph, false);
        if (nm.cops > 3) continue;
        ++done;
        auto arena = arena_from_game(g);
        int zw = solve_parity(arena).win0.test(0) ? 0 : 1;
        SimStats st;
        int sw = simulate_solve(arena, g.graph, nm.witness, &st);
        CHECK(zw == sw);
        CHECK(st.positions <= (long long)st.state_budget);
    }
    CHECK(done == 40);
}
