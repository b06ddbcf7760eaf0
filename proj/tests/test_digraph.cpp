#include <doctest.h>

#include "helpers.hpp"
#include "iipg/digraph.hpp"
#include "iipg/generators.hpp"

using namespace iipg;

namespace {

DirectedGraph path3() {
    DirectedGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

DirectedGraph fig4_graph() { return gen_fig4().graph; }

}  // namespace

TEST_CASE("reach on a path") {
    auto g = path3();
    CHECK(reach(g, 0, g.empty_set()) == Bitset::of(3, {0, 1, 2}));
    CHECK(reach(g, 0, Bitset::of(3, {1})) == Bitset::of(3, {0}));
    CHECK(reach(g, Bitset::of(3, {0}), Bitset::of(3, {0})).none());  // sources minus blocked
}

TEST_CASE("reach matches the closure oracle on the figure graph") {
    auto g = fig4_graph();
    auto got = reach(g, 2, Bitset::of(6, {5}));
    auto want = testutil::reach_oracle(g.edges(), {2}, {5});
    CHECK(got.to_vector() == std::vector<int>(want.begin(), want.end()));
    CHECK(got == Bitset::of(6, {1, 2, 3, 4}));
}

TEST_CASE("reach rejects out-of-range ids") {
    auto g = path3();
    Bitset big(5);
    big.set(4);
    CHECK_THROWS_AS(reach(g, big, g.empty_set()), invalid_input);
    CHECK_THROWS_AS(g.check_vertex(7), invalid_input);
}

TEST_CASE("reach is a fixpoint containing its sources") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        auto g = testutil::random_digraph(6, 0.3, rng);
        Bitset src(6), blk(6);
        for (int v = 0; v < 6; ++v) {
            if (rng() % 3 == 0) src.set(v);
            if (rng() % 4 == 0) blk.set(v);
        }
        Bitset r = reach(g, src, blk);
        CHECK((src - blk).subset_of(r));
        Bitset again = g.post(r);
        again -= blk;
        again |= r;
        CHECK(again == r);
    }
}

TEST_CASE("scc_and_flap on cycles and cuts") {
    DirectedGraph g(2);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    CHECK(scc_and_flap(g, g.empty_set(), 0) == Bitset::of(2, {0, 1}));
    CHECK(scc_and_flap(g, Bitset::of(2, {1}), 0) == Bitset::of(2, {0}));
    CHECK_THROWS_AS(scc_and_flap(g, Bitset::of(2, {0}), 0), invalid_input);
}

TEST_CASE("scc_and_flap agrees with the mutual-reachability oracle on the double tree") {
    auto g = gen_double_tree(2).graph;
    int t1_root = 1;  // v0 = 0, then T1 root
    Bitset blocked(g.size());
    blocked.set(t1_root);
    for (int v = 0; v < g.size(); ++v) {
        if (v == t1_root) continue;
        auto comp = scc_and_flap(g, blocked, v);
        auto want = testutil::scc_oracle(g, {t1_root}, v);
        CHECK(comp.to_vector() == std::vector<int>(want.begin(), want.end()));
    }
}

TEST_CASE("scc partitions for a fixed blocked set") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        auto g = testutil::random_digraph(6, 0.35, rng);
        Bitset blk(6);
        if (rng() % 2) blk.set((int)(rng() % 6));
        for (int u = 0; u < 6; ++u)
            for (int v = 0; v < 6; ++v) {
                if (blk.test(u) || blk.test(v)) continue;
                auto cu = scc_and_flap(g, blk, u);
                auto cv = scc_and_flap(g, blk, v);
                CHECK((cu == cv || !(cu & cv).any()));
            }
    }
}

TEST_CASE("symmetric closure") {
    DirectedGraph g(2);
    g.add_edge(0, 1);
    auto h = symmetric_closure(g);
    CHECK(h.has_edge(0, 1));
    CHECK(h.has_edge(1, 0));
    // idempotence and vertex count on random graphs
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        auto r = testutil::random_digraph(7, 0.3, rng);
        auto c = symmetric_closure(r);
        auto cc = symmetric_closure(c);
        CHECK(cc.size() == r.size());
        CHECK(cc.edges() == c.edges());
    }
    // the figure graph closes to 12 directed edges
    CHECK(symmetric_closure(fig4_graph()).edge_count() == 12);
}

TEST_CASE("digraph text format round-trips") {
    auto g = fig4_graph();
    auto text = serialize_digraph(g);
    auto h = parse_digraph(text);
    CHECK(serialize_digraph(h) == text);
    CHECK_THROWS_AS(parse_digraph("graph 2\ne 0 5\n"), invalid_input);
    CHECK_THROWS_AS(parse_digraph("e 0 1\n"), invalid_input);
    CHECK_THROWS_AS(parse_digraph("graf 2\n"), invalid_input);
}

TEST_CASE("acyclicity check") {
    CHECK(is_acyclic(path3()));
    DirectedGraph l(1);
    l.add_edge(0, 0);
    CHECK(!is_acyclic(l));
    CHECK(!is_acyclic(fig4_graph()));  // 2 <-> 4 cycle
}
