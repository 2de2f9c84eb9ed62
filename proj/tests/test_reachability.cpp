#include <doctest.h>

#include "cgm/oracle.hpp"
#include "cgm/reachability.hpp"
#include "fixtures.hpp"

using namespace cgm;

TEST_CASE("chain closure") {
    const auto r = reachability(fixtures::chain3());
    for (int i = 0; i < 3; ++i) CHECK(r.get(i, i));
    CHECK(r.get(0, 1));
    CHECK(r.get(0, 2));
    CHECK(r.get(1, 2));
    CHECK_FALSE(r.get(1, 0));
    CHECK_FALSE(r.get(2, 0));
    CHECK_FALSE(r.get(2, 1));
}

TEST_CASE("edgeless graph closes to the identity") {
    const auto r = reachability(fixtures::edgeless(4));
    CHECK(r.reach.popcount() == 4);
    for (int i = 0; i < 4; ++i) CHECK(r.get(i, i));
}

TEST_CASE("undirected chain reaches everywhere") {
    const auto r = reachability(fixtures::und3());
    CHECK(r.reach.popcount() == 9);
}

TEST_CASE("matrix closure equals depth-first closure on random graphs") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 11);  // up to 12 nodes
        const auto g = fixtures::random_digraph(n, 0.25, rng);
        CHECK(reachability(g).reach == oracle::reach_oracle(g).reach);
    }
}

TEST_CASE("closure is idempotent") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 100; ++rep) {
        const auto g = fixtures::random_digraph(8, 0.3, rng);
        auto closed = reachability(g).reach;
        // Re-interpret the closure (diagonal stripped) as a graph.
        BitMatrix as_adj = closed;
        for (int i = 0; i < 8; ++i) as_adj.set(i, i, false);
        CHECK(reachability(CausalGraph::make(std::move(as_adj))).reach == closed);
    }
}

TEST_CASE("adding an edge never clears a reach bit") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        const auto g = fixtures::random_digraph(7, 0.2, rng);
        const auto before = reachability(g).reach;
        BitMatrix grown = g.adj();
        const int i = static_cast<int>(rng() % 7);
        const int j = static_cast<int>((i + 1 + rng() % 6) % 7);
        if (i == j) continue;
        grown.set(i, j);
        const auto after = reachability(CausalGraph::make(std::move(grown))).reach;
        for (int a = 0; a < 7; ++a)
            for (int b = 0; b < 7; ++b)
                if (before.get(a, b)) CHECK(after.get(a, b));
    }
}
