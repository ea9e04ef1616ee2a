#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "dsssp/gen.hpp"
#include "dsssp/graph.hpp"
#include "oracles.hpp"

using dsssp::Graph;
using dsssp::i64;
using dsssp::INF64;
using dsssp::Range;
using dsssp::Rat;

namespace {
Graph path3_unit() {
    Graph g(3, 1);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    return g;
}
}  // namespace

TEST_CASE("graph construction enforces the basic invariants") {
    CHECK_THROWS_AS(Graph(0, 1), dsssp::GraphError);
    Graph g(3, 5);
    CHECK_THROWS_AS(g.add_edge(0, 0, 1), dsssp::GraphError);   // self loop
    CHECK_THROWS_AS(g.add_edge(0, 1, 0), dsssp::GraphError);   // weight < 1
    CHECK_THROWS_AS(g.add_edge(0, 1, 6), dsssp::GraphError);   // weight > W
    CHECK_THROWS_AS(g.add_edge(0, 3, 1), dsssp::GraphError);   // id out of range
    g.add_edge(0, 1, 5);
    CHECK_THROWS_AS(g.add_edge(1, 0, 2), dsssp::GraphError);   // duplicate pair
    CHECK(g.m() == 1);
}

TEST_CASE("dijkstra_bounded on the unit path, unbounded and cut at R=1") {
    Graph g = path3_unit();
    auto t = dsssp::dijkstra_bounded(g, 0, Range::inf());
    CHECK(t.dist == std::vector<i64>{0, 1, 2});
    CHECK(t.parent[1] == 0);
    CHECK(t.parent[2] == 1);

    auto cut = dsssp::dijkstra_bounded(g, 0, Range::finite(1));
    CHECK(cut.dist == std::vector<i64>{0, 1, INF64});
    CHECK_FALSE(cut.reached(2));
}

TEST_CASE("dijkstra matches Floyd-Warshall on random 8-node graphs") {
    for (uint64_t seed : {11u, 12u, 13u, 14u}) {
        Graph g = dsssp::gen_random_connected(8, 14, 9, seed);
        auto fw = oracles::floyd_warshall(g);
        for (int s = 0; s < g.n; ++s) {
            auto t = dsssp::dijkstra_bounded(g, s, Range::inf());
            CHECK(t.dist == fw[s]);
        }
    }
}

TEST_CASE("dijkstra parent ties break toward the smaller parent id") {
    // 0-2 and 1-2 both weight 1, 0-1 weight 2: node 2 at distance 1 from both
    // ends; from source 0 node 1 is reachable at distance 2 via 0 directly or
    // via 2; the tie on dist[1] must pick parent 0 (the smaller id).
    Graph g(3, 2);
    g.add_edge(0, 1, 2);
    g.add_edge(0, 2, 1);
    g.add_edge(1, 2, 1);
    auto t = dsssp::dijkstra_bounded(g, 0, Range::inf());
    CHECK(t.dist[1] == 2);
    CHECK(t.parent[1] == 0);
}

TEST_CASE("bellman_ford_hops: unit path and the weighted triangle") {
    Graph g = path3_unit();
    CHECK(dsssp::bellman_ford_hops(g, 0, 1) == std::vector<i64>{0, 1, INF64});
    CHECK(dsssp::bellman_ford_hops(g, 0, 2) == std::vector<i64>{0, 1, 2});
    CHECK(dsssp::bellman_ford_hops(g, 0, 0) == std::vector<i64>{0, INF64, INF64});

    Graph tri(3, 3);
    tri.add_edge(0, 1, 1);
    tri.add_edge(1, 2, 1);
    tri.add_edge(0, 2, 3);
    CHECK(dsssp::bellman_ford_hops(tri, 0, 1)[2] == 3);  // direct edge only
    CHECK(dsssp::bellman_ford_hops(tri, 0, 2)[2] == 2);  // two-hop detour wins
}

TEST_CASE("bellman_ford_hops equals min-plus matrix powers") {
    for (uint64_t seed : {21u, 22u}) {
        Graph g = dsssp::gen_random_connected(9, 16, 7, seed);
        for (i64 h : {0, 1, 2, 3, 5, 9}) {
            auto mp = oracles::minplus_hop_table(g, h);
            for (int s = 0; s < g.n; ++s) CHECK(dsssp::bellman_ford_hops(g, s, h) == mp[s]);
        }
    }
}

TEST_CASE("hop-distance monotonicity and convergence to true distance") {
    Graph g = dsssp::gen_random_connected(10, 20, 5, 31);
    auto exact = dsssp::dijkstra_bounded(g, 0, Range::inf());
    std::vector<i64> prev = dsssp::bellman_ford_hops(g, 0, 0);
    for (i64 h = 1; h <= g.n; ++h) {
        auto cur = dsssp::bellman_ford_hops(g, 0, h);
        for (int v = 0; v < g.n; ++v) CHECK(cur[v] <= prev[v]);
        prev = cur;
    }
    CHECK(prev == exact.dist);
}

TEST_CASE("round_weights: ceiling arithmetic and the rounding-lemma instance") {
    Graph g(2, 5);
    g.add_edge(0, 1, 5);
    CHECK(dsssp::round_weights(g, Rat(2)).edges[0].w == 3);
    Graph h(2, 1);
    h.add_edge(0, 1, 1);
    CHECK(dsssp::round_weights(h, Rat(1)).edges[0].w == 1);

    // path 0-1-2, weights (3,3): eps = 1, hop budget 2, scale i = 2 (rho = 2)
    Graph p(3, 3);
    p.add_edge(0, 1, 3);
    p.add_edge(1, 2, 3);
    Graph pi = dsssp::round_weights(p, Rat(2));
    CHECK(pi.edges[0].w == 2);
    CHECK(pi.edges[1].w == 2);
    i64 d_rounded = dsssp::dijkstra_bounded(pi, 0, Range::inf()).dist[2];
    CHECK(d_rounded == 4);
    i64 d_hop = dsssp::bellman_ford_hops(p, 0, 2)[2];
    CHECK(Rat(2) * Rat(d_rounded) == Rat(8));
    CHECK(Rat(8) <= Rat(2) * Rat(d_hop));            // rho d(G_i) <= (1+eps) d^h
    CHECK(d_rounded <= (1 + 2) * 2);                 // d(G_i) <= (1+2/eps) h
    CHECK(Rat(6) <= Rat(2) * Rat(d_rounded));        // rho d(G_i) >= d(G)
}

TEST_CASE("rounding sandwich holds on every pair of small random graphs") {
    // Exhaustive n <= 12 coverage lives in the acceptance binary; this is the
    // working subset exercised on every unit-test run.
    for (uint64_t seed : {41u, 42u}) {
        Graph g = dsssp::gen_random_connected(7, 12, 6, seed);
        auto fw = oracles::floyd_warshall(g);
        for (i64 h : {2, 4}) {
            Rat eps(1, 2);
            for (int u = 0; u < g.n; ++u)
                for (int v = 0; v < g.n; ++v) {
                    i64 dh = dsssp::bellman_ford_hops(g, u, h)[v];
                    if (dh >= INF64 || dh == 0) continue;
                    int i = (int)dsssp::floor_log2(dh);
                    for (int probe = i; probe <= i + 1; ++probe) {
                        if ((i64(1) << probe) > dh) break;
                        Rat rho = eps * Rat(i64(1) << probe) / Rat(h);
                        Graph gi = dsssp::round_weights(g, rho);
                        i64 di = dsssp::dijkstra_bounded(gi, u, Range::inf()).dist[v];
                        CHECK(Rat(fw[u][v]) <= rho * Rat(di));
                        CHECK(Rat(di) <= (Rat(1) + Rat(2) / eps) * Rat(h));
                        CHECK(rho * Rat(di) <= (Rat(1) + eps) * Rat(dh));
                    }
                }
        }
    }
}

TEST_CASE("hop_diameter: path, clique, grid, and the disconnected error") {
    CHECK(dsssp::hop_diameter(dsssp::gen_path(4)) == 3);
    Graph k5(5, 1);
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) k5.add_edge(u, v, 1);
    CHECK(dsssp::hop_diameter(k5) == 1);
    CHECK(dsssp::hop_diameter(dsssp::gen_grid(3)) == 4);

    Graph disc(3, 1);
    disc.add_edge(0, 1, 1);
    CHECK_THROWS_AS(dsssp::hop_diameter(disc), dsssp::DisconnectedGraph);
    CHECK_FALSE(dsssp::is_connected(disc));
}

TEST_CASE("edge-list round trip preserves the graph exactly") {
    Graph g = dsssp::gen_random_connected(12, 24, 30, 77);
    std::ostringstream os;
    dsssp::write_edge_list(os, g);
    std::istringstream is(os.str());
    Graph back = dsssp::read_edge_list(is);
    CHECK(back.n == g.n);
    CHECK(back.max_weight == g.max_weight);
    REQUIRE(back.m() == g.m());
    // the writer canonicalizes edge order, so compare as sorted sets
    auto canon = [](const Graph& x) {
        std::vector<std::tuple<int, int, i64>> out;
        for (const auto& e : x.edges)
            out.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.w});
        std::sort(out.begin(), out.end());
        return out;
    };
    CHECK(canon(back) == canon(g));
}

TEST_CASE("edge-list parser reports the offending line") {
    auto message = [](const std::string& text) {
        std::istringstream is(text);
        try {
            dsssp::read_edge_list(is);
        } catch (const dsssp::GraphError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("garbage\n").find("line 1") != std::string::npos);
    CHECK(message("2 1 5\n0 1 bad\n").find("line 2") != std::string::npos);
    CHECK(message("2 2 5\n0 1 2\n").find("declared 2 edges but found 1") != std::string::npos);
    // comments and blank lines do not disturb the numbering
    CHECK(message("# header comment\n2 1 5\n\n0 1 4\n") == "no error");
    CHECK(message("2 1 5\n# note\n0 x 1\n").find("line 3") != std::string::npos);
}

TEST_CASE("distance tables are identical across thread counts") {
    Graph g = dsssp::gen_random_connected(30, 70, 12, 99);
    auto run = [&] {
        std::vector<std::vector<i64>> all;
        for (int s = 0; s < g.n; ++s) all.push_back(dsssp::dijkstra_bounded(g, s, Range::inf()).dist);
        return all;
    };
    setenv("HOPSET_THREADS", "1", 1);
    auto one = run();
    setenv("HOPSET_THREADS", "3", 1);
    auto three = run();
    unsetenv("HOPSET_THREADS");
    CHECK(one == three);
    CHECK(one == run());
}
