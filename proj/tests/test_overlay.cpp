// Overlay networks: parameter derivation, node types, ruling-set centers,
// partial distance estimation, the finishing stage, and the end-to-end
// sequential pipeline, checked against frozen hand computations and
// definitional oracles.
#include <vector>

#include "doctest.h"
#include "dsssp/gen.hpp"
#include "dsssp/overlay.hpp"
#include "oracles.hpp"

using dsssp::Graph;
using dsssp::i64;
using dsssp::OverlayParams;
using dsssp::Rat;

// ------------------------------------------------------------------- params

TEST_CASE("overlay parameters: frozen derivation") {
    // n = 64, W = 4, eps = 1/2, ell = 8, a = 1 worked by hand:
    //   h = floor(4) = 4, stretch 1 + 2/eps = 5, h' = 20, log n = 6,
    //   beta_rs = (2*20+1)*6 = 246, h* = max(9*8*6, 246) = 432,
    //   k = 2*432 + 16 = 880, k' = 4400, eps_eff = 1/ceil(8/4) = 1/2.
    auto P = OverlayParams::derive(64, 4, Rat(1, 2), 8, 1);
    CHECK(P.h == 4);
    CHECK(P.h_prime == 20);
    CHECK(P.beta_rs == 246);
    CHECK(P.h_star == 432);
    CHECK(P.k == 880);
    CHECK(P.k_prime == 4400);
    CHECK(P.eps_eff == Rat(1, 2));
    CHECK(P.scale_count == 8);  // floor(log2(256))

    CHECK(P.rho(0) == Rat(1, 8));   // eps / h
    CHECK(P.rho(3) == Rat(1));      // eps 2^3 / h
    CHECK(P.phi(0) == Rat(1, 1760));

    // mu = 2 eps eps_eff beta_rs / h and the full accuracy chain
    CHECK(P.mu() == Rat(123, 4));
    CHECK(P.alpha(Rat(1, 2), Rat(1, 2)) == Rat(3375, 16));
}

TEST_CASE("overlay parameters: h clamp and effective accuracy") {
    // eps ell < 1 clamps h to 1; eps_eff = 1/ceil(ell/h) records the loss.
    auto P = OverlayParams::derive(16, 1, Rat(1, 4), 2, 1);
    CHECK(P.h == 1);
    CHECK(P.eps_eff == Rat(1, 2));
    CHECK(!(P.eps_eff < P.eps));  // effective accuracy is never tighter

    // no clamp when eps ell is integral and >= 1
    auto Q = OverlayParams::derive(16, 1, Rat(1, 2), 6, 1);
    CHECK(Q.h == 3);
    CHECK(Q.eps_eff == Rat(1, 2));  // ceil(6/3) = 2
}

TEST_CASE("overlay parameters: defaults and validation") {
    auto P = OverlayParams::defaults(100, 3);
    CHECK(P.eps == Rat(1, 7));  // 1 / ceil(log2 100)
    CHECK(P.ell == 10);         // ceil(sqrt(100))
    CHECK(P.a == 1);
    CHECK(P.h == 1);            // floor(10/7)
    CHECK_NOTHROW(P.check());

    CHECK_THROWS_AS(OverlayParams::derive(0, 1, Rat(1), 1, 1),
                    dsssp::PreconditionViolated);
    CHECK_THROWS_AS(OverlayParams::derive(4, 0, Rat(1), 1, 1),
                    dsssp::PreconditionViolated);
    CHECK_THROWS_AS(OverlayParams::derive(4, 1, Rat(2), 1, 1),
                    dsssp::PreconditionViolated);
    CHECK_THROWS_AS(OverlayParams::derive(4, 1, Rat(1), 0, 1),
                    dsssp::PreconditionViolated);
    CHECK_THROWS_AS(OverlayParams::derive(4, 1, Rat(1), 5, 1),  // ell > n
                    dsssp::PreconditionViolated);
    CHECK_THROWS_AS(OverlayParams::derive(4, 1, Rat(1), 2, 0),
                    dsssp::PreconditionViolated);

    auto bad = OverlayParams::derive(16, 1, Rat(1, 2), 4, 1);
    bad.h_star = 0;  // drops below beta_rs
    CHECK_THROWS_AS(bad.check(), dsssp::InvariantViolated);
}

// -------------------------------------------------------------------- types

TEST_CASE("types: single node and unit clique") {
    SUBCASE("lone node has type 0 when h = 1") {
        Graph g(1, 1);
        auto P = OverlayParams::derive(1, 1, Rat(1), 1, 1);
        REQUIRE(P.h == 1);
        auto t = dsssp::compute_types(g, P);
        CHECK(t.t[0] == 0);
    }
    SUBCASE("lone node stays undefined when h > 1") {
        // h > 1 cannot be derived for n = 1 (ell <= n), so build by hand:
        // no ball around a single node ever reaches two nodes.
        Graph g(1, 1);
        auto P = OverlayParams::derive(1, 1, Rat(1), 1, 1);
        P.h = 2;
        P.h_prime = 6;
        auto t = dsssp::compute_types(g, P);
        CHECK(t.t[0] == dsssp::TypeAssignment::UNDEF);
    }
    SUBCASE("unit clique of size >= h is all type 0") {
        // Rounded unit weight at scale 0 is ceil(h/eps) <= h', so the whole
        // clique sits inside every h'-ball already at the lowest scale.
        Graph g(6, 1);
        for (int u = 0; u < 6; ++u)
            for (int v = u + 1; v < 6; ++v) g.add_edge(u, v, 1);
        auto P = OverlayParams::derive(6, 1, Rat(1, 2), 4, 1);
        REQUIRE(P.h == 2);
        auto t = dsssp::compute_types(g, P);
        for (int u = 0; u < 6; ++u) CHECK(t.t[u] == 0);
    }
}

TEST_CASE("types: agreement with the all-scale ball oracle") {
    dsssp::SplitMix64 rng(0x7e9e5ULL);
    for (int trial = 0; trial < 14; ++trial) {
        Graph g = oracles::fuzz_connected(rng, 3, 15, 4);
        i64 ell = 1 + (i64)rng.below((uint64_t)g.n);
        Rat eps = trial % 2 == 0 ? Rat(1, 2) : Rat(1, 3);
        auto P = OverlayParams::derive(g.n, 4, eps, ell, 1);
        auto got = dsssp::compute_types(g, P);
        auto want = oracles::brute_types(g, P);
        for (int u = 0; u < g.n; ++u) CHECK(got.t[u] == want[u]);
        // connected graph with n >= h: the top scale rounds everything to
        // unit weights, so every node qualifies somewhere
        if (g.n >= P.h)
            for (int u = 0; u < g.n; ++u) CHECK(got.t[u] != dsssp::TypeAssignment::UNDEF);
    }
    Graph g(3, 1);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    auto P = OverlayParams::derive(4, 1, Rat(1), 2, 1);
    CHECK_THROWS_AS(dsssp::compute_types(g, P), dsssp::PreconditionViolated);
}

TEST_CASE("hitting lemma on sampled ell-edge path segments") {
    // Every segment of exactly ell edges must contain a node u with
    // 2^{t(u)} <= 2 eps_eff w(segment).  The unclamped paper form
    // (eps instead of eps_eff) is evaluated but only reported.
    dsssp::SplitMix64 rng(0x4177ULL);
    int paper_hits = 0, checks = 0;
    for (int trial = 0; trial < 8; ++trial) {
        int n = 10 + (int)rng.below(8);
        i64 W = 1 + (i64)rng.below(5);
        Graph g = dsssp::gen_path(n, W, rng.next());
        i64 ell = 2 + (i64)rng.below(4);
        auto P = OverlayParams::derive(g.n, W, Rat(1, 2), ell, 1);
        auto types = dsssp::compute_types(g, P);
        for (int start = 0; start + ell < n; ++start) {
            std::vector<int> seg;
            for (i64 j = 0; j <= ell; ++j) seg.push_back(start + (int)j);
            auto c = dsssp::check_hitting_lemma(g, types, P, seg);
            CHECK(c.ok);
            CHECK(!(c.bound < c.lhs));
            ++checks;
            if (c.paper_ok) ++paper_hits;
        }
    }
    CHECK(checks > 0);
    INFO("paper-form hit rate ", paper_hits, "/", checks);

    // malformed segments are rejected
    Graph g = dsssp::gen_path(6, 1);
    auto P = OverlayParams::derive(6, 1, Rat(1, 2), 3, 1);
    auto types = dsssp::compute_types(g, P);
    CHECK_THROWS_AS(dsssp::check_hitting_lemma(g, types, P, {0, 1}),
                    dsssp::PreconditionViolated);
    CHECK_THROWS_AS(dsssp::check_hitting_lemma(g, types, P, {0, 1, 3, 4}),
                    dsssp::PreconditionViolated);  // 1-3 is not an edge
}

// ------------------------------------------------------------------ centers

TEST_CASE("centers: singleton graph and source inclusion") {
    Graph g(1, 1);
    auto P = OverlayParams::derive(1, 1, Rat(1), 1, 1);
    auto types = dsssp::compute_types(g, P);
    auto sel = dsssp::select_centers(g, types, P, 0);
    REQUIRE(sel.centers.size() == 1);
    CHECK(sel.centers[0] == 0);

    CHECK_THROWS_AS(dsssp::select_centers(g, types, P, 3),
                    dsssp::PreconditionViolated);
}

TEST_CASE("centers: structure on fuzzed graphs") {
    dsssp::SplitMix64 rng(0xce47e25ULL);
    for (int trial = 0; trial < 12; ++trial) {
        Graph g = oracles::fuzz_connected(rng, 4, 21, 4);
        i64 ell = 1 + (i64)rng.below((uint64_t)g.n);
        auto P = OverlayParams::derive(g.n, 4, Rat(1, 2), ell, 1);
        auto types = dsssp::compute_types(g, P);
        int s = (int)rng.below((uint64_t)g.n);
        auto sel = dsssp::select_centers(g, types, P, s);

        // sorted unique ids, source always present
        CHECK(std::is_sorted(sel.centers.begin(), sel.centers.end()));
        CHECK(std::adjacent_find(sel.centers.begin(), sel.centers.end()) ==
              sel.centers.end());
        CHECK(std::find(sel.centers.begin(), sel.centers.end(), s) != sel.centers.end());

        // per-type members really carry that type; all end up centers
        REQUIRE(sel.per_type.size() == (std::size_t)(P.scale_count + 1));
        std::size_t nonempty = 0;
        for (i64 i = 0; i <= P.scale_count; ++i) {
            if (!sel.per_type[(std::size_t)i].empty()) ++nonempty;
            for (int v : sel.per_type[(std::size_t)i]) {
                CHECK(types.t[v] == i);
                CHECK(std::find(sel.centers.begin(), sel.centers.end(), v) !=
                      sel.centers.end());
            }
        }
        // one ruling-set record per non-empty type, in matching order
        REQUIRE(sel.rulings.size() == nonempty);
        REQUIRE(sel.ruling_types.size() == nonempty);
        for (std::size_t j = 0; j < nonempty; ++j)
            CHECK(sel.per_type[(std::size_t)sel.ruling_types[j]] == sel.rulings[j].members);

        // |T_i| <= floor(n / h): asserted inside, re-checked here
        for (const auto& ti : sel.per_type)
            CHECK((i64)ti.size() <= g.n / P.h);
    }
}

// ---------------------------------------------- partial distance estimation

TEST_CASE("distance estimation: two-node graph by hand") {
    Graph g(2, 7);
    g.add_edge(0, 1, 7);
    auto P = OverlayParams::derive(2, 7, Rat(1, 2), 2, 1);
    auto net = dsssp::distances_to_centers(g, {0, 1}, P);

    CHECK(net.dhat[0][net.index_of(0)] == Rat(0));
    CHECK(net.dhat[1][net.index_of(1)] == Rat(0));
    const Rat& est = net.dhat[1][net.index_of(0)];
    CHECK(!(est < Rat(7)));                    // never under the true distance
    CHECK(!(Rat(3, 2) * Rat(7) < est));        // within (1+eps) d
    // symmetric query through the other center
    CHECK(net.dhat[0][net.index_of(1)] == est);

    CHECK_THROWS_AS(net.index_of(-1), dsssp::PreconditionViolated);
    CHECK_THROWS_AS(dsssp::distances_to_centers(g, {}, P),
                    dsssp::PreconditionViolated);
    CHECK_THROWS_AS(dsssp::distances_to_centers(g, {5}, P),
                    dsssp::PreconditionViolated);
}

TEST_CASE("distance estimation: sandwich against Dijkstra on fuzzed graphs") {
    // distances_to_centers asserts d <= dhat <= (1+eps) d^k internally on
    // every run; this re-derives the bracket externally for every entry.
    dsssp::SplitMix64 rng(0xbde0ULL);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = oracles::fuzz_connected(rng, 3, 17, 5);
        auto P = OverlayParams::derive(g.n, 5, Rat(1, 2),
                                       1 + (i64)rng.below((uint64_t)g.n), 1);
        auto types = dsssp::compute_types(g, P);
        int s = (int)rng.below((uint64_t)g.n);
        auto sel = dsssp::select_centers(g, types, P, s);
        auto net = dsssp::distances_to_centers(g, sel.centers, P);
        auto exact = oracles::floyd_warshall(g);
        for (int ci = 0; ci < (int)net.centers.size(); ++ci) {
            int v = net.centers[ci];
            for (int u = 0; u < g.n; ++u) {
                const Rat& est = net.dhat[u][ci];
                REQUIRE(!est.is_inf());  // connected graph, k covers it
                CHECK(!(est < Rat(exact[u][v])));
                CHECK(!((Rat(1) + P.eps) * Rat(exact[u][v]) < est));
            }
        }
    }
}

TEST_CASE("overlay graph integerization") {
    Graph g = dsssp::gen_path(6, 3, 17);
    auto P = OverlayParams::derive(6, 3, Rat(1, 2), 3, 1);
    auto types = dsssp::compute_types(g, P);
    auto sel = dsssp::select_centers(g, types, P, 0);
    auto net = dsssp::distances_to_centers(g, sel.centers, P);
    auto gi = dsssp::overlay_graph_int(net);
    CHECK(gi.sigma == 2 * P.k);  // den(eps) * k
    REQUIRE(gi.g.n == (int)net.centers.size());
    // every stored weight divided by sigma reproduces the dhat it came from
    for (const auto& e : gi.g.edges) {
        const Rat& want = net.dhat[net.centers[e.u]][e.v];
        CHECK(Rat(e.w, gi.sigma) == want);
        CHECK(e.w >= 1);
    }
    CHECK(gi.W >= 1);
}

// ----------------------------------------------------------------- finishing

TEST_CASE("finishing stage: two centers by hand") {
    Graph g(2, 7);
    g.add_edge(0, 1, 7);
    auto P = OverlayParams::derive(2, 7, Rat(1, 2), 2, 1);
    auto net = dsssp::distances_to_centers(g, {0, 1}, P);
    dsssp::HopSetEdges empty;
    empty.n = 2;
    auto dt = dsssp::finish_sssp(net, empty, 0, /*hop_bound=*/1, Rat(1, 2));
    REQUIRE(dt.size() == 2);
    CHECK(dt[net.index_of(0)] == Rat(0));
    const Rat& far = dt[net.index_of(1)];
    const Rat& edge = net.dhat[1][net.index_of(0)];
    CHECK(!(far < edge));                      // >= d(s, v, G')
    CHECK(!(Rat(3, 2) * edge < far));          // <= (1+eps) d^1

    CHECK_THROWS_AS(dsssp::finish_sssp(net, empty, 0, 0, Rat(1, 2)),
                    dsssp::PreconditionViolated);
    CHECK_THROWS_AS(dsssp::finish_sssp(net, empty, 0, 1, Rat(2)),
                    dsssp::PreconditionViolated);
}

TEST_CASE("end-to-end overlay pipeline: sandwich and determinism") {
    dsssp::SplitMix64 rng(0x0e2eULL);
    for (int trial = 0; trial < 6; ++trial) {
        Graph g = oracles::fuzz_connected(rng, 4, 19, 4);
        i64 ell = 1 + (i64)rng.below((uint64_t)g.n);
        auto P = OverlayParams::derive(g.n, 4, Rat(1, 2), ell, 1);
        int s = (int)rng.below((uint64_t)g.n);
        auto R = dsssp::overlay_sssp(g, s, P, Rat(1, 2), Rat(1, 2));
        CHECK(R.alpha == P.alpha(Rat(1, 2), Rat(1, 2)));
        CHECK(R.estimate[s] == Rat(0));

        auto exact = oracles::floyd_warshall(g);
        for (int u = 0; u < g.n; ++u) {
            if (u == s) continue;
            REQUIRE(!R.estimate[u].is_inf());
            CHECK(!(R.estimate[u] < Rat(exact[s][u])));          // never under
            CHECK(!(R.alpha * Rat(exact[s][u]) < R.estimate[u]));  // within alpha
        }

        // byte-for-byte determinism of the full pipeline
        auto R2 = dsssp::overlay_sssp(g, s, P, Rat(1, 2), Rat(1, 2));
        CHECK(R2.estimate == R.estimate);
        CHECK(R2.dtilde == R.dtilde);
        CHECK(R2.centers.centers == R.centers.centers);
    }
}

// ------------------------------------------------------------ path recovery

TEST_CASE("path extraction with exact estimates") {
    SUBCASE("path graph recovers the path itself") {
        Graph g = dsssp::gen_path(6, 4, 99);
        auto d = dsssp::dijkstra_bounded(g, 0);
        std::vector<Rat> est(g.n);
        for (int v = 0; v < g.n; ++v) est[v] = Rat(d.dist[v]);
        auto path = dsssp::extract_path(g, est, 0, 5);
        REQUIRE(path.found);
        CHECK(path.nodes == std::vector<int>{0, 1, 2, 3, 4, 5});
        CHECK(path.weight == d.dist[5]);
    }
    SUBCASE("u equals s") {
        Graph g = dsssp::gen_path(3, 1);
        std::vector<Rat> est = {Rat(0), Rat(1), Rat(2)};
        auto path = dsssp::extract_path(g, est, 0, 0);
        REQUIRE(path.found);
        CHECK(path.nodes == std::vector<int>{0});
        CHECK(path.weight == 0);
    }
    SUBCASE("exact estimates always walk home") {
        dsssp::SplitMix64 rng(0xe8ac7ULL);
        for (int trial = 0; trial < 15; ++trial) {
            Graph g = oracles::fuzz_connected(rng, 3, 21, 6);
            int s = (int)rng.below((uint64_t)g.n);
            auto d = dsssp::dijkstra_bounded(g, s);
            std::vector<Rat> est(g.n);
            for (int v = 0; v < g.n; ++v) est[v] = Rat(d.dist[v]);
            for (int u = 0; u < g.n; ++u) {
                auto path = dsssp::extract_path(g, est, s, u);
                REQUIRE(path.found);
                CHECK(path.weight == d.dist[u]);  // exact estimates: optimal walk
                CHECK(path.nodes.front() == s);
                CHECK(path.nodes.back() == u);
                // consecutive nodes really are adjacent
                for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i)
                    CHECK(g.has_edge(path.nodes[i], path.nodes[i + 1]));
            }
        }
    }
    SUBCASE("useless estimates report where the walk stuck") {
        Graph g(2, 5);
        g.add_edge(0, 1, 5);
        std::vector<Rat> est = {Rat(0), Rat(0)};  // no edge can satisfy the step rule
        auto path = dsssp::extract_path(g, est, 0, 1);
        CHECK_FALSE(path.found);
        CHECK(path.stuck_at == 1);
    }
}

TEST_CASE("path extraction with approximate estimates stays within them") {
    // With alpha-approximate estimates a successful walk telescopes:
    // weight <= est[u] - est[s] = est[u]; it can never beat the true distance.
    dsssp::SplitMix64 rng(0x9a7bULL);
    int found = 0, total = 0;
    for (int trial = 0; trial < 5; ++trial) {
        Graph g = oracles::fuzz_connected(rng, 4, 15, 4);
        auto P = OverlayParams::derive(g.n, 4, Rat(1, 2),
                                       1 + (i64)rng.below((uint64_t)g.n), 1);
        int s = (int)rng.below((uint64_t)g.n);
        auto R = dsssp::overlay_sssp(g, s, P, Rat(1, 2), Rat(1, 2));
        auto d = dsssp::dijkstra_bounded(g, s);
        for (int u = 0; u < g.n; ++u) {
            if (u == s) continue;
            ++total;
            auto path = dsssp::extract_path(g, R.estimate, s, u);
            if (!path.found) continue;
            ++found;
            CHECK(path.weight >= d.dist[u]);
            CHECK(!(R.estimate[u] < Rat(path.weight)));
        }
    }
    CHECK(total > 0);
    INFO("extraction success ", found, "/", total);
}

// ------------------------------------------------------------------ diameter

TEST_CASE("approximate weighted diameter") {
    SUBCASE("path from an endpoint is exact") {
        Graph g = dsssp::gen_path(6, 1);
        auto d = dsssp::dijkstra_bounded(g, 0);
        std::vector<Rat> est(g.n);
        for (int v = 0; v < g.n; ++v) est[v] = Rat(d.dist[v]);
        CHECK(dsssp::approx_weighted_diameter(est) == Rat(5));
    }
    SUBCASE("star from the hub hits the WD/2 floor exactly") {
        Graph g(5, 1);
        for (int leaf = 1; leaf < 5; ++leaf) g.add_edge(0, leaf, 1);
        auto d = dsssp::dijkstra_bounded(g, 0);
        std::vector<Rat> est(g.n);
        for (int v = 0; v < g.n; ++v) est[v] = Rat(d.dist[v]);
        Rat approx = dsssp::approx_weighted_diameter(est);
        CHECK(approx == Rat(1));  // true WD is 2 (leaf to leaf)
        CHECK(!(Rat(2) < Rat(2) * approx));  // 2 * approx >= WD, tight here
    }
    SUBCASE("exact eccentricity brackets the true diameter") {
        dsssp::SplitMix64 rng(0xd1a3ULL);
        for (int trial = 0; trial < 10; ++trial) {
            Graph g = oracles::fuzz_connected(rng, 3, 17, 5);
            auto exact = oracles::floyd_warshall(g);
            i64 wd = 0;
            for (int u = 0; u < g.n; ++u)
                for (int v = 0; v < g.n; ++v)
                    if (exact[u][v] < dsssp::INF64) wd = std::max(wd, exact[u][v]);
            int s = (int)rng.below((uint64_t)g.n);
            std::vector<Rat> est(g.n);
            for (int v = 0; v < g.n; ++v) est[v] = Rat(exact[s][v]);
            Rat approx = dsssp::approx_weighted_diameter(est);
            CHECK(!(Rat(wd) < approx));            // ecc <= WD
            CHECK(!(Rat(2) * approx < Rat(wd)));   // 2 ecc >= WD
        }
    }
    SUBCASE("infinite entries are ignored") {
        std::vector<Rat> est = {Rat(0), Rat::inf(), Rat(3)};
        CHECK(dsssp::approx_weighted_diameter(est) == Rat(3));
    }
}
