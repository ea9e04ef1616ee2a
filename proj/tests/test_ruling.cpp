#include <doctest.h>

#include "dsssp/gen.hpp"
#include "dsssp/ruling.hpp"
#include "oracles.hpp"

using dsssp::Graph;
using dsssp::i64;
using dsssp::Range;

namespace {

// Re-verify the two definitional invariants from outside the module.
void check_ruling(const Graph& g, const std::vector<int>& U, i64 c,
                  const dsssp::RulingSetResult& r) {
    auto fw = oracles::floyd_warshall(g);
    for (size_t i = 0; i < r.members.size(); ++i)
        for (size_t j = i + 1; j < r.members.size(); ++j)
            CHECK(fw[r.members[i]][r.members[j]] >= c);
    for (int u : U) {
        i64 best = dsssp::INF64;
        for (int t : r.members) best = std::min(best, fw[u][t]);
        CHECK(best <= r.coverage_bound);
    }
}

}  // namespace

TEST_CASE("a singleton base set rules itself") {
    Graph g = dsssp::gen_path(4);
    auto r = dsssp::ruling_set(g, std::vector<int>{2}, 3, 1);
    CHECK(r.members == std::vector<int>{2});
}

TEST_CASE("hand trace: ids 1 (01) and 2 (10), unit edge, c=2") {
    // iteration 1 inspects the most significant of b=2 bits: node 1 has bit
    // 0 and beeps within distance c-1=1; node 2 has bit 1, hears it, drops.
    Graph g(3, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(0, 1, 1);  // connect node 0; it is not in U
    auto r = dsssp::ruling_set(g, std::vector<int>{1, 2}, 2, 1);
    CHECK(r.members == std::vector<int>{1});
    CHECK(r.b == 2);
    CHECK(r.rounds_used == r.b * (2 - 1));
    CHECK(r.coverage_bound == r.b * 2);
    check_ruling(g, {1, 2}, 2, r);
}

TEST_CASE("path of six unit nodes, everyone in U, c=3") {
    Graph g = dsssp::gen_path(6);
    std::vector<int> U = {0, 1, 2, 3, 4, 5};
    auto r = dsssp::ruling_set(g, U, 3, 1);
    CHECK(!r.members.empty());
    CHECK(r.b == 1 * dsssp::ceil_log2(6));
    check_ruling(g, U, 3, r);
}

TEST_CASE("invariants hold across fuzzed graphs, base sets, and parameters") {
    dsssp::SplitMix64 rng(606);
    for (int it = 0; it < 60; ++it) {
        Graph g = oracles::fuzz_connected(rng, 2, 22, 6);
        std::vector<int> U;
        for (int v = 0; v < g.n; ++v)
            if (rng.below(3) != 0) U.push_back(v);
        if (U.empty()) U.push_back((int)rng.below((uint64_t)g.n));
        i64 c = 1 + (i64)rng.below(5);
        i64 a = 1 + (i64)rng.below(2);
        auto r = dsssp::ruling_set(g, U, c, a);  // throws InvariantViolated on any breach
        check_ruling(g, U, c, r);
        CHECK(r.rounds_used == r.b * (c - 1));
        // members come from U
        for (int t : r.members)
            CHECK(std::find(U.begin(), U.end(), t) != U.end());
    }
}

TEST_CASE("the construction is a pure function of its inputs") {
    Graph g = dsssp::gen_random_connected(15, 30, 4, 8);
    std::vector<int> U = {1, 3, 4, 7, 9, 12, 14};
    auto a = dsssp::ruling_set(g, U, 3, 1);
    auto b = dsssp::ruling_set(g, U, 3, 1);
    CHECK(a.members == b.members);
    CHECK(a.rounds_used == b.rounds_used);
}

TEST_CASE("coverage repairs itself as c grows") {
    // with larger c fewer nodes survive, but the coverage radius bound b*c
    // grows in step; both invariants must keep holding
    Graph g = dsssp::gen_path(12, 3, 5);
    std::vector<int> U;
    for (int v = 0; v < 12; ++v) U.push_back(v);
    for (i64 c : {1, 2, 4, 8}) {
        auto r = dsssp::ruling_set(g, U, c, 1);
        check_ruling(g, U, c, r);
    }
}
