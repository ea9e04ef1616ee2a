#pragma once

#include <atomic>
#include <vector>

#include "dsssp/graph.hpp"

namespace dsssp {

// (alpha, beta)-ruling set for T subset of U: members pairwise at weighted
// distance >= alpha = c, and every node of U within weighted distance
// beta = a*c*ceil(log2 n) of T.

struct RulingSetResult {
    std::vector<int> members;   // ascending node ids
    int b = 0;                  // bit iterations = a * ceil(log2 n)
    i64 c = 0;
    i64 rounds_used = 0;        // b * (c - 1)
    i64 coverage_bound = 0;     // b * c
};

// Invocation/violation counters; the invariant checker runs on every call and
// throws on violation, the counters exist so test reports can show coverage.
struct RulingStats {
    static std::atomic<long long>& invocations() {
        static std::atomic<long long> v{0};
        return v;
    }
    static std::atomic<long long>& violations() {
        static std::atomic<long long> v{0};
        return v;
    }
};

// Bit-scheduled beeping construction. b = a*ceil(log2 n) iterations walk the
// id bits from the most significant down. In iteration j the surviving nodes
// whose j-th bit is 0 stay and beep to everything within weighted distance
// c-1; surviving nodes with bit 1 stay only if they hear no beep (no 0-bit
// survivor strictly closer than c). Distances are weighted throughout:
// "within c-1" is one bounded Dijkstra per iteration, charged as c-1 rounds.
template <class W>
RulingSetResult ruling_set(const BasicGraph<W>& g, const std::vector<int>& U, i64 c, int a) {
    if (c < 1) throw NonIntegralRange("ruling set needs c >= 1");
    if (a < 1) throw NonIntegralRange("ruling set needs a >= 1");
    RulingStats::invocations()++;

    int b = a * (g.n > 1 ? ceil_log2(g.n) : 1);
    for (int u : U) {
        if (u < 0 || u >= g.n) throw GraphError("ruling set member out of range");
        if (bitlen(u) > b)
            throw IdWidthExceeded("id " + std::to_string(u) + " needs more than " +
                                  std::to_string(b) + " bits");
    }

    std::vector<int> T = U;
    std::sort(T.begin(), T.end());
    for (int j = 1; j <= b && T.size() > 1; ++j) {
        int shift = b - j;  // iteration 1 looks at the most significant bit
        std::vector<int> beepers, next;
        for (int u : T)
            if (((u >> shift) & 1) == 0) beepers.push_back(u);
        if (beepers.empty() || beepers.size() == T.size()) continue;  // nobody drops
        std::vector<char> heard(g.n, 0);
        if (c > 1) {
            auto t = dijkstra_bounded(g, beepers, Range::finite(c - 1));
            for (int v = 0; v < g.n; ++v)
                if (t.reached(v)) heard[v] = 1;
        } else {
            for (int u : beepers) heard[u] = 1;
        }
        for (int u : T) {
            if (((u >> shift) & 1) == 0)
                next.push_back(u);
            else if (!heard[u])
                next.push_back(u);
        }
        T = std::move(next);
    }

    RulingSetResult res;
    res.members = T;
    res.b = b;
    res.c = c;
    res.rounds_used = (i64)b * (c - 1);
    res.coverage_bound = (i64)b * c;

    // Independence: no member sees another member within distance <= c-1.
    if (c > 1) {
        for (int u : T) {
            auto t = dijkstra_bounded(g, u, Range::finite(c - 1));
            for (int v : T)
                if (v != u && t.reached(v)) {
                    RulingStats::violations()++;
                    throw InvariantViolated("ruling set members " + std::to_string(u) + "," +
                                            std::to_string(v) + " closer than c");
                }
        }
    }
    // Coverage: every node of U within b*c of T.
    if (!U.empty()) {
        auto t = dijkstra_bounded(g, T, Range::finite(res.coverage_bound));
        for (int u : U)
            if (!t.reached(u)) {
                RulingStats::violations()++;
                throw InvariantViolated("ruling set does not cover node " + std::to_string(u) +
                                        " within b*c");
            }
    }
    return res;
}

}  // namespace dsssp
