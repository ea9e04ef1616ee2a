#pragma once

// Cluster hierarchies in the Thorup-Zwick style, made deterministic: the
// sampled center sets are replaced by greedy hitting sets over detection
// lists.  A priority hierarchy V = A_0 >= A_1 >= ... >= A_p = {} assigns each
// node the largest level containing it; the cluster of a center v at priority
// i collects every u that is strictly closer to v than to all of A_{i+1}
// (within range R).  Pruned bounded searches recover exactly the clusters of
// the set-theoretic definition.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dsssp/detection.hpp"
#include "dsssp/errors.hpp"
#include "dsssp/graph.hpp"
#include "dsssp/rational.hpp"
#include "dsssp/util.hpp"

namespace dsssp {

// Greedy hitting set over a collection of non-empty sets of node ids.
// Repeatedly picks the element contained in the most not-yet-hit sets,
// breaking ties toward the smallest id; gives the classic (1 + ln n)
// approximation guarantee.  An empty collection is trivially hit by the
// empty set; a collection containing an empty set is unhittable.
inline std::vector<int> greedy_hitting_set(const std::vector<std::vector<int>>& sets) {
    if (sets.empty()) return {};
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].empty())
            throw Unhittable("hitting set: member set " + std::to_string(i) + " is empty");
    }
    // occurrence lists: element -> indices of sets containing it
    std::map<int, std::vector<int>> occ;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::set<int> dedup(sets[i].begin(), sets[i].end());
        for (int x : dedup) occ[x].push_back((int)i);
    }
    std::vector<char> hit(sets.size(), 0);
    std::size_t remaining = sets.size();
    std::vector<int> chosen;
    while (remaining > 0) {
        int best = -1;
        std::size_t best_gain = 0;
        for (const auto& [x, idxs] : occ) {
            std::size_t gain = 0;
            for (int i : idxs)
                if (!hit[i]) ++gain;
            if (gain > best_gain) {  // map iterates ids ascending: ties keep smallest
                best_gain = gain;
                best = x;
            }
        }
        if (best < 0) throw Unhittable("hitting set: no element covers the remaining sets");
        chosen.push_back(best);
        for (int i : occ[best]) {
            if (!hit[i]) {
                hit[i] = 1;
                --remaining;
            }
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

struct LevelReport {
    int level = 0;
    i64 size = 0;        // |A_level|
    double bound = 0.0;  // n^{1 - level/p}, reported only
    bool within = false;
};

struct PriorityHierarchy {
    int p = 1;       // number of levels; A_p = {} by convention
    Range range;     // detection range used when building
    i64 q = 0;       // detection list length driving the hitting sets
    std::vector<std::vector<int>> levels;  // levels[i] = A_i ascending; i in [0, p)
    std::vector<int> priority;             // priority[v] = max i with v in A_i

    int n() const { return (int)priority.size(); }

    const std::vector<int>& level(int i) const {
        static const std::vector<int> empty;
        if (i >= p) return empty;  // A_p and beyond are empty
        return levels.at(i);
    }

    // |A_i| against the target n^{1 - i/p}; informational, never enforced.
    std::vector<LevelReport> level_report() const {
        std::vector<LevelReport> out;
        double nn = (double)n();
        for (int i = 0; i < p; ++i) {
            LevelReport r;
            r.level = i;
            r.size = (i64)levels[i].size();
            r.bound = std::pow(nn, 1.0 - (double)i / (double)p);
            r.within = (double)r.size <= r.bound + 1e-9;
            out.push_back(r);
        }
        return out;
    }

    void check() const {
        if (p < 1) throw InvariantViolated("hierarchy: p must be >= 1");
        if ((int)levels.size() != p) throw InvariantViolated("hierarchy: level count != p");
        if ((int)levels[0].size() != n())
            throw InvariantViolated("hierarchy: A_0 must be all of V");
        for (int i = 0; i + 1 < p; ++i) {
            std::set<int> upper(levels[i].begin(), levels[i].end());
            for (int v : levels[i + 1])
                if (!upper.count(v))
                    throw InvariantViolated("hierarchy: A_" + std::to_string(i + 1) +
                                            " not nested in A_" + std::to_string(i));
        }
        for (int v = 0; v < n(); ++v) {
            int i = priority[v];
            if (i < 0 || i >= p) throw InvariantViolated("hierarchy: priority out of range");
        }
    }
};

// q = ceil(2 n^{1/p} ln(3n) (1 + ln n)) via upper bounds on ln, so the list
// length never undershoots the analysis.
inline i64 priority_list_length(i64 n, int p) {
    if (n <= 0 || p < 1) throw PreconditionViolated("priority_list_length: need n >= 1, p >= 1");
    if (n == 1) return 1;
    i64 root = ceil_nth_root(n, p);
    Rat v = Rat(2) * Rat(root) * ln_upper(3 * n) * (Rat(1) + ln_upper(n));
    return v.ceil();
}

// Any drop-in detection routine with detect_brute's contract; cost-model
// harnesses substitute an instrumented one (same lists, charged rounds).
using DetectFn =
    std::function<DetectionResult(const Graph&, const std::vector<int>&, Range, i64)>;

// Hierarchy with an explicit list length q.  Levels beyond 0 come from greedy
// hitting sets over the full (length exactly q) detection lists of the level
// above; once no list is full, all higher levels are empty.
inline PriorityHierarchy compute_priorities_with_q(const Graph& g, int p, Range range, i64 q,
                                                   const DetectFn& detect = {}) {
    if (p < 1) throw PreconditionViolated("compute_priorities: p must be >= 1");
    if (q < 1) throw PreconditionViolated("compute_priorities: q must be >= 1");
    PriorityHierarchy h;
    h.p = p;
    h.range = range;
    h.q = q;
    h.levels.resize(p);
    for (int v = 0; v < g.n; ++v) h.levels[0].push_back(v);
    for (int i = 0; i + 1 < p; ++i) {
        // A full list needs q distinct sources from A_i, so once |A_i| < q no
        // node can present one and every deeper level is empty.
        if ((i64)h.levels[i].size() < q) break;
        DetectionResult det = detect ? detect(g, h.levels[i], range, q)
                                     : detect_brute(g, h.levels[i], range, q);
        std::vector<std::vector<int>> full;
        for (int v = 0; v < g.n; ++v) {
            if ((i64)det.lists[v].size() == q) {
                std::vector<int> srcs;
                for (const auto& e : det.lists[v]) srcs.push_back(e.v);
                full.push_back(std::move(srcs));
            }
        }
        h.levels[i + 1] = greedy_hitting_set(full);
    }
    h.priority.assign(g.n, 0);
    for (int i = 1; i < p; ++i)
        for (int v : h.levels[i]) h.priority[v] = i;
    h.check();
    return h;
}

inline PriorityHierarchy compute_priorities(const Graph& g, int p, Range range) {
    return compute_priorities_with_q(g, p, range, priority_list_length(g.n, p));
}

// Clusters of every node under a hierarchy.  members[v] lists (u, delta) with
// delta = d(v, u, G) for exactly the u with d(v,u) < d(u, A_{i+1}) and
// d(v,u) <= R, i = priority(v); pairs sorted by (delta, u).
struct ClusterMap {
    std::vector<std::vector<std::pair<int, i64>>> members;

    i64 total_size() const {
        i64 s = 0;
        for (const auto& c : members) s += (i64)c.size();
        return s;
    }

    bool contains(int center, int u) const {
        for (const auto& [x, d] : members[center])
            if (x == u) return true;
        return false;
    }

    i64 delta(int center, int u) const {
        for (const auto& [x, d] : members[center])
            if (x == u) return d;
        return INF64;
    }
};

// d(v, A_{i}, R, G) for one level set; empty set means all-infinite.
inline std::vector<i64> distance_to_set(const Graph& g, const std::vector<int>& set, Range range) {
    if (set.empty()) return std::vector<i64>(g.n, INF64);
    return dijkstra_bounded(g, set, range).dist;
}

inline ClusterMap compute_clusters(const Graph& g, const PriorityHierarchy& h, Range range) {
    h.check();
    if (h.n() != g.n) throw PreconditionViolated("compute_clusters: hierarchy size mismatch");
    // next_dist[i][u] = d(u, A_{i+1}, R, G); level p-1 uses A_p = {}.
    std::vector<std::vector<i64>> next_dist(h.p);
    for (int i = 0; i < h.p; ++i) next_dist[i] = distance_to_set(g, h.level(i + 1), range);

    ClusterMap cm;
    cm.members.resize(g.n);
    parallel_for(g.n, [&](int v) {
        const std::vector<i64>& cutoff = next_dist[h.priority[v]];
        // Pruned bounded Dijkstra from v: a popped node u joins iff
        // d(v,u) < cutoff[u]; only members relax their neighbors.  Every node
        // of the definitional cluster lies on a shortest path whose prefix
        // also satisfies the strict inequality, so pruning loses nothing.
        std::priority_queue<std::pair<i64, int>, std::vector<std::pair<i64, int>>,
                            std::greater<>> pq;
        std::vector<i64> dist(g.n, INF64);
        dist[v] = 0;
        pq.push({0, v});
        auto& mem = cm.members[v];
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d != dist[u]) continue;
            if (d >= cutoff[u]) continue;  // u settled outside the cluster: prune
            mem.push_back({u, d});
            for (const auto& [to, w] : g.adj[u]) {
                i64 nd = WeightOps<i64>::add(d, w);
                if (!range.admits(nd)) continue;
                if (nd < dist[to]) {
                    dist[to] = nd;
                    pq.push({nd, to});
                }
            }
        }
        std::sort(mem.begin(), mem.end(),
                  [](const auto& a, const auto& b) {
                      return a.second != b.second ? a.second < b.second : a.first < b.first;
                  });
    });
    return cm;
}

// Bunches: B_i(u) = {(v, delta) : priority(v) = i and u in C(v)}.  The list
// length analysis promises |B_i(u)| <= q for levels built from q-length lists.
inline std::vector<std::vector<std::vector<std::pair<int, i64>>>> bunches_from_clusters(
    const PriorityHierarchy& h, const ClusterMap& cm) {
    int n = h.n();
    std::vector<std::vector<std::vector<std::pair<int, i64>>>> bunch(
        h.p, std::vector<std::vector<std::pair<int, i64>>>(n));
    for (int v = 0; v < n; ++v) {
        int i = h.priority[v];
        for (const auto& [u, d] : cm.members[v]) bunch[i][u].push_back({v, d});
    }
    for (int i = 0; i < h.p; ++i)
        for (int u = 0; u < n; ++u)
            std::sort(bunch[i][u].begin(), bunch[i][u].end(),
                      [](const auto& a, const auto& b) {
                          return a.second != b.second ? a.second < b.second : a.first < b.first;
                      });
    return bunch;
}

}  // namespace dsssp
