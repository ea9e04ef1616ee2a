#pragma once

#include <algorithm>
#include <iostream>
#include <optional>
#include <queue>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "dsssp/errors.hpp"
#include "dsssp/rational.hpp"

namespace dsssp {

// ------------------------------------------------------------- weight traits

constexpr i64 INF64 = std::numeric_limits<i64>::max() / 4;

template <class W>
struct WeightOps;

template <>
struct WeightOps<i64> {
    static i64 inf() { return INF64; }
    static bool is_inf(i64 x) { return x >= INF64; }
    static i64 zero() { return 0; }
    static i64 add(i64 a, i64 b) {
        if (is_inf(a) || is_inf(b)) return inf();
        i64 s = add_checked(a, b);
        if (s >= INF64) throw Overflow("distance exceeded the 64-bit infinity sentinel");
        return s;
    }
};

template <>
struct WeightOps<Rat> {
    static Rat inf() { return Rat::inf(); }
    static bool is_inf(const Rat& x) { return x.is_inf(); }
    static Rat zero() { return Rat(0); }
    static Rat add(const Rat& a, const Rat& b) { return a + b; }
};

// ------------------------------------------------------------------- graphs

template <class W>
struct BasicEdge {
    int u, v;  // canonical u < v
    W w;
};

// Undirected weighted graph on nodes 0..n-1. At most one edge per pair, no
// self loops, strictly positive weights; for integer graphs the declared
// bound W is enforced as 1 <= w <= W.
template <class W>
struct BasicGraph {
    int n = 0;
    W max_weight = W(1);  // declared weight bound
    std::vector<BasicEdge<W>> edges;
    std::vector<std::vector<std::pair<int, W>>> adj;

    BasicGraph() = default;
    BasicGraph(int n_, W max_w) : n(n_), max_weight(max_w), adj(n_) {
        if (n_ < 1) throw GraphError("node count must be >= 1");
    }

    int m() const { return (int)edges.size(); }

    void add_edge(int u, int v, W w, bool enforce_bound = true) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") has endpoint outside 0.." + std::to_string(n - 1));
        if (u == v) throw GraphError("self loop at node " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!(W(0) < w)) throw GraphError("non-positive edge weight");
        if (enforce_bound && max_weight < w)
            throw GraphError("edge weight exceeds declared bound");
        uint64_t key = (uint64_t(uint32_t(u)) << 32) | uint32_t(v);
        if (!edge_keys_.insert(key).second)
            throw GraphError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        edges.push_back({u, v, w});
        adj[u].push_back({v, w});
        adj[v].push_back({u, w});
    }

    bool has_edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        uint64_t key = (uint64_t(uint32_t(u)) << 32) | uint32_t(v);
        return edge_keys_.count(key) > 0;
    }

  private:
    std::unordered_set<uint64_t> edge_keys_;
};

using Graph = BasicGraph<i64>;
using RatGraph = BasicGraph<Rat>;

// ----------------------------------------------------------- distance tables

// Single- or multi-source shortest path tree. source == -1 for multi-source;
// parents are deterministic: among predecessors u realizing
// dist[v] == dist[u] + w(u,v), the smallest id wins.
template <class W>
struct BasicDistanceTable {
    int source = -1;
    std::vector<W> dist;
    std::vector<int> parent;  // -1 = root or unreached

    bool reached(int v) const { return !WeightOps<W>::is_inf(dist[v]); }
};

using DistanceTable = BasicDistanceTable<i64>;
using RatDistanceTable = BasicDistanceTable<Rat>;

// Extended nonnegative integer used for range parameters: {finite, +inf}.
struct Range {
    i64 value = 0;
    bool infinite = false;

    static Range inf() { return Range{0, true}; }
    static Range finite(i64 r) {
        if (r < 0) throw NonIntegralRange("range must be >= 0");
        return Range{r, false};
    }
    bool admits(i64 d) const { return infinite || d <= value; }
    std::string str() const { return infinite ? "inf" : std::to_string(value); }
};

// Bounded multi-source Dijkstra: exact d(roots, v) for all v with distance
// <= R, infinity beyond. Pop order (distance, node id); parent ties resolved
// toward the smaller parent id independent of pop order.
template <class W>
BasicDistanceTable<W> dijkstra_bounded(const BasicGraph<W>& g, const std::vector<int>& roots,
                                       Range R = Range::inf()) {
    BasicDistanceTable<W> t;
    t.source = roots.size() == 1 ? roots[0] : -1;
    t.dist.assign(g.n, WeightOps<W>::inf());
    t.parent.assign(g.n, -1);

    struct Item {
        W d;
        int v;
        bool operator>(const Item& o) const {
            if (d != o.d) return o.d < d;
            return v > o.v;
        }
    };
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    auto in_range = [&](const W& d) {
        if (R.infinite) return true;
        return d <= W(R.value);
    };
    for (int r : roots) {
        if (r < 0 || r >= g.n) throw GraphError("dijkstra root out of range");
        if (t.dist[r] != WeightOps<W>::zero()) {
            t.dist[r] = WeightOps<W>::zero();
            pq.push({t.dist[r], r});
        }
    }
    std::vector<char> done(g.n, 0);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u] || d != t.dist[u]) continue;
        done[u] = 1;
        for (const auto& [v, w] : g.adj[u]) {
            W nd = WeightOps<W>::add(d, w);
            if (!in_range(nd)) continue;
            if (nd < t.dist[v]) {
                t.dist[v] = nd;
                t.parent[v] = u;
                pq.push({nd, v});
            } else if (nd == t.dist[v] && (t.parent[v] == -1 || u < t.parent[v])) {
                t.parent[v] = u;
            }
        }
    }
    return t;
}

template <class W>
BasicDistanceTable<W> dijkstra_bounded(const BasicGraph<W>& g, int root, Range R = Range::inf()) {
    return dijkstra_bounded(g, std::vector<int>{root}, R);
}

// d^h(s, v): minimum weight over paths with at most h edges. O(h * m).
// If rounds != nullptr it receives the table after every round k = 0..h,
// i.e. (*rounds)[k][v] == d^k(s, v).
template <class W>
std::vector<W> bellman_ford_hops(const BasicGraph<W>& g, int s, i64 h,
                                 std::vector<std::vector<W>>* rounds = nullptr) {
    if (s < 0 || s >= g.n) throw GraphError("bellman_ford source out of range");
    if (h < 0) throw NonIntegralRange("hop bound must be >= 0");
    std::vector<W> cur(g.n, WeightOps<W>::inf());
    cur[s] = WeightOps<W>::zero();
    if (rounds) {
        rounds->clear();
        rounds->push_back(cur);
    }
    for (i64 k = 1; k <= h; ++k) {
        std::vector<W> next = cur;
        bool changed = false;
        for (const auto& e : g.edges) {
            if (!WeightOps<W>::is_inf(cur[e.u])) {
                W nd = WeightOps<W>::add(cur[e.u], e.w);
                if (nd < next[e.v]) { next[e.v] = nd; changed = true; }
            }
            if (!WeightOps<W>::is_inf(cur[e.v])) {
                W nd = WeightOps<W>::add(cur[e.v], e.w);
                if (nd < next[e.u]) { next[e.u] = nd; changed = true; }
            }
        }
        cur = std::move(next);
        if (rounds) {
            rounds->push_back(cur);
        } else if (!changed) {
            break;  // fixed point: d^k == d^j for all j >= k
        }
    }
    return cur;
}

// Unweighted hop distances from s (BFS).
inline std::vector<i64> bfs_hops_from(int n, const std::vector<std::vector<std::pair<int, i64>>>& adj,
                                      int s) {
    std::vector<i64> d(n, INF64);
    std::queue<int> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto& [v, w] : adj[u]) {
            (void)w;
            if (WeightOps<i64>::is_inf(d[v])) {
                d[v] = d[u] + 1;
                q.push(v);
            }
        }
    }
    return d;
}

template <class W>
std::vector<i64> bfs_hops(const BasicGraph<W>& g, int s) {
    std::vector<i64> d(g.n, INF64);
    std::queue<int> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (const auto& [v, w] : g.adj[u]) {
            (void)w;
            if (WeightOps<i64>::is_inf(d[v])) {
                d[v] = d[u] + 1;
                q.push(v);
            }
        }
    }
    return d;
}

template <class W>
bool is_connected(const BasicGraph<W>& g) {
    if (g.n == 0) return true;
    auto d = bfs_hops(g, 0);
    for (int v = 0; v < g.n; ++v)
        if (WeightOps<i64>::is_inf(d[v])) return false;
    return true;
}

// Maximum over pairs of the unweighted hop distance. Throws on disconnected
// input (the CONGEST accounting needs a finite D).
template <class W>
i64 hop_diameter(const BasicGraph<W>& g) {
    i64 best = 0;
    for (int s = 0; s < g.n; ++s) {
        auto d = bfs_hops(g, s);
        for (int v = 0; v < g.n; ++v) {
            if (WeightOps<i64>::is_inf(d[v]))
                throw DisconnectedGraph("hop_diameter: node " + std::to_string(v) +
                                        " unreachable from " + std::to_string(s));
            best = std::max(best, d[v]);
        }
    }
    return best;
}

// --------------------------------------------------------------- re-weighting

// G_i of the weight-rounding scheme: every weight replaced by ceil(w / rho).
inline Graph round_weights(const Graph& g, const Rat& rho) {
    if (rho.is_inf() || rho.is_zero() || Rat(0) > rho)
        throw Error("round_weights: rho must be a positive finite rational");
    Graph out(g.n, 1);
    i64 maxw = 1;
    for (const auto& e : g.edges) {
        i64 w = Rat::ceil_quot(Rat(e.w), rho);
        maxw = std::max(maxw, w);
        out.max_weight = std::max(out.max_weight, w);
        out.add_edge(e.u, e.v, w);
    }
    out.max_weight = maxw;
    return out;
}

// Rounding for rational-weighted inputs, with an optional cap: any rounded
// weight above cap is stored as cap + 1. Distances <= cap are unaffected
// (positive weights: a capped edge cannot lie on a path of weight <= cap),
// which is all the bounded searches ever look at; the cap exists so scale
// graphs at tiny rho cannot overflow 64-bit arithmetic.
inline Graph round_weights_capped(const RatGraph& g, const Rat& rho, i64 cap) {
    if (rho.is_inf() || rho.is_zero()) throw Error("round_weights_capped: bad rho");
    if (cap < 1 || cap >= INF64 / 4) throw Error("round_weights_capped: bad cap");
    Graph out(g.n, 1);
    i64 maxw = 1;
    for (const auto& e : g.edges) {
        // ceil(w / rho) without narrowing first: compare against cap in 128 bits.
        i128 num = i128(e.w.num) * rho.den;
        i128 den = i128(e.w.den) * rho.num;
        i128 q = (num + den - 1) / den;
        i64 w = (q > i128(cap)) ? cap + 1 : i64(q);
        maxw = std::max(maxw, w);
        out.max_weight = std::max(out.max_weight, w);
        out.add_edge(e.u, e.v, w);
    }
    out.max_weight = maxw;
    return out;
}

inline RatGraph to_rat_graph(const Graph& g) {
    RatGraph out(g.n, Rat(g.max_weight));
    for (const auto& e : g.edges) out.add_edge(e.u, e.v, Rat(e.w));
    return out;
}

// Scale every weight by the positive rational f (distances scale uniformly).
inline RatGraph scale_weights(const RatGraph& g, const Rat& f) {
    if (f.is_inf() || f.is_zero()) throw Error("scale_weights: bad factor");
    RatGraph out(g.n, g.max_weight * f);
    for (const auto& e : g.edges) out.add_edge(e.u, e.v, e.w * f);
    return out;
}

// ------------------------------------------------------------------ edge list
//
// Text format: optional '#' comment lines anywhere; first data line is
// "n m W"; then exactly m lines "u v w".

inline Graph read_edge_list(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_header = false;
    i64 n = 0, m = 0, W = 0, seen = 0;
    Graph g;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        size_t start = sv.find_first_not_of(" \t\r");
        if (start == std::string_view::npos) continue;
        if (sv[start] == '#') continue;
        std::istringstream ls(line);
        auto fail = [&](const std::string& why) {
            throw GraphError("line " + std::to_string(lineno) + ": " + why);
        };
        if (!have_header) {
            if (!(ls >> n >> m >> W)) fail("expected header 'n m W'");
            std::string extra;
            if (ls >> extra) fail("trailing tokens after header");
            if (n < 1) fail("n must be >= 1");
            if (m < 0) fail("m must be >= 0");
            if (W < 1) fail("W must be >= 1");
            g = Graph((int)n, W);
            have_header = true;
        } else {
            i64 u, v, w;
            if (!(ls >> u >> v >> w)) fail("expected edge line 'u v w'");
            std::string extra;
            if (ls >> extra) fail("trailing tokens after edge");
            if (++seen > m) fail("more edges than declared");
            try {
                g.add_edge((int)u, (int)v, w);
            } catch (const GraphError& e) {
                fail(e.what());
            }
        }
    }
    if (!have_header) throw GraphError("missing header 'n m W'");
    if (seen != m)
        throw GraphError("declared " + std::to_string(m) + " edges but found " +
                         std::to_string(seen));
    return g;
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.n << " " << g.m() << " " << g.max_weight << "\n";
    auto edges = g.edges;
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    for (const auto& e : edges) out << e.u << " " << e.v << " " << e.w << "\n";
}

}  // namespace dsssp
