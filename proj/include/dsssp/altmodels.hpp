#pragma once

// The congested-clique SSSP variant and the multi-pass streaming variant.
//
// Clique: build the hop set under clique broadcast charges, then run h
// rounds of Bellman-Ford on G u F, one broadcast of n messages (2 rounds)
// per round; after round k every node knows d^k(s, ., G u F), asserted
// round by round against the hop-limited oracle.
//
// Streaming: the edge list arrives as a rewindable stream in arbitrary
// order; the hop set's cluster searches and the final bounded searches run
// level-synchronously, one pass per level, recomputing rounded weights on
// the fly.  F and the per-node state live in memory; every stored
// (node, distance) or (u, v, w) record counts as one word.  Estimates are
// bit-identical to the in-memory pipeline with the same parameters.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dsssp/clusters.hpp"
#include "dsssp/errors.hpp"
#include "dsssp/graph.hpp"
#include "dsssp/hopset.hpp"
#include "dsssp/rational.hpp"
#include "dsssp/simharness.hpp"

namespace dsssp {

// ------------------------------------------------------------------ clique

struct HopDistanceTable {
    int source = 0;
    i64 h = 0;              // rounds executed (the hop set's hop bound)
    std::vector<Rat> dist;  // d^h(source, v, G u F)
};

struct CliqueSsspResult {
    HopDistanceTable table;
    HopSetResult hopset;
    CostLedger ledger;
};

// Hop set under clique charges, then h simulated Bellman-Ford rounds.  The
// quoted per-round claim -- after k rounds every node knows the k-hop
// distance -- is asserted for every k; the final table satisfies the
// hop-set sandwich d(s,v,G) <= delta(v) <= (1+eps) d(s,v,G).
inline CliqueSsspResult clique_sssp(const Graph& g, int s, const Rat& eps) {
    if (s < 0 || s >= g.n) throw PreconditionViolated("clique_sssp: bad source");
    CliqueSsspResult out;
    out.ledger = CostLedger::clique_for(g);
    CostLedger& led = out.ledger;

    HopSetHooks hooks;
    hooks.detect = [&](const Graph& gg, const std::vector<int>& S, Range range, i64 q) {
        return detect_rtz_overlay(gg, S, range, q, led, "priorities");
    };
    hooks.on_clusters = [&](const Graph&, const AdditiveParams& AP, const PriorityHierarchy&,
                            const ClusterMap& cm) { charge_clusters(led, cm, AP.R, "clusters"); };
    hooks.on_scale = [&](const ScaleInfo& si) {
        led.add("hopreduce", "scale marker", 0,
                {{"j", si.j}, {"skipped", si.skipped ? 1 : 0}, {"edges", si.edges}});
    };
    out.hopset = hop_set(g, eps, g.max_weight, hooks);

    RatGraph H = union_graph(g, out.hopset.F);
    i64 h = out.hopset.hop_bound;
    std::vector<std::vector<Rat>> oracle;
    bellman_ford_hops(H, s, h, &oracle);

    std::vector<Rat> cur(g.n, Rat::inf());
    cur[s] = Rat(0);
    for (i64 k = 1; k <= h; ++k) {
        charge_broadcast(led, g.n, "bellmanford");  // every node repeats its estimate
        std::vector<Rat> next = cur;
        for (const auto& e : H.edges) {
            if (!cur[e.u].is_inf()) next[e.v] = rat_min(next[e.v], cur[e.u] + e.w);
            if (!cur[e.v].is_inf()) next[e.u] = rat_min(next[e.u], cur[e.v] + e.w);
        }
        cur = std::move(next);
        if (cur != oracle[(std::size_t)k])
            throw InvariantViolated("clique_sssp: round " + std::to_string(k) +
                                    " diverged from d^k(s, ., G u F)");
    }

    DistanceTable exact = dijkstra_bounded(g, s);
    for (int v = 0; v < g.n; ++v) {
        if (!exact.reached(v)) {
            if (!cur[v].is_inf())
                throw InvariantViolated("clique_sssp: shortcut reached an unreachable node");
            continue;
        }
        if (cur[v] < Rat(exact.dist[v]))
            throw InvariantViolated("clique_sssp: estimate undercuts the true distance");
        if ((Rat(1) + eps) * Rat(exact.dist[v]) < cur[v])
            throw InvariantViolated("clique_sssp: estimate exceeds (1+eps) d(s,v,G)");
    }
    out.table = {s, h, std::move(cur)};
    return out;
}

// --------------------------------------------------------------- streaming

struct StreamEdge {
    int u = 0, v = 0;
    i64 w = 1;
};

// Rewindable edge stream; one rewind per pass.  Implementations may refuse
// rewinds (NonRewindableStream) to model single-shot sources.
struct EdgeStream {
    virtual ~EdgeStream() = default;
    virtual int n() const = 0;
    virtual void rewind() = 0;
    virtual bool next(StreamEdge& e) = 0;
};

struct VectorEdgeStream : EdgeStream {
    int nodes = 1;
    std::vector<StreamEdge> edges;
    std::size_t pos = 0;

    VectorEdgeStream() = default;
    VectorEdgeStream(int n_, std::vector<StreamEdge> e) : nodes(n_), edges(std::move(e)) {}

    int n() const override { return nodes; }
    void rewind() override { pos = 0; }
    bool next(StreamEdge& e) override {
        if (pos >= edges.size()) return false;
        e = edges[pos++];
        return true;
    }
};

// Allows exactly one traversal; the second rewind throws.
struct OneShotStream : VectorEdgeStream {
    bool consumed = false;

    OneShotStream(int n_, std::vector<StreamEdge> e) : VectorEdgeStream(n_, std::move(e)) {}
    void rewind() override {
        if (consumed) throw NonRewindableStream("stream already traversed; rewind refused");
        consumed = true;
        pos = 0;
    }
};

// Edge-list file as a stream: same format as read_edge_list ("n m W" header,
// '#' comments); rewind reopens the file lazily on the next read.
struct FileEdgeStream : EdgeStream {
    std::string path;
    int nodes = 1;
    std::ifstream in;
    bool needs_open = true;

    explicit FileEdgeStream(std::string p) : path(std::move(p)) {
        open_and_parse_header();
        needs_open = false;
    }

    int n() const override { return nodes; }
    void rewind() override { needs_open = true; }
    bool next(StreamEdge& e) override {
        if (needs_open) {
            open_and_parse_header();
            needs_open = false;
        }
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            long long u, v, w;
            if (std::sscanf(line.c_str(), "%lld %lld %lld", &u, &v, &w) != 3)
                throw GraphError("edge stream: malformed record: " + line);
            e = {(int)u, (int)v, (i64)w};
            return true;
        }
        return false;
    }

   private:
    void open_and_parse_header() {
        in = std::ifstream(path);
        if (!in) throw GraphError("edge stream: cannot open " + path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            long long nn, mm, ww;
            if (std::sscanf(line.c_str(), "%lld %lld %lld", &nn, &mm, &ww) != 3)
                throw GraphError("edge stream: malformed header: " + line);
            nodes = (int)nn;
            return;
        }
        throw GraphError("edge stream: missing header");
    }
};

// Adversarial order: the graph's edges shuffled by the seed (0 keeps the
// canonical order).
inline VectorEdgeStream make_stream(const Graph& g, uint64_t seed = 0) {
    std::vector<StreamEdge> e;
    e.reserve(g.edges.size());
    for (const auto& ed : g.edges) e.push_back({ed.u, ed.v, ed.w});
    if (seed != 0) {
        SplitMix64 rng(seed);
        shuffle_vec(e, rng);
    }
    return VectorEdgeStream(g.n, std::move(e));
}

// Pass and space accounting.  A pass is one full conceptual traversal of the
// stream (every bounded search to radius R takes exactly R+1, one per level;
// a level with an empty frontier updates nothing and its traversal is
// skipped in wall time but still counted and rewound).  A word is one stored
// (node, distance) or (u, v, w) record.
struct StreamLedger {
    i64 passes = 0;
    i64 peak_space_words = 0;
    i64 current_space_words = 0;
    bool large_weight_warning = false;  // W beyond the model's polylog assumption
    std::vector<std::pair<std::string, i64>> phase_passes;  // label -> passes consumed

    void begin_pass(EdgeStream& s) {
        s.rewind();
        passes += 1;
    }
    void alloc(i64 words) {
        current_space_words += words;
        peak_space_words = std::max(peak_space_words, current_space_words);
    }
    void release(i64 words) {
        current_space_words -= words;
        if (current_space_words < 0)
            throw InvariantViolated("stream ledger: released more words than allocated");
    }
    void note_phase(const std::string& label, i64 count) { phase_passes.push_back({label, count}); }
};

struct StreamScaleStats {
    i64 j = 0;
    bool skipped = false;
    i64 passes = 0;        // R+1 for an executed scale
    i64 scans = 0;         // traversals that actually touched records
    i64 member_words = 0;  // sum_v |C(v)| of this scale's clusters
    i64 backlog_peak = 0;  // in-flight candidate words, max over the phase
    i64 phase_peak = 0;    // ledger peak observed during the phase
};

struct StreamSsspResult {
    std::vector<Rat> estimate;
    StreamLedger ledger;
    HopSetEdges F;
    i64 hop_bound = 1;
    Rat eps_level;  // per-level accuracy of the mirrored hop set
    i64 R_cluster = 0;
    i64 R_finish = 0;
    std::vector<StreamScaleStats> cluster_scales;
    i64 finishing_scales = 0;
};

// The in-memory pipeline the streaming run must reproduce bit for bit:
// hop set on G, then per finishing scale a bounded search on the rounded
// union, estimates min-merged across scales.
inline std::vector<Rat> stream_reference(const Graph& g, int s, const Rat& eps, i64 W) {
    HopSetResult hs = hop_set(g, eps, W);
    RatGraph H = union_graph(g, hs.F);
    i64 hb = hs.hop_bound;
    i64 Rf = ((Rat(1) + Rat(2) / eps) * Rat(hb)).ceil();
    Rat WH(1);
    for (const auto& e : H.edges) WH = rat_max(WH, e.w);
    i64 last = (Rat(g.n) * WH).floor_log2_self();
    std::vector<Rat> est(g.n, Rat::inf());
    est[s] = Rat(0);
    for (i64 i = 0; i <= last; ++i) {
        Rat rho = eps * Rat(2).pow((int)i) / Rat(hb);
        Graph hi = round_weights_capped(H, rho, Rf);
        DistanceTable t = dijkstra_bounded(hi, s, Range::finite(Rf));
        for (int v = 0; v < g.n; ++v)
            if (t.reached(v)) est[v] = rat_min(est[v], rho * Rat(t.dist[v]));
    }
    return est;
}

namespace detail {

// Index of (u, v) in a HopSetEdges item list, or -1.
inline int hopset_index(const HopSetEdges& F, int u, int v) {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(F.items.begin(), F.items.end(), std::make_pair(u, v),
                               [](const HopSetEdges::Item& a, const std::pair<int, int>& key) {
                                   return std::make_pair(a.u, a.v) < key;
                               });
    if (it == F.items.end() || it->u != u || it->v != v) return -1;
    return (int)(it - F.items.begin());
}

}  // namespace detail

// Multi-pass streaming SSSP.  Mirrors the hop-set construction in the
// single-level regime (p == 1, where the priority loop never runs and every
// cluster is a full range-R ball), then the finishing searches; all graph
// access is pass-by-pass over the stream with rounded weights recomputed on
// the fly, F and per-node state held in memory.
inline StreamSsspResult stream_sssp(EdgeStream& stream, int s, const Rat& eps, i64 W) {
    int n = stream.n();
    if (n < 1) throw GraphError("stream_sssp: node count must be >= 1");
    if (s < 0 || s >= n) throw PreconditionViolated("stream_sssp: bad source");
    if (!(Rat(0) < eps) || Rat(1) < eps)
        throw PreconditionViolated("stream_sssp: eps must be in (0, 1]");
    if (W < 1) throw PreconditionViolated("stream_sssp: W must be >= 1");

    StreamSsspResult out;
    StreamLedger& led = out.ledger;
    out.F.n = n;

    // pass 1: validate records, find the weight extremes
    i64 wmin = INF64, wmax = 1, m = 0;
    {
        led.begin_pass(stream);
        StreamEdge e;
        while (stream.next(e)) {
            if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
                throw GraphError("stream_sssp: bad edge endpoints");
            if (e.w < 1 || e.w > W) throw GraphError("stream_sssp: edge weight outside [1, W]");
            wmin = std::min(wmin, e.w);
            wmax = std::max(wmax, e.w);
            ++m;
        }
        led.note_phase("validate", 1);
    }
    i64 lg = ceil_log2((i64)n) + 1;
    led.large_weight_warning = W > lg * lg;  // the model assumes W = poly log n

    out.estimate.assign(n, Rat::inf());
    out.estimate[s] = Rat(0);
    led.alloc(n);  // the estimate table
    if (n == 1 || m == 0) return out;

    // hop-set parameters, exactly as hop_set derives them
    Rat W_prime = (Rat(1) + eps) * Rat(n) * Rat(W);
    i64 sq = 1;
    while (sq * sq < ceil_log2((i64)n)) ++sq;
    out.eps_level = eps / Rat(2 * sq);
    int p = AdditiveParams::conservative_p(n, Rat(54) / out.eps_level);
    if (p != 1)
        throw PreconditionViolated(
            "stream_sssp: only the single-level hop-set regime (p == 1) is supported");
    out.hop_bound = n;              // ceil(n^{1/1})
    i64 delta = 3 * (i64)n;         // (p+2) * hop_bound
    Rat eps_inner = out.eps_level / Rat(6);
    i64 delta_inner = (Rat(3) * Rat(delta) / eps_inner).ceil();
    AdditiveParams AP = AdditiveParams::derive(n, delta_inner, eps_inner);
    i64 Rc = AP.R;
    out.R_cluster = Rc;

    // scaled hop reduction: per executed scale, every node grows its
    // range-Rc ball level-synchronously (trivial hierarchy at p == 1: the
    // priority loop has no iterations, so no cutoffs and no detection)
    i64 last_scale = (Rat(n) * W_prime).floor_log2_self();
    bool all_ones_done = false;
    for (i64 j = 0; j <= last_scale; ++j) {
        Rat rho = eps_inner * Rat(2).pow((int)j) / Rat(out.hop_bound);
        StreamScaleStats st;
        st.j = j;
        bool beyond = scale_skips_all_singletons(Rat(wmin), rho, Rc);
        bool ones = scale_is_all_ones(Rat(wmax), rho);
        if (beyond || (ones && all_ones_done)) {
            st.skipped = true;
            out.cluster_scales.push_back(st);
            continue;
        }
        if (ones) all_ones_done = true;

        std::vector<std::map<int, i64>> admitted(n);  // per root: node -> delta
        std::map<i64, std::vector<std::pair<int, int>>> buckets;  // level -> (root, node)
        i64 backlog = 0, members = 0;
        auto push_candidate = [&](int root, int node, i64 level) {
            buckets[level].push_back({root, node});
            led.alloc(1);
            backlog += 1;
            st.backlog_peak = std::max(st.backlog_peak, backlog);
        };
        for (int r = 0; r < n; ++r) push_candidate(r, r, 0);

        for (i64 L = 0; L <= Rc; ++L) {
            led.begin_pass(stream);
            auto bit = buckets.find(L);
            if (bit == buckets.end()) continue;
            std::vector<std::pair<int, int>> batch = std::move(bit->second);
            buckets.erase(bit);
            led.release((i64)batch.size());
            backlog -= (i64)batch.size();
            std::map<int, std::vector<int>> settlers;  // node -> roots settling here
            for (const auto& [root, node] : batch) {
                auto& adm = admitted[root];
                if (adm.count(node)) continue;  // a shorter candidate won earlier
                adm[node] = L;
                led.alloc(1);
                members += 1;
                settlers[node].push_back(root);
            }
            st.phase_peak = std::max(st.phase_peak, led.current_space_words);
            if (settlers.empty() || L == Rc) continue;  // counted pass, nothing to relax
            st.scans += 1;
            StreamEdge e;
            while (stream.next(e)) {
                i64 wr = Rat::ceil_quot(Rat(e.w), rho);
                if (wr > Rc) continue;  // capped: can never stay within range
                i64 nd = L + wr;
                if (nd > Rc) continue;
                for (int side = 0; side < 2; ++side) {
                    int a = side == 0 ? e.u : e.v;
                    int b = side == 0 ? e.v : e.u;
                    auto sit = settlers.find(a);
                    if (sit == settlers.end()) continue;
                    for (int root : sit->second)
                        if (!admitted[root].count(b)) push_candidate(root, b, nd);
                }
            }
        }
        st.passes = Rc + 1;
        st.member_words = members;
        led.note_phase("clusters scale " + std::to_string(j), Rc + 1);

        // shortcut edges of this scale: exact ball distances scaled back
        std::vector<HopSetEdges::Item> raw;
        for (int r = 0; r < n; ++r)
            for (const auto& [u, d] : admitted[r])
                if (u != r) raw.push_back({std::min(u, r), std::max(u, r), Rat(d)});
        HopSetEdges fj = HopSetEdges::from_unsorted(n, std::move(raw));
        for (auto& it : fj.items) it.w = it.w * rho;
        i64 before = (i64)out.F.size();
        out.F.merge(fj);
        led.alloc((i64)out.F.size() - before);  // F words kept across phases
        for (int r = 0; r < n; ++r) led.release((i64)admitted[r].size());
        if (backlog != 0) led.release(backlog);  // candidates past the range die with the phase
        out.cluster_scales.push_back(st);
    }

    // finishing setup: the union's weight ceiling (per-pair minimum of the
    // stream edge and any shortcut), one pass
    Rat WH(1);
    std::vector<char> paired(out.F.items.size(), 0);
    {
        led.begin_pass(stream);
        StreamEdge e;
        while (stream.next(e)) {
            int idx = detail::hopset_index(out.F, e.u, e.v);
            Rat w = Rat(e.w);
            if (idx >= 0) {
                paired[idx] = 1;
                w = rat_min(w, out.F.items[idx].w);
            }
            WH = rat_max(WH, w);
        }
        for (std::size_t i = 0; i < out.F.items.size(); ++i)
            if (!paired[i]) WH = rat_max(WH, out.F.items[i].w);
        led.note_phase("finishing setup", 1);
    }

    // finishing: per scale a bounded level-synchronous search from s on the
    // rounded union of the stream and F
    i64 Rf = ((Rat(1) + Rat(2) / eps) * Rat(out.hop_bound)).ceil();
    out.R_finish = Rf;
    i64 last_fin = (Rat(n) * WH).floor_log2_self();
    out.finishing_scales = last_fin + 1;
    for (i64 i = 0; i <= last_fin; ++i) {
        Rat rho = eps * Rat(2).pow((int)i) / Rat(out.hop_bound);
        std::vector<i64> dist(n, INF64);
        led.alloc(n);
        std::vector<char> settled(n, 0);
        std::map<i64, std::vector<int>> buckets;
        i64 backlog = 0;
        dist[s] = 0;
        buckets[0].push_back(s);
        led.alloc(1);
        backlog += 1;
        auto relax = [&](int from, int to, i64 wr, i64 L) {
            if (wr > Rf) return;
            i64 nd = L + wr;
            if (nd > Rf || nd >= dist[to]) return;
            dist[to] = nd;
            buckets[nd].push_back(to);
            led.alloc(1);
            backlog += 1;
            (void)from;
        };
        for (i64 L = 0; L <= Rf; ++L) {
            led.begin_pass(stream);
            auto bit = buckets.find(L);
            if (bit == buckets.end()) continue;
            std::vector<int> batch = std::move(bit->second);
            buckets.erase(bit);
            led.release((i64)batch.size());
            backlog -= (i64)batch.size();
            std::vector<int> level;
            for (int v : batch)
                if (!settled[v] && dist[v] == L) {
                    settled[v] = 1;
                    level.push_back(v);
                }
            if (level.empty() || L == Rf) continue;
            std::sort(level.begin(), level.end());
            StreamEdge e;
            while (stream.next(e)) {
                bool ua = std::binary_search(level.begin(), level.end(), e.u);
                bool va = std::binary_search(level.begin(), level.end(), e.v);
                if (!ua && !va) continue;
                i64 wr = Rat::ceil_quot(Rat(e.w), rho);
                if (ua) relax(e.u, e.v, wr, L);
                if (va) relax(e.v, e.u, wr, L);
            }
            for (const auto& it : out.F.items) {
                bool ua = std::binary_search(level.begin(), level.end(), it.u);
                bool va = std::binary_search(level.begin(), level.end(), it.v);
                if (!ua && !va) continue;
                i64 wr = Rat::ceil_quot(it.w, rho);
                if (ua) relax(it.u, it.v, wr, L);
                if (va) relax(it.v, it.u, wr, L);
            }
        }
        for (int v = 0; v < n; ++v)
            if (dist[v] != INF64 && settled[v])
                out.estimate[v] = rat_min(out.estimate[v], rho * Rat(dist[v]));
        led.release(n);
        if (backlog != 0) led.release(backlog);
        led.note_phase("finishing scale " + std::to_string(i), Rf + 1);
    }
    out.estimate[s] = Rat(0);
    return out;
}

}  // namespace dsssp
