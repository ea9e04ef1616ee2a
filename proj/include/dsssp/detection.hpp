#pragma once

#include <functional>
#include <queue>
#include <vector>

#include "dsssp/graph.hpp"

namespace dsssp {

// (S, gamma, sigma)-source detection: for every node u, the first sigma
// entries of the lexicographically sorted set {(d(u,v,G), v) : v in S,
// d(u,v,G) <= gamma}.

struct DetectionEntry {
    i64 d;
    int v;
    friend bool operator==(const DetectionEntry& a, const DetectionEntry& b) {
        return a.d == b.d && a.v == b.v;
    }
    friend bool operator<(const DetectionEntry& a, const DetectionEntry& b) {
        return std::tie(a.d, a.v) < std::tie(b.d, b.v);
    }
};

using DetectionList = std::vector<DetectionEntry>;

struct DetectionResult {
    Range gamma;
    i64 sigma = 0;
    std::vector<DetectionList> lists;  // per node, rank order

    friend bool operator==(const DetectionResult& a, const DetectionResult& b) {
        return a.lists == b.lists;
    }
};

// Reference implementation: one bounded Dijkstra per source.
inline DetectionResult detect_brute(const Graph& g, const std::vector<int>& S, Range gamma,
                                    i64 sigma) {
    if (sigma < 0) throw NonIntegralRange("sigma must be >= 0");
    DetectionResult res;
    res.gamma = gamma;
    res.sigma = sigma;
    res.lists.assign(g.n, {});
    for (int s : S) {
        auto t = dijkstra_bounded(g, s, gamma);
        for (int v = 0; v < g.n; ++v)
            if (t.reached(v)) res.lists[v].push_back({t.dist[v], s});
    }
    for (auto& list : res.lists) {
        std::sort(list.begin(), list.end());
        if ((i64)list.size() > sigma) list.resize(sigma);
    }
    return res;
}

// Per-phase diagnostics for the phase algorithm. edge_budget counts each
// undirected input edge at most once (kept or replaced by shortcuts) plus one
// super-source link per materialized source copy; the asserted bounds are
// nodes <= n + |S| + 1 and edge_budget <= m + |S|.
struct RtzPhaseStats {
    int phase = 0;
    int nodes = 0;
    i64 edge_budget = 0;
    int copies = 0;
    i64 settled = 0;
};

namespace detail {

// Lexicographic bounded Dijkstra: labels are (distance, source id); each node
// ends with the minimum over admissible paths, which settles ties between
// equal-distance sources toward the smaller id. Edge weights are strictly
// positive, so settled labels are final.
struct LexLabel {
    i64 d = INF64;
    int src = -1;
    bool valid() const { return src >= 0; }
    friend bool operator<(const LexLabel& a, const LexLabel& b) {
        return std::tie(a.d, a.src) < std::tie(b.d, b.src);
    }
};

inline std::vector<LexLabel> lex_dijkstra(
    int n, const std::vector<std::vector<std::pair<int, i64>>>& adj,
    const std::vector<std::pair<int, LexLabel>>& init, Range gamma) {
    std::vector<LexLabel> best(n);
    struct Item {
        LexLabel lab;
        int v;
        bool operator>(const Item& o) const {
            if (!(lab < o.lab) && !(o.lab < lab)) return v > o.v;
            return o.lab < lab;
        }
    };
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    auto admit = [&](const LexLabel& l) { return gamma.admits(l.d); };
    for (const auto& [v, lab] : init) {
        if (!admit(lab)) continue;
        if (lab < best[v]) {
            best[v] = lab;
            pq.push({lab, v});
        }
    }
    std::vector<char> done(n, 0);
    while (!pq.empty()) {
        auto [lab, u] = pq.top();
        pq.pop();
        if (done[u] || best[u] < lab) continue;
        done[u] = 1;
        for (const auto& [v, w] : adj[u]) {
            LexLabel cand{lab.d + w, lab.src};
            if (!admit(cand)) continue;
            if (cand < best[v]) {
                best[v] = cand;
                pq.push({cand, v});
            }
        }
    }
    return best;
}

}  // namespace detail

// Phase algorithm: sigma rounds, each a bounded SSSP from a super-source on an
// auxiliary graph. Phase 1 attaches the super-source to every source by a
// zero-length link (realized as initial labels; the zero-length edges live
// only in this internal augmented structure). Phase j > 1 keeps an edge (y,v)
// only where the found-source sets U_{j-1} agree, and otherwise replaces the
// orientation (y,v) by a shortcut to a copy of the nearest source in
// U_{j-1}(v) \ U_{j-1}(y) (ties lexicographic). Output is identical to
// detect_brute.
//
// phase_hook, if set, receives after every phase the list of labels settled
// within gamma in that phase's SSSP (one entry per settled node).
inline DetectionResult detect_rtz(
    const Graph& g, const std::vector<int>& S, Range gamma, i64 sigma,
    std::vector<RtzPhaseStats>* stats = nullptr,
    const std::function<void(int phase, const std::vector<i64>& settled_levels)>& phase_hook = {}) {
    if (sigma < 0) throw NonIntegralRange("sigma must be >= 0");
    DetectionResult res;
    res.gamma = gamma;
    res.sigma = sigma;
    res.lists.assign(g.n, {});
    if (stats) stats->clear();

    auto& U = res.lists;  // grown in-place, one entry per productive phase
    std::vector<char> exhausted(g.n, 0);

    auto record_phase = [&](int phase, const std::vector<detail::LexLabel>& labels, int nodes,
                            i64 edge_budget, int copies) {
        std::vector<i64> settled;
        for (int v = 0; v < g.n; ++v)
            if (labels[v].valid()) settled.push_back(labels[v].d);
        if (stats)
            stats->push_back({phase, nodes, edge_budget, copies, (i64)settled.size()});
        if (nodes > g.n + (int)S.size() + 1)
            throw InvariantViolated("rtz phase graph node bound exceeded");
        if (edge_budget > (i64)g.m() + (i64)S.size())
            throw InvariantViolated("rtz phase graph edge bound exceeded");
        if (phase_hook) phase_hook(phase, settled);
    };

    for (i64 phase = 1; phase <= sigma; ++phase) {
        std::vector<detail::LexLabel> labels;
        int copies = 0;
        i64 edge_budget = 0;
        if (phase == 1) {
            std::vector<std::pair<int, detail::LexLabel>> init;
            init.reserve(S.size());
            for (int s : S) init.push_back({s, {0, s}});
            labels = detail::lex_dijkstra(g.n, g.adj, init, gamma);
            copies = (int)S.size();          // the zero-length source links
            edge_budget = g.m();             // every input edge kept
        } else {
            // U_{j-1} comparisons are over source-id sets; the distances in
            // the entries are per-node and irrelevant to (in)equality.
            auto same_source_set = [&](int a, int b) {
                if (U[a].size() != U[b].size()) return false;
                for (const auto& e : U[a]) {
                    bool found = false;
                    for (const auto& f : U[b])
                        if (f.v == e.v) { found = true; break; }
                    if (!found) return false;
                }
                return true;
            };
            // Shortcut for orientation (x -> v): first entry of U(v) missing
            // from U(x); U lists are in lexicographic rank order, so that
            // entry is the (d(v,u), u)-minimum of the set difference.
            auto first_new = [&](int v, int x) -> const DetectionEntry* {
                for (const auto& e : U[v]) {
                    bool known = false;
                    for (const auto& f : U[x])
                        if (f.v == e.v) { known = true; break; }
                    if (!known) return &e;
                }
                return nullptr;
            };
            std::vector<std::vector<std::pair<int, i64>>> kept(g.n);
            std::vector<std::pair<int, detail::LexLabel>> init;
            std::vector<char> copy_seen(g.n, 0);
            for (const auto& e : g.edges) {
                bool consumed = false;
                if (same_source_set(e.u, e.v)) {
                    kept[e.u].push_back({e.v, e.w});
                    kept[e.v].push_back({e.u, e.w});
                    consumed = true;
                } else {
                    for (auto [x, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                        const DetectionEntry* nu = first_new(v, x);
                        if (!nu) continue;  // nothing reachable for x through v
                        detail::LexLabel lab{e.w + nu->d, nu->v};
                        if (gamma.admits(lab.d)) {
                            init.push_back({x, lab});
                            if (!copy_seen[nu->v]) { copy_seen[nu->v] = 1; ++copies; }
                        }
                        consumed = true;
                    }
                }
                if (consumed) ++edge_budget;
            }
            edge_budget += copies;  // super-source links of materialized copies
            labels = detail::lex_dijkstra(g.n, kept, init, gamma);
        }
        for (int v = 0; v < g.n; ++v) {
            if (exhausted[v]) continue;
            if ((i64)U[v].size() < phase - 1) { exhausted[v] = 1; continue; }
            if (!labels[v].valid()) {
                exhausted[v] = 1;
                continue;
            }
            for (const auto& e : U[v])
                if (e.v == labels[v].src)
                    throw InvariantViolated("rtz phase rediscovered a known source");
            U[v].push_back({labels[v].d, labels[v].src});
        }
        record_phase((int)phase, labels, g.n + copies + 1, edge_budget, copies);
        bool any_active = false;
        for (int v = 0; v < g.n; ++v)
            if (!exhausted[v]) { any_active = true; break; }
        if (!any_active && !phase_hook && !stats) break;  // remaining phases are no-ops
    }
    return res;
}

}  // namespace dsssp
