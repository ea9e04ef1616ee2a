#pragma once

// Cost-model execution.  Overlay-level algorithms run broadcast-by-broadcast
// with counted messages; base-network primitives compute their results
// sequentially and charge the cited round formulas.  Every hidden constant
// is fixed at 1, and each ledger entry carries its formula plus the values
// that produced the charge, so alternate constants can be replayed without
// rerunning anything.  Results are bit-identical to the uncharged
// counterparts: the charged paths either reuse the sequential code or assert
// equality against it on every call.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dsssp/clusters.hpp"
#include "dsssp/detection.hpp"
#include "dsssp/errors.hpp"
#include "dsssp/graph.hpp"
#include "dsssp/hopset.hpp"
#include "dsssp/overlay.hpp"
#include "dsssp/rational.hpp"

namespace dsssp {

// ------------------------------------------------------------------- ledger

enum class CostModel { congest, clique, streaming };

inline std::string cost_model_name(CostModel m) {
    switch (m) {
        case CostModel::congest: return "congest";
        case CostModel::clique: return "clique";
        default: return "streaming";
    }
}

struct CostEntry {
    std::string stage;    // pipeline stage label
    std::string formula;  // symbolic charge with unit constants
    i64 units = 0;
    std::vector<std::pair<std::string, i64>> params;  // values behind the formula
};

// Rounds ledger for the congest / congested-clique models.  D is the hop
// diameter of the base network (congest broadcasts pay it; the clique does
// not use it).  Entries are append-only within a run; one ledger per run.
struct CostLedger {
    CostModel model = CostModel::congest;
    i64 D = 0;
    i64 n = 1;  // network size, the clique's per-round message capacity
    std::vector<CostEntry> entries;

    i64 total() const {
        i64 t = 0;
        for (const auto& e : entries) t = add_checked(t, e.units);
        return t;
    }

    void add(std::string stage, std::string formula, i64 units,
             std::vector<std::pair<std::string, i64>> params = {}) {
        if (units < 0) throw InvariantViolated("ledger: negative charge");
        entries.push_back({std::move(stage), std::move(formula), units, std::move(params)});
    }

    bool has_stage(const std::string& stage) const {
        for (const auto& e : entries)
            if (e.stage == stage) return true;
        return false;
    }

    static CostLedger congest_for(const Graph& g) {
        CostLedger led;
        led.model = CostModel::congest;
        led.D = hop_diameter(g);  // throws DisconnectedGraph
        led.n = g.n;
        return led;
    }

    static CostLedger clique_for(const Graph& g) {
        CostLedger led;
        led.model = CostModel::clique;
        led.D = 0;  // all-to-all: no diameter term
        led.n = g.n;
        return led;
    }
};

// One broadcast of m' messages through the network: congest pays D + m'
// (an empty synchronization iteration still costs D); the clique routes n
// messages per 2 rounds, so 2*ceil(m'/n), free when there is nothing to say.
inline void charge_broadcast(CostLedger& led, i64 m_prime, const std::string& stage = "broadcast") {
    if (m_prime < 0) throw PreconditionViolated("charge_broadcast: negative message count");
    switch (led.model) {
        case CostModel::congest:
            led.add(stage, "D+m'", add_checked(led.D, m_prime), {{"D", led.D}, {"m'", m_prime}});
            break;
        case CostModel::clique: {
            i64 units = m_prime == 0 ? 0 : 2 * ((m_prime + led.n - 1) / led.n);
            led.add(stage, "2*ceil(m'/n)", units, {{"m'", m_prime}, {"n", led.n}});
            break;
        }
        default:
            throw WrongModel("charge_broadcast: streaming ledgers count passes, not rounds");
    }
}

// Messages grouped by level, charged as one aggregate entry (units equal the
// per-iteration sum; iterating empty congest levels still pays D each).
inline i64 leveled_charge(const CostLedger& led, i64 iterations,
                          const std::map<i64, i64>& per_level) {
    i64 units = 0;
    if (led.model == CostModel::congest) {
        units = mul_checked(iterations, led.D);
        for (const auto& kv : per_level) units = add_checked(units, kv.second);
    } else {
        for (const auto& kv : per_level)
            if (kv.second > 0) units = add_checked(units, 2 * ((kv.second + led.n - 1) / led.n));
    }
    return units;
}

// --------------------------------------------------- simulated primitives

// Exact bounded SSSP on an overlay graph, executed as R+1 level-synchronous
// iterations: the nodes settling at distance L broadcast (u, d, parent) and
// their neighbors relax.  One broadcast charge per iteration with m_L = the
// number of settlers.  Output asserted bit-identical to dijkstra_bounded.
inline DistanceTable bounded_sssp_overlay(const Graph& g, const std::vector<int>& roots, i64 R,
                                          CostLedger& led,
                                          const std::string& stage = "bounded_sssp") {
    if (R < 0) throw PreconditionViolated("bounded_sssp_overlay: R must be >= 0");
    if (roots.empty()) throw PreconditionViolated("bounded_sssp_overlay: no roots");
    DistanceTable t;
    t.source = roots.size() == 1 ? roots[0] : -1;
    t.dist.assign(g.n, INF64);
    t.parent.assign(g.n, -1);
    std::vector<std::vector<int>> bucket(R + 1);
    for (int r : roots) {
        if (r < 0 || r >= g.n) throw GraphError("bounded_sssp_overlay: root out of range");
        if (t.dist[r] != 0) {
            t.dist[r] = 0;
            bucket[0].push_back(r);
        }
    }
    std::vector<char> settled(g.n, 0);
    i64 settled_total = 0;
    for (i64 L = 0; L <= R; ++L) {
        std::vector<int> level;
        for (int v : bucket[L])
            if (!settled[v] && t.dist[v] == L) level.push_back(v);
        std::sort(level.begin(), level.end());
        level.erase(std::unique(level.begin(), level.end()), level.end());
        for (int v : level) settled[v] = 1;
        charge_broadcast(led, (i64)level.size(), stage);
        settled_total += (i64)level.size();
        for (int u : level) {
            for (const auto& [v, w] : g.adj[u]) {
                i64 nd = WeightOps<i64>::add(L, w);
                if (nd > R) continue;
                if (nd < t.dist[v]) {
                    t.dist[v] = nd;
                    t.parent[v] = u;
                    bucket[nd].push_back(v);
                } else if (nd == t.dist[v] && (t.parent[v] == -1 || u < t.parent[v])) {
                    t.parent[v] = u;
                }
            }
        }
    }
    if (settled_total > (i64)g.n)
        throw InvariantViolated("bounded_sssp_overlay: settled more nodes than exist");
    DistanceTable oracle = dijkstra_bounded(g, roots, Range::finite(R));
    if (t.dist != oracle.dist || t.parent != oracle.parent)
        throw InvariantViolated("bounded_sssp_overlay: diverged from dijkstra_bounded");
    return t;
}

// Detection on an overlay graph: the sequential routine runs unchanged, and a
// phase hook charges each of the sigma phases with its bounded-SSSP cost,
// (gamma+1) iterations with the phase's settle counts (an infinite gamma
// pays for the levels actually reached).
inline DetectionResult detect_rtz_overlay(const Graph& g, const std::vector<int>& S, Range gamma,
                                          i64 sigma, CostLedger& led,
                                          const std::string& stage = "detect") {
    auto hook = [&](int phase, const std::vector<i64>& settled_levels) {
        std::map<i64, i64> per_level;
        i64 deepest = -1;
        for (i64 lv : settled_levels) {
            per_level[lv] += 1;
            deepest = std::max(deepest, lv);
        }
        i64 iterations = gamma.infinite ? deepest + 1 : gamma.value + 1;
        i64 units = leveled_charge(led, iterations, per_level);
        led.add(stage, "(gamma+1)*D+settled", units,
                {{"phase", phase},
                 {"iterations", iterations},
                 {"settled", (i64)settled_levels.size()}});
    };
    return detect_rtz(g, S, gamma, sigma, nullptr, hook);
}

// The aggregate charge of a distributed cluster build: R+1 broadcasts whose
// message total is sum_v |C(v)| (each node announces each cluster it joins
// at the level equal to its cluster distance).
inline void charge_clusters(CostLedger& led, const ClusterMap& cm, i64 R,
                            const std::string& stage = "clusters") {
    std::map<i64, i64> per_level;
    i64 total = 0;
    for (const auto& c : cm.members)
        for (const auto& [u, delta] : c) {
            if (delta > R)
                throw InvariantViolated("charge_clusters: member beyond the cluster range");
            per_level[delta] += 1;
            total += 1;
        }
    if (total != cm.total_size())
        throw InvariantViolated("charge_clusters: level sums disagree with sum_v |C(v)|");
    i64 units = leveled_charge(led, R + 1, per_level);
    led.add(stage, "(R+1)*D+sum|C|", units, {{"R", R}, {"D", led.D}, {"sum|C|", total}});
}

inline ClusterMap clusters_overlay(const Graph& g, const PriorityHierarchy& h, Range R,
                                   CostLedger& led, const std::string& stage = "clusters") {
    ClusterMap cm = compute_clusters(g, h, R);
    i64 Rv = 0;
    if (R.infinite) {  // unbounded build: the deepest join sets the iteration count
        for (const auto& c : cm.members)
            for (const auto& [u, d] : c) Rv = std::max(Rv, d);
    } else {
        Rv = R.value;
    }
    charge_clusters(led, cm, Rv, stage);
    return cm;
}

// ------------------------------------------------------------ full pipeline

struct CongestRunResult {
    OverlaySsspResult detail;
    CostLedger ledger;
};

// The congest pipeline end to end.  Base-network stages (types, ruling, pde)
// compute sequentially and charge the cited formulas per scale or per type;
// overlay-level stages (priorities, clusters inside the hop set, the final
// bounded searches) run through the charged primitives above.  Stage labels:
// types, ruling, pde, priorities, clusters, hopreduce, finalsssp, broadcast.
inline CongestRunResult run_congest_pipeline(const Graph& g, int s, const OverlayParams& P,
                                             const Rat& eps_hs, const Rat& eps_fin) {
    if (s < 0 || s >= g.n) throw PreconditionViolated("run_congest_pipeline: bad source");
    CongestRunResult out;
    out.ledger = CostLedger::congest_for(g);
    CostLedger& led = out.ledger;
    OverlaySsspResult& r = out.detail;
    r.params = P;
    r.eps_hs = eps_hs;
    r.eps_fin = eps_fin;
    r.alpha = P.alpha(eps_hs, eps_fin);

    // node types: one source-detection charge per scale, the theorem's
    // min(gamma, D) + min(sigma, |S|) form with gamma = h', sigma = h, S = V
    r.types = compute_types(g, P);
    for (i64 i = 0; i <= P.scale_count; ++i)
        led.add("types", "min(h',D)+min(h,n)",
                std::min(P.h_prime, led.D) + std::min(P.h, (i64)g.n),
                {{"scale", i}, {"h'", P.h_prime}, {"h", P.h}});

    // ruling sets: b(c-1) rounds per non-empty type
    r.centers = select_centers(g, r.types, P, s);
    for (std::size_t t = 0; t < r.centers.rulings.size(); ++t) {
        const RulingSetResult& rs = r.centers.rulings[t];
        led.add("ruling", "b*(c-1)", rs.rounds_used,
                {{"type", r.centers.ruling_types[t]}, {"b", rs.b}, {"c", rs.c}});
    }

    // partial distance estimation: per scale, detection with gamma = k',
    // sigma = |V'| from S = V'
    r.net = distances_to_centers(g, r.centers.centers, P);
    i64 N = (i64)r.centers.centers.size();
    for (i64 i = 0; i <= P.scale_count; ++i)
        led.add("pde", "min(k',D)+|V'|", std::min(P.k_prime, led.D) + N,
                {{"scale", i}, {"k'", P.k_prime}, {"|V'|", N}});

    // hop set on the integerized overlay graph, charged through hooks
    OverlayGraphInt gi = overlay_graph_int(r.net);
    r.sigma = gi.sigma;
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
    r.overlay_hopset = hop_set(gi.g, eps_hs, gi.W, hooks);
    // degenerate overlays (a single center) never enter the hop-set loop;
    // keep the stage list complete with explicit zero-round markers
    if (!led.has_stage("priorities"))
        led.add("priorities", "fast path: every |A_i| < q, no detection phases", 0);
    if (!led.has_stage("clusters")) led.add("clusters", "no cluster builds ran", 0);
    if (!led.has_stage("hopreduce")) led.add("hopreduce", "no scales ran", 0);

    // final bounded searches on the shortcut overlay, one per scale
    r.dtilde = finish_sssp(r.net, r.overlay_hopset.F, s, r.overlay_hopset.hop_bound, eps_fin,
                           [&](const Graph& hi, int root, i64 Rf) {
                               return bounded_sssp_overlay(hi, {root}, Rf, led, "finalsssp");
                           });

    r.estimate.resize(g.n);
    for (int u = 0; u < g.n; ++u) r.estimate[u] = combine(r.net, r.dtilde, s, u);
    r.estimate[s] = Rat(0);

    // every center's dtilde goes out once so all nodes can combine locally
    charge_broadcast(led, N, "broadcast");
    return out;
}

}  // namespace dsssp
