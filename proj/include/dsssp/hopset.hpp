#pragma once

// Hop sets in three stages:
//   1. hop_reduction_additive: cluster shortcut edges giving paths with
//      (p+1)*ceil(d/Delta) hops and additive error eps*R/(p+2),
//   2. hop_reduction: weight-rounded copies per distance scale 2^j turn the
//      additive error into a purely multiplicative (1+eps) with hop bound
//      (p+2)h/Delta,
//   3. hop_set: p hierarchical applications give d^{ceil(n^{1/p})}(G u F)
//      within (1+eps) of true distance.
//
// Shortcut weights stay exact rationals end to end: the scale-back step
// multiplies integer cluster distances by rho_j = eps*2^j/h, and rounding
// those products up to integers would add +1 per shortcut edge, which is
// fatal for the per-level contracts at short distances.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dsssp/clusters.hpp"
#include "dsssp/errors.hpp"
#include "dsssp/gen.hpp"
#include "dsssp/graph.hpp"
#include "dsssp/rational.hpp"

namespace dsssp {

// ---------------------------------------------------------------- edge store

// Weighted shortcut edges keyed by unordered pair (u < v), kept sorted.
// merge() takes the per-pair minimum, so union order never matters.
struct HopSetEdges {
    struct Item {
        int u, v;  // canonical u < v
        Rat w;
    };

    int n = 0;  // node-id upper bound (for serialization and unions)
    std::vector<Item> items;  // sorted by (u, v), pairs unique

    std::size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }

    static bool pair_less(const Item& a, const Item& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }

    // Single insert; keeps the minimum on a repeated pair.
    void add(int u, int v, const Rat& w) {
        if (u == v) throw GraphError("hop set edge must join distinct nodes");
        if (u > v) std::swap(u, v);
        if (!(Rat(0) < w)) throw GraphError("hop set edge weight must be positive");
        n = std::max(n, v + 1);
        Item it{u, v, w};
        auto pos = std::lower_bound(items.begin(), items.end(), it, pair_less);
        if (pos != items.end() && pos->u == u && pos->v == v) {
            if (w < pos->w) pos->w = w;
        } else {
            items.insert(pos, it);
        }
    }

    // Bulk build: sort and keep the minimum weight per pair.
    static HopSetEdges from_unsorted(int n, std::vector<Item>&& raw) {
        std::sort(raw.begin(), raw.end(), [](const Item& a, const Item& b) {
            if (a.u != b.u) return a.u < b.u;
            if (a.v != b.v) return a.v < b.v;
            return a.w < b.w;
        });
        HopSetEdges out;
        out.n = n;
        out.items.reserve(raw.size());
        for (auto& it : raw) {
            if (!out.items.empty() && out.items.back().u == it.u && out.items.back().v == it.v)
                continue;  // earlier duplicate had the smaller weight
            out.items.push_back(std::move(it));
        }
        return out;
    }

    void merge(const HopSetEdges& o) {
        n = std::max(n, o.n);
        std::vector<Item> merged;
        merged.reserve(items.size() + o.items.size());
        std::size_t i = 0, j = 0;
        while (i < items.size() || j < o.items.size()) {
            if (j == o.items.size() || (i < items.size() && pair_less(items[i], o.items[j]))) {
                merged.push_back(items[i++]);
            } else if (i == items.size() || pair_less(o.items[j], items[i])) {
                merged.push_back(o.items[j++]);
            } else {
                Item it = items[i++];
                const Item& other = o.items[j++];
                if (other.w < it.w) it.w = other.w;
                merged.push_back(it);
            }
        }
        items = std::move(merged);
    }

    const Rat* find(int u, int v) const {
        if (u > v) std::swap(u, v);
        Item probe{u, v, Rat(0)};
        auto pos = std::lower_bound(items.begin(), items.end(), probe, pair_less);
        if (pos != items.end() && pos->u == u && pos->v == v) return &pos->w;
        return nullptr;
    }

    // Lines "u v w" with w printed as "num" or "num/den"; one header line.
    void write(std::ostream& out, const Rat& eps) const {
        out << "# hopset n=" << n << " eps=" << eps.num << "/" << eps.den << "\n";
        for (const auto& it : items) out << it.u << " " << it.v << " " << it.w.str() << "\n";
    }

    static std::pair<HopSetEdges, Rat> read(std::istream& in) {
        std::string line;
        if (!std::getline(in, line)) throw GraphError("hopset file: missing header");
        int n = 0;
        i64 num = 0, den = 0;
        if (std::sscanf(line.c_str(), "# hopset n=%d eps=%lld/%lld", &n, &num, &den) != 3 ||
            n < 1 || den < 1)
            throw GraphError("hopset file: bad header '" + line + "'");
        HopSetEdges f;
        f.n = n;
        int lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            int u, v;
            std::string wtok;
            if (!(ls >> u >> v >> wtok))
                throw GraphError("hopset file line " + std::to_string(lineno) + ": bad edge");
            i64 wn = 0, wd = 1;
            auto slash = wtok.find('/');
            try {
                if (slash == std::string::npos) {
                    wn = std::stoll(wtok);
                } else {
                    wn = std::stoll(wtok.substr(0, slash));
                    wd = std::stoll(wtok.substr(slash + 1));
                }
            } catch (...) {
                throw GraphError("hopset file line " + std::to_string(lineno) + ": bad weight");
            }
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw GraphError("hopset file line " + std::to_string(lineno) +
                                 ": endpoint out of range");
            f.add(u, v, Rat::make_reduced(wn, wd));
        }
        return {f, Rat::make_reduced(num, den)};
    }
};

// H = G u F with the minimum weight where an original edge and a shortcut
// coincide on a pair.
inline RatGraph union_graph(const RatGraph& g, const HopSetEdges& f) {
    if (f.n > g.n) throw GraphError("union_graph: hop set mentions nodes beyond the graph");
    std::vector<HopSetEdges::Item> all;
    all.reserve(g.edges.size() + f.items.size());
    for (const auto& e : g.edges) all.push_back({e.u, e.v, e.w});
    for (const auto& it : f.items) all.push_back(it);
    HopSetEdges merged = HopSetEdges::from_unsorted(g.n, std::move(all));
    Rat maxw(1);
    for (const auto& it : merged.items) maxw = rat_max(maxw, it.w);
    RatGraph out(g.n, maxw);
    for (const auto& it : merged.items) out.add_edge(it.u, it.v, it.w);
    return out;
}

inline RatGraph union_graph(const Graph& g, const HopSetEdges& f) {
    return union_graph(to_rat_graph(g), f);
}

// ------------------------------------------------- additive-error reduction

// Parameters of HopReductionAdditiveError: priority count p (clamped to at
// least 1), radii r_0..r_{p-1}, beta = sum of 2 r_i, and the cluster range R.
// R starts at ceil(n^{1/p}) * Delta and is enlarged until
// beta <= eps * R / (p + 2) holds, recovering the additive-error bound that
// the unclamped p would have given for free.
struct AdditiveParams {
    i64 n = 1;
    i64 delta = 1;
    Rat eps;
    int p = 1;
    std::vector<Rat> r;
    Rat beta;
    i64 R = 1;
    i64 q = 1;  // detection list length for the priority hierarchy

    // Largest p >= 1 with p^2 * log2(base) <= log2(n), evaluated with
    // integer bounds that can only understate p (smaller p is always sound;
    // R enlargement keeps the beta invariant independent of the clamp).
    static int conservative_p(i64 n, const Rat& nine_over_eps) {
        i64 base = nine_over_eps.ceil();
        if (base < 2) base = 2;
        i64 L = ceil_log2(base);
        i64 F = n >= 2 ? floor_log2(n) : 0;
        int p = 1;
        while ((i64)(p + 1) * (p + 1) * L <= F) ++p;
        return p;
    }

    static AdditiveParams derive(i64 n, i64 delta, const Rat& eps) {
        if (n < 1) throw PreconditionViolated("additive params: n must be >= 1");
        if (delta < 1) throw PreconditionViolated("additive params: Delta must be >= 1");
        if (!(Rat(0) < eps) || Rat(1) < eps)
            throw PreconditionViolated("additive params: eps must be in (0, 1]");
        AdditiveParams P;
        P.n = n;
        P.delta = delta;
        P.eps = eps;
        P.p = conservative_p(n, Rat(9) / eps);
        P.r.resize(P.p);
        P.r[0] = Rat(delta);
        Rat prefix = P.r[0];
        for (int i = 1; i < P.p; ++i) {
            P.r[i] = (Rat(4) + Rat(2) * eps) * prefix / eps;
            prefix = prefix + P.r[i];
        }
        P.beta = Rat(0);
        for (const Rat& ri : P.r) P.beta = P.beta + Rat(2) * ri;
        i64 base_R = mul_checked(ceil_nth_root(n, P.p), delta);
        i64 needed = (Rat(P.p + 2) * P.beta / eps).ceil();
        P.R = std::max(base_R, needed);
        P.q = priority_list_length(n, P.p);
        P.check();
        return P;
    }

    void check() const {
        if (p < 1 || (int)r.size() != p) throw InvariantViolated("additive params: bad r list");
        if (!(r[0] == Rat(delta))) throw InvariantViolated("additive params: r_0 != Delta");
        // growth bound: sum_{j<=i} r_j <= 7^i * Delta / eps^i
        Rat prefix(0);
        for (int i = 0; i < p; ++i) {
            prefix = prefix + r[i];
            Rat bound = Rat(delta) * (Rat(7) / eps).pow(i);
            if (bound < prefix)
                throw InvariantViolated("additive params: r growth bound violated at i=" +
                                        std::to_string(i));
        }
        // beta <= eps * R / (p + 2), by construction of R
        if (Rat(R) * eps / Rat(p + 2) < beta)
            throw InvariantViolated("additive params: beta exceeds eps*R/(p+2)");
    }
};

struct AdditiveResult {
    HopSetEdges F;
    AdditiveParams params;
    PriorityHierarchy hier;
};

struct ScaleInfo {
    i64 j = 0;       // scale index
    Rat rho;         // rounding unit eps' * 2^j / h
    bool skipped = false;  // provably contributes nothing (see below)
    i64 edges = 0;   // |F_j| before the merge
};

// Instrumentation points for cost-model harnesses.  The same code path
// serves plain and charged runs, so their results agree by construction:
// detect substitutes the detection routine inside the priority computation,
// on_clusters fires after each cluster build, on_scale after each scale of a
// scaled reduction (skipped scales included).  All members optional.
struct HopSetHooks {
    DetectFn detect;
    std::function<void(const Graph& rounded, const AdditiveParams&, const PriorityHierarchy&,
                       const ClusterMap&)>
        on_clusters;
    std::function<void(const ScaleInfo&)> on_scale;
};

// HopReductionAdditiveError(G, Delta, eps): clusters at range R under the
// greedy-hitting-set hierarchy; F takes one edge per (center, member) pair
// with the exact cluster distance as weight (self pairs skipped).
inline AdditiveResult hop_reduction_additive_full(const Graph& g, const AdditiveParams& P,
                                                  const HopSetHooks& hooks = {}) {
    if (P.n != g.n) throw PreconditionViolated("hop_reduction_additive: params built for wrong n");
    AdditiveResult res;
    res.params = P;
    res.hier = compute_priorities_with_q(g, P.p, Range::finite(P.R), P.q, hooks.detect);
    ClusterMap cm = compute_clusters(g, res.hier, Range::finite(P.R));
    if (hooks.on_clusters) hooks.on_clusters(g, P, res.hier, cm);
    std::vector<HopSetEdges::Item> raw;
    for (int v = 0; v < g.n; ++v)
        for (const auto& [u, d] : cm.members[v])
            if (u != v) raw.push_back({std::min(u, v), std::max(u, v), Rat(d)});
    res.F = HopSetEdges::from_unsorted(g.n, std::move(raw));
    return res;
}

inline AdditiveResult hop_reduction_additive_full(const Graph& g, i64 delta, const Rat& eps) {
    return hop_reduction_additive_full(g, AdditiveParams::derive(g.n, delta, eps));
}

inline HopSetEdges hop_reduction_additive(const Graph& g, i64 delta, const Rat& eps) {
    return hop_reduction_additive_full(g, delta, eps).F;
}

// --------------------------------------------------- scaled hop reduction

struct HopReductionResult {
    HopSetEdges F;
    Rat eps_inner;          // eps' = eps / 6
    i64 delta_inner = 1;    // Delta' = ceil(3 Delta / eps'), integer threshold
    AdditiveParams additive;  // parameters shared by every scale call
    std::vector<ScaleInfo> scales;
    bool precondition_ok = true;
};

// Hop budget the reduction contract is verified against. The advertised
// bound is ceil((p+2) h / Delta); its derivation compresses the raw count
// (p+1) * ceil(h / Delta) through steps that need n^{1/p} >= p + 1, which
// fails for tiny n. When the raw count exceeds the advertised bound we
// verify against the raw count and say so.
struct HopBudget {
    i64 budget = 0;
    bool raw = false;  // true when the raw (p+1)*ceil(h/Delta) form is wider
};

inline HopBudget hop_reduction_budget(int p, i64 h, i64 delta) {
    HopBudget b;
    i64 advertised = (Rat(p + 2) * Rat(h) / Rat(delta)).ceil();
    i64 raw = mul_checked((i64)p + 1, (h + delta - 1) / delta);
    if (raw > advertised) {
        b.budget = raw;
        b.raw = true;
    } else {
        b.budget = advertised;
    }
    return b;
}

// The two provably-inert scale classes.  A scale whose smallest rounded
// weight exceeds the cluster range R has only singleton clusters and
// contributes nothing; once every weight rounds to 1 the rounded graph stops
// changing, and later all-ones scales only repeat the first with strictly
// larger scale-backs.
inline bool scale_skips_all_singletons(const Rat& wmin, const Rat& rho, i64 R) {
    return Rat(R) < wmin / rho;
}
inline bool scale_is_all_ones(const Rat& wmax, const Rat& rho) { return !(rho < wmax); }

// HopReduction(G, Delta, h, eps, W): for every scale j = 0..floor(log2(nW)),
// round weights up in units of rho_j = eps'*2^j/h, shortcut the rounded graph
// with the additive reduction, and scale the shortcut weights back by rho_j;
// merge keeps the per-pair minimum. Inert scales (see above) are skipped.
inline HopReductionResult hop_reduction_full(const RatGraph& g, i64 delta, i64 h, const Rat& eps,
                                             const Rat& W, bool force = false,
                                             const HopSetHooks& hooks = {}) {
    if (delta < 1) throw PreconditionViolated("hop_reduction: Delta must be >= 1");
    if (h < 1) throw PreconditionViolated("hop_reduction: h must be >= 1");
    if (!(Rat(0) < eps) || Rat(1) < eps)
        throw PreconditionViolated("hop_reduction: eps must be in (0, 1]");
    for (const auto& e : g.edges)
        if (W < e.w) throw PreconditionViolated("hop_reduction: edge weight exceeds declared W");

    HopReductionResult res;
    res.eps_inner = eps / Rat(6);
    res.delta_inner = (Rat(3) * Rat(delta) / res.eps_inner).ceil();
    res.additive = AdditiveParams::derive(g.n, res.delta_inner, res.eps_inner);
    res.F.n = g.n;

    // contract precondition h >= n^{1/p} Delta / (p + 2)
    i64 root = ceil_nth_root(g.n, res.additive.p);
    res.precondition_ok =
        !(Rat(h) < Rat(root) * Rat(delta) / Rat(res.additive.p + 2));
    if (!res.precondition_ok && !force)
        throw PreconditionViolated(
            "hop_reduction: h < n^{1/p} Delta / (p+2); pass force to run anyway");

    if (g.m() == 0) return res;
    Rat wmin = g.edges[0].w, wmax = g.edges[0].w;
    for (const auto& e : g.edges) {
        wmin = rat_min(wmin, e.w);
        wmax = rat_max(wmax, e.w);
    }

    Rat nW = Rat(g.n) * W;
    i64 last_scale = nW.floor_log2_self();
    bool all_ones_done = false;
    for (i64 j = 0; j <= last_scale; ++j) {
        ScaleInfo info;
        info.j = j;
        info.rho = res.eps_inner * Rat(2).pow((int)j) / Rat(h);
        bool least_weight_beyond_range = scale_skips_all_singletons(wmin, info.rho, res.additive.R);
        bool all_ones = scale_is_all_ones(wmax, info.rho);
        if (least_weight_beyond_range || (all_ones && all_ones_done)) {
            info.skipped = true;
            if (hooks.on_scale) hooks.on_scale(info);
            res.scales.push_back(info);
            continue;
        }
        if (all_ones) all_ones_done = true;
        Graph rounded = round_weights_capped(g, info.rho, res.additive.R);
        AdditiveResult add = hop_reduction_additive_full(rounded, res.additive, hooks);
        info.edges = (i64)add.F.size();
        HopSetEdges scaled;
        scaled.n = g.n;
        scaled.items.reserve(add.F.items.size());
        for (const auto& it : add.F.items)
            scaled.items.push_back({it.u, it.v, it.w * info.rho});  // already sorted
        if (hooks.on_scale) hooks.on_scale(info);
        res.F.merge(scaled);
        res.scales.push_back(info);
    }
    return res;
}

inline HopReductionResult hop_reduction_full(const Graph& g, i64 delta, i64 h, const Rat& eps,
                                             i64 W, bool force = false,
                                             const HopSetHooks& hooks = {}) {
    return hop_reduction_full(to_rat_graph(g), delta, h, eps, Rat(W), force, hooks);
}

inline HopSetEdges hop_reduction(const Graph& g, i64 delta, i64 h, const Rat& eps, i64 W,
                                 bool force = false) {
    return hop_reduction_full(g, delta, h, eps, W, force).F;
}

// -------------------------------------------------------- hierarchical hop set

struct HopSetLevel {
    i64 h = 1;           // hop parameter fed to this reduction
    bool forced = false;  // reduction precondition failed (tiny-n degeneracy)
    i64 edges = 0;       // |F_{i+1}|
};

struct HopSetResult {
    HopSetEdges F;
    std::vector<HopSetEdges> level_sets;  // F_1 .. F_p
    std::vector<HopSetLevel> levels;
    int p = 1;
    i64 delta = 1;
    Rat eps;        // requested accuracy
    Rat eps_level;  // eps' = eps / (2s), s = ceil(sqrt(ceil(log2 n)))
    Rat W_prime;    // weight bound carried through the levels
    i64 hop_bound = 1;  // ceil(n^{1/p}): the advertised hop count
};

// HopSet(G, eps, W): p rounds of hop reduction, each on the union of G with
// everything built so far. s = ceil(sqrt(ceil(log2 n))) bounds the number of
// (1 + eps') factors the chain can accumulate, and (1 + eps/(2s))^s <= 1+eps
// turns the per-level contracts into the final (1 + eps).
inline HopSetResult hop_set(const Graph& g, const Rat& eps, i64 W,
                            const HopSetHooks& hooks = {}) {
    if (!(Rat(0) < eps) || Rat(1) < eps)
        throw PreconditionViolated("hop_set: eps must be in (0, 1]");
    if (W < 1) throw PreconditionViolated("hop_set: W must be >= 1");
    HopSetResult res;
    res.eps = eps;
    res.F.n = g.n;
    if (g.n == 1) {
        res.eps_level = eps;
        res.W_prime = Rat(W);
        return res;  // no pairs, empty hop set
    }
    res.W_prime = (Rat(1) + eps) * Rat(g.n) * Rat(W);
    i64 s = 1;
    while (s * s < ceil_log2(g.n)) ++s;
    res.eps_level = eps / Rat(2 * s);
    res.p = AdditiveParams::conservative_p(g.n, Rat(54) / res.eps_level);
    res.hop_bound = ceil_nth_root(g.n, res.p);
    res.delta = mul_checked((i64)res.p + 2, res.hop_bound);

    RatGraph H = to_rat_graph(g);
    for (int i = 0; i < res.p; ++i) {
        HopSetLevel lvl;
        // h_i = ceil(n^{1 - i/p}) = ceil((n^{p-i})^{1/p})
        i64 npow = 1;
        for (int k = 0; k < res.p - i; ++k) npow = mul_checked(npow, g.n);
        lvl.h = ceil_nth_root(npow, res.p);
        HopReductionResult red = hop_reduction_full(H, res.delta, lvl.h, res.eps_level,
                                                    res.W_prime, /*force=*/true, hooks);
        lvl.forced = !red.precondition_ok;
        lvl.edges = (i64)red.F.size();
        res.levels.push_back(lvl);
        res.level_sets.push_back(red.F);
        res.F.merge(red.F);
        if (i + 1 < res.p) H = union_graph(H, red.F);
    }
    return res;
}

// ------------------------------------------------------------- verification

struct SandwichReport {
    i64 pairs = 0;
    i64 lower_violations = 0;  // d^hb(u,v,G u F) < d(u,v,G)
    i64 upper_violations = 0;  // d^hb(u,v,G u F) > (1+eps) d(u,v,G)
    Rat worst_ratio = Rat(1);  // max over finite pairs of d^hb / d
    bool used_dijkstra = false;  // hop bound covered every simple path
    bool ok() const { return lower_violations == 0 && upper_violations == 0; }
};

// Exact sandwich check d(u,v,G) <= d^hb(u,v,G u F) <= (1+eps) d(u,v,G) over
// all pairs with the given sources (all nodes if empty). A hop bound of
// n - 1 or more admits every simple path, so plain Dijkstra on the union
// replaces the h-hop oracle.
inline SandwichReport verify_hopset_sandwich(const Graph& g, const HopSetEdges& f, i64 hop_bound,
                                             const Rat& eps, std::vector<int> sources = {}) {
    if (sources.empty())
        for (int v = 0; v < g.n; ++v) sources.push_back(v);
    RatGraph H = union_graph(g, f);
    SandwichReport rep;
    rep.used_dijkstra = hop_bound >= (i64)g.n - 1;
    std::vector<SandwichReport> partial(sources.size());
    parallel_for((int)sources.size(), [&](int si) {
        int s = sources[si];
        DistanceTable exact = dijkstra_bounded(g, s);
        std::vector<Rat> limited;
        if (rep.used_dijkstra)
            limited = dijkstra_bounded(H, s).dist;
        else
            limited = bellman_ford_hops(H, s, hop_bound);
        SandwichReport& r = partial[si];
        for (int v = 0; v < g.n; ++v) {
            if (v == s) continue;
            ++r.pairs;
            Rat d = exact.reached(v) ? Rat(exact.dist[v]) : Rat::inf();
            const Rat& dh = limited[v];
            if (d.is_inf()) {
                if (!dh.is_inf()) ++r.lower_violations;  // shortcut reached the unreachable
                continue;
            }
            if (dh < d) ++r.lower_violations;
            if ((Rat(1) + eps) * d < dh) ++r.upper_violations;
            if (!dh.is_inf() && !d.is_zero()) r.worst_ratio = rat_max(r.worst_ratio, dh / d);
        }
    });
    for (const auto& r : partial) {
        rep.pairs += r.pairs;
        rep.lower_violations += r.lower_violations;
        rep.upper_violations += r.upper_violations;
        rep.worst_ratio = rat_max(rep.worst_ratio, r.worst_ratio);
    }
    return rep;
}

// Deterministic distinct source sample for large instances.
inline std::vector<int> sample_sources(int n, int k, uint64_t seed) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    SplitMix64 rng(seed);
    shuffle_vec(ids, rng);
    if ((int)ids.size() > k) ids.resize(k);
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace dsssp
