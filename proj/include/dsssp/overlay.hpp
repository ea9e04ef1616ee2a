#pragma once

// Overlay networks: node types from rounded-graph ball sizes, center
// selection through per-type ruling sets, partial distance estimation to the
// centers, and the final combination step
//     estimate(u) = min( dhat(u,s), min_v ( dtilde(s,v) + dhat(u,v) ) ).
//
// The guarantees chain symbolically: with mu = 2 * eps * eps_eff * beta_rs/h
// (eps_eff = 1/ceil(ell/h), beta_rs the ruling coverage radius) every
// estimate lies in [d(s,u,G), alpha * d(s,u,G)] for
// alpha = (1+eps_fin)(1+eps_hs)(1+eps)(1+2*mu).  Lower bounds are exact at
// every stage (rounding up never undercuts a distance) and asserted on every
// run; the alpha side is certified by the acceptance checks.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dsssp/errors.hpp"
#include "dsssp/graph.hpp"
#include "dsssp/hopset.hpp"
#include "dsssp/rational.hpp"
#include "dsssp/ruling.hpp"
#include "dsssp/util.hpp"

namespace dsssp {

// ---------------------------------------------------------------- parameters

// h = floor(eps * ell) clamped to >= 1; h' = ceil((1+2/eps) h) is the rounded
// ball radius; beta_rs = a * (2h'+1) * ceil(log2 n) is how far a ruling-set
// center can sit from a node of its type; h* covers both the paper's
// 9 a ell log n and beta_rs (the clamp can push beta_rs past the former);
// k = 2h* + 2 ell; k' = ceil((1+2/eps) k).  eps_eff = 1/ceil(ell/h) is the
// effective hitting-lemma accuracy once h is clamped.
struct OverlayParams {
    i64 n = 1;
    i64 W = 1;
    Rat eps;
    i64 ell = 1;
    i64 a = 1;

    i64 h = 1;
    i64 h_prime = 1;
    i64 beta_rs = 0;
    i64 h_star = 1;
    i64 k = 1;
    i64 k_prime = 1;
    Rat eps_eff;
    i64 scale_count = 0;  // type/PDE scales run for i = 0..scale_count

    static OverlayParams derive(i64 n, i64 W, const Rat& eps, i64 ell, i64 a) {
        if (n < 1 || W < 1) throw PreconditionViolated("overlay params: need n, W >= 1");
        if (!(Rat(0) < eps) || Rat(1) < eps)
            throw PreconditionViolated("overlay params: eps must be in (0, 1]");
        if (ell < 1 || ell > n) throw PreconditionViolated("overlay params: need 1 <= ell <= n");
        if (a < 1) throw PreconditionViolated("overlay params: need a >= 1");
        OverlayParams P;
        P.n = n;
        P.W = W;
        P.eps = eps;
        P.ell = ell;
        P.a = a;
        P.h = std::max<i64>(1, (eps * Rat(ell)).floor());
        Rat stretch = Rat(1) + Rat(2) / eps;  // the (1 + 2/eps) radius factor
        P.h_prime = (stretch * Rat(P.h)).ceil();
        i64 log_n = std::max<i64>(1, ceil_log2(n));
        P.beta_rs = mul_checked(mul_checked(a, 2 * P.h_prime + 1), log_n);
        P.h_star = std::max(mul_checked(mul_checked(9 * a, ell), log_n), P.beta_rs);
        P.k = add_checked(2 * P.h_star, 2 * ell);
        P.k_prime = (stretch * Rat(P.k)).ceil();
        P.eps_eff = Rat(1) / Rat((ell + P.h - 1) / P.h);
        P.scale_count = floor_log2(mul_checked(n, W));
        P.check();
        return P;
    }

    // eps = 1/ceil(log2 n), ell = ceil(sqrt(n)), a = 1.  The paper's
    // eps = 1/log^2 n makes h collapse to its clamp at desk-scale n, so the
    // default keeps h meaningful while every value stays configurable.
    static OverlayParams defaults(i64 n, i64 W) {
        Rat eps = Rat(1) / Rat(std::max<i64>(1, ceil_log2(n)));
        i64 ell = 1;
        while (ell * ell < n) ++ell;
        return derive(n, W, eps, ell, 1);
    }

    void check() const {
        if (h < 1) throw InvariantViolated("overlay params: h < 1");
        if (h_prime < h) throw InvariantViolated("overlay params: h' < h");
        if (h_star < beta_rs) throw InvariantViolated("overlay params: h* < beta_rs");
        if (k < 2 * ell) throw InvariantViolated("overlay params: k < 2 ell");
        if (k_prime < k) throw InvariantViolated("overlay params: k' < k");
    }

    Rat rho(i64 i) const { return eps * Rat(2).pow((int)i) / Rat(h); }  // type scales
    Rat phi(i64 i) const { return eps * Rat(2).pow((int)i) / Rat(k); }  // PDE scales

    // mu of the end-to-end chain: a segment of ell path edges has a node u
    // with 2^{t(u)} <= 2 eps_eff w(segment), and its center sits within
    // rho_{t(u)} * beta_rs, so the detour costs at most mu * w(segment) per
    // visit (each segment is visited at most twice).
    Rat mu() const { return Rat(2) * eps * eps_eff * Rat(beta_rs) / Rat(h); }

    Rat alpha(const Rat& eps_hs, const Rat& eps_fin) const {
        return (Rat(1) + eps_fin) * (Rat(1) + eps_hs) * (Rat(1) + eps) *
               (Rat(1) + Rat(2) * mu());
    }
};

// G_i / G-hat_i: weights rounded up in units of the given rho, capped just
// above the largest distance the caller will query (cap keeps the scaled
// integers small; capped edges cannot appear on any admitted path).
inline Graph rounded_scale_graph(const Graph& g, const Rat& rho, i64 cap) {
    return round_weights_capped(to_rat_graph(g), rho, cap);
}

// -------------------------------------------------------------------- types

struct TypeAssignment {
    static constexpr i64 UNDEF = -1;
    std::vector<i64> t;

    bool defined(int u) const { return t[u] != UNDEF; }
};

// |B(u, g, radius)| >= target, counting settled nodes and stopping early.
inline bool ball_at_least(const Graph& g, int u, i64 radius, i64 target) {
    if (target <= 1) return true;  // u itself
    std::priority_queue<std::pair<i64, int>, std::vector<std::pair<i64, int>>, std::greater<>>
        pq;
    std::vector<i64> dist(g.n, INF64);
    dist[u] = 0;
    pq.push({0, u});
    i64 cnt = 0;
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d != dist[v]) continue;
        dist[v] = -1;  // mark settled; no smaller key can reappear
        if (++cnt >= target) return true;
        for (const auto& [to, w] : g.adj[v]) {
            i64 nd = WeightOps<i64>::add(d, w);
            if (nd > radius) continue;
            if (dist[to] != -1 && nd < dist[to]) {
                dist[to] = nd;
                pq.push({nd, to});
            }
        }
    }
    return false;
}

// t(u) = smallest i with |B(u, G_i, h')| >= h (balls only grow with i, so the
// first qualifying scale is the answer); UNDEF if no scale qualifies.
inline TypeAssignment compute_types(const Graph& g, const OverlayParams& P) {
    if (g.n != P.n) throw PreconditionViolated("compute_types: params built for wrong n");
    TypeAssignment types;
    types.t.assign(g.n, TypeAssignment::UNDEF);
    for (i64 i = 0; i <= P.scale_count; ++i) {
        Graph gi = rounded_scale_graph(g, P.rho(i), P.h_prime);
        std::vector<char> qualifies(g.n, 0);
        parallel_for(g.n, [&](int u) {
            if (types.t[u] == TypeAssignment::UNDEF)
                qualifies[u] = ball_at_least(gi, u, P.h_prime, P.h) ? 1 : 0;
        });
        for (int u = 0; u < g.n; ++u)
            if (types.t[u] == TypeAssignment::UNDEF && qualifies[u]) types.t[u] = i;
    }
    return types;
}

// Hitting-lemma certificate for one path with exactly ell edges: some node u
// on it satisfies 2^{t(u)} <= 2 * eps_eff * w(path).  Also evaluates the
// paper's unclamped form 2 eps w(path) for reporting.
struct HittingCheck {
    Rat lhs;          // min over path nodes of 2^{t(u)}
    Rat bound;        // 2 * eps_eff * w(path)
    Rat paper_bound;  // 2 * eps * w(path)
    bool ok = false;
    bool paper_ok = false;
};

inline HittingCheck check_hitting_lemma(const Graph& g, const TypeAssignment& types,
                                        const OverlayParams& P, const std::vector<int>& path) {
    if ((i64)path.size() != P.ell + 1)
        throw PreconditionViolated("hitting lemma: path must have exactly ell edges");
    i64 weight = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        i64 w = INF64;
        for (const auto& [to, ew] : g.adj[path[i]])
            if (to == path[i + 1]) w = std::min(w, ew);
        if (WeightOps<i64>::is_inf(w))
            throw PreconditionViolated("hitting lemma: path edge missing from graph");
        weight = add_checked(weight, w);
    }
    HittingCheck c;
    c.lhs = Rat::inf();
    for (int u : path)
        if (types.defined(u)) c.lhs = rat_min(c.lhs, Rat(2).pow((int)types.t[u]));
    c.bound = Rat(2) * P.eps_eff * Rat(weight);
    c.paper_bound = Rat(2) * P.eps * Rat(weight);
    c.ok = !c.lhs.is_inf() && !(c.bound < c.lhs);
    c.paper_ok = !c.lhs.is_inf() && !(c.paper_bound < c.lhs);
    return c;
}

// ------------------------------------------------------------------ centers

struct CenterSelection {
    std::vector<int> centers;                 // sorted, includes s
    std::vector<std::vector<int>> per_type;   // T_i per scale (empty if no type-i nodes)
    std::vector<RulingSetResult> rulings;     // one per non-empty type, in scale order
    std::vector<i64> ruling_types;            // scale index per rulings entry
};

// One (2h'+1, a(2h'+1)log n)-ruling set per type on the matching rounded
// graph; V' is their union plus the source.  |T_i| <= floor(n/h) is asserted:
// members are pairwise > 2h' apart in G_i, so their h'-balls are disjoint and
// each contains >= h nodes by the type definition.
inline CenterSelection select_centers(const Graph& g, const TypeAssignment& types,
                                      const OverlayParams& P, int s) {
    if (s < 0 || s >= g.n) throw PreconditionViolated("select_centers: bad source");
    CenterSelection sel;
    sel.per_type.resize(P.scale_count + 1);
    i64 c = 2 * P.h_prime + 1;
    for (i64 i = 0; i <= P.scale_count; ++i) {
        std::vector<int> ui;
        for (int u = 0; u < g.n; ++u)
            if (types.t[u] == i) ui.push_back(u);
        if (ui.empty()) continue;
        i64 cap = std::max<i64>(1, mul_checked(mul_checked(P.a, std::max<i64>(1, ceil_log2(g.n))), c));
        Graph gi = rounded_scale_graph(g, P.rho(i), cap);
        RulingSetResult T = ruling_set(gi, ui, c, P.a);
        if ((i64)T.members.size() > g.n / P.h)
            throw InvariantViolated("select_centers: |T_i| exceeds n/h at scale " +
                                    std::to_string(i));
        sel.per_type[i] = T.members;
        sel.rulings.push_back(T);
        sel.ruling_types.push_back(i);
    }
    std::vector<char> in(g.n, 0);
    in[s] = 1;
    for (const auto& ti : sel.per_type)
        for (int v : ti) in[v] = 1;
    for (int v = 0; v < g.n; ++v)
        if (in[v]) sel.centers.push_back(v);
    return sel;
}

// ---------------------------------------------- partial distance estimation

struct OverlayNetwork {
    OverlayParams params;
    std::vector<int> centers;       // sorted node ids
    std::vector<int> center_index;  // node -> position in centers, or -1
    std::vector<std::vector<Rat>> dhat;  // dhat[u][ci], Rat::inf() if unreached

    int index_of(int v) const {
        if (v < 0 || v >= (int)center_index.size() || center_index[v] < 0)
            throw PreconditionViolated("overlay: node " + std::to_string(v) + " is not a center");
        return center_index[v];
    }
    const Rat& dhat_of(int u, int center) const { return dhat[u][index_of(center)]; }
};

// dhat(u, v) = min_i phi_i * d(u, v, k', G-hat_i) for every node u and center
// v; per scale one bounded search per center (the sequential equivalent of
// (V', k', |V'|)-detection).  Asserts the sandwich
// d(u,v,G) <= dhat(u,v) <= (1+eps) d^k(u,v,G) exactly on every run.
inline OverlayNetwork distances_to_centers(const Graph& g, const std::vector<int>& centers,
                                           const OverlayParams& P) {
    if (centers.empty()) throw PreconditionViolated("distances_to_centers: no centers");
    OverlayNetwork net;
    net.params = P;
    net.centers = centers;
    net.center_index.assign(g.n, -1);
    for (int ci = 0; ci < (int)centers.size(); ++ci) {
        int v = centers[ci];
        if (v < 0 || v >= g.n) throw PreconditionViolated("distances_to_centers: bad center id");
        net.center_index[v] = ci;
    }
    net.dhat.assign(g.n, std::vector<Rat>(centers.size(), Rat::inf()));
    for (i64 i = 0; i <= P.scale_count; ++i) {
        Graph gi = rounded_scale_graph(g, P.phi(i), P.k_prime);
        Rat phi = P.phi(i);
        parallel_for((int)centers.size(), [&](int ci) {
            DistanceTable t = dijkstra_bounded(gi, centers[ci], Range::finite(P.k_prime));
            for (int u = 0; u < g.n; ++u) {
                if (!t.reached(u)) continue;
                Rat cand = phi * Rat(t.dist[u]);
                if (cand < net.dhat[u][ci]) net.dhat[u][ci] = cand;
            }
        });
    }
    // Exact sandwich: lower against plain Dijkstra, upper against d^k (equal
    // to d whenever k admits every simple path, which holds at desk scale).
    bool k_covers_all = P.k >= (i64)g.n - 1;
    std::vector<std::string> failures(centers.size());
    parallel_for((int)centers.size(), [&](int ci) {
        int v = centers[ci];
        DistanceTable exact = dijkstra_bounded(g, v);
        std::vector<i64> dk;
        if (!k_covers_all) dk = bellman_ford_hops(g, v, P.k);
        for (int u = 0; u < g.n; ++u) {
            const Rat& est = net.dhat[u][ci];
            Rat lower = exact.reached(u) ? Rat(exact.dist[u]) : Rat::inf();
            i64 dku = k_covers_all ? (exact.reached(u) ? exact.dist[u] : INF64) : dk[u];
            Rat upper = WeightOps<i64>::is_inf(dku) ? Rat::inf()
                                                    : (Rat(1) + P.eps) * Rat(dku);
            if (est < lower) {
                failures[ci] = "dhat(" + std::to_string(u) + "," + std::to_string(v) +
                               ") undercuts the true distance";
                return;
            }
            if (!upper.is_inf() && upper < est) {
                failures[ci] = "dhat(" + std::to_string(u) + "," + std::to_string(v) +
                               ") exceeds (1+eps) d^k";
                return;
            }
        }
    });
    for (const auto& f : failures)
        if (!f.empty()) throw InvariantViolated("distances_to_centers: " + f);
    return net;
}

// --------------------------------------------------------- the overlay graph

// G' with integer weights: every finite dhat between centers, scaled by
// sigma = den(eps) * k.  Each dhat is phi_i * (integer) = eps*2^i/k * int,
// so sigma clears every denominator.
struct OverlayGraphInt {
    Graph g;         // on center indices 0..N-1
    i64 sigma = 1;   // original weight = stored weight / sigma
    i64 W = 1;       // max stored weight
};

inline OverlayGraphInt overlay_graph_int(const OverlayNetwork& net) {
    int N = (int)net.centers.size();
    OverlayGraphInt out;
    out.sigma = mul_checked(net.params.eps.den, net.params.k);
    std::vector<std::tuple<int, int, i64>> edges;
    i64 maxw = 1;
    for (int a = 0; a < N; ++a) {
        for (int b = a + 1; b < N; ++b) {
            const Rat& w = net.dhat[net.centers[a]][b];
            if (w.is_inf()) continue;
            Rat scaled = w * Rat(out.sigma);
            if (scaled.den != 1)
                throw InvariantViolated("overlay graph: sigma failed to clear a denominator");
            if (scaled.num == 0)
                throw InvariantViolated("overlay graph: zero-weight center pair");
            edges.emplace_back(a, b, scaled.num);
            maxw = std::max(maxw, scaled.num);
        }
    }
    out.W = maxw;
    out.g = Graph(std::max(N, 1), maxw);
    for (const auto& [a, b, w] : edges) out.g.add_edge(a, b, w);
    return out;
}

// ----------------------------------------------------------------- finishing

// Drop-in replacement for the bounded searches inside finish_sssp; cost-model
// harnesses substitute a charged one with identical output.
using BoundedSsspFn = std::function<DistanceTable(const Graph&, int root, i64 R)>;

// dtilde(s, v) = min_i rho_i * d(s, v, R, H'_i) over the scales of
// H = G' u F, with rho_i = eps*2^i/hop_bound and R = ceil((1+2/eps) hop_bound);
// returned in original (unscaled) units.  Asserts
// d(s,v,G') <= dtilde(s,v) <= (1+eps) d^{hop_bound}(s,v,H) exactly.
inline std::vector<Rat> finish_sssp(const OverlayNetwork& net, const HopSetEdges& F, int s,
                                    i64 hop_bound, const Rat& eps,
                                    const BoundedSsspFn& bounded = {}) {
    if (!(Rat(0) < eps) || Rat(1) < eps)
        throw PreconditionViolated("finish_sssp: eps must be in (0, 1]");
    if (hop_bound < 1) throw PreconditionViolated("finish_sssp: hop bound must be >= 1");
    OverlayGraphInt gi = overlay_graph_int(net);
    int N = gi.g.n;
    int si = net.index_of(s);
    RatGraph H = union_graph(gi.g, F);
    i64 R = ((Rat(1) + Rat(2) / eps) * Rat(hop_bound)).ceil();
    Rat WH(1);
    for (const auto& e : H.edges) WH = rat_max(WH, e.w);
    i64 last_scale = (Rat(N) * WH).floor_log2_self();
    std::vector<Rat> acc(N, Rat::inf());
    acc[si] = Rat(0);
    for (i64 i = 0; i <= last_scale; ++i) {
        Rat rho = eps * Rat(2).pow((int)i) / Rat(hop_bound);
        Graph hi = round_weights_capped(H, rho, R);
        DistanceTable t = bounded ? bounded(hi, si, R) : dijkstra_bounded(hi, si, Range::finite(R));
        for (int v = 0; v < N; ++v) {
            if (!t.reached(v)) continue;
            Rat cand = rho * Rat(t.dist[v]);
            if (cand < acc[v]) acc[v] = cand;
        }
    }
    // exact sandwich in sigma units
    RatDistanceTable on_gprime = dijkstra_bounded(to_rat_graph(gi.g), si);
    std::vector<Rat> dh;
    if (hop_bound >= (i64)N - 1)
        dh = dijkstra_bounded(H, si).dist;
    else
        dh = bellman_ford_hops(H, si, hop_bound);
    for (int v = 0; v < N; ++v) {
        Rat lower = on_gprime.reached(v) ? on_gprime.dist[v] : Rat::inf();
        if (acc[v] < lower)
            throw InvariantViolated("finish_sssp: dtilde undercuts d(s,v,G') at center " +
                                    std::to_string(net.centers[v]));
        if (!dh[v].is_inf() && (Rat(1) + eps) * dh[v] < acc[v])
            throw InvariantViolated("finish_sssp: dtilde exceeds (1+eps) d^hb(s,v,H) at center " +
                                    std::to_string(net.centers[v]));
    }
    std::vector<Rat> out(N, Rat::inf());
    for (int v = 0; v < N; ++v)
        if (!acc[v].is_inf()) out[v] = acc[v] / Rat(gi.sigma);
    return out;
}

// estimate(u) = min( dhat(u,s), min_v ( dtilde(s,v) + dhat(u,v) ) ).
inline Rat combine(const OverlayNetwork& net, const std::vector<Rat>& dtilde, int s, int u) {
    int si = net.index_of(s);
    Rat best = net.dhat[u][si];
    for (int ci = 0; ci < (int)net.centers.size(); ++ci) {
        if (dtilde[ci].is_inf() || net.dhat[u][ci].is_inf()) continue;
        best = rat_min(best, dtilde[ci] + net.dhat[u][ci]);
    }
    return best;
}

// ------------------------------------------------------------ path recovery

struct ExtractedPath {
    bool found = false;
    int stuck_at = -1;           // node where no neighbor satisfied the inequality
    std::vector<int> nodes;      // s..u when found
    i64 weight = 0;              // weight of the returned path in G
};

// Greedy parent walk: from u repeatedly step to the smallest-id neighbor v
// with d'(s,v) + w(u,v) <= d'(s,u).  Estimates strictly decrease along the
// walk, so it terminates; whether it reaches s is reported, not asserted
// (the combined estimates carry no per-step certificate).
inline ExtractedPath extract_path(const Graph& g, const std::vector<Rat>& est, int s, int u) {
    ExtractedPath res;
    std::vector<int> rev;
    int cur = u;
    rev.push_back(cur);
    while (cur != s) {
        int next = -1;
        i64 next_w = 0;
        for (const auto& [v, w] : g.adj[cur]) {
            if (est[v].is_inf() || est[cur].is_inf()) continue;
            if (!(est[cur] < est[v] + Rat(w)) && (next == -1 || v < next)) {
                next = v;
                next_w = w;
            }
        }
        if (next == -1) {
            res.stuck_at = cur;
            return res;
        }
        res.weight = add_checked(res.weight, next_w);
        cur = next;
        rev.push_back(cur);
    }
    res.found = true;
    res.nodes.assign(rev.rbegin(), rev.rend());
    return res;
}

// max_v d'(s, v): within [WD/2, alpha*WD] for alpha-approximate estimates.
inline Rat approx_weighted_diameter(const std::vector<Rat>& est) {
    Rat best(0);
    for (const Rat& e : est)
        if (!e.is_inf()) best = rat_max(best, e);
    return best;
}

// ------------------------------------------------------- end-to-end pipeline

struct OverlaySsspResult {
    OverlayParams params;
    TypeAssignment types;
    CenterSelection centers;
    OverlayNetwork net;
    HopSetResult overlay_hopset;  // built on the integerized G'
    i64 sigma = 1;
    std::vector<Rat> dtilde;    // per center, original units
    std::vector<Rat> estimate;  // per node
    Rat eps_hs, eps_fin;
    Rat alpha;
};

// The full sequential pipeline on one graph: types, centers, dhat, a hop set
// for the overlay graph, dtilde, and the per-node combination.
inline OverlaySsspResult overlay_sssp(const Graph& g, int s, const OverlayParams& P,
                                      const Rat& eps_hs, const Rat& eps_fin) {
    if (s < 0 || s >= g.n) throw PreconditionViolated("overlay_sssp: bad source");
    OverlaySsspResult R;
    R.params = P;
    R.eps_hs = eps_hs;
    R.eps_fin = eps_fin;
    R.alpha = P.alpha(eps_hs, eps_fin);
    R.types = compute_types(g, P);
    R.centers = select_centers(g, R.types, P, s);
    R.net = distances_to_centers(g, R.centers.centers, P);
    OverlayGraphInt gi = overlay_graph_int(R.net);
    R.sigma = gi.sigma;
    R.overlay_hopset = hop_set(gi.g, eps_hs, gi.W);
    R.dtilde = finish_sssp(R.net, R.overlay_hopset.F, s, R.overlay_hopset.hop_bound, eps_fin);
    R.estimate.resize(g.n);
    for (int u = 0; u < g.n; ++u) R.estimate[u] = combine(R.net, R.dtilde, s, u);
    R.estimate[s] = Rat(0);
    return R;
}

}  // namespace dsssp
