#pragma once

#include <string>
#include <vector>

#include "dsssp/graph.hpp"

namespace dsssp {

// Deterministic PRNG: splitmix64. Chosen over std::mt19937_64 so that stream
// contents are pinned by this header alone, independent of standard-library
// implementation details. The name is recorded in every report.
struct SplitMix64 {
    static constexpr const char* name = "splitmix64";
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0, bound) by rejection; bound >= 1.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }
    i64 weight(i64 W) { return W <= 1 ? 1 : 1 + (i64)below((uint64_t)W); }
};

template <class T>
void shuffle_vec(std::vector<T>& v, SplitMix64& rng) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

// --------------------------------------------------------------- generators

// Path 0-1-...-(n-1). W == 1 gives unit weights, otherwise seeded uniform 1..W.
inline Graph gen_path(int n, i64 W = 1, uint64_t seed = 0) {
    Graph g(n, W);
    SplitMix64 rng(seed ^ 0x70617468ULL);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, rng.weight(W));
    return g;
}

// k x k grid, node (r,c) = r*k + c.
inline Graph gen_grid(int k, i64 W = 1, uint64_t seed = 0) {
    if (k < 1) throw GraphError("grid side must be >= 1");
    Graph g(k * k, W);
    SplitMix64 rng(seed ^ 0x67726964ULL);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) {
            if (c + 1 < k) g.add_edge(r * k + c, r * k + c + 1, rng.weight(W));
            if (r + 1 < k) g.add_edge(r * k + c, (r + 1) * k + c, rng.weight(W));
        }
    return g;
}

// Connected random graph: random attachment tree on a shuffled node order
// plus m - (n-1) distinct extra edges, weights uniform in 1..W.
inline Graph gen_random_connected(int n, i64 m, i64 W, uint64_t seed) {
    if (m < n - 1) throw GraphError("random graph needs m >= n-1 for connectivity");
    i64 max_m = i64(n) * (n - 1) / 2;
    if (m > max_m) throw GraphError("random graph m exceeds n(n-1)/2");
    Graph g(n, W);
    SplitMix64 rng(seed ^ 0x726e64ULL);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    shuffle_vec(order, rng);
    for (int i = 1; i < n; ++i) {
        int parent = order[rng.below((uint64_t)i)];
        g.add_edge(order[i], parent, rng.weight(W));
    }
    i64 added = n - 1;
    while (added < m) {
        int u = (int)rng.below((uint64_t)n);
        int v = (int)rng.below((uint64_t)n);
        if (u == v || g.has_edge(u, v)) continue;
        g.add_edge(u, v, rng.weight(W));
        ++added;
    }
    return g;
}

// Spec string: "path:n[,W[,seed]]" | "grid:k[,W[,seed]]" | "random:n,m,W,seed".
inline Graph gen_from_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError("generator spec must look like family:args, got '" + spec + "'");
    std::string family = spec.substr(0, colon);
    std::vector<i64> args;
    std::string rest = spec.substr(colon + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
        size_t comma = rest.find(',', pos);
        std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            size_t used = 0;
            i64 v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            args.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("bad generator argument '" + tok + "' in '" + spec + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    auto need = [&](size_t lo, size_t hi) {
        if (args.size() < lo || args.size() > hi)
            throw ConfigError("generator '" + family + "' takes " + std::to_string(lo) + ".." +
                              std::to_string(hi) + " arguments");
    };
    try {
        if (family == "path") {
            need(1, 3);
            return gen_path((int)args[0], args.size() > 1 ? args[1] : 1,
                            args.size() > 2 ? (uint64_t)args[2] : 0);
        }
        if (family == "grid") {
            need(1, 3);
            return gen_grid((int)args[0], args.size() > 1 ? args[1] : 1,
                            args.size() > 2 ? (uint64_t)args[2] : 0);
        }
        if (family == "random") {
            need(4, 4);
            return gen_random_connected((int)args[0], args[1], args[2], (uint64_t)args[3]);
        }
    } catch (const GraphError& e) {
        throw ConfigError(std::string("generator '") + spec + "': " + e.what());
    }
    throw ConfigError("unknown generator family '" + family + "'");
}

}  // namespace dsssp
