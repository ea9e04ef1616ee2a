// dsssp command-line front end.
//
// Three subcommands:
//   hopset  build a hop set for a graph, optionally verify the sandwich
//           bound against exact distances and write the edge set to a file.
//   sssp    run the approximate SSSP pipeline under a chosen cost model
//           (sequential, congest, clique, streaming) and emit per-node
//           estimates plus the model's cost ledger as JSON.
//   sweep   run one model over a family of growing graphs and emit a CSV
//           scaling table.
//
// Exit codes: 0 success, 1 verification failure, 2 config/parse error,
// 3 model precondition failure (e.g. congest on a disconnected graph).
// All outputs are byte-reproducible given the same flags; every report
// records the generator PRNG by name.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsssp/altmodels.hpp"
#include "dsssp/gen.hpp"
#include "dsssp/graph.hpp"
#include "dsssp/hopset.hpp"
#include "dsssp/overlay.hpp"
#include "dsssp/simharness.hpp"

namespace {

using dsssp::Graph;
using dsssp::i64;
using dsssp::Rat;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitConfig = 2;
constexpr int kExitModel = 3;

// ------------------------------------------------------------------ helpers

Rat parse_ratio(const std::string& text, const std::string& what) {
    i64 num = 0, den = 1;
    auto parse_ll = [&](const std::string& tok) {
        size_t used = 0;
        i64 v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw dsssp::ConfigError(what + ": bad number '" + tok + "'");
        }
        if (used != tok.size()) throw dsssp::ConfigError(what + ": bad number '" + tok + "'");
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        num = parse_ll(text);
    } else {
        num = parse_ll(text.substr(0, slash));
        den = parse_ll(text.substr(slash + 1));
    }
    if (den < 1) throw dsssp::ConfigError(what + ": denominator must be >= 1");
    if (num < 0) throw dsssp::ConfigError(what + ": must be >= 0");
    return Rat(num, den);
}

Rat parse_epsilon(const std::string& text) {
    Rat eps = parse_ratio(text, "--eps");
    if (!(Rat(0) < eps) || Rat(1) < eps)
        throw dsssp::ConfigError("--eps must lie in (0, 1], got " + eps.str());
    return eps;
}

json rat_json(const Rat& r) { return r.str(); }

json params_json(const std::vector<std::pair<std::string, i64>>& params) {
    json j = json::object();
    for (const auto& kv : params) j[kv.first] = kv.second;
    return j;
}

// Shared input selection: exactly one of --gen / --input.
struct InputOpts {
    std::string gen;
    std::string input;

    void attach(CLI::App* cmd) {
        auto* g = cmd->add_option("--gen", gen,
                                  "generator spec: path:n[,W[,seed]] | grid:k[,W[,seed]] | "
                                  "random:n,m,W,seed");
        auto* f = cmd->add_option("--input", input, "edge-list file ('n m W' header, lines 'u v w')");
        g->excludes(f);
        f->excludes(g);
    }

    Graph load(json& report) const {
        if (gen.empty() == input.empty())
            throw dsssp::ConfigError("exactly one of --gen and --input is required");
        json in = json::object();
        Graph g = [&] {
            if (!gen.empty()) {
                in["kind"] = "generator";
                in["spec"] = gen;
                return dsssp::gen_from_spec(gen);
            }
            in["kind"] = "file";
            in["path"] = input;
            std::ifstream is(input);
            if (!is) throw dsssp::ConfigError("cannot open input file '" + input + "'");
            return dsssp::read_edge_list(is);
        }();
        in["n"] = g.n;
        in["m"] = g.m();
        in["W"] = g.max_weight;
        report["input"] = std::move(in);
        return g;
    }
};

void emit_report(const json& report, const std::string& out_path) {
    std::string text = report.dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw dsssp::ConfigError("cannot open output file '" + out_path + "'");
    os << text;
}

// --------------------------------------------------------- estimate checks

// Fixed ratio buckets: exact rational edges so the histogram is reproducible.
struct RatioHistogram {
    static const std::vector<std::pair<std::string, Rat>>& edges() {
        static const std::vector<std::pair<std::string, Rat>> e = {
            {"(1,101/100]", Rat(101, 100)}, {"(101/100,21/20]", Rat(21, 20)},
            {"(21/20,11/10]", Rat(11, 10)}, {"(11/10,5/4]", Rat(5, 4)},
            {"(5/4,3/2]", Rat(3, 2)},       {"(3/2,2]", Rat(2)},
        };
        return e;
    }

    i64 exact = 0;  // ratio == 1
    std::vector<i64> buckets = std::vector<i64>(edges().size(), 0);
    i64 beyond = 0;  // ratio > 2

    void insert(const Rat& ratio) {
        if (ratio == Rat(1)) {
            ++exact;
            return;
        }
        for (size_t i = 0; i < edges().size(); ++i) {
            if (!(edges()[i].second < ratio)) {
                ++buckets[i];
                return;
            }
        }
        ++beyond;
    }

    json to_json() const {
        json j = json::object();
        j["=1"] = exact;
        for (size_t i = 0; i < edges().size(); ++i) j[edges()[i].first] = buckets[i];
        j[">2"] = beyond;
        return j;
    }
};

struct EstimateCheck {
    bool ok = true;
    Rat worst = Rat(1);
    json report;
};

// Compare per-node estimates against exact Dijkstra distances from s.
// Hard requirements: estimate >= d(s,v) and estimate <= alpha * d(s,v);
// ratios above 1 + 5 eps are soft warnings carried in the report.
EstimateCheck check_estimates(const Graph& g, int s, const std::vector<Rat>& est, const Rat& alpha,
                              const Rat& eps, bool run_extract) {
    dsssp::DistanceTable exact = dsssp::dijkstra_bounded(g, s, dsssp::Range::inf());
    EstimateCheck out;
    RatioHistogram hist;
    Rat soft_bound = Rat(1) + Rat(5) * eps;
    i64 lower_violations = 0, upper_violations = 0, unreachable_mismatch = 0, soft = 0;
    int worst_node = s;
    for (int v = 0; v < g.n; ++v) {
        bool d_inf = exact.dist[v] >= dsssp::INF64;
        if (d_inf != est[v].is_inf()) {
            ++unreachable_mismatch;
            continue;
        }
        if (d_inf) continue;
        Rat d(exact.dist[v]);
        if (est[v] < d) {
            ++lower_violations;
            continue;
        }
        Rat ratio = exact.dist[v] == 0 ? Rat(1) : est[v] / d;
        hist.insert(ratio);
        if (out.worst < ratio) {
            out.worst = ratio;
            worst_node = v;
        }
        if (alpha < ratio) ++upper_violations;
        if (soft_bound < ratio) ++soft;
    }
    i64 extracted_ok = 0, extracted_tried = 0;
    if (run_extract) {
        for (int v = 0; v < g.n; ++v) {
            if (exact.dist[v] >= dsssp::INF64) continue;
            ++extracted_tried;
            if (dsssp::extract_path(g, est, s, v).found) ++extracted_ok;
        }
    }
    out.ok = lower_violations == 0 && upper_violations == 0 && unreachable_mismatch == 0;
    json j;
    j["nodes"] = g.n;
    j["lower_violations"] = lower_violations;
    j["upper_violations"] = upper_violations;
    j["unreachable_mismatch"] = unreachable_mismatch;
    j["alpha"] = rat_json(alpha);
    j["alpha_decimal"] = alpha.approx();
    j["worst_ratio"] = rat_json(out.worst);
    j["worst_ratio_decimal"] = out.worst.approx();
    j["worst_ratio_node"] = worst_node;
    j["soft_bound"] = rat_json(soft_bound);
    j["soft_warnings"] = soft;
    j["ratio_histogram"] = hist.to_json();
    if (run_extract) {
        json e;
        e["attempted"] = extracted_tried;
        e["succeeded"] = extracted_ok;
        e["rate"] = std::to_string(extracted_ok) + "/" + std::to_string(extracted_tried);
        j["extract_path"] = std::move(e);
    }
    j["ok"] = out.ok;
    out.report = std::move(j);
    return out;
}

json ledger_json(const dsssp::CostLedger& led, bool full_entries) {
    json j;
    j["model"] = dsssp::cost_model_name(led.model);
    j["D"] = led.D;
    j["n"] = led.n;
    j["total"] = led.total();
    j["entries"] = led.entries.size();
    if (full_entries) {
        json rows = json::array();
        for (const auto& e : led.entries) {
            json r;
            r["stage"] = e.stage;
            r["formula"] = e.formula;
            r["units"] = e.units;
            r["params"] = params_json(e.params);
            rows.push_back(std::move(r));
        }
        j["rows"] = std::move(rows);
    } else {
        json stages = json::object();
        for (const auto& e : led.entries) {
            if (!stages.contains(e.stage)) stages[e.stage] = 0;
            stages[e.stage] = i64(stages[e.stage]) + e.units;
        }
        j["stage_totals"] = std::move(stages);
    }
    return j;
}

json stream_ledger_json(const dsssp::StreamSsspResult& r) {
    const auto& led = r.ledger;
    json j;
    j["model"] = "streaming";
    j["passes"] = led.passes;
    j["peak_space_words"] = led.peak_space_words;
    j["large_weight_warning"] = led.large_weight_warning;
    json phases = json::array();
    for (const auto& pp : led.phase_passes) {
        json p;
        p["phase"] = pp.first;
        p["passes"] = pp.second;
        phases.push_back(std::move(p));
    }
    j["phases"] = std::move(phases);
    json scales = json::array();
    for (const auto& sc : r.cluster_scales) {
        json s;
        s["j"] = sc.j;
        s["skipped"] = sc.skipped;
        s["passes"] = sc.passes;
        s["scans"] = sc.scans;
        s["member_words"] = sc.member_words;
        s["backlog_peak"] = sc.backlog_peak;
        scales.push_back(std::move(s));
    }
    j["cluster_scales"] = std::move(scales);
    j["finishing_scales"] = r.finishing_scales;
    return j;
}

// ---------------------------------------------------------------- commands

struct HopsetCmd {
    InputOpts in;
    std::string eps_text = "1/2";
    std::string out_edges;
    bool verify = false;

    int run() {
        json report;
        report["command"] = "hopset";
        report["prng"] = dsssp::SplitMix64::name;
        Graph g = in.load(report);
        Rat eps = parse_epsilon(eps_text);
        report["epsilon"] = rat_json(eps);

        dsssp::HopSetResult hs = dsssp::hop_set(g, eps, g.max_weight);
        json params;
        params["p"] = hs.p;
        params["delta"] = hs.delta;
        params["eps_level"] = rat_json(hs.eps_level);
        params["W_prime"] = rat_json(hs.W_prime);
        params["hop_bound"] = hs.hop_bound;
        json levels = json::array();
        for (const auto& lv : hs.level_sets) levels.push_back(lv.size());
        params["level_edges"] = std::move(levels);
        report["parameters"] = std::move(params);
        report["hopset_edges"] = hs.F.size();

        if (!out_edges.empty()) {
            std::ofstream os(out_edges);
            if (!os) throw dsssp::ConfigError("cannot open output file '" + out_edges + "'");
            hs.F.write(os, eps);
            report["output"] = out_edges;
        }

        bool ok = true;
        if (verify) {
            std::vector<int> sources;
            std::string mode = "all_pairs";
            if (g.n > 256) {
                sources = dsssp::sample_sources(g.n, 8, 0x5eedULL);
                mode = "sampled_sources";
            }
            dsssp::SandwichReport sr =
                dsssp::verify_hopset_sandwich(g, hs.F, hs.hop_bound, eps, sources);
            json v;
            v["mode"] = mode;
            v["sources"] = sources.empty() ? i64(g.n) : i64(sources.size());
            v["pairs"] = sr.pairs;
            v["lower_violations"] = sr.lower_violations;
            v["upper_violations"] = sr.upper_violations;
            v["worst_ratio"] = rat_json(sr.worst_ratio);
            v["worst_ratio_decimal"] = sr.worst_ratio.approx();
            v["hop_bound"] = hs.hop_bound;
            v["used_dijkstra"] = sr.used_dijkstra;
            v["ok"] = sr.ok();
            report["verify"] = std::move(v);
            ok = sr.ok();
        }
        emit_report(report, "");
        return ok ? kExitOk : kExitVerify;
    }
};

struct SsspCmd {
    InputOpts in;
    std::string eps_text = "1/2";
    std::string model = "sequential";
    std::string out_path;
    int source = 0;
    i64 ell = 0;  // 0: overlay default ceil(sqrt n)
    i64 a = 1;
    bool verify = false;
    bool full_ledger = false;

    int run() {
        json report;
        report["command"] = "sssp";
        report["prng"] = dsssp::SplitMix64::name;
        Graph g = in.load(report);
        Rat eps = parse_epsilon(eps_text);
        report["epsilon"] = rat_json(eps);
        report["model"] = model;
        if (source < 0 || source >= g.n)
            throw dsssp::ConfigError("--source must lie in [0, " + std::to_string(g.n) + ")");
        report["source"] = source;

        std::vector<Rat> estimate;
        Rat alpha;
        if (model == "sequential") {
            estimate = dsssp::stream_reference(g, source, eps, g.max_weight);
            alpha = (Rat(1) + eps) * (Rat(1) + eps);
            json p;
            p["upper_factor"] = rat_json(alpha);
            report["parameters"] = std::move(p);
            report["ledger"] = json{{"model", "sequential"}, {"total", 0}};
        } else if (model == "congest") {
            i64 ell_eff = ell > 0 ? ell : dsssp::ceil_nth_root(g.n, 2);
            dsssp::OverlayParams P = dsssp::OverlayParams::derive(g.n, g.max_weight, eps, ell_eff, a);
            dsssp::CongestRunResult r = dsssp::run_congest_pipeline(g, source, P, eps, eps);
            estimate = r.detail.estimate;
            alpha = r.detail.alpha;
            json p;
            p["eps_overlay"] = rat_json(P.eps);
            p["ell"] = P.ell;
            p["a"] = P.a;
            p["h"] = P.h;
            p["h_prime"] = P.h_prime;
            p["beta_rs"] = P.beta_rs;
            p["h_star"] = P.h_star;
            p["k"] = P.k;
            p["k_prime"] = P.k_prime;
            p["eps_eff"] = rat_json(P.eps_eff);
            p["scale_count"] = P.scale_count;
            p["sigma"] = r.detail.sigma;
            p["centers"] = i64(r.detail.centers.centers.size());
            p["overlay_hopset_edges"] = r.detail.overlay_hopset.F.size();
            p["alpha"] = rat_json(alpha);
            report["parameters"] = std::move(p);
            report["ledger"] = ledger_json(r.ledger, full_ledger);
        } else if (model == "clique") {
            dsssp::CliqueSsspResult r = dsssp::clique_sssp(g, source, eps);
            estimate = r.table.dist;
            alpha = Rat(1) + eps;
            json p;
            p["hop_bound"] = r.table.h;
            p["p"] = r.hopset.p;
            p["eps_level"] = rat_json(r.hopset.eps_level);
            p["hopset_edges"] = r.hopset.F.size();
            p["upper_factor"] = rat_json(alpha);
            report["parameters"] = std::move(p);
            report["ledger"] = ledger_json(r.ledger, full_ledger);
        } else if (model == "streaming") {
            std::unique_ptr<dsssp::EdgeStream> stream;
            if (!in.input.empty())
                stream = std::make_unique<dsssp::FileEdgeStream>(in.input);
            else
                stream = std::make_unique<dsssp::VectorEdgeStream>(dsssp::make_stream(g));
            dsssp::StreamSsspResult r = dsssp::stream_sssp(*stream, source, eps, g.max_weight);
            estimate = r.estimate;
            alpha = (Rat(1) + eps) * (Rat(1) + eps);
            json p;
            p["hop_bound"] = r.hop_bound;
            p["eps_level"] = rat_json(r.eps_level);
            p["R_cluster"] = r.R_cluster;
            p["R_finish"] = r.R_finish;
            p["hopset_edges"] = r.F.size();
            p["upper_factor"] = rat_json(alpha);
            report["parameters"] = std::move(p);
            report["ledger"] = stream_ledger_json(r);
        } else {
            throw dsssp::ConfigError("unknown model '" + model + "'");
        }

        json est = json::array();
        for (const auto& e : estimate) est.push_back(e.str());
        report["estimates"] = std::move(est);

        bool ok = true;
        if (verify) {
            EstimateCheck chk = check_estimates(g, source, estimate, alpha, eps, true);
            report["verify"] = chk.report;
            ok = chk.ok;
        }
        emit_report(report, out_path);
        return ok ? kExitOk : kExitVerify;
    }
};

struct SweepCmd {
    std::string family = "path";
    std::vector<i64> sizes;
    std::string model = "congest";
    std::string eps_text = "1/2";
    i64 W = 1;
    i64 seed = 1;
    i64 m_per_n = 2;
    std::string out_path;

    Graph make_graph(i64 n) const {
        if (family == "path") return dsssp::gen_path((int)n, W, (uint64_t)seed);
        if (family == "grid") return dsssp::gen_grid((int)dsssp::ceil_nth_root(n, 2), W, (uint64_t)seed);
        if (family == "random") {
            i64 m = std::max<i64>(n - 1, m_per_n * n);
            return dsssp::gen_random_connected((int)n, m, W, (uint64_t)seed);
        }
        throw dsssp::ConfigError("unknown family '" + family + "'");
    }

    // One row per graph size: cost is rounds (congest/clique), stream passes,
    // or 0 for the sequential model, which reports the hop-set build itself.
    int run() {
        if (sizes.empty()) throw dsssp::ConfigError("sweep needs a nonempty --n list");
        Rat eps = parse_epsilon(eps_text);
        std::ostringstream csv;
        csv << "n,D,model,cost,hopset_size,centers,worst_ratio\n";
        for (i64 n : sizes) {
            if (n < 1) throw dsssp::ConfigError("sweep sizes must be >= 1");
            Graph g = make_graph(n);
            i64 D = dsssp::hop_diameter(g);
            i64 cost = 0, hopset_size = 0, centers = 0;
            Rat worst(1);
            if (model == "sequential") {
                dsssp::HopSetResult hs = dsssp::hop_set(g, eps, g.max_weight);
                hopset_size = hs.F.size();
                std::vector<int> sources;
                if (g.n > 256) sources = dsssp::sample_sources(g.n, 4, 0x5eedULL);
                worst = dsssp::verify_hopset_sandwich(g, hs.F, hs.hop_bound, eps, sources)
                            .worst_ratio;
            } else if (model == "congest") {
                i64 ell_eff = dsssp::ceil_nth_root(g.n, 2);
                dsssp::OverlayParams P =
                    dsssp::OverlayParams::derive(g.n, g.max_weight, eps, ell_eff, 1);
                dsssp::CongestRunResult r = dsssp::run_congest_pipeline(g, 0, P, eps, eps);
                cost = r.ledger.total();
                hopset_size = r.detail.overlay_hopset.F.size();
                centers = (i64)r.detail.centers.centers.size();
                worst = check_estimates(g, 0, r.detail.estimate, r.detail.alpha, eps, false).worst;
            } else if (model == "clique") {
                dsssp::CliqueSsspResult r = dsssp::clique_sssp(g, 0, eps);
                cost = r.ledger.total();
                hopset_size = r.hopset.F.size();
                worst = check_estimates(g, 0, r.table.dist, Rat(1) + eps, eps, false).worst;
            } else if (model == "streaming") {
                dsssp::VectorEdgeStream stream = dsssp::make_stream(g);
                dsssp::StreamSsspResult r = dsssp::stream_sssp(stream, 0, eps, g.max_weight);
                cost = r.ledger.passes;
                hopset_size = r.F.size();
                Rat bound = (Rat(1) + eps) * (Rat(1) + eps);
                worst = check_estimates(g, 0, r.estimate, bound, eps, false).worst;
            } else {
                throw dsssp::ConfigError("unknown model '" + model + "'");
            }
            char ratio_buf[64];
            std::snprintf(ratio_buf, sizeof ratio_buf, "%.6f", worst.approx());
            csv << g.n << "," << D << "," << model << "," << cost << "," << hopset_size << ","
                << centers << "," << ratio_buf << "\n";
        }
        json meta;
        meta["command"] = "sweep";
        meta["prng"] = dsssp::SplitMix64::name;
        meta["family"] = family;
        meta["model"] = model;
        meta["epsilon"] = eps.str();
        meta["W"] = W;
        meta["seed"] = seed;
        if (out_path.empty()) {
            std::cout << csv.str();
            std::cerr << meta.dump() << "\n";
        } else {
            std::ofstream os(out_path);
            if (!os) throw dsssp::ConfigError("cannot open output file '" + out_path + "'");
            os << csv.str();
            std::cout << meta.dump() << "\n";
        }
        return kExitOk;
    }
};

json error_json(const std::string& type, const std::string& message) {
    json j;
    j["error"] = json{{"type", type}, {"message", message}};
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate shortest-path pipeline: hop sets, overlays, cost models"};
    app.require_subcommand(1);
    app.footer("Environment: HOPSET_THREADS caps internal parallelism (default: hardware).");

    HopsetCmd hopset;
    auto* ch = app.add_subcommand("hopset", "build a hop set; optionally verify and export it");
    hopset.in.attach(ch);
    ch->add_option("--eps", hopset.eps_text, "accuracy as num/den in (0,1]")->capture_default_str();
    ch->add_option("--out", hopset.out_edges, "write hop-set edges to this file");
    ch->add_flag("--verify", hopset.verify, "check the sandwich bound against exact distances");

    SsspCmd sssp;
    auto* cs = app.add_subcommand("sssp", "run approximate SSSP under a cost model");
    sssp.in.attach(cs);
    cs->add_option("--eps", sssp.eps_text, "accuracy as num/den in (0,1]")->capture_default_str();
    cs->add_option("--model", sssp.model, "sequential | congest | clique | streaming")
        ->check(CLI::IsMember({"sequential", "congest", "clique", "streaming"}))
        ->capture_default_str();
    cs->add_option("--source", sssp.source, "source node")->capture_default_str();
    cs->add_option("--ell", sssp.ell, "overlay segment length (congest; 0 = ceil(sqrt n))");
    cs->add_option("--a", sssp.a, "ruling-set spread parameter (congest)")->capture_default_str();
    cs->add_option("--out", sssp.out_path, "write the JSON report to this file");
    cs->add_flag("--verify", sssp.verify, "compare estimates against exact distances");
    cs->add_flag("--full-ledger", sssp.full_ledger, "emit every ledger row, not stage totals");

    SweepCmd sweep;
    auto* cw = app.add_subcommand("sweep", "scaling table over a graph family (CSV)");
    cw->add_option("--family", sweep.family, "path | grid | random")->capture_default_str();
    cw->add_option("--n", sweep.sizes, "graph sizes (grid rounds up to the next square)")
        ->delimiter(',');
    cw->add_option("--model", sweep.model, "sequential | congest | clique | streaming")
        ->check(CLI::IsMember({"sequential", "congest", "clique", "streaming"}))
        ->capture_default_str();
    cw->add_option("--eps", sweep.eps_text, "accuracy as num/den in (0,1]")->capture_default_str();
    cw->add_option("--W", sweep.W, "maximum edge weight")->capture_default_str();
    cw->add_option("--seed", sweep.seed, "generator seed")->capture_default_str();
    cw->add_option("--m-per-n", sweep.m_per_n, "edges per node for the random family")
        ->capture_default_str();
    cw->add_option("--out", sweep.out_path, "write the CSV to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        std::cout << error_json("ConfigError", e.what()).dump(2) << "\n";
        return kExitConfig;
    }

    try {
        if (ch->parsed()) return hopset.run();
        if (cs->parsed()) return sssp.run();
        return sweep.run();
    } catch (const dsssp::ConfigError& e) {
        std::cout << error_json("ConfigError", e.what()).dump(2) << "\n";
        return kExitConfig;
    } catch (const dsssp::IdWidthExceeded& e) {
        std::cout << error_json("IdWidthExceeded", e.what()).dump(2) << "\n";
        return kExitConfig;
    } catch (const dsssp::GraphError& e) {
        std::cout << error_json("GraphError", e.what()).dump(2) << "\n";
        return kExitConfig;
    } catch (const dsssp::DisconnectedGraph& e) {
        std::cout << error_json("DisconnectedGraph", e.what()).dump(2) << "\n";
        return kExitModel;
    } catch (const dsssp::WrongModel& e) {
        std::cout << error_json("WrongModel", e.what()).dump(2) << "\n";
        return kExitModel;
    } catch (const dsssp::PreconditionViolated& e) {
        std::cout << error_json("PreconditionViolated", e.what()).dump(2) << "\n";
        return kExitModel;
    } catch (const dsssp::Error& e) {
        std::cout << error_json("Error", e.what()).dump(2) << "\n";
        return kExitVerify;
    } catch (const std::exception& e) {
        std::cout << error_json("InternalError", e.what()).dump(2) << "\n";
        return kExitVerify;
    }
}
