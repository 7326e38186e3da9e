#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vlo/dynamic_oracle.hpp"
#include "vlo/exact_oracle.hpp"
#include "vlo/generate.hpp"
#include "vlo/graph_io.hpp"
#include "vlo/spanner.hpp"
#include "vlo/static_oracle.hpp"
#include "vlo/verify.hpp"

using namespace vlo;
using json = nlohmann::ordered_json;

namespace {

struct GraphArgs {
    std::string path;
    std::string labels_inline;
};

struct GenArgs {
    std::string generator = "gnm";
    std::size_t n = 100;
    std::size_t m = 300;
    std::size_t width = 10;
    std::size_t height = 10;
    std::string weights = "unit";
    double lo = 1.0;
    double hi = 10.0;
    std::string labels = "uniform";
    std::size_t ell = 4;
    std::size_t patch = 8;
    std::uint64_t seed = 0;
    std::string out;
};

void add_graph_options(CLI::App* cmd, GraphArgs& a) {
    cmd->add_option("--graph", a.path, "Labeled graph file")->required();
    cmd->add_option("--labels-inline", a.labels_inline, "Comma-separated labels overriding the file's labeling");
}

LabeledGraph load(const GraphArgs& a) {
    LabeledGraph lg = read_labeled_graph_file(a.path);
    if (a.labels_inline.empty()) {
        return lg;
    }
    std::vector<LabelId> labels;
    std::stringstream ss(a.labels_inline);
    std::string tok;
    LabelId top = 0;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        unsigned long v = std::stoul(tok, &pos);
        if (pos != tok.size()) {
            throw Error("--labels-inline: bad label '" + tok + "'");
        }
        labels.push_back(static_cast<LabelId>(v));
        top = std::max(top, static_cast<LabelId>(v));
    }
    if (labels.size() != lg.graph.node_count()) {
        throw Error("--labels-inline: expected " + std::to_string(lg.graph.node_count()) + " labels");
    }
    lg.labels = LabelAssignment(std::move(labels), static_cast<std::size_t>(top) + 1);
    return lg;
}

void write_json(const std::string& path, const json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path);
    }
    out << j.dump(2) << '\n';
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path);
    }
    return out;
}

ExperimentConfig to_config(const GenArgs& a) {
    ExperimentConfig c;
    if (a.generator == "gnm") {
        c.generator.kind = GeneratorKind::gnm;
    } else if (a.generator == "grid") {
        c.generator.kind = GeneratorKind::grid;
    } else {
        c.generator.kind = GeneratorKind::path;
    }
    c.generator.n = a.n;
    c.generator.m = a.m;
    c.generator.width = a.width;
    c.generator.height = a.height;
    c.weights = WeightModel{a.weights == "uniform" ? WeightKind::uniform : WeightKind::unit, a.lo, a.hi};
    c.labels = LabelModel{a.labels == "clustered" ? LabelKind::clustered : LabelKind::uniform, a.ell, a.patch};
    return c;
}

json graph_stats(const LabeledGraph& lg) {
    const Graph& g = lg.graph;
    json j;
    j["n"] = g.node_count();
    j["m"] = g.edge_count();
    j["labels"] = lg.labels.label_count();
    j["unit_weighted"] = g.unit_weighted();
    if (g.edge_count() > 0) {
        j["min_weight"] = g.min_weight();
    }
    std::vector<std::uint8_t> seen(g.node_count(), 0);
    std::size_t components = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (seen[v]) {
            continue;
        }
        ++components;
        NodeId src[] = {v};
        DistanceMap dm = dijkstra(g, src);
        for (NodeId u = 0; u < g.node_count(); ++u) {
            if (dm.reached(u)) {
                seen[u] = 1;
            }
        }
    }
    j["components"] = components;
    auto sizes = json::array();
    for (LabelId l = 0; l < lg.labels.label_count(); ++l) {
        sizes.push_back(lg.labels.members(l).size());
    }
    j["class_sizes"] = std::move(sizes);
    j["max_label_distance"] = build_exact(g, lg.labels).max_finite();
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vertex-label distance oracles and spanners"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a labeled graph");
    gen_cmd->add_option("--generator", gen.generator)->check(CLI::IsMember({"gnm", "grid", "path"}));
    gen_cmd->add_option("--n", gen.n, "Nodes (gnm, path)");
    gen_cmd->add_option("--m", gen.m, "Edges (gnm)");
    gen_cmd->add_option("--width", gen.width, "Grid width");
    gen_cmd->add_option("--height", gen.height, "Grid height");
    gen_cmd->add_option("--weights", gen.weights)->check(CLI::IsMember({"unit", "uniform"}));
    gen_cmd->add_option("--lo", gen.lo, "Uniform weight lower end");
    gen_cmd->add_option("--hi", gen.hi, "Uniform weight upper end");
    gen_cmd->add_option("--labels", gen.labels)->check(CLI::IsMember({"uniform", "clustered"}));
    gen_cmd->add_option("--ell", gen.ell, "Number of labels");
    gen_cmd->add_option("--patch", gen.patch, "Clustered patch size");
    gen_cmd->add_option("--seed", gen.seed);
    gen_cmd->add_option("--out", gen.out, "Output graph file")->required();

    GraphArgs graph;
    std::size_t k = 2;
    double eps = 0.5;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> seeds{0};
    std::string out, report, script_path, oracle_path, exact_csv, mode = "static";
    bool weighted = false, timing = false, records = false;
    NodeId qv = 0;
    LabelId ql = 0;
    std::size_t ops = 200;

    auto* build_cmd = app.add_subcommand("build-static", "Build a static oracle and dump it");
    add_graph_options(build_cmd, graph);
    build_cmd->add_option("--k", k);
    build_cmd->add_option("--seed", seed);
    build_cmd->add_option("--out", out, "Oracle dump")->required();

    auto* query_cmd = app.add_subcommand("query", "Answer one vertex-label query from an oracle dump");
    query_cmd->add_option("--oracle", oracle_path, "Oracle dump from build-static")->required();
    query_cmd->add_option("--v", qv)->required();
    query_cmd->add_option("--label", ql)->required();

    auto* dyn_cmd = app.add_subcommand("dynamic", "Run an update/query script on the dynamic oracle");
    add_graph_options(dyn_cmd, graph);
    dyn_cmd->add_option("--k", k);
    dyn_cmd->add_option("--seed", seed);
    dyn_cmd->add_option("--script", script_path, "Lines 'U v l' / 'Q v l'")->required();
    dyn_cmd->add_option("--out", out, "Answer lines (default stdout)");

    auto* span_cmd = app.add_subcommand("spanner", "Build a vertex-label spanner");
    add_graph_options(span_cmd, graph);
    span_cmd->add_option("--k", k);
    span_cmd->add_option("--eps", eps);
    span_cmd->add_flag("--weighted", weighted, "Use the hop-bounded weighted construction");
    span_cmd->add_option("--out", out, "Spanner edges, graph file format")->required();
    span_cmd->add_option("--report", report, "Verification report");
    span_cmd->add_flag("--timing", timing, "Include wall time in the report");

    auto* vo_cmd = app.add_subcommand("verify-oracle", "Check oracle answers against the exact table");
    add_graph_options(vo_cmd, graph);
    vo_cmd->add_option("--mode", mode)->check(CLI::IsMember({"static", "dynamic"}));
    vo_cmd->add_option("--k", k);
    vo_cmd->add_option("--seed", seeds, "Repeatable");
    vo_cmd->add_option("--script", script_path, "Dynamic mode: script file");
    vo_cmd->add_option("--ops", ops, "Dynamic mode without --script: random ops");
    vo_cmd->add_option("--report", report, "Report path (default stdout)");
    vo_cmd->add_option("--exact-csv", exact_csv, "Dump the exact table as v,label,dist");
    vo_cmd->add_flag("--records", records, "Include per-query records");
    vo_cmd->add_flag("--timing", timing, "Include wall time in the report");

    auto* vs_cmd = app.add_subcommand("verify-spanner", "Build a spanner and check its label stretch");
    add_graph_options(vs_cmd, graph);
    vs_cmd->add_option("--k", k);
    vs_cmd->add_option("--eps", eps);
    vs_cmd->add_flag("--weighted", weighted);
    vs_cmd->add_option("--report", report, "Report path (default stdout)");
    vs_cmd->add_flag("--timing", timing, "Include wall time in the report");

    auto* stats_cmd = app.add_subcommand("stats", "Summarize a labeled graph");
    add_graph_options(stats_cmd, graph);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) {
            auto lg = generate(to_config(gen), gen.seed);
            write_labeled_graph_file(gen.out, lg.graph, lg.labels);
            return 0;
        }
        if (*build_cmd) {
            auto lg = load(graph);
            auto oracle = build_static_oracle(lg.graph, lg.labels, k, seed);
            auto os = open_out(out);
            oracle.dump(os);
            return 0;
        }
        if (*query_cmd) {
            std::ifstream in(oracle_path);
            if (!in) {
                throw Error("cannot read " + oracle_path);
            }
            auto oracle = StaticOracle::load(in);
            std::cout << format_weight(oracle.query(qv, ql)) << '\n';
            return 0;
        }
        if (*dyn_cmd) {
            auto lg = load(graph);
            std::ifstream in(script_path);
            if (!in) {
                throw Error("cannot read " + script_path);
            }
            auto script = parse_script(in);
            auto oracle = build_dynamic(lg.graph, lg.labels, k, seed);
            std::ofstream file;
            if (!out.empty()) {
                file = open_out(out);
            }
            std::ostream& os = out.empty() ? std::cout : file;
            for (const auto& op : script) {
                if (op.kind == ScriptOp::Kind::update) {
                    oracle.update_label(op.v, op.label);
                } else {
                    os << op.v << ' ' << op.label << ' ' << format_weight(oracle.query(op.v, op.label)) << '\n';
                }
            }
            return 0;
        }
        if (*span_cmd) {
            auto lg = load(graph);
            SpannerResult sp = weighted ? build_weighted_spanner(lg.graph, lg.labels, k, eps)
                                        : build_unweighted_spanner(lg.graph, lg.labels, k, eps);
            write_labeled_graph_file(out, sp.subgraph(lg.graph.node_count()), lg.labels);
            if (report.empty()) {
                return 0;
            }
            auto r = verify_spanner(lg.graph, lg.labels, k, eps, weighted);
            write_json(report, report_json(r, false, timing));
            return r.pass ? 0 : 1;
        }
        if (*vo_cmd) {
            auto lg = load(graph);
            if (!exact_csv.empty()) {
                auto table = build_exact(lg.graph, lg.labels);
                auto os = open_out(exact_csv);
                os << "v,label,dist\n";
                for (NodeId v = 0; v < table.node_count(); ++v) {
                    for (LabelId l = 0; l < table.label_count(); ++l) {
                        os << v << ',' << l << ',' << format_weight(table.dist(v, l)) << '\n';
                    }
                }
            }
            std::vector<ScriptOp> script;
            if (mode == "dynamic" && !script_path.empty()) {
                std::ifstream in(script_path);
                if (!in) {
                    throw Error("cannot read " + script_path);
                }
                script = parse_script(in);
            }
            bool all = true;
            auto runs = json::array();
            for (std::uint64_t s : seeds) {
                VerifyReport r;
                if (mode == "static") {
                    r = verify_static(lg.graph, lg.labels, k, s, records);
                } else {
                    auto ops_for_seed = script_path.empty()
                                            ? random_script(lg.graph.node_count(), lg.labels.label_count(), ops, 0.5, s)
                                            : script;
                    r = verify_dynamic(lg.graph, lg.labels, k, s, ops_for_seed, records);
                }
                all = all && r.pass;
                runs.push_back(report_json(r, records, timing));
            }
            json j;
            j["pass"] = all;
            j["runs"] = std::move(runs);
            write_json(report, j);
            return all ? 0 : 1;
        }
        if (*vs_cmd) {
            auto lg = load(graph);
            auto r = verify_spanner(lg.graph, lg.labels, k, eps, weighted);
            write_json(report, report_json(r, false, timing));
            return r.pass ? 0 : 1;
        }
        if (*stats_cmd) {
            std::cout << graph_stats(load(graph)).dump(2) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
