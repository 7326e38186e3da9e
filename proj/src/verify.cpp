#include "vlo/verify.hpp"

#include <chrono>
#include <cmath>
#include <istream>
#include <sstream>

#include "vlo/dynamic_oracle.hpp"
#include "vlo/exact_oracle.hpp"
#include "vlo/levels.hpp"
#include "vlo/spanner.hpp"
#include "vlo/static_oracle.hpp"

namespace vlo {

nlohmann::ordered_json json_weight(Weight w) {
    if (w == kInfinity) {
        return "inf";
    }
    return w;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Accumulates (exact, answer) pairs against a multiplicative bound.
class StretchTally {
  public:
    StretchTally(VerifyReport& r, bool keep) : r_(r), keep_(keep) {}

    // Returns false on a violation.
    bool add(NodeId v, LabelId l, Weight exact, Weight answer) {
        bool ok;
        double ratio = 1.0;
        if (exact == kInfinity) {
            ok = answer == kInfinity;
            ++r_.unreachable;
        } else if (exact == 0.0) {
            ok = answer == 0.0;
            ratio = ok ? 1.0 : kInfinity;
        } else {
            ratio = answer / exact;
            ok = answer >= exact && answer <= r_.bound * exact;
        }
        ++r_.checked;
        if (exact != kInfinity) {
            r_.max_ratio = std::max(r_.max_ratio, ratio);
            sum_ += ratio;
            ++finite_;
        }
        if (!ok) {
            ++r_.violations;
        }
        if (keep_) {
            r_.records.push_back(QueryRecord{v, l, exact, answer, ratio});
        }
        return ok;
    }

    void finish() { r_.mean_ratio = finite_ ? sum_ / static_cast<double>(finite_) : 1.0; }

  private:
    VerifyReport& r_;
    bool keep_;
    double sum_ = 0.0;
    std::size_t finite_ = 0;
};

// All pairs when n * l is small enough, else a seeded sample.
std::vector<std::pair<NodeId, LabelId>> query_pairs(std::size_t n, std::size_t l, std::uint64_t seed, bool& sampled) {
    std::vector<std::pair<NodeId, LabelId>> out;
    sampled = n * l > kExhaustivePairCap;
    if (!sampled) {
        out.reserve(n * l);
        for (NodeId v = 0; v < n; ++v) {
            for (LabelId lab = 0; lab < l; ++lab) {
                out.emplace_back(v, lab);
            }
        }
        return out;
    }
    Rng rng(seed ^ 0x5A17ED5A17EDULL);
    out.reserve(kSampledPairs);
    for (std::size_t i = 0; i < kSampledPairs; ++i) {
        out.emplace_back(static_cast<NodeId>(rng.below(n)), static_cast<LabelId>(rng.below(l)));
    }
    return out;
}

double ell_root(std::size_t l, std::size_t k) {
    return std::pow(static_cast<double>(l), 1.0 / static_cast<double>(k));
}

// Hop count of the Dijkstra-tree path from the label class to each node.
std::vector<std::size_t> tree_hops(const DistanceMap& dm) {
    const std::size_t n = dm.dist.size();
    std::vector<std::size_t> hops(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        std::size_t h = 0;
        for (NodeId u = v; dm.parent[u] != kNoNode; u = dm.parent[u]) {
            ++h;
        }
        hops[v] = h;
    }
    return hops;
}

}  // namespace

std::vector<ScriptOp> parse_script(std::istream& in) {
    std::vector<ScriptOp> ops;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') {
            continue;
        }
        std::size_t v = 0, l = 0;
        if (!(ls >> v >> l) || (tag != "U" && tag != "Q")) {
            throw Error("script line " + std::to_string(line_no) + ": expected 'U v l' or 'Q v l'");
        }
        ops.push_back(ScriptOp{tag == "U" ? ScriptOp::Kind::update : ScriptOp::Kind::query, static_cast<NodeId>(v),
                               static_cast<LabelId>(l)});
    }
    return ops;
}

std::vector<ScriptOp> random_script(std::size_t n, std::size_t ell, std::size_t count, double update_share,
                                    std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ScriptOp> ops;
    ops.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto kind = rng.uniform() < update_share ? ScriptOp::Kind::update : ScriptOp::Kind::query;
        ops.push_back(ScriptOp{kind, static_cast<NodeId>(rng.below(n)), static_cast<LabelId>(rng.below(ell))});
    }
    return ops;
}

VerifyReport verify_static(const Graph& g, const LabelAssignment& labels, std::size_t k, std::uint64_t seed,
                           bool keep_records) {
    auto start = Clock::now();
    VerifyReport r;
    r.mode = "static";
    r.bound = 4.0 * static_cast<double>(k) - 3.0;
    const std::size_t n = g.node_count();
    const std::size_t l = labels.label_count();

    ExactLabelTable exact = ExactLabelTable::build(g, labels);
    LevelSampling levels = sample_levels(n, k, static_sampling_probability(l, k), seed);
    StaticOracle oracle = StaticOracle::build(g, labels, std::move(levels), exact);

    StretchTally tally(r, keep_records);
    for (auto [v, lab] : query_pairs(n, l, seed, r.sampled)) {
        tally.add(v, lab, exact.dist(v, lab), oracle.query(v, lab));
    }
    tally.finish();

    auto st = oracle.stats();
    double mean_bunch = static_cast<double>(st.bunch_entries) / static_cast<double>(n);
    double size_bound = 6.0 * static_cast<double>(k * n) * ell_root(l, k);
    auto& d = r.details;
    d["n"] = n;
    d["m"] = g.edge_count();
    d["labels"] = l;
    d["k"] = k;
    d["seed"] = seed;
    d["sampling_probability"] = oracle.sampling().p;
    d["top_level_size"] = oracle.sampling().levels[k - 1].size();
    d["pivot_entries"] = st.pivot_entries;
    d["bunch_entries"] = st.bunch_entries;
    d["label_bunch_entries"] = st.label_bunch_entries;
    d["top_table_entries"] = st.top_table_entries;
    d["total_entries"] = st.total();
    d["mean_bunch_size"] = mean_bunch;
    d["expected_bunch_size"] = static_cast<double>(k - 1) * ell_root(l, k);
    d["size_bound"] = size_bound;
    d["size_within_bound"] = static_cast<double>(st.total()) <= size_bound;
    r.pass = r.violations == 0;
    r.wall_seconds = seconds_since(start);
    return r;
}

VerifyReport verify_dynamic(const Graph& g, const LabelAssignment& labels, std::size_t k, std::uint64_t seed,
                            const std::vector<ScriptOp>& script, bool keep_records) {
    auto start = Clock::now();
    VerifyReport r;
    r.mode = "dynamic";
    r.bound = 4.0 * static_cast<double>(k) - 3.0;
    const std::size_t n = g.node_count();
    const std::size_t l = labels.label_count();

    DynamicOracle oracle = DynamicOracle::build(g, labels, k, seed);
    LabelAssignment current = labels;
    ExactLabelTable exact = ExactLabelTable::build(g, current);
    StretchTally tally(r, keep_records);
    bool rebuild_equal = true;
    bool update_cost_exact = true;
    std::size_t updates = 0, queries = 0, answer_mismatches = 0;
    auto answers = nlohmann::ordered_json::array();

    auto verify_all = [&](const DynamicOracle* rebuilt) {
        for (auto [v, lab] : query_pairs(n, l, seed, r.sampled)) {
            Weight a = oracle.query(v, lab);
            tally.add(v, lab, exact.dist(v, lab), a);
            if (rebuilt && rebuilt->query(v, lab) != a) {
                ++answer_mismatches;
                rebuild_equal = false;
            }
        }
    };
    verify_all(nullptr);

    for (const auto& op : script) {
        if (op.v >= n || op.label >= l) {
            throw Error("script op out of range");
        }
        if (op.kind == ScriptOp::Kind::update) {
            ++updates;
            bool changes = current.label(op.v) != op.label;
            oracle.update_label(op.v, op.label);
            current.relabel(op.v, op.label);
            const auto& c = oracle.last_update();
            std::size_t expected = changes ? oracle.bunches().bunch[op.v].size() : 0;
            if (c.heap_removes != expected || c.heap_inserts != expected) {
                update_cost_exact = false;
            }
            exact = ExactLabelTable::build(g, current);
            DynamicOracle rebuilt = DynamicOracle::build(g, current, oracle.sampling());
            if (rebuilt.heap_snapshot() != oracle.heap_snapshot()) {
                rebuild_equal = false;
            }
            verify_all(&rebuilt);
        } else {
            ++queries;
            Weight a = oracle.query(op.v, op.label);
            tally.add(op.v, op.label, exact.dist(op.v, op.label), a);
            answers.push_back(nlohmann::ordered_json::array({op.v, op.label, json_weight(a)}));
        }
    }
    tally.finish();

    double nn = static_cast<double>(n);
    double kk = static_cast<double>(k);
    double bunch_bound = 8.0 * std::pow(nn, 1.0 / kk) * std::pow(std::log(nn), 1.0 - 1.0 / kk);
    auto& d = r.details;
    d["n"] = n;
    d["m"] = g.edge_count();
    d["labels"] = l;
    d["k"] = k;
    d["seed"] = seed;
    d["sampling_probability"] = oracle.sampling().p;
    d["updates"] = updates;
    d["queries"] = queries;
    d["rebuild_equivalent"] = rebuild_equal;
    d["rebuild_answer_mismatches"] = answer_mismatches;
    d["update_cost_exact"] = update_cost_exact;
    d["heap_removes"] = oracle.total_updates().heap_removes;
    d["heap_inserts"] = oracle.total_updates().heap_inserts;
    d["max_bunch_size"] = oracle.bunches().max_bunch_size();
    d["bunch_size_bound"] = bunch_bound;
    d["bunch_within_bound"] = static_cast<double>(oracle.bunches().max_bunch_size()) <= bunch_bound;
    d["stored_entries"] = oracle.stored_entries();
    d["answers"] = std::move(answers);
    r.pass = r.violations == 0 && rebuild_equal && update_cost_exact;
    r.wall_seconds = seconds_since(start);
    return r;
}

VerifyReport verify_spanner(const Graph& g, const LabelAssignment& labels, std::size_t k, double eps, bool weighted,
                            bool keep_records) {
    auto start = Clock::now();
    VerifyReport r;
    r.mode = weighted ? "spanner-weighted" : "spanner-unweighted";
    r.bound = (4.0 * static_cast<double>(k) + 1.0) * (1.0 + eps);
    const std::size_t n = g.node_count();
    const std::size_t l = labels.label_count();

    SpannerResult sp = weighted ? build_weighted_spanner(g, labels, k, eps) : build_unweighted_spanner(g, labels, k, eps);

    bool subgraph = true;
    for (const auto& e : sp.edges) {
        auto w = g.edge_weight(e.u, e.v);
        if (!w || *w != e.w) {
            subgraph = false;
        }
    }
    Graph h = sp.subgraph(n);
    ExactLabelTable exact_g = ExactLabelTable::build(g, labels);
    ExactLabelTable exact_h = ExactLabelTable::build(h, labels);

    StretchTally tally(r, keep_records);
    for (auto [v, lab] : query_pairs(n, l, 0, r.sampled)) {
        tally.add(v, lab, exact_g.dist(v, lab), exact_h.dist(v, lab));
    }
    tally.finish();

    // Per-invocation guarantee: pairs within reach of the cover's scale are
    // served within (4k+1)d by that cover alone.
    std::vector<std::vector<std::size_t>> hops;
    if (weighted) {
        for (const auto& dm : label_distance_maps(g, labels)) {
            hops.push_back(tree_hops(dm));
        }
    }
    const double unit = static_cast<double>(n) * ell_root(l, k);
    const double cover_factor = 4.0 * static_cast<double>(k) + 1.0;
    std::size_t cover_checked = 0, cover_violations = 0;
    double max_cover_constant = 0.0;
    auto per_invocation = nlohmann::ordered_json::array();
    for (const auto& cov : sp.invocations) {
        ExactLabelTable exact_cover = ExactLabelTable::build(Graph(n, cov.edges), labels);
        std::size_t checked = 0, bad = 0;
        for (NodeId v = 0; v < n; ++v) {
            for (LabelId lab = 0; lab < l; ++lab) {
                Weight dg = exact_g.dist(v, lab);
                if (!(dg <= cov.d) || dg == 0.0) {
                    continue;
                }
                if (weighted) {
                    std::size_t h_count = hops[lab][v];
                    if (h_count < cov.x || h_count > 2 * cov.x) {
                        continue;
                    }
                }
                ++checked;
                if (!(exact_cover.dist(v, lab) <= cover_factor * cov.d)) {
                    ++bad;
                }
            }
        }
        cover_checked += checked;
        cover_violations += bad;
        double constant = static_cast<double>(cov.edges.size()) / unit;
        max_cover_constant = std::max(max_cover_constant, constant);
        nlohmann::ordered_json rec;
        rec["d"] = cov.d;
        if (weighted) {
            rec["x"] = cov.x;
        }
        rec["edges"] = cov.edges.size();
        rec["carve_tree_edges"] = cov.stage_counts[0];
        rec["cluster_tree_edges"] = cov.stage_counts[1];
        rec["label_path_edges"] = cov.stage_counts[2];
        rec["carved"] = cov.carved.size();
        rec["centers"] = cov.centers.size();
        rec["size_constant"] = constant;
        rec["guarantee_pairs"] = checked;
        rec["guarantee_violations"] = bad;
        per_invocation.push_back(std::move(rec));
    }

    auto& d = r.details;
    d["n"] = n;
    d["m"] = g.edge_count();
    d["labels"] = l;
    d["k"] = k;
    d["eps"] = eps;
    d["spanner_edges"] = sp.edges.size();
    d["subgraph"] = subgraph;
    d["max_label_distance"] = sp.max_label_distance;
    if (weighted) {
        d["diameter"] = sp.diameter;
    }
    d["invocation_count"] = sp.invocations.size();
    d["max_size_constant"] = max_cover_constant;
    d["total_size_constant"] = static_cast<double>(sp.edges.size()) / unit;
    d["cover_guarantee_pairs"] = cover_checked;
    d["cover_guarantee_violations"] = cover_violations;
    d["invocations"] = std::move(per_invocation);
    r.pass = r.violations == 0 && subgraph && cover_violations == 0;
    r.wall_seconds = seconds_since(start);
    return r;
}

nlohmann::ordered_json report_json(const VerifyReport& r, bool with_records, bool with_timing) {
    nlohmann::ordered_json j;
    j["mode"] = r.mode;
    j["pass"] = r.pass;
    j["bound"] = r.bound;
    j["max_ratio"] = json_weight(r.max_ratio);
    j["mean_ratio"] = json_weight(r.mean_ratio);
    j["checked"] = r.checked;
    j["unreachable"] = r.unreachable;
    j["violations"] = r.violations;
    j["sampled"] = r.sampled;
    j["details"] = r.details;
    if (with_timing) {
        j["wall_seconds"] = r.wall_seconds;
    }
    if (with_records) {
        auto recs = nlohmann::ordered_json::array();
        for (const auto& q : r.records) {
            recs.push_back(nlohmann::ordered_json{{"v", q.v},
                                                  {"label", q.label},
                                                  {"exact", json_weight(q.exact)},
                                                  {"answer", json_weight(q.answer)},
                                                  {"ratio", json_weight(q.ratio)}});
        }
        j["records"] = std::move(recs);
    }
    return j;
}

}  // namespace vlo
