#include "vlo/static_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "vlo/graph_io.hpp"

namespace vlo {

double static_sampling_probability(std::size_t label_count, std::size_t k) {
    if (label_count < 1 || k < 1) {
        throw Error("need l >= 1 and k >= 1");
    }
    return std::pow(static_cast<double>(label_count), -1.0 / static_cast<double>(k));
}

StaticOracle StaticOracle::build(const Graph& g, const LabelAssignment& labels, std::size_t k, std::uint64_t seed) {
    if (labels.node_count() != g.node_count()) {
        throw Error("labeling does not match graph");
    }
    double p = static_sampling_probability(labels.label_count(), k);
    LevelSampling sampling = sample_levels(g.node_count(), k, p, seed);
    return build(g, labels, std::move(sampling), ExactLabelTable::build(g, labels));
}

StaticOracle StaticOracle::build(const Graph& g, const LabelAssignment& labels, LevelSampling sampling,
                                 const ExactLabelTable& exact) {
    const std::size_t n = g.node_count();
    const std::size_t l = labels.label_count();
    const std::size_t k = sampling.k;
    StaticOracle o;
    o.bunches_ = build_bunches(g, sampling, k - 1);
    o.sampling_ = std::move(sampling);
    o.label_of_ = labels.labels();
    o.label_bunch_.assign(l, {});
    for (NodeId v = 0; v < n; ++v) {
        auto& lb = o.label_bunch_[labels.label(v)];
        for (const auto& [x, d] : o.bunches_.bunch[v]) {
            lb.emplace(x, 0.0);
        }
    }
    for (LabelId lab = 0; lab < l; ++lab) {
        for (auto& [x, d] : o.label_bunch_[lab]) {
            d = exact.dist(x, lab);
        }
    }
    for (NodeId v : o.sampling_.levels[k - 1]) {
        std::vector<Weight> row(l);
        for (LabelId lab = 0; lab < l; ++lab) {
            row[lab] = exact.dist(v, lab);
        }
        o.top_table_.emplace(v, std::move(row));
    }
    return o;
}

Weight StaticOracle::query(NodeId v, LabelId l) const {
    if (v >= node_count() || l >= label_count()) {
        throw Error("query out of range");
    }
    if (label_of_[v] == l) {
        return 0.0;
    }
    const std::size_t k = sampling_.k;
    const auto& lb = label_bunch_[l];
    for (std::size_t i = 0; i + 1 < k; ++i) {
        const Pivot& p = bunches_.pivot(v, i);
        if (p.node == kNoNode) {
            return kInfinity;
        }
        if (auto it = lb.find(p.node); it != lb.end()) {
            return p.dist + it->second;
        }
    }
    const Pivot& top = bunches_.pivot(v, k - 1);
    if (top.node == kNoNode) {
        return kInfinity;
    }
    return top.dist + top_table_.at(top.node)[l];
}

const std::vector<Weight>* StaticOracle::top_row(NodeId v) const {
    auto it = top_table_.find(v);
    return it == top_table_.end() ? nullptr : &it->second;
}

StaticOracleStats StaticOracle::stats() const {
    StaticOracleStats s;
    s.pivot_entries = bunches_.pivots.size();
    s.bunch_entries = bunches_.total_bunch_size();
    for (const auto& lb : label_bunch_) {
        s.label_bunch_entries += lb.size();
    }
    s.top_table_entries = top_table_.size() * label_count();
    return s;
}

namespace {

template <typename Map>
std::vector<std::pair<NodeId, Weight>> sorted_entries(const Map& m) {
    std::vector<std::pair<NodeId, Weight>> out(m.begin(), m.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::string node_token(NodeId v) { return v == kNoNode ? "-" : std::to_string(v); }

NodeId parse_node(const std::string& tok, std::size_t n) {
    if (tok == "-") {
        return kNoNode;
    }
    std::size_t v = std::stoul(tok);
    if (v >= n) {
        throw Error("oracle dump: node id out of range");
    }
    return static_cast<NodeId>(v);
}

}  // namespace

void StaticOracle::dump(std::ostream& out) const {
    const std::size_t n = node_count();
    const std::size_t k = sampling_.k;
    out << "vlo-static-oracle " << kStaticDumpVersion << '\n';
    out << "n " << n << " k " << k << " l " << label_count() << " p " << format_weight(sampling_.p) << " seed "
        << sampling_.seed << '\n';
    out << "labels";
    for (LabelId l : label_of_) {
        out << ' ' << l;
    }
    out << '\n';
    for (std::size_t i = 0; i < k; ++i) {
        out << "level " << i << ' ' << sampling_.levels[i].size();
        for (NodeId v : sampling_.levels[i]) {
            out << ' ' << v;
        }
        out << '\n';
    }
    for (NodeId v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < k; ++i) {
            const Pivot& p = bunches_.pivot(v, i);
            out << "pivot " << v << ' ' << i << ' ' << node_token(p.node) << ' ' << format_weight(p.dist) << '\n';
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        for (const auto& [u, d] : sorted_entries(bunches_.bunch[v])) {
            out << "bunch " << v << ' ' << u << ' ' << format_weight(d) << '\n';
        }
    }
    for (LabelId l = 0; l < label_count(); ++l) {
        for (const auto& [x, d] : sorted_entries(label_bunch_[l])) {
            out << "lbunch " << l << ' ' << x << ' ' << format_weight(d) << '\n';
        }
    }
    for (NodeId v : sampling_.levels[k - 1]) {
        const auto& row = top_table_.at(v);
        for (LabelId l = 0; l < label_count(); ++l) {
            out << "top " << v << ' ' << l << ' ' << format_weight(row[l]) << '\n';
        }
    }
    out << "end\n";
}

StaticOracle StaticOracle::load(std::istream& in) {
    auto fail = [](const std::string& what) -> Error { return Error("oracle dump: " + what); };
    std::string line;
    std::string tag;
    int version = 0;
    if (!std::getline(in, line) || !(std::istringstream(line) >> tag >> version) || tag != "vlo-static-oracle") {
        throw fail("bad header");
    }
    if (version != kStaticDumpVersion) {
        throw fail("unsupported version " + std::to_string(version));
    }
    std::size_t n = 0, k = 0, l = 0;
    std::string p_tok;
    std::uint64_t seed = 0;
    {
        std::string kn, kk, kl, kp, ks;
        if (!std::getline(in, line) || !(std::istringstream(line) >> kn >> n >> kk >> k >> kl >> l >> kp >> p_tok >> ks >> seed)) {
            throw fail("bad parameter line");
        }
        if (k < 1 || l < 1) {
            throw fail("bad parameters");
        }
    }

    StaticOracle o;
    o.label_of_.resize(n);
    std::vector<std::vector<NodeId>> levels(k);
    o.bunches_.pivot_levels = k;
    o.bunches_.bunch_levels = k - 1;
    o.bunches_.pivots.assign(n * k, Pivot{});
    o.bunches_.bunch.assign(n, {});
    o.label_bunch_.assign(l, {});
    bool ended = false;

    while (std::getline(in, line)) {
        std::istringstream ls(line);
        ls >> tag;
        if (tag == "labels") {
            for (std::size_t v = 0; v < n; ++v) {
                std::size_t lab = 0;
                if (!(ls >> lab) || lab >= l) {
                    throw fail("bad labels line");
                }
                o.label_of_[v] = static_cast<LabelId>(lab);
            }
        } else if (tag == "level") {
            std::size_t i = 0, count = 0;
            if (!(ls >> i >> count) || i >= k) {
                throw fail("bad level line");
            }
            levels[i].resize(count);
            for (auto& v : levels[i]) {
                std::string tok;
                ls >> tok;
                v = parse_node(tok, n);
            }
        } else if (tag == "pivot") {
            std::size_t v = 0, i = 0;
            std::string node, d;
            if (!(ls >> v >> i >> node >> d) || v >= n || i >= k) {
                throw fail("bad pivot line");
            }
            o.bunches_.pivots[v * k + i] = Pivot{parse_node(node, n), parse_weight(d)};
        } else if (tag == "bunch") {
            std::size_t v = 0;
            std::string u, d;
            if (!(ls >> v >> u >> d) || v >= n) {
                throw fail("bad bunch line");
            }
            o.bunches_.bunch[v].emplace(parse_node(u, n), parse_weight(d));
        } else if (tag == "lbunch") {
            std::size_t lab = 0;
            std::string x, d;
            if (!(ls >> lab >> x >> d) || lab >= l) {
                throw fail("bad lbunch line");
            }
            o.label_bunch_[lab].emplace(parse_node(x, n), parse_weight(d));
        } else if (tag == "top") {
            std::string v;
            std::size_t lab = 0;
            std::string d;
            if (!(ls >> v >> lab >> d) || lab >= l) {
                throw fail("bad top line");
            }
            auto& row = o.top_table_[parse_node(v, n)];
            row.resize(l, kInfinity);
            row[lab] = parse_weight(d);
        } else if (tag == "end") {
            ended = true;
            break;
        } else {
            throw fail("unknown record '" + tag + "'");
        }
    }
    if (!ended) {
        throw fail("truncated");
    }
    o.sampling_ = LevelSampling::from_levels(n, std::move(levels), parse_weight(p_tok), seed);
    for (NodeId v : o.sampling_.levels[k - 1]) {
        if (!o.top_table_.contains(v)) {
            throw fail("missing top-table row");
        }
    }
    return o;
}

StaticOracle build_static_oracle(const Graph& g, const LabelAssignment& labels, std::size_t k, std::uint64_t seed) {
    return StaticOracle::build(g, labels, k, seed);
}

}  // namespace vlo
