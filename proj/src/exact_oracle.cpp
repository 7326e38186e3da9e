#include "vlo/exact_oracle.hpp"

#include <algorithm>

namespace vlo {

std::vector<DistanceMap> label_distance_maps(const Graph& g, const LabelAssignment& labels) {
    if (labels.node_count() != g.node_count()) {
        throw Error("labeling does not match graph");
    }
    const std::size_t n = g.node_count();
    std::vector<DistanceMap> maps;
    maps.reserve(labels.label_count());
    for (LabelId l = 0; l < labels.label_count(); ++l) {
        auto members = labels.members(l);
        if (members.empty()) {
            DistanceMap dm;
            dm.dist.assign(n, kInfinity);
            dm.parent.assign(n, kNoNode);
            dm.source_of.assign(n, kNoNode);
            maps.push_back(std::move(dm));
        } else {
            maps.push_back(dijkstra(g, members));
        }
    }
    return maps;
}

ExactLabelTable ExactLabelTable::build(const Graph& g, const LabelAssignment& labels) {
    ExactLabelTable t;
    t.n_ = g.node_count();
    t.l_ = labels.label_count();
    t.dist_.assign(t.n_ * t.l_, kInfinity);
    t.witness_.assign(t.n_ * t.l_, kNoNode);
    auto maps = label_distance_maps(g, labels);
    for (LabelId l = 0; l < t.l_; ++l) {
        for (NodeId v = 0; v < t.n_; ++v) {
            t.dist_[t.index(v, l)] = maps[l].dist[v];
            t.witness_[t.index(v, l)] = maps[l].source_of[v];
        }
    }
    return t;
}

std::pair<Weight, NodeId> ExactLabelTable::query(NodeId v, LabelId l) const {
    if (v >= n_ || l >= l_) {
        throw Error("query out of range");
    }
    return {dist_[index(v, l)], witness_[index(v, l)]};
}

Weight ExactLabelTable::max_finite() const {
    Weight m = 0.0;
    for (Weight d : dist_) {
        if (d != kInfinity) {
            m = std::max(m, d);
        }
    }
    return m;
}

ExactLabelTable build_exact(const Graph& g, const LabelAssignment& labels) {
    return ExactLabelTable::build(g, labels);
}

}  // namespace vlo
