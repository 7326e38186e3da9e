#pragma once

#include <utility>
#include <vector>

#include "vlo/graph.hpp"

namespace vlo {

// The n x l table of exact node-to-label distances, one multi-source Dijkstra
// per label. Ground truth for every stretch check.
class ExactLabelTable {
  public:
    ExactLabelTable() = default;

    static ExactLabelTable build(const Graph& g, const LabelAssignment& labels);

    std::size_t node_count() const { return n_; }
    std::size_t label_count() const { return l_; }

    // (distance, nearest labeled node); (+inf, kNoNode) when unreachable.
    std::pair<Weight, NodeId> query(NodeId v, LabelId l) const;
    Weight dist(NodeId v, LabelId l) const { return dist_[index(v, l)]; }
    NodeId witness(NodeId v, LabelId l) const { return witness_[index(v, l)]; }

    // Largest finite entry (0 when there is none).
    Weight max_finite() const;

  private:
    std::size_t index(NodeId v, LabelId l) const { return static_cast<std::size_t>(v) * l_ + l; }

    std::size_t n_ = 0;
    std::size_t l_ = 0;
    std::vector<Weight> dist_;
    std::vector<NodeId> witness_;
};

ExactLabelTable build_exact(const Graph& g, const LabelAssignment& labels);

// Per-label multi-source runs from V_l over the whole graph. Empty classes map
// to an all-infinite DistanceMap.
std::vector<DistanceMap> label_distance_maps(const Graph& g, const LabelAssignment& labels);

}  // namespace vlo
