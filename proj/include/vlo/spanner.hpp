#pragma once

// Vertex-label spanners: subgraphs H with dist(u, l, H) <= (4k+1)(1+eps) dist(u, l, G).
//
// A single cover invocation at scale d (and hop scale x in the weighted case)
// carves sparse balls first, then greedily picks a 2kd-separated center set,
// adds the Voronoi trees of the residual graph and, per center and label, one
// short path from its cell to the label class.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "vlo/graph.hpp"

namespace vlo {

enum class SpannerStage : std::uint8_t {
    carve_tree = 1,    // stage 1 shortest-path trees
    cluster_tree = 2,  // Voronoi cell trees
    label_path = 3,    // per (center, label) paths
};

using EdgeKey = std::pair<NodeId, NodeId>;  // first < second

inline EdgeKey edge_key(NodeId a, NodeId b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

struct CoverResult {
    double d = 0.0;
    std::size_t x = 0;  // 0 for the unweighted procedure
    std::vector<Edge> edges;  // sorted by (u, v), u < v
    std::map<EdgeKey, SpannerStage> stage_of;
    std::array<std::size_t, 3> stage_counts{};  // new edges contributed per stage
    std::vector<NodeId> carved;                 // stage-1 picks, in order
    std::vector<std::size_t> carve_index;       // minimal index i for each pick
    std::vector<NodeId> centers;
};

// Unit-weight cover at distance scale d. label_maps[l] must be the multi-source
// run from V_l over g (see label_distance_maps).
CoverResult vl_cover(const Graph& g, const LabelAssignment& labels, double d, std::size_t k);
CoverResult vl_cover(const Graph& g, const LabelAssignment& labels, double d, std::size_t k,
                     std::span<const DistanceMap> label_maps);

// Weighted cover at distance scale d and hop scale x. hop_maps[l] must be the
// hop-bounded run from V_l with hop limit 2x.
CoverResult wvl_cover(const Graph& g, const LabelAssignment& labels, double d, std::size_t x, std::size_t k);
CoverResult wvl_cover(const Graph& g, const LabelAssignment& labels, double d, std::size_t x, std::size_t k,
                      std::span<const DistanceMap> hop_maps);

// Per-label hop-bounded runs used by wvl_cover.
std::vector<DistanceMap> label_hop_maps(const Graph& g, const LabelAssignment& labels, std::size_t hop_limit);

struct Provenance {
    double d;
    std::size_t x;
    SpannerStage stage;
};

struct SpannerResult {
    std::size_t k = 0;
    double eps = 0.0;
    bool weighted = false;
    Weight max_label_distance = 0.0;
    Weight diameter = 0.0;  // max finite pairwise distance; weighted builds only
    std::vector<Edge> edges;  // union, sorted
    std::map<EdgeKey, Provenance> provenance;  // first invocation that added each edge
    std::vector<CoverResult> invocations;

    Graph subgraph(std::size_t n) const { return Graph(n, edges); }
};

// 1, (1+eps), (1+eps)^2, ... up to and including the first value >= max_dist.
std::vector<double> distance_scales(double eps, Weight max_dist);
// 1, 2, 4, ..., 2^ceil(log2 n).
std::vector<std::size_t> hop_scales(std::size_t n);

SpannerResult build_unweighted_spanner(const Graph& g, const LabelAssignment& labels, std::size_t k, double eps);
SpannerResult build_weighted_spanner(const Graph& g, const LabelAssignment& labels, std::size_t k, double eps);

// Largest finite shortest-path distance over all node pairs.
Weight max_pairwise_distance(const Graph& g);

}  // namespace vlo
