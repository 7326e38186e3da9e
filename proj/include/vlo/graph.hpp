#pragma once

// Undirected weighted graphs with residual (node-deletion) support, vertex
// labelings, and the shortest-path primitives everything else is built on.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vlo {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;
using Weight = double;

inline constexpr Weight kInfinity = std::numeric_limits<Weight>::infinity();
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Edge {
    NodeId u;
    NodeId v;
    Weight w;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
    NodeId node;
    Weight w;
};

// Adjacency lists are kept sorted by neighbor id. The `alive` flags define the
// residual graph; dead nodes are invisible to every traversal.
class Graph {
  public:
    Graph() = default;
    explicit Graph(std::size_t n);
    Graph(std::size_t n, std::span<const Edge> edges);

    // Rejects self-loops, duplicates, out-of-range endpoints and negative or
    // non-finite weights.
    void add_edge(NodeId u, NodeId v, Weight w);

    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Neighbor> neighbors(NodeId v) const { return adj_[v]; }
    std::optional<Weight> edge_weight(NodeId u, NodeId v) const;

    bool alive(NodeId v) const { return alive_[v] != 0; }
    std::size_t alive_count() const { return alive_count_; }
    // Idempotent on already-dead nodes.
    void remove_nodes(std::span<const NodeId> victims);

    bool unit_weighted() const;
    Weight min_weight() const;

  private:
    std::vector<std::vector<Neighbor>> adj_;
    std::vector<Edge> edges_;
    std::vector<std::uint8_t> alive_;
    std::size_t alive_count_ = 0;
};

// Node -> label map with the inverse per-label member sets (sorted).
class LabelAssignment {
  public:
    LabelAssignment() = default;
    LabelAssignment(std::vector<LabelId> label_of, std::size_t label_count);

    std::size_t node_count() const { return label_of_.size(); }
    std::size_t label_count() const { return classes_.size(); }
    LabelId label(NodeId v) const { return label_of_[v]; }
    std::span<const NodeId> members(LabelId l) const { return classes_[l]; }
    const std::vector<LabelId>& labels() const { return label_of_; }

    void relabel(NodeId v, LabelId l);

    friend bool operator==(const LabelAssignment&, const LabelAssignment&) = default;

  private:
    std::vector<LabelId> label_of_;
    std::vector<std::vector<NodeId>> classes_;
};

// Result of a (multi-source, possibly truncated or hop-bounded) shortest-path run.
struct DistanceMap {
    std::vector<Weight> dist;
    std::vector<NodeId> parent;
    std::vector<NodeId> source_of;

    // Hop-bounded runs only: hop_parent[h][v] is v's predecessor when its
    // round-(h+1) value improved on round h, kNoNode when it was carried over.
    std::optional<std::size_t> hop_limit;
    std::vector<std::vector<NodeId>> hop_parent;

    bool reached(NodeId v) const { return dist[v] != kInfinity; }
};

// Multi-source Dijkstra over the alive nodes. Nodes farther than radius_cap
// stay at +inf. Among equal distances the smaller source id wins, then the
// smaller predecessor id.
DistanceMap dijkstra(const Graph& g, std::span<const NodeId> sources, Weight radius_cap = kInfinity);

// Alive nodes within distance r of v, sorted by id.
std::vector<NodeId> ball(const Graph& g, NodeId v, Weight r);

// Shortest lengths over paths with at most hop_limit edges (layered
// Bellman-Ford relaxation).
DistanceMap hop_bounded_distances(const Graph& g, std::span<const NodeId> sources, std::size_t hop_limit);

void remove_nodes(Graph& g, std::span<const NodeId> victims);

// Edges of the witnessing path, ordered from the attaining source to target.
std::vector<Edge> extract_path(const Graph& g, const DistanceMap& dm, NodeId target);

}  // namespace vlo
