#include "vlo/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

namespace vlo {

Graph::Graph(std::size_t n) : adj_(n), alive_(n, 1), alive_count_(n) {
    if (n >= kNoNode) {
        throw Error("graph too large");
    }
}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
    for (const auto& e : edges) {
        add_edge(e.u, e.v, e.w);
    }
}

void Graph::add_edge(NodeId u, NodeId v, Weight w) {
    if (u >= node_count() || v >= node_count()) {
        throw Error("edge endpoint out of range");
    }
    if (u == v) {
        throw Error("self-loop at node " + std::to_string(u));
    }
    if (!(w >= 0.0) || !std::isfinite(w)) {
        throw Error("edge weight must be finite and non-negative");
    }
    auto by_node = [](const Neighbor& a, NodeId b) { return a.node < b; };
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v, by_node);
    if (it != au.end() && it->node == v) {
        throw Error("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    au.insert(it, Neighbor{v, w});
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u, by_node), Neighbor{u, w});
    edges_.push_back(Edge{u, v, w});
}

std::optional<Weight> Graph::edge_weight(NodeId u, NodeId v) const {
    if (u >= node_count() || v >= node_count()) {
        return std::nullopt;
    }
    const auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v,
                               [](const Neighbor& a, NodeId b) { return a.node < b; });
    if (it == au.end() || it->node != v) {
        return std::nullopt;
    }
    return it->w;
}

void Graph::remove_nodes(std::span<const NodeId> victims) {
    for (NodeId v : victims) {
        if (v >= node_count()) {
            throw Error("node out of range");
        }
        if (alive_[v]) {
            alive_[v] = 0;
            --alive_count_;
        }
    }
}

bool Graph::unit_weighted() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == 1.0; });
}

Weight Graph::min_weight() const {
    Weight m = kInfinity;
    for (const auto& e : edges_) {
        m = std::min(m, e.w);
    }
    return m;
}

LabelAssignment::LabelAssignment(std::vector<LabelId> label_of, std::size_t label_count)
    : label_of_(std::move(label_of)), classes_(label_count) {
    for (NodeId v = 0; v < label_of_.size(); ++v) {
        if (label_of_[v] >= label_count) {
            throw Error("label id " + std::to_string(label_of_[v]) + " out of range");
        }
        classes_[label_of_[v]].push_back(v);
    }
}

void LabelAssignment::relabel(NodeId v, LabelId l) {
    if (v >= node_count() || l >= label_count()) {
        throw Error("relabel out of range");
    }
    LabelId old = label_of_[v];
    if (old == l) {
        return;
    }
    auto& from = classes_[old];
    from.erase(std::lower_bound(from.begin(), from.end(), v));
    auto& to = classes_[l];
    to.insert(std::lower_bound(to.begin(), to.end(), v), v);
    label_of_[v] = l;
}

namespace {

DistanceMap empty_map(std::size_t n) {
    DistanceMap dm;
    dm.dist.assign(n, kInfinity);
    dm.parent.assign(n, kNoNode);
    dm.source_of.assign(n, kNoNode);
    return dm;
}

void check_sources(const Graph& g, std::span<const NodeId> sources) {
    if (sources.empty()) {
        throw Error("no sources");
    }
    for (NodeId s : sources) {
        if (s >= g.node_count()) {
            throw Error("source out of range");
        }
        if (!g.alive(s)) {
            throw Error("deleted node");
        }
    }
}

}  // namespace

DistanceMap dijkstra(const Graph& g, std::span<const NodeId> sources, Weight radius_cap) {
    check_sources(g, sources);
    const std::size_t n = g.node_count();
    DistanceMap dm = empty_map(n);
    std::vector<std::uint8_t> done(n, 0);

    // (dist, source, node): popping in this order settles the smallest
    // attaining source even across zero-weight edges.
    using Item = std::tuple<Weight, NodeId, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (NodeId s : sources) {
        if (dm.dist[s] == 0.0 && dm.source_of[s] <= s) {
            continue;
        }
        dm.dist[s] = 0.0;
        dm.source_of[s] = s;
        pq.emplace(0.0, s, s);
    }
    while (!pq.empty()) {
        auto [d, src, u] = pq.top();
        pq.pop();
        if (done[u] || d != dm.dist[u] || src != dm.source_of[u]) {
            continue;
        }
        done[u] = 1;
        for (const auto& [v, w] : g.neighbors(u)) {
            if (!g.alive(v) || done[v]) {
                continue;
            }
            Weight nd = d + w;
            if (nd > radius_cap) {
                continue;
            }
            bool better = nd < dm.dist[v] ||
                          (nd == dm.dist[v] && (src < dm.source_of[v] ||
                                                (src == dm.source_of[v] && u < dm.parent[v])));
            if (better) {
                dm.dist[v] = nd;
                dm.source_of[v] = src;
                dm.parent[v] = u;
                pq.emplace(nd, src, v);
            }
        }
    }
    return dm;
}

std::vector<NodeId> ball(const Graph& g, NodeId v, Weight r) {
    if (v >= g.node_count()) {
        throw Error("node out of range");
    }
    if (!g.alive(v)) {
        throw Error("deleted node");
    }
    NodeId src[] = {v};
    DistanceMap dm = dijkstra(g, src, r);
    std::vector<NodeId> out;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (dm.reached(u)) {
            out.push_back(u);
        }
    }
    return out;
}

DistanceMap hop_bounded_distances(const Graph& g, std::span<const NodeId> sources, std::size_t hop_limit) {
    check_sources(g, sources);
    const std::size_t n = g.node_count();
    DistanceMap dm = empty_map(n);
    dm.hop_limit = hop_limit;
    for (NodeId s : sources) {
        dm.dist[s] = 0.0;
        dm.source_of[s] = std::min(dm.source_of[s], s);
    }

    std::vector<Weight> prev_dist;
    std::vector<NodeId> prev_src;
    for (std::size_t round = 0; round < hop_limit; ++round) {
        prev_dist = dm.dist;
        prev_src = dm.source_of;
        std::vector<NodeId> layer(n, kNoNode);
        bool changed = false;
        for (NodeId u = 0; u < n; ++u) {
            if (prev_dist[u] == kInfinity || !g.alive(u)) {
                continue;
            }
            for (const auto& [v, w] : g.neighbors(u)) {
                if (!g.alive(v)) {
                    continue;
                }
                Weight nd = prev_dist[u] + w;
                if (nd < prev_dist[v] &&
                    (nd < dm.dist[v] || (nd == dm.dist[v] && (prev_src[u] < dm.source_of[v] ||
                                                              (prev_src[u] == dm.source_of[v] && u < layer[v]))))) {
                    dm.dist[v] = nd;
                    dm.source_of[v] = prev_src[u];
                    dm.parent[v] = u;
                    layer[v] = u;
                    changed = true;
                }
            }
        }
        if (!changed) {
            break;
        }
        dm.hop_parent.push_back(std::move(layer));
    }
    return dm;
}

void remove_nodes(Graph& g, std::span<const NodeId> victims) {
    g.remove_nodes(victims);
}

std::vector<Edge> extract_path(const Graph& g, const DistanceMap& dm, NodeId target) {
    if (target >= dm.dist.size() || !dm.reached(target)) {
        throw Error("no path");
    }
    std::vector<Edge> path;
    auto push = [&](NodeId from, NodeId to) {
        auto w = g.edge_weight(from, to);
        if (!w) {
            throw Error("parent edge missing from graph");
        }
        path.push_back(Edge{from, to, *w});
    };
    NodeId v = target;
    if (dm.hop_limit) {
        std::size_t h = dm.hop_parent.size();
        while (h > 0) {
            NodeId p = dm.hop_parent[h - 1][v];
            if (p != kNoNode) {
                push(p, v);
                v = p;
            }
            --h;
        }
    } else {
        while (dm.parent[v] != kNoNode) {
            push(dm.parent[v], v);
            v = dm.parent[v];
        }
    }
    if (dm.dist[v] != 0.0 || dm.source_of[v] != v) {
        throw Error("no path");
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace vlo
