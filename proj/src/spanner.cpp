#include "vlo/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vlo/exact_oracle.hpp"

namespace vlo {

namespace {

struct CoverSetup {
    double d;
    std::size_t k;
    // Weighted procedure: x; unweighted: d. Guards compare ball sizes to base * l^{e/k}.
    double base;
    bool weighted;
    std::size_t x;
};

class CoverBuilder {
  public:
    CoverBuilder(const Graph& g, const LabelAssignment& labels, const CoverSetup& setup,
                 std::span<const DistanceMap> label_maps)
        : g_(g), labels_(labels), s_(setup), maps_(label_maps), residual_(g) {
        result_.d = s_.d;
        result_.x = s_.weighted ? s_.x : 0;
        kd_ = static_cast<double>(s_.k) * s_.d;
        if (labels_.label_count() == 0) {
            throw Error("no labels");
        }
    }

    CoverResult run() {
        carve();
        cluster();
        result_.edges.reserve(result_.stage_of.size());
        for (const auto& [key, stage] : result_.stage_of) {
            result_.edges.push_back(Edge{key.first, key.second, *g_.edge_weight(key.first, key.second)});
        }
        return std::move(result_);
    }

  private:
    double ell_pow(std::size_t e) const {
        return std::pow(static_cast<double>(labels_.label_count()), static_cast<double>(e) / static_cast<double>(s_.k));
    }

    bool relevant(NodeId v) const { return !s_.weighted || ball_d_[v] >= s_.x; }

    void add_edge(NodeId a, NodeId b, SpannerStage stage) {
        auto [it, inserted] = result_.stage_of.emplace(edge_key(a, b), stage);
        if (inserted) {
            ++result_.stage_counts[static_cast<std::size_t>(stage) - 1];
        }
    }

    void refresh_sizes(NodeId v) {
        NodeId src[] = {v};
        DistanceMap dm = dijkstra(residual_, src, kd_);
        std::size_t within_kd = 0, within_d = 0;
        for (NodeId u = 0; u < dm.dist.size(); ++u) {
            if (dm.dist[u] <= kd_) {
                ++within_kd;
            }
            if (dm.dist[u] <= s_.d) {
                ++within_d;
            }
        }
        ball_kd_[v] = within_kd;
        ball_d_[v] = within_d;
    }

    // Stage 1: while some (relevant) node has a sparse kd-ball, add a tree over
    // B(v, i d) for the minimal qualifying i and delete the inner ball.
    void carve() {
        const std::size_t n = g_.node_count();
        const double guard = s_.base * ell_pow(s_.k - 1);
        ball_kd_.assign(n, 0);
        ball_d_.assign(n, 0);
        for (NodeId v = 0; v < n; ++v) {
            refresh_sizes(v);
        }
        for (;;) {
            NodeId pick = kNoNode;
            for (NodeId v = 0; v < n; ++v) {
                if (residual_.alive(v) && relevant(v) && static_cast<double>(ball_kd_[v]) < guard) {
                    pick = v;
                    break;
                }
            }
            if (pick == kNoNode) {
                break;
            }
            NodeId src[] = {pick};
            DistanceMap dm = dijkstra(residual_, src, kd_);
            auto count_within = [&](double r) {
                return static_cast<std::size_t>(
                    std::count_if(dm.dist.begin(), dm.dist.end(), [r](Weight w) { return w <= r; }));
            };
            std::size_t index = 0;
            for (std::size_t i = 1; i <= s_.k; ++i) {
                if (static_cast<double>(count_within(static_cast<double>(i) * s_.d)) < s_.base * ell_pow(i - 1)) {
                    index = i;
                    break;
                }
            }
            if (index == 0) {
                throw std::logic_error("carve: no qualifying ball index");
            }
            if (s_.weighted && index == 1) {
                throw std::logic_error("carve: minimal index 1 on an (x,d)-relevant node");
            }
            result_.carved.push_back(pick);
            result_.carve_index.push_back(index);

            const double tree_radius = static_cast<double>(index) * s_.d;
            for (NodeId u = 0; u < n; ++u) {
                if (dm.dist[u] <= tree_radius && dm.parent[u] != kNoNode) {
                    add_edge(dm.parent[u], u, SpannerStage::carve_tree);
                }
            }
            const double cut = index > 1 ? static_cast<double>(index - 1) * s_.d : s_.d;
            std::vector<NodeId> victims;
            for (NodeId u = 0; u < n; ++u) {
                if (dm.dist[u] <= cut) {
                    victims.push_back(u);
                }
            }
            // Only nodes within kd of a victim can see their balls shrink.
            DistanceMap near = dijkstra(residual_, victims, kd_);
            residual_.remove_nodes(victims);
            for (NodeId u = 0; u < n; ++u) {
                if (near.reached(u) && residual_.alive(u)) {
                    refresh_sizes(u);
                }
            }
        }
    }

    // Stage 2: greedy 2kd-separated centers, Voronoi trees, label paths.
    void cluster() {
        const std::size_t n = g_.node_count();
        const double sep = 2.0 * kd_;
        std::vector<Weight> to_center(n, kInfinity);
        for (NodeId v = 0; v < n; ++v) {
            if (!residual_.alive(v) || !relevant(v) || !(to_center[v] > sep)) {
                continue;
            }
            result_.centers.push_back(v);
            NodeId src[] = {v};
            DistanceMap dm = dijkstra(residual_, src, sep);
            for (NodeId u = 0; u < n; ++u) {
                to_center[u] = std::min(to_center[u], dm.dist[u]);
            }
        }
        if (result_.centers.empty()) {
            return;
        }

        DistanceMap vor = dijkstra(residual_, result_.centers);
        std::vector<std::vector<NodeId>> cell(n);
        for (NodeId u = 0; u < n; ++u) {
            if (!vor.reached(u)) {
                continue;
            }
            cell[vor.source_of[u]].push_back(u);
            if (vor.parent[u] != kNoNode) {
                add_edge(vor.parent[u], u, SpannerStage::cluster_tree);
            }
        }

        for (NodeId c : result_.centers) {
            for (LabelId l = 0; l < labels_.label_count(); ++l) {
                const DistanceMap& lm = maps_[l];
                NodeId chosen = kNoNode;
                for (NodeId y : cell[c]) {
                    if (!(lm.dist[y] <= s_.d)) {
                        continue;
                    }
                    if (!s_.weighted) {
                        chosen = y;  // smallest id
                        break;
                    }
                    // Nearest to the center keeps dist(c, y) <= dist(c, u) for
                    // every qualifying u of the cell.
                    if (chosen == kNoNode || vor.dist[y] < vor.dist[chosen]) {
                        chosen = y;
                    }
                }
                if (chosen == kNoNode) {
                    continue;
                }
                for (const Edge& e : extract_path(g_, lm, chosen)) {
                    add_edge(e.u, e.v, SpannerStage::label_path);
                }
            }
        }
    }

    const Graph& g_;
    const LabelAssignment& labels_;
    CoverSetup s_;
    std::span<const DistanceMap> maps_;
    Graph residual_;
    double kd_ = 0.0;
    std::vector<std::size_t> ball_kd_;
    std::vector<std::size_t> ball_d_;
    CoverResult result_;
};

void check_cover_args(const Graph& g, const LabelAssignment& labels, double d, std::size_t k) {
    if (labels.node_count() != g.node_count()) {
        throw Error("labeling does not match graph");
    }
    if (k < 1) {
        throw Error("k must be >= 1");
    }
    if (!(d >= 1.0)) {
        throw Error("d must be >= 1");
    }
}

void merge(SpannerResult& out, CoverResult cover) {
    for (const auto& [key, stage] : cover.stage_of) {
        out.provenance.emplace(key, Provenance{cover.d, cover.x, stage});
    }
    out.invocations.push_back(std::move(cover));
}

void finish(SpannerResult& out, const Graph& g) {
    out.edges.clear();
    out.edges.reserve(out.provenance.size());
    for (const auto& [key, prov] : out.provenance) {
        out.edges.push_back(Edge{key.first, key.second, *g.edge_weight(key.first, key.second)});
    }
}

}  // namespace

CoverResult vl_cover(const Graph& g, const LabelAssignment& labels, double d, std::size_t k,
                     std::span<const DistanceMap> label_maps) {
    check_cover_args(g, labels, d, k);
    if (!g.unit_weighted()) {
        throw Error("unweighted required");
    }
    CoverSetup setup{d, k, d, false, 0};
    return CoverBuilder(g, labels, setup, label_maps).run();
}

CoverResult vl_cover(const Graph& g, const LabelAssignment& labels, double d, std::size_t k) {
    if (!g.unit_weighted()) {
        throw Error("unweighted required");
    }
    auto maps = label_distance_maps(g, labels);
    return vl_cover(g, labels, d, k, maps);
}

CoverResult wvl_cover(const Graph& g, const LabelAssignment& labels, double d, std::size_t x, std::size_t k,
                      std::span<const DistanceMap> hop_maps) {
    check_cover_args(g, labels, d, k);
    if (x < 1) {
        throw Error("x must be >= 1");
    }
    if (g.edge_count() > 0 && g.min_weight() < 1.0) {
        throw Error("weights must be >= 1");
    }
    CoverSetup setup{d, k, static_cast<double>(x), true, x};
    return CoverBuilder(g, labels, setup, hop_maps).run();
}

CoverResult wvl_cover(const Graph& g, const LabelAssignment& labels, double d, std::size_t x, std::size_t k) {
    if (g.edge_count() > 0 && g.min_weight() < 1.0) {
        throw Error("weights must be >= 1");
    }
    auto maps = label_hop_maps(g, labels, 2 * x);
    return wvl_cover(g, labels, d, x, k, maps);
}

std::vector<DistanceMap> label_hop_maps(const Graph& g, const LabelAssignment& labels, std::size_t hop_limit) {
    std::vector<DistanceMap> maps;
    maps.reserve(labels.label_count());
    for (LabelId l = 0; l < labels.label_count(); ++l) {
        auto members = labels.members(l);
        if (members.empty()) {
            DistanceMap dm;
            dm.dist.assign(g.node_count(), kInfinity);
            dm.parent.assign(g.node_count(), kNoNode);
            dm.source_of.assign(g.node_count(), kNoNode);
            dm.hop_limit = hop_limit;
            maps.push_back(std::move(dm));
        } else {
            maps.push_back(hop_bounded_distances(g, members, hop_limit));
        }
    }
    return maps;
}

std::vector<double> distance_scales(double eps, Weight max_dist) {
    if (!(eps > 0.0)) {
        throw Error("eps must be > 0");
    }
    std::vector<double> scales{1.0};
    for (int i = 1; scales.back() < max_dist; ++i) {
        scales.push_back(std::pow(1.0 + eps, i));
    }
    return scales;
}

std::vector<std::size_t> hop_scales(std::size_t n) {
    std::vector<std::size_t> scales{1};
    while (scales.back() < n) {
        scales.push_back(scales.back() * 2);
    }
    return scales;
}

Weight max_pairwise_distance(const Graph& g) {
    Weight m = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        NodeId src[] = {v};
        DistanceMap dm = dijkstra(g, src);
        for (Weight w : dm.dist) {
            if (w != kInfinity) {
                m = std::max(m, w);
            }
        }
    }
    return m;
}

SpannerResult build_unweighted_spanner(const Graph& g, const LabelAssignment& labels, std::size_t k, double eps) {
    if (!g.unit_weighted()) {
        throw Error("unweighted required");
    }
    SpannerResult out;
    out.k = k;
    out.eps = eps;
    out.weighted = false;
    auto maps = label_distance_maps(g, labels);
    for (const auto& dm : maps) {
        for (Weight w : dm.dist) {
            if (w != kInfinity) {
                out.max_label_distance = std::max(out.max_label_distance, w);
            }
        }
    }
    for (double d : distance_scales(eps, out.max_label_distance)) {
        merge(out, vl_cover(g, labels, d, k, maps));
    }
    finish(out, g);
    return out;
}

SpannerResult build_weighted_spanner(const Graph& g, const LabelAssignment& labels, std::size_t k, double eps) {
    if (g.edge_count() > 0 && g.min_weight() < 1.0) {
        throw Error("weights must be >= 1");
    }
    SpannerResult out;
    out.k = k;
    out.eps = eps;
    out.weighted = true;
    out.max_label_distance = ExactLabelTable::build(g, labels).max_finite();
    out.diameter = max_pairwise_distance(g);
    auto d_scales = distance_scales(eps, out.max_label_distance);
    for (std::size_t x : hop_scales(g.node_count())) {
        auto maps = label_hop_maps(g, labels, 2 * x);
        for (double d : d_scales) {
            merge(out, wvl_cover(g, labels, d, x, k, maps));
        }
    }
    finish(out, g);
    return out;
}

}  // namespace vlo
