#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <set>

#include "oracles.hpp"
#include "vlo/exact_oracle.hpp"
#include "vlo/spanner.hpp"

using namespace vlo;
using namespace vlo::testing;

namespace {

Weight label_distance(const Matrix& d, const LabelAssignment& labels, NodeId v, LabelId l) {
    Weight best = kInfinity;
    for (NodeId u : labels.members(l)) {
        best = std::min(best, d[v][u]);
    }
    return best;
}

Graph cover_graph(const Graph& g, const CoverResult& c) { return Graph(g.node_count(), c.edges); }

bool is_subgraph(const Graph& g, const std::vector<Edge>& edges) {
    for (const auto& e : edges) {
        auto w = g.edge_weight(e.u, e.v);
        if (!w || *w != e.w) {
            return false;
        }
    }
    return true;
}

// For each (u, l): is there a simple path from u to an l-labeled node with
// between x and 2x edges and length at most d? Exhaustive DFS; small graphs only.
std::vector<std::vector<bool>> relevant_pairs(const Graph& g, const LabelAssignment& labels, double d,
                                              std::size_t x) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<bool>> out(n, std::vector<bool>(labels.label_count(), false));
    std::vector<bool> on_path(n, false);
    for (NodeId u = 0; u < n; ++u) {
        std::function<void(NodeId, std::size_t, Weight)> walk = [&](NodeId v, std::size_t hops, Weight len) {
            if (hops >= x) {
                out[u][labels.label(v)] = true;
            }
            if (hops == 2 * x) {
                return;
            }
            on_path[v] = true;
            for (const auto& nb : g.neighbors(v)) {
                if (!on_path[nb.node] && len + nb.w <= d) {
                    walk(nb.node, hops + 1, len + nb.w);
                }
            }
            on_path[v] = false;
        };
        walk(u, 0, 0.0);
    }
    return out;
}

Graph cycle_of(std::size_t n) {
    Graph g = path_of(n);
    g.add_edge(0, static_cast<NodeId>(n - 1), 1.0);
    return g;
}

Graph triangle() {
    Graph g(3);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    g.add_edge(0, 2, 10.0);
    return g;
}

}  // namespace

TEST_SUITE("scales") {
    TEST_CASE("distance scales run to the first value covering the maximum") {
        auto s = distance_scales(0.5, 3.0);
        CHECK(s == std::vector<double>{1.0, 1.5, 2.25, 3.375});
        CHECK(distance_scales(0.5, 0.0) == std::vector<double>{1.0});
        CHECK_THROWS_AS(distance_scales(0.0, 5.0), Error);
    }

    TEST_CASE("hop scales are powers of two up to n") {
        CHECK(hop_scales(1) == std::vector<std::size_t>{1});
        CHECK(hop_scales(5) == std::vector<std::size_t>{1, 2, 4, 8});
        CHECK(hop_scales(8) == std::vector<std::size_t>{1, 2, 4, 8});
    }
}

TEST_SUITE("unweighted cover") {
    TEST_CASE("rejects weighted input") {
        Graph g = triangle();
        LabelAssignment labels({0, 0, 0}, 1);
        CHECK_THROWS_WITH_AS(vl_cover(g, labels, 1.0, 1), "unweighted required", Error);
        CHECK_THROWS_WITH_AS(build_unweighted_spanner(g, labels, 2, 0.5), "unweighted required", Error);
    }

    TEST_CASE("five-cycle with two marked labels") {
        Graph g = cycle_of(5);
        // Label 2 is filler for the unmarked nodes.
        LabelAssignment labels({0, 2, 1, 2, 2}, 3);
        auto cover = vl_cover(g, labels, 1.0, 1);
        CHECK(is_subgraph(g, cover.edges));
        auto dg = floyd_warshall(g);
        auto dh = floyd_warshall(cover_graph(g, cover));
        for (NodeId v = 0; v < 5; ++v) {
            for (LabelId l = 0; l < 3; ++l) {
                if (label_distance(dg, labels, v, l) <= 1.0) {
                    CHECK(label_distance(dh, labels, v, l) <= 5.0);
                }
            }
        }
    }

    TEST_CASE("one label and a scale beyond the diameter connects everything") {
        TestRng rng(21);
        for (int trial = 0; trial < 10; ++trial) {
            std::size_t n = 5 + rng.below(25);
            Graph g = random_graph(rng, n, 0.2, 1, true);
            LabelAssignment labels(std::vector<LabelId>(n, 0), 1);
            auto dg = floyd_warshall(g);
            double d = static_cast<double>(n);
            for (std::size_t k = 1; k <= 3; ++k) {
                auto cover = vl_cover(g, labels, d, k);
                auto dh = floyd_warshall(cover_graph(g, cover));
                for (NodeId u = 0; u < n; ++u) {
                    for (NodeId v = 0; v < n; ++v) {
                        if (dg[u][v] != kInfinity) {
                            CHECK(dh[u][v] != kInfinity);
                        }
                    }
                }
            }
        }
    }

    TEST_CASE("each scale covers every pair within d") {
        TestRng rng(22);
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t n = 6 + rng.below(40);
            std::size_t k = 1 + rng.below(3);
            Graph g = random_graph(rng, n, 0.05 + static_cast<double>(rng.below(100)) / 1000.0, 1, true);
            auto labels = random_labels(rng, n, 1 + rng.below(6));
            auto dg = floyd_warshall(g);
            for (double d : {1.0, 1.5, 2.25, 3.375, 5.0625}) {
                auto cover = vl_cover(g, labels, d, k);
                CHECK(is_subgraph(g, cover.edges));
                auto dh = floyd_warshall(cover_graph(g, cover));
                for (NodeId v = 0; v < n; ++v) {
                    for (LabelId l = 0; l < labels.label_count(); ++l) {
                        if (label_distance(dg, labels, v, l) <= d) {
                            CHECK(label_distance(dh, labels, v, l) <= static_cast<double>(4 * k + 1) * d);
                        }
                    }
                }
            }
        }
    }

    TEST_CASE("stage bookkeeping adds up") {
        TestRng rng(23);
        Graph g = random_graph(rng, 40, 0.1, 1, true);
        auto labels = random_labels(rng, 40, 4);
        auto cover = vl_cover(g, labels, 2.0, 2);
        CHECK(cover.stage_counts[0] + cover.stage_counts[1] + cover.stage_counts[2] == cover.edges.size());
        CHECK(cover.stage_of.size() == cover.edges.size());
        CHECK(cover.carved.size() == cover.carve_index.size());
        for (std::size_t i : cover.carve_index) {
            CHECK(i >= 1);
            CHECK(i <= 2);
        }
    }

    TEST_CASE("star with labeled leaves has stretch one from the hub") {
        Graph g(8);
        for (NodeId v = 1; v < 8; ++v) {
            g.add_edge(0, v, 1.0);
        }
        LabelAssignment labels({1, 0, 0, 0, 0, 0, 0, 0}, 2);
        auto h = build_unweighted_spanner(g, labels, 2, 0.5);
        auto dh = floyd_warshall(h.subgraph(8));
        CHECK(label_distance(dh, labels, 0, 0) == 1.0);
    }

    TEST_CASE("union spanner meets the global stretch bound") {
        TestRng rng(24);
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t n = 8 + rng.below(50);
            std::size_t k = 1 + rng.below(3);
            double eps = trial % 2 ? 0.5 : 1.0;
            Graph g = random_graph(rng, n, 0.08, 1, true);
            auto labels = random_labels(rng, n, 1 + rng.below(6));
            auto h = build_unweighted_spanner(g, labels, k, eps);
            CHECK(is_subgraph(g, h.edges));
            auto dg = floyd_warshall(g);
            auto dh = floyd_warshall(h.subgraph(n));
            double bound = static_cast<double>(4 * k + 1) * (1.0 + eps);
            for (NodeId v = 0; v < n; ++v) {
                for (LabelId l = 0; l < labels.label_count(); ++l) {
                    Weight exact = label_distance(dg, labels, v, l);
                    Weight got = label_distance(dh, labels, v, l);
                    if (exact == kInfinity) {
                        CHECK(got == kInfinity);
                    } else {
                        CHECK(got <= bound * exact);
                    }
                }
            }
            CHECK(h.provenance.size() == h.edges.size());
        }
    }
}

TEST_SUITE("weighted cover") {
    TEST_CASE("rejects weights below one") {
        Graph g(2);
        g.add_edge(0, 1, 0.5);
        LabelAssignment labels({0, 0}, 1);
        CHECK_THROWS_WITH_AS(wvl_cover(g, labels, 1.0, 1, 1), "weights must be >= 1", Error);
        CHECK_THROWS_WITH_AS(build_weighted_spanner(g, labels, 2, 0.5), "weights must be >= 1", Error);
    }

    TEST_CASE("hop scale above n makes both stages vacuous") {
        TestRng rng(25);
        Graph g = random_graph(rng, 12, 0.3, 4);
        auto labels = random_labels(rng, 12, 3);
        auto cover = wvl_cover(g, labels, 50.0, 13, 2);
        CHECK(cover.edges.empty());
        CHECK(cover.centers.empty());
        CHECK(cover.carved.empty());
    }

    TEST_CASE("label path is hop bounded") {
        Graph g = triangle();
        LabelAssignment labels({0, 0, 1}, 2);
        auto cover = wvl_cover(g, labels, 2.0, 1, 1);
        std::set<EdgeKey> keys;
        for (const auto& e : cover.edges) {
            keys.insert(edge_key(e.u, e.v));
        }
        CHECK(keys.count({0, 1}) == 1);
        CHECK(keys.count({1, 2}) == 1);
        CHECK(keys.count({0, 2}) == 0);
    }

    TEST_CASE("relevant paths are covered at their scale") {
        TestRng rng(26);
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t n = 5 + rng.below(10);
            std::size_t k = 1 + rng.below(3);
            Graph g = random_graph(rng, n, 0.25, 4);
            auto labels = random_labels(rng, n, 1 + rng.below(4));
            for (std::size_t x : {1u, 2u, 4u}) {
                auto maps = label_hop_maps(g, labels, 2 * x);
                for (double d : {1.0, 2.5, 4.0, 7.0, 12.0, 20.0}) {
                    CoverResult cover;
                    REQUIRE_NOTHROW(cover = wvl_cover(g, labels, d, x, k, maps));
                    CHECK(is_subgraph(g, cover.edges));
                    for (std::size_t i : cover.carve_index) {
                        CHECK(i > 1);
                    }
                    auto rel = relevant_pairs(g, labels, d, x);
                    auto dh = floyd_warshall(cover_graph(g, cover));
                    for (NodeId u = 0; u < n; ++u) {
                        for (LabelId l = 0; l < labels.label_count(); ++l) {
                            if (rel[u][l]) {
                                CHECK(label_distance(dh, labels, u, l) <= static_cast<double>(4 * k + 1) * d);
                            }
                        }
                    }
                }
            }
        }
    }

    TEST_CASE("union spanner meets the global stretch bound") {
        TestRng rng(27);
        for (int trial = 0; trial < 12; ++trial) {
            std::size_t n = 8 + rng.below(30);
            std::size_t k = 1 + rng.below(3);
            Graph g = random_graph(rng, n, 0.12, 4);
            auto labels = random_labels(rng, n, 1 + rng.below(5));
            auto h = build_weighted_spanner(g, labels, k, 0.5);
            CHECK(is_subgraph(g, h.edges));
            auto dg = floyd_warshall(g);
            auto dh = floyd_warshall(h.subgraph(n));
            double bound = static_cast<double>(4 * k + 1) * 1.5;
            for (NodeId v = 0; v < n; ++v) {
                for (LabelId l = 0; l < labels.label_count(); ++l) {
                    Weight exact = label_distance(dg, labels, v, l);
                    Weight got = label_distance(dh, labels, v, l);
                    if (exact == kInfinity) {
                        CHECK(got == kInfinity);
                    } else {
                        CHECK(got <= bound * exact);
                    }
                }
            }
        }
    }
}
