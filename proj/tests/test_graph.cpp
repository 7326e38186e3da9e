#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "vlo/graph.hpp"
#include "vlo/graph_io.hpp"

using namespace vlo;
using namespace vlo::testing;

namespace {

Graph triangle() {
    Graph g(3);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    g.add_edge(0, 2, 10.0);
    return g;
}

Weight path_weight(const std::vector<Edge>& path) {
    Weight total = 0.0;
    for (const auto& e : path) {
        total += e.w;
    }
    return total;
}

}  // namespace

TEST_SUITE("dijkstra") {
    TEST_CASE("path from one end") {
        Graph g = path_of(5);
        NodeId src[] = {0};
        auto dm = dijkstra(g, src);
        CHECK(dm.dist == std::vector<Weight>{0, 1, 2, 3, 4});
    }

    TEST_CASE("zero radius keeps only the source") {
        Graph g = path_of(5);
        NodeId src[] = {3};
        auto dm = dijkstra(g, src, 0.0);
        for (NodeId v = 0; v < 5; ++v) {
            CHECK(dm.dist[v] == (v == 3 ? 0.0 : kInfinity));
        }
    }

    TEST_CASE("equidistant sources tie to the smaller id") {
        Graph g = path_of(5);
        NodeId src[] = {4, 0};
        auto dm = dijkstra(g, src);
        CHECK(dm.dist[2] == 2.0);
        CHECK(dm.source_of[2] == 0);
        CHECK(dm.source_of[3] == 4);
    }

    TEST_CASE("errors") {
        Graph g = path_of(3);
        CHECK_THROWS_WITH_AS(dijkstra(g, {}), "no sources", Error);
        NodeId dead[] = {1};
        g.remove_nodes(dead);
        CHECK_THROWS_WITH_AS(dijkstra(g, dead), "deleted node", Error);
    }

    TEST_CASE("parent chains descend to a source") {
        TestRng rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            Graph g = random_graph(rng, 30, 0.15);
            NodeId src[] = {static_cast<NodeId>(rng.below(30)), static_cast<NodeId>(rng.below(30))};
            auto dm = dijkstra(g, src);
            for (NodeId v = 0; v < 30; ++v) {
                if (!dm.reached(v)) {
                    continue;
                }
                NodeId u = v;
                while (dm.parent[u] != kNoNode) {
                    CHECK(dm.dist[dm.parent[u]] <= dm.dist[u]);
                    CHECK(dm.source_of[dm.parent[u]] == dm.source_of[u]);
                    u = dm.parent[u];
                }
                CHECK(u == dm.source_of[v]);
                CHECK(dm.dist[u] == 0.0);
            }
        }
    }
}

TEST_SUITE("ball") {
    TEST_CASE("radius one on a path") {
        Graph g = path_of(5);
        CHECK(ball(g, 2, 1.0) == std::vector<NodeId>{1, 2, 3});
        CHECK(ball(g, 2, 0.0) == std::vector<NodeId>{2});
    }

    TEST_CASE("cut vertex isolates the tail") {
        Graph g = path_of(5);
        NodeId cut[] = {3};
        remove_nodes(g, cut);
        CHECK(ball(g, 4, kInfinity) == std::vector<NodeId>{4});
        CHECK_THROWS_WITH_AS(ball(g, 3, 1.0), "deleted node", Error);
    }

    TEST_CASE("balls are nested in the radius") {
        TestRng rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            Graph g = random_graph(rng, 25, 0.2);
            NodeId v = static_cast<NodeId>(rng.below(25));
            auto small = ball(g, v, 3.0);
            auto large = ball(g, v, 7.5);
            CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
        }
    }
}

TEST_SUITE("hop bounded") {
    TEST_CASE("one hop forces the direct edge") {
        Graph g = triangle();
        NodeId src[] = {0};
        CHECK(hop_bounded_distances(g, src, 1).dist[2] == 10.0);
        CHECK(hop_bounded_distances(g, src, 2).dist[2] == 2.0);
    }

    TEST_CASE("zero hops reach only the sources") {
        Graph g = triangle();
        NodeId src[] = {1};
        auto dm = hop_bounded_distances(g, src, 0);
        CHECK(dm.dist == std::vector<Weight>{kInfinity, 0.0, kInfinity});
    }

    TEST_CASE("witness respects the hop limit") {
        Graph g = triangle();
        NodeId src[] = {0};
        auto one = hop_bounded_distances(g, src, 1);
        auto path = extract_path(g, one, 2);
        REQUIRE(path.size() == 1);
        CHECK(path[0] == Edge{0, 2, 10.0});
    }

    TEST_CASE("monotone in the hop limit and converges to dijkstra") {
        TestRng rng(99);
        for (int trial = 0; trial < 15; ++trial) {
            std::size_t n = 5 + rng.below(25);
            Graph g = random_graph(rng, n, 0.2);
            NodeId src[] = {static_cast<NodeId>(rng.below(n))};
            auto full = dijkstra(g, src);
            std::vector<Weight> prev(n, kInfinity);
            for (std::size_t h = 0; h < n; ++h) {
                auto dm = hop_bounded_distances(g, src, h);
                for (NodeId v = 0; v < n; ++v) {
                    CHECK(dm.dist[v] <= prev[v]);
                }
                prev = dm.dist;
            }
            CHECK(prev == full.dist);
        }
    }
}

TEST_SUITE("remove and extract") {
    TEST_CASE("removing nothing changes nothing") {
        Graph g = path_of(5);
        remove_nodes(g, {});
        CHECK(g.alive_count() == 5);
    }

    TEST_CASE("removing everything empties the residual graph") {
        Graph g = path_of(4);
        std::vector<NodeId> all{0, 1, 2, 3};
        remove_nodes(g, all);
        remove_nodes(g, all);
        CHECK(g.alive_count() == 0);
        for (NodeId v : all) {
            CHECK_THROWS_AS(ball(g, v, 1.0), Error);
        }
    }

    TEST_CASE("a cut vertex disconnects the far end") {
        Graph g = path_of(5);
        NodeId cut[] = {2};
        remove_nodes(g, cut);
        NodeId src[] = {0};
        CHECK(dijkstra(g, src).dist[4] == kInfinity);
    }

    TEST_CASE("extract path") {
        Graph g = path_of(5);
        NodeId src[] = {0};
        auto dm = dijkstra(g, src);
        CHECK(extract_path(g, dm, 0).empty());
        auto p = extract_path(g, dm, 3);
        CHECK(p == std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
        NodeId cut[] = {2};
        remove_nodes(g, cut);
        auto cut_dm = dijkstra(g, src);
        CHECK_THROWS_WITH_AS(extract_path(g, cut_dm, 4), "no path", Error);
    }

    TEST_CASE("hop-bounded witnesses have the reported length and hop count") {
        TestRng rng(3);
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t n = 6 + rng.below(20);
            Graph g = random_graph(rng, n, 0.25);
            NodeId src[] = {0, static_cast<NodeId>(rng.below(n))};
            std::size_t limit = 1 + rng.below(5);
            auto dm = hop_bounded_distances(g, src, limit);
            for (NodeId v = 0; v < n; ++v) {
                if (!dm.reached(v)) {
                    continue;
                }
                auto p = extract_path(g, dm, v);
                CHECK(p.size() <= limit);
                CHECK(path_weight(p) == dm.dist[v]);
            }
        }
    }
}

// Exhaustive agreement with the matrix oracles on 200 random graphs.
TEST_CASE("primitives agree with Floyd-Warshall and the hop DP") {
    TestRng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng.below(63);
        Graph g = random_graph(rng, n, 0.02 + static_cast<double>(rng.below(200)) / 1000.0);
        auto fw = floyd_warshall(g);
        for (NodeId s = 0; s < n; ++s) {
            NodeId src[] = {s};
            CHECK(dijkstra(g, src).dist == fw[s]);
        }
        NodeId s = static_cast<NodeId>(rng.below(n));
        std::size_t max_h = std::min<std::size_t>(n, 12);
        auto table = hop_table(g, s, max_h);
        NodeId src[] = {s};
        for (std::size_t h = 0; h <= max_h; ++h) {
            CHECK(hop_bounded_distances(g, src, h).dist == table[h]);
        }
        Weight r = static_cast<Weight>(rng.below(40)) / 4.0;
        std::vector<NodeId> expected;
        for (NodeId v = 0; v < n; ++v) {
            if (fw[s][v] <= r) {
                expected.push_back(v);
            }
        }
        CHECK(ball(g, s, r) == expected);
    }
}

TEST_CASE("triangle inequality on random triples") {
    TestRng rng(77);
    Graph g = random_graph(rng, 64, 0.08);
    std::vector<std::vector<Weight>> d(64);
    for (NodeId s = 0; s < 64; ++s) {
        NodeId src[] = {s};
        d[s] = dijkstra(g, src).dist;
    }
    for (int t = 0; t < 2000; ++t) {
        auto u = rng.below(64), v = rng.below(64), w = rng.below(64);
        if (d[u][v] != kInfinity && d[v][w] != kInfinity) {
            CHECK(d[u][w] <= d[u][v] + d[v][w]);
        }
    }
}

TEST_SUITE("graph file") {
    TEST_CASE("round trip reproduces the structure") {
        TestRng rng(8);
        for (int trial = 0; trial < 10; ++trial) {
            std::size_t n = 3 + rng.below(30);
            Graph g = random_graph(rng, n, 0.3);
            LabelAssignment labels = random_labels(rng, n, 1 + rng.below(3));
            std::stringstream ss;
            write_labeled_graph(ss, g, labels);
            auto back = read_labeled_graph(ss);
            CHECK(back.graph.edges() == g.edges());
            CHECK(back.labels == labels);
        }
    }

    TEST_CASE("comments and odd weights survive") {
        std::stringstream ss("# header\n3 2 2\n0 1 0.1\n# mid\n1 2 1e-3\n0\n1\n1\n");
        auto lg = read_labeled_graph(ss);
        CHECK(lg.graph.edge_weight(0, 1) == 0.1);
        CHECK(lg.graph.edge_weight(2, 1) == 1e-3);
        CHECK(lg.labels.members(1).size() == 2);
    }

    TEST_CASE("rejects malformed input") {
        auto parse = [](const char* text) {
            std::stringstream ss(text);
            return read_labeled_graph(ss);
        };
        CHECK_THROWS_AS(parse("3 2 1\n0 1 1\n1 0 2\n0\n0\n0\n"), Error);  // duplicate
        CHECK_THROWS_AS(parse("2 1 1\n1 1 1\n0\n0\n"), Error);            // self-loop
        CHECK_THROWS_AS(parse("2 1 2\n0 1 1\n0\n2\n"), Error);            // label >= l
        CHECK_THROWS_AS(parse("2 1 1\n0 1 1\n0\n"), Error);               // missing label
        CHECK_THROWS_AS(parse("2 1 1\n0 1 -1\n0\n0\n"), Error);           // negative weight
    }
}

TEST_CASE("label assignment keeps classes inverse to labels") {
    LabelAssignment labels({0, 1, 0, 2}, 3);
    labels.relabel(2, 1);
    CHECK(labels.members(0).size() == 1);
    CHECK(std::vector<NodeId>(labels.members(1).begin(), labels.members(1).end()) == std::vector<NodeId>{1, 2});
    CHECK_THROWS_AS(LabelAssignment({0, 3}, 3), Error);
}
