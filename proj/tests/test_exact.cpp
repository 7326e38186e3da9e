#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "vlo/exact_oracle.hpp"

using namespace vlo;
using namespace vlo::testing;

TEST_CASE("path endpoints as two labels") {
    Graph g = path_of(5);
    LabelAssignment labels({0, 2, 2, 2, 1}, 3);
    auto t = build_exact(g, labels);
    CHECK(t.dist(2, 0) == 2.0);
    CHECK(t.dist(2, 1) == 2.0);
    CHECK(t.witness(2, 0) == 0);
    CHECK(t.witness(2, 1) == 4);
    CHECK(t.query(3, 1) == std::pair<Weight, NodeId>{1.0, 4});
}

TEST_CASE("own label is at distance zero") {
    TestRng rng(1);
    Graph g = random_graph(rng, 40, 0.1);
    auto labels = random_labels(rng, 40, 5);
    auto t = build_exact(g, labels);
    for (NodeId v = 0; v < 40; ++v) {
        CHECK(t.dist(v, labels.label(v)) == 0.0);
        CHECK(t.witness(v, labels.label(v)) == v);
    }
}

TEST_CASE("unreachable label class") {
    Graph g(4);
    g.add_edge(0, 1, 1.0);
    g.add_edge(2, 3, 1.0);
    LabelAssignment labels({0, 1, 0, 0}, 2);
    auto t = build_exact(g, labels);
    CHECK(t.dist(3, 1) == kInfinity);
    CHECK(t.witness(3, 1) == kNoNode);
    CHECK(t.dist(0, 1) == 1.0);
    CHECK(t.max_finite() == 1.0);
}

TEST_CASE("witness ties go to the smaller id") {
    Graph g = path_of(3);
    LabelAssignment labels({0, 1, 0}, 2);
    CHECK(build_exact(g, labels).witness(1, 0) == 0);
}

TEST_CASE("out of range queries throw") {
    Graph g = path_of(3);
    LabelAssignment labels({0, 0, 0}, 1);
    auto t = build_exact(g, labels);
    CHECK_THROWS_AS(t.query(3, 0), Error);
    CHECK_THROWS_AS(t.query(0, 1), Error);
}

TEST_CASE("table equals the brute-force minimum over class members") {
    TestRng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 2 + rng.below(50);
        Graph g = random_graph(rng, n, 0.08);
        auto labels = random_labels(rng, n, 1 + rng.below(std::min<std::size_t>(n, 6)));
        auto fw = floyd_warshall(g);
        auto t = build_exact(g, labels);
        for (NodeId v = 0; v < n; ++v) {
            for (LabelId l = 0; l < labels.label_count(); ++l) {
                Weight best = kInfinity;
                NodeId arg = kNoNode;
                for (NodeId u : labels.members(l)) {
                    if (fw[v][u] < best) {
                        best = fw[v][u];
                        arg = u;
                    }
                }
                CHECK(t.dist(v, l) == best);
                CHECK(t.witness(v, l) == arg);
            }
        }
    }
}
