#include "vlo/levels.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace vlo {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) {
        throw Error("empty range");
    }
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    for (;;) {
        std::uint64_t r = engine_();
        if (r >= limit) {
            return r % bound;
        }
    }
}

LevelSampling LevelSampling::from_levels(std::size_t n, std::vector<std::vector<NodeId>> levels, double p,
                                         std::uint64_t seed) {
    if (levels.empty()) {
        throw Error("no levels");
    }
    LevelSampling s;
    s.k = levels.size();
    s.p = p;
    s.seed = seed;
    s.level_of.assign(n, 0);
    for (auto& lvl : levels) {
        std::sort(lvl.begin(), lvl.end());
    }
    if (levels[0].size() != n) {
        throw Error("level 0 must contain every node");
    }
    for (std::size_t i = 1; i < levels.size(); ++i) {
        for (NodeId v : levels[i]) {
            if (v >= n || s.level_of[v] != i - 1) {
                throw Error("levels are not nested");
            }
            s.level_of[v] = static_cast<std::uint32_t>(i);
        }
    }
    s.levels = std::move(levels);
    return s;
}

LevelSampling sample_levels(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
    if (k < 1) {
        throw Error("k must be >= 1");
    }
    if (!(p > 0.0 && p <= 1.0)) {
        throw Error("sampling probability must be in (0, 1]");
    }
    if (n == 0) {
        throw Error("degenerate sampling");
    }
    for (int attempt = 0; attempt <= kSamplingRetries; ++attempt) {
        Rng rng(seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ULL);
        std::vector<std::vector<NodeId>> levels(k);
        levels[0].resize(n);
        for (NodeId v = 0; v < n; ++v) {
            levels[0][v] = v;
        }
        for (std::size_t i = 1; i < k; ++i) {
            for (NodeId v : levels[i - 1]) {
                if (rng.uniform() < p) {
                    levels[i].push_back(v);
                }
            }
        }
        if (!levels[k - 1].empty()) {
            return LevelSampling::from_levels(n, std::move(levels), p, seed);
        }
    }
    throw Error("degenerate sampling");
}

std::size_t BunchSet::total_bunch_size() const {
    std::size_t total = 0;
    for (const auto& b : bunch) {
        total += b.size();
    }
    return total;
}

std::size_t BunchSet::max_bunch_size() const {
    std::size_t m = 0;
    for (const auto& b : bunch) {
        m = std::max(m, b.size());
    }
    return m;
}

BunchSet build_bunches(const Graph& g, const LevelSampling& s, std::size_t bunch_levels) {
    const std::size_t n = g.node_count();
    const std::size_t k = s.k;
    if (s.level_of.size() != n) {
        throw Error("sampling does not match graph");
    }
    if (bunch_levels > k) {
        throw Error("bunch levels exceed hierarchy depth");
    }
    BunchSet b;
    b.pivot_levels = k;
    b.bunch_levels = bunch_levels;
    b.pivots.assign(n * k, Pivot{});
    b.bunch.assign(n, {});

    for (std::size_t i = 0; i < k; ++i) {
        DistanceMap dm = dijkstra(g, s.levels[i]);
        for (NodeId v = 0; v < n; ++v) {
            b.pivots[v * k + i] = Pivot{dm.source_of[v], dm.dist[v]};
        }
    }

    // Cluster of w: {v : dist(w,v) < dist(v, A_{i+1})}. Clusters are closed
    // under shortest-path prefixes, so a pruned Dijkstra from w finds them.
    std::vector<Weight> dist(n, kInfinity);
    std::vector<std::uint8_t> done(n, 0);
    std::vector<NodeId> touched;
    using Item = std::pair<Weight, NodeId>;
    for (std::size_t i = 0; i < bunch_levels; ++i) {
        auto next_level = [&](NodeId v) {
            return i + 1 < k ? b.pivots[v * k + i + 1].dist : kInfinity;
        };
        for (NodeId w : s.levels[i]) {
            if (s.level_of[w] != i) {
                continue;
            }
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            if (!(0.0 < next_level(w))) {
                continue;
            }
            dist[w] = 0.0;
            touched.push_back(w);
            pq.emplace(0.0, w);
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (done[u] || d != dist[u]) {
                    continue;
                }
                done[u] = 1;
                b.bunch[u].emplace(w, d);
                for (const auto& [v, wt] : g.neighbors(u)) {
                    Weight nd = d + wt;
                    if (done[v] || !(nd < dist[v]) || !(nd < next_level(v))) {
                        continue;
                    }
                    if (dist[v] == kInfinity) {
                        touched.push_back(v);
                    }
                    dist[v] = nd;
                    pq.emplace(nd, v);
                }
            }
            for (NodeId t : touched) {
                dist[t] = kInfinity;
                done[t] = 0;
            }
            touched.clear();
        }
    }
    return b;
}

}  // namespace vlo
