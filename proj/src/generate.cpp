#include "vlo/generate.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_set>

namespace vlo {

namespace {

constexpr int kLabelRedraws = 10000;

Weight draw_weight(const WeightModel& wm, Rng& rng) {
    if (wm.kind == WeightKind::unit) {
        return 1.0;
    }
    double span = wm.hi - wm.lo;
    double steps = std::floor(span * rng.uniform() / kWeightQuantum);
    return wm.lo + steps * kWeightQuantum;
}

bool all_classes_used(const std::vector<LabelId>& label_of, std::size_t ell) {
    std::vector<std::uint8_t> seen(ell, 0);
    std::size_t count = 0;
    for (LabelId l : label_of) {
        if (!seen[l]) {
            seen[l] = 1;
            ++count;
        }
    }
    return count == ell;
}

void check_ell(std::size_t n, std::size_t ell) {
    if (ell < 1) {
        throw Error("need at least one label");
    }
    if (ell > n) {
        throw Error("more labels than nodes");
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    const auto& gen = generator;
    switch (gen.kind) {
        case GeneratorKind::gnm:
            if (gen.n >= 2 && gen.m > gen.n * (gen.n - 1) / 2) {
                throw Error("gnm: m exceeds n(n-1)/2");
            }
            break;
        case GeneratorKind::grid:
            if (gen.width == 0 || gen.height == 0) {
                throw Error("grid: empty dimensions");
            }
            break;
        case GeneratorKind::path:
        case GeneratorKind::file:
            break;
    }
    if (weights.kind == WeightKind::uniform) {
        if (!(weights.lo <= weights.hi) || weights.lo < 0.0) {
            throw Error("uniform weights need 0 <= lo <= hi");
        }
        if (weighted_spanner && weights.lo < 1.0) {
            throw Error("weighted spanners need lo >= 1");
        }
    }
    if (labels.ell < 1) {
        throw Error("need at least one label");
    }
    if (labels.kind == LabelKind::clustered && labels.patch < 1) {
        throw Error("patch size must be positive");
    }
    if (k < 1) {
        throw Error("k must be >= 1");
    }
}

Graph gnm_graph(std::size_t n, std::size_t m, const WeightModel& weights, Rng& rng) {
    const std::size_t max_edges = n < 2 ? 0 : n * (n - 1) / 2;
    if (m > max_edges) {
        throw Error("gnm: m exceeds n(n-1)/2");
    }
    Graph g(n);
    if (m == 0) {
        return g;
    }
    std::vector<std::pair<NodeId, NodeId>> chosen;
    chosen.reserve(m);
    if (m * 2 <= max_edges) {
        std::unordered_set<std::uint64_t> seen;
        while (chosen.size() < m) {
            auto u = static_cast<NodeId>(rng.below(n));
            auto v = static_cast<NodeId>(rng.below(n));
            if (u == v) {
                continue;
            }
            if (u > v) {
                std::swap(u, v);
            }
            if (seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second) {
                chosen.emplace_back(u, v);
            }
        }
    } else {
        // Dense: partial Fisher-Yates over all pairs.
        std::vector<std::pair<NodeId, NodeId>> all;
        all.reserve(max_edges);
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = u + 1; v < n; ++v) {
                all.emplace_back(u, v);
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t j = i + rng.below(all.size() - i);
            std::swap(all[i], all[j]);
            chosen.push_back(all[i]);
        }
    }
    for (auto [u, v] : chosen) {
        g.add_edge(u, v, draw_weight(weights, rng));
    }
    return g;
}

Graph grid_graph(std::size_t width, std::size_t height, const WeightModel& weights, Rng& rng) {
    Graph g(width * height);
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            auto id = static_cast<NodeId>(r * width + c);
            if (c + 1 < width) {
                g.add_edge(id, id + 1, draw_weight(weights, rng));
            }
            if (r + 1 < height) {
                g.add_edge(id, static_cast<NodeId>(id + width), draw_weight(weights, rng));
            }
        }
    }
    return g;
}

Graph path_graph(std::size_t n, const WeightModel& weights, Rng& rng) {
    Graph g(n);
    for (NodeId v = 0; v + 1 < n; ++v) {
        g.add_edge(v, v + 1, draw_weight(weights, rng));
    }
    return g;
}

LabelAssignment uniform_labels(std::size_t n, std::size_t ell, Rng& rng) {
    check_ell(n, ell);
    std::vector<LabelId> label_of(n);
    for (int attempt = 0; attempt < kLabelRedraws; ++attempt) {
        for (auto& l : label_of) {
            l = static_cast<LabelId>(rng.below(ell));
        }
        if (all_classes_used(label_of, ell)) {
            return LabelAssignment(std::move(label_of), ell);
        }
    }
    throw Error("could not draw a labeling using every label");
}

LabelAssignment clustered_labels(const Graph& g, std::size_t ell, std::size_t patch, Rng& rng) {
    const std::size_t n = g.node_count();
    check_ell(n, ell);
    constexpr LabelId unset = std::numeric_limits<LabelId>::max();
    std::vector<LabelId> label_of(n);
    for (int attempt = 0; attempt < kLabelRedraws; ++attempt) {
        std::fill(label_of.begin(), label_of.end(), unset);
        std::size_t remaining = n;
        while (remaining > 0) {
            // Seed a patch at a uniformly random unlabeled node.
            std::size_t skip = rng.below(remaining);
            NodeId seed = 0;
            for (NodeId v = 0; v < n; ++v) {
                if (label_of[v] == unset && skip-- == 0) {
                    seed = v;
                    break;
                }
            }
            auto lab = static_cast<LabelId>(rng.below(ell));
            std::queue<NodeId> frontier;
            frontier.push(seed);
            label_of[seed] = lab;
            --remaining;
            std::size_t size = 1;
            while (!frontier.empty() && size < patch) {
                NodeId u = frontier.front();
                frontier.pop();
                for (const auto& nb : g.neighbors(u)) {
                    if (size >= patch) {
                        break;
                    }
                    if (label_of[nb.node] == unset) {
                        label_of[nb.node] = lab;
                        --remaining;
                        ++size;
                        frontier.push(nb.node);
                    }
                }
            }
        }
        if (all_classes_used(label_of, ell)) {
            return LabelAssignment(std::move(label_of), ell);
        }
    }
    throw Error("could not draw a labeling using every label");
}

LabeledGraph generate(const ExperimentConfig& config, std::uint64_t seed) {
    config.validate();
    const auto& gen = config.generator;
    if (gen.kind == GeneratorKind::file) {
        return read_labeled_graph_file(gen.path);
    }
    Rng rng(seed);
    Graph g;
    switch (gen.kind) {
        case GeneratorKind::gnm:
            g = gnm_graph(gen.n, gen.m, config.weights, rng);
            break;
        case GeneratorKind::grid:
            g = grid_graph(gen.width, gen.height, config.weights, rng);
            break;
        case GeneratorKind::path:
            g = path_graph(gen.n, config.weights, rng);
            break;
        case GeneratorKind::file:
            break;
    }
    LabelAssignment labels = config.labels.kind == LabelKind::uniform
                                 ? uniform_labels(g.node_count(), config.labels.ell, rng)
                                 : clustered_labels(g, config.labels.ell, config.labels.patch, rng);
    return LabeledGraph{std::move(g), std::move(labels)};
}

}  // namespace vlo
