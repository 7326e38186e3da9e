#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlo/graph.hpp"
#include "vlo/graph_io.hpp"
#include "vlo/levels.hpp"

namespace vlo {

enum class GeneratorKind { gnm, grid, path, file };
enum class WeightKind { unit, uniform };
enum class LabelKind { uniform, clustered };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::path;
    std::size_t n = 0;       // gnm, path
    std::size_t m = 0;       // gnm
    std::size_t width = 0;   // grid
    std::size_t height = 0;  // grid
    std::string path;        // file
};

// Uniform weights are drawn from [lo, hi) and snapped to multiples of 2^-16,
// so path sums stay exact in double precision regardless of summation order.
struct WeightModel {
    WeightKind kind = WeightKind::unit;
    double lo = 1.0;
    double hi = 1.0;
};

struct LabelModel {
    LabelKind kind = LabelKind::uniform;
    std::size_t ell = 1;
    std::size_t patch = 1;  // clustered: nodes per BFS patch
};

struct ExperimentConfig {
    GeneratorSpec generator;
    WeightModel weights;
    LabelModel labels;
    std::size_t k = 2;
    double eps = 0.5;
    std::vector<std::uint64_t> seeds{0};
    bool weighted_spanner = false;

    void validate() const;
};

inline constexpr double kWeightQuantum = 0x1.0p-16;

Graph gnm_graph(std::size_t n, std::size_t m, const WeightModel& weights, Rng& rng);
Graph grid_graph(std::size_t width, std::size_t height, const WeightModel& weights, Rng& rng);
Graph path_graph(std::size_t n, const WeightModel& weights, Rng& rng);

// Redraws until every one of the ell classes is non-empty.
LabelAssignment uniform_labels(std::size_t n, std::size_t ell, Rng& rng);
// BFS patches of `patch` nodes sharing a random label; redrawn like uniform_labels.
LabelAssignment clustered_labels(const Graph& g, std::size_t ell, std::size_t patch, Rng& rng);

// Deterministic in (config, seed). File inputs are returned as stored.
LabeledGraph generate(const ExperimentConfig& config, std::uint64_t seed);

}  // namespace vlo
