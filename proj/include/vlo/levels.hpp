#pragma once

// Sampled level hierarchy A_0 = V ⊇ A_1 ⊇ ... ⊇ A_{k-1}, pivots and bunches.

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "vlo/graph.hpp"

namespace vlo {

// Deterministic stream of doubles in [0, 1) on top of mt19937_64, so sampled
// sets depend only on the seed, not on the standard library's distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);
    double uniform();
    std::uint64_t next();
    // Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

  private:
    std::mt19937_64 engine_;
};

struct LevelSampling {
    std::size_t k = 1;
    double p = 1.0;
    std::uint64_t seed = 0;
    // levels[i] is A_i, sorted; level_of[v] is the largest i with v in A_i.
    std::vector<std::vector<NodeId>> levels;
    std::vector<std::uint32_t> level_of;

    bool in_level(NodeId v, std::size_t i) const { return level_of[v] >= i; }

    // Rebuilds level_of from explicit nested sets; throws if they are not nested.
    static LevelSampling from_levels(std::size_t n, std::vector<std::vector<NodeId>> levels, double p,
                                     std::uint64_t seed);
};

inline constexpr int kSamplingRetries = 32;

// Each A_i keeps every node of A_{i-1} independently with probability p.
// Resamples with derived seeds while A_{k-1} is empty.
LevelSampling sample_levels(std::size_t n, std::size_t k, double p, std::uint64_t seed);

struct Pivot {
    NodeId node = kNoNode;
    Weight dist = kInfinity;
};

struct BunchSet {
    std::size_t pivot_levels = 0;
    std::size_t bunch_levels = 0;
    std::vector<Pivot> pivots;  // pivots[v * pivot_levels + i] = p_i(v)
    std::vector<std::unordered_map<NodeId, Weight>> bunch;

    const Pivot& pivot(NodeId v, std::size_t i) const { return pivots[v * pivot_levels + i]; }
    std::size_t total_bunch_size() const;
    std::size_t max_bunch_size() const;
};

// Pivots for every level, and B(v) over levels 0..bunch_levels-1:
//   u ∈ B(v) at level i  iff  u ∈ A_i \ A_{i+1} and dist(v,u) < dist(v, A_{i+1}),
// with dist(v, A_k) = +inf. The static oracle uses bunch_levels = k-1, the
// dynamic one bunch_levels = k.
BunchSet build_bunches(const Graph& g, const LevelSampling& s, std::size_t bunch_levels);

}  // namespace vlo
