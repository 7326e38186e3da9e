#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "vlo/exact_oracle.hpp"
#include "vlo/graph.hpp"
#include "vlo/levels.hpp"

namespace vlo {

struct StaticOracleStats {
    std::size_t pivot_entries = 0;
    std::size_t bunch_entries = 0;
    std::size_t label_bunch_entries = 0;
    std::size_t top_table_entries = 0;

    std::size_t total() const { return pivot_entries + bunch_entries + label_bunch_entries + top_table_entries; }
};

// Compact vertex-label oracle: truncated bunches over levels 0..k-2, label
// bunches B(l) = ∪_{v ∈ V_l} B(v) holding exact dist(x, l), and a full label
// table for the top level A_{k-1}. Answers lie in [dist(v,l), (4k-3)·dist(v,l)].
class StaticOracle {
  public:
    StaticOracle() = default;

    // Samples with p = l^{-1/k}.
    static StaticOracle build(const Graph& g, const LabelAssignment& labels, std::size_t k, std::uint64_t seed);
    // Same, on given levels and with an already computed exact table.
    static StaticOracle build(const Graph& g, const LabelAssignment& labels, LevelSampling sampling,
                              const ExactLabelTable& exact);

    Weight query(NodeId v, LabelId l) const;

    std::size_t k() const { return sampling_.k; }
    std::size_t node_count() const { return label_of_.size(); }
    std::size_t label_count() const { return label_bunch_.size(); }
    const LevelSampling& sampling() const { return sampling_; }
    const BunchSet& bunches() const { return bunches_; }
    const std::unordered_map<NodeId, Weight>& label_bunch(LabelId l) const { return label_bunch_[l]; }
    // Row of dist(v, ·) for v in A_{k-1}; nullptr otherwise.
    const std::vector<Weight>* top_row(NodeId v) const;
    StaticOracleStats stats() const;

    // Versioned text dump: header, labels, levels, pivots, then sorted bunch,
    // label-bunch and top-table triples.
    void dump(std::ostream& out) const;
    static StaticOracle load(std::istream& in);

  private:
    LevelSampling sampling_;
    BunchSet bunches_;
    std::vector<LabelId> label_of_;
    std::vector<std::unordered_map<NodeId, Weight>> label_bunch_;
    std::unordered_map<NodeId, std::vector<Weight>> top_table_;
};

inline constexpr int kStaticDumpVersion = 1;

StaticOracle build_static_oracle(const Graph& g, const LabelAssignment& labels, std::size_t k, std::uint64_t seed);

// l^{-1/k}
double static_sampling_probability(std::size_t label_count, std::size_t k);

}  // namespace vlo
