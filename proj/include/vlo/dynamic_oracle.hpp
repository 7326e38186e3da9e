#pragma once

#include <cstdint>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vlo/graph.hpp"
#include "vlo/levels.hpp"

namespace vlo {

// Heap(v, l): the l-labeled nodes x whose bunch contains v, keyed by dist(v, x).
// Ordered set, so minimum() breaks key ties by smaller node id.
class LabelHeap {
  public:
    void insert(NodeId x, Weight key) { entries_.emplace(key, x); }
    bool erase(NodeId x, Weight key) { return entries_.erase({key, x}) > 0; }
    // (key, node); undefined on an empty heap.
    std::pair<Weight, NodeId> minimum() const { return *entries_.begin(); }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::set<std::pair<Weight, NodeId>>& entries() const { return entries_; }

  private:
    std::set<std::pair<Weight, NodeId>> entries_;
};

struct UpdateCounters {
    std::size_t heap_removes = 0;
    std::size_t heap_inserts = 0;
    std::size_t heaps_created = 0;
    std::size_t heaps_deleted = 0;
};

struct HeapRecord {
    LabelId label;
    NodeId owner;  // v of Heap(v, label)
    NodeId member;
    Weight key;

    friend auto operator<=>(const HeapRecord&, const HeapRecord&) = default;
};

// Label-dynamic oracle: full bunches over all k levels with
// p = (n / ln n)^{-1/k}, and per-label maps from x ∈ B(l) to Heap(x, l).
// Only the heaps change on update_label.
class DynamicOracle {
  public:
    DynamicOracle() = default;

    static DynamicOracle build(const Graph& g, const LabelAssignment& labels, std::size_t k, std::uint64_t seed);
    static DynamicOracle build(const Graph& g, const LabelAssignment& labels, LevelSampling sampling);

    // Moves v between heaps; touches exactly |B(v)| remove/insert pairs.
    void update_label(NodeId v, LabelId l);

    // Minimum over all levels 0..k-1 of dist(v, p_i(v)) + Heap(p_i(v), l).minimum().
    Weight query(NodeId v, LabelId l) const { return query_with_witness(v, l).first; }
    std::pair<Weight, NodeId> query_with_witness(NodeId v, LabelId l) const;

    std::size_t k() const { return sampling_.k; }
    std::size_t node_count() const { return labels_.node_count(); }
    std::size_t label_count() const { return labels_.label_count(); }
    const LevelSampling& sampling() const { return sampling_; }
    const BunchSet& bunches() const { return bunches_; }
    const LabelAssignment& labels() const { return labels_; }
    const LabelHeap* heap(NodeId v, LabelId l) const;
    // Keys of label_index for l, i.e. B(l).
    std::vector<NodeId> label_bunch(LabelId l) const;

    // Canonical sorted listing of every heap entry.
    std::vector<HeapRecord> heap_snapshot() const;
    std::size_t heap_entry_count() const;
    std::size_t stored_entries() const;

    const UpdateCounters& last_update() const { return last_update_; }
    const UpdateCounters& total_updates() const { return total_updates_; }

  private:
    LevelSampling sampling_;
    BunchSet bunches_;
    LabelAssignment labels_;
    std::vector<std::unordered_map<NodeId, LabelHeap>> label_index_;
    UpdateCounters last_update_;
    UpdateCounters total_updates_;
};

// (n / ln n)^{-1/k}, n >= 2.
double dynamic_sampling_probability(std::size_t n, std::size_t k);

DynamicOracle build_dynamic(const Graph& g, const LabelAssignment& labels, std::size_t k, std::uint64_t seed);

}  // namespace vlo
