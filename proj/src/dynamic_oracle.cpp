#include "vlo/dynamic_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace vlo {

double dynamic_sampling_probability(std::size_t n, std::size_t k) {
    if (n < 2 || k < 1) {
        throw Error("need n >= 2 and k >= 1");
    }
    double nn = static_cast<double>(n);
    return std::pow(nn / std::log(nn), -1.0 / static_cast<double>(k));
}

DynamicOracle DynamicOracle::build(const Graph& g, const LabelAssignment& labels, std::size_t k, std::uint64_t seed) {
    double p = dynamic_sampling_probability(g.node_count(), k);
    return build(g, labels, sample_levels(g.node_count(), k, p, seed));
}

DynamicOracle DynamicOracle::build(const Graph& g, const LabelAssignment& labels, LevelSampling sampling) {
    if (labels.node_count() != g.node_count()) {
        throw Error("labeling does not match graph");
    }
    if (g.node_count() < 2) {
        throw Error("need n >= 2");
    }
    DynamicOracle o;
    o.bunches_ = build_bunches(g, sampling, sampling.k);
    o.sampling_ = std::move(sampling);
    o.labels_ = labels;
    o.label_index_.assign(labels.label_count(), {});
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto& index = o.label_index_[labels.label(v)];
        for (const auto& [x, d] : o.bunches_.bunch[v]) {
            index[x].insert(v, d);
        }
    }
    return o;
}

void DynamicOracle::update_label(NodeId v, LabelId l) {
    if (v >= node_count() || l >= label_count()) {
        throw Error("update out of range");
    }
    last_update_ = UpdateCounters{};
    const LabelId old = labels_.label(v);
    if (old == l) {
        return;
    }
    auto& from = label_index_[old];
    auto& to = label_index_[l];
    for (const auto& [x, d] : bunches_.bunch[v]) {
        auto it = from.find(x);
        if (it == from.end() || !it->second.erase(v, d)) {
            throw Error("label index out of sync");
        }
        ++last_update_.heap_removes;
        if (it->second.empty()) {
            from.erase(it);
            ++last_update_.heaps_deleted;
        }
        auto [slot, created] = to.try_emplace(x);
        slot->second.insert(v, d);
        ++last_update_.heap_inserts;
        if (created) {
            ++last_update_.heaps_created;
        }
    }
    labels_.relabel(v, l);
    total_updates_.heap_removes += last_update_.heap_removes;
    total_updates_.heap_inserts += last_update_.heap_inserts;
    total_updates_.heaps_created += last_update_.heaps_created;
    total_updates_.heaps_deleted += last_update_.heaps_deleted;
}

std::pair<Weight, NodeId> DynamicOracle::query_with_witness(NodeId v, LabelId l) const {
    if (v >= node_count() || l >= label_count()) {
        throw Error("query out of range");
    }
    std::pair<Weight, NodeId> best{kInfinity, kNoNode};
    const auto& index = label_index_[l];
    for (std::size_t i = 0; i < sampling_.k; ++i) {
        const Pivot& p = bunches_.pivot(v, i);
        if (p.node == kNoNode) {
            continue;
        }
        auto it = index.find(p.node);
        if (it == index.end()) {
            continue;
        }
        auto [key, w] = it->second.minimum();
        std::pair<Weight, NodeId> cand{p.dist + key, w};
        if (cand < best) {
            best = cand;
        }
    }
    return best;
}

const LabelHeap* DynamicOracle::heap(NodeId v, LabelId l) const {
    if (l >= label_count()) {
        return nullptr;
    }
    auto it = label_index_[l].find(v);
    return it == label_index_[l].end() ? nullptr : &it->second;
}

std::vector<NodeId> DynamicOracle::label_bunch(LabelId l) const {
    std::vector<NodeId> out;
    for (const auto& [x, h] : label_index_.at(l)) {
        out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<HeapRecord> DynamicOracle::heap_snapshot() const {
    std::vector<HeapRecord> out;
    for (LabelId l = 0; l < label_index_.size(); ++l) {
        for (const auto& [x, h] : label_index_[l]) {
            for (const auto& [key, member] : h.entries()) {
                out.push_back(HeapRecord{l, x, member, key});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t DynamicOracle::heap_entry_count() const {
    std::size_t total = 0;
    for (const auto& index : label_index_) {
        for (const auto& [x, h] : index) {
            total += h.size();
        }
    }
    return total;
}

std::size_t DynamicOracle::stored_entries() const {
    return bunches_.pivots.size() + bunches_.total_bunch_size() + heap_entry_count();
}

DynamicOracle build_dynamic(const Graph& g, const LabelAssignment& labels, std::size_t k, std::uint64_t seed) {
    return DynamicOracle::build(g, labels, k, seed);
}

}  // namespace vlo
