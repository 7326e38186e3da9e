#pragma once

// Verification drivers: run an oracle or spanner against the exact table and
// summarize the observed stretch in a machine-readable report.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "vlo/graph.hpp"

namespace vlo {

struct QueryRecord {
    NodeId v;
    LabelId label;
    Weight exact;
    Weight answer;
    double ratio;
};

struct VerifyReport {
    std::string mode;
    double bound = 1.0;
    std::size_t checked = 0;
    std::size_t unreachable = 0;
    std::size_t violations = 0;
    double max_ratio = 1.0;
    double mean_ratio = 1.0;
    bool sampled = false;
    bool pass = false;
    double wall_seconds = 0.0;
    std::vector<QueryRecord> records;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

// Exhaustive (v, l) checking is capped at this many pairs; larger instances
// check kSampledPairs seeded random pairs and set `sampled`.
inline constexpr std::size_t kExhaustivePairCap = 1'000'000;
inline constexpr std::size_t kSampledPairs = 100'000;

struct ScriptOp {
    enum class Kind { update, query };
    Kind kind;
    NodeId v;
    LabelId label;
};

std::vector<ScriptOp> parse_script(std::istream& in);
// Alternating-ish mix: each op is an update with probability update_share.
std::vector<ScriptOp> random_script(std::size_t n, std::size_t ell, std::size_t count, double update_share,
                                    std::uint64_t seed);

VerifyReport verify_static(const Graph& g, const LabelAssignment& labels, std::size_t k, std::uint64_t seed,
                           bool keep_records = false);

// Re-verifies every pair after each update against a rebuilt exact table and
// checks the mutated oracle against one rebuilt on the same levels.
VerifyReport verify_dynamic(const Graph& g, const LabelAssignment& labels, std::size_t k, std::uint64_t seed,
                            const std::vector<ScriptOp>& script, bool keep_records = false);

VerifyReport verify_spanner(const Graph& g, const LabelAssignment& labels, std::size_t k, double eps, bool weighted,
                            bool keep_records = false);

// Stable key order; wall time only when requested so reports stay
// byte-identical across runs.
nlohmann::ordered_json report_json(const VerifyReport& r, bool with_records = false, bool with_timing = false);

// JSON has no infinity: +inf is written as the string "inf".
nlohmann::ordered_json json_weight(Weight w);

}  // namespace vlo
