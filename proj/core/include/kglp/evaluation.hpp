// Leave-one-out evaluation protocol and ranking metrics.
//
// For each repeat, one held-out object is chosen uniformly per eligible
// subject (subjects with degree >= 2; degree-1 subjects always stay in
// training and are never tested). Metrics:
//   hit rate   fraction of tested subjects whose held-out object appears in
//              the top-n list
//   arhr       mean reciprocal rank credited only within the top-n list
//   auc        exact pairwise enumeration per subject over (held-out
//              positive, never-linked negative) pairs; ties score zero
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kglp/bpr.hpp"
#include "kglp/kg.hpp"

namespace kglp {

// One train/test split of a predicate graph. test_object[s] holds the
// held-out object for subject s, or empty when s is not tested.
struct RepeatSplit {
    TrainAdjacency train;
    std::vector<std::optional<std::uint32_t>> test_object;
    std::size_t num_tested = 0;
};

// Builds the split for one repeat. Deterministic given the seed.
RepeatSplit make_repeat_split(const PredicateBipartiteGraph& g, std::uint64_t seed);

// All repeats of the protocol; repeat r uses derive_seed(seed, r). The same
// SplitSpec is shared by every method so they face identical test edges.
struct SplitSpec {
    std::uint32_t repeat_count = 5;
    std::uint64_t seed = 0;
    std::vector<RepeatSplit> repeats;
};

SplitSpec make_split(const PredicateBipartiteGraph& g, std::uint32_t repeat_count,
                     std::uint64_t seed);

// A ranking method under evaluation: returns top-n object ids for a subject,
// best first, never including ids from `exclude` (sorted ascending).
using Ranker = std::function<std::vector<std::uint32_t>(
    std::uint32_t subject, std::span<const std::uint32_t> exclude, std::size_t top_n)>;

// A scoring method for AUC: higher means more plausible.
using Scorer = std::function<double(std::uint32_t subject, std::uint32_t object)>;

// Metrics for one method on one split.
struct EvalResult {
    double hit_rate = 0.0;
    double arhr = 0.0;
    double auc = 0.0;
    std::size_t subjects_tested = 0;       // denominator for hit_rate / arhr
    std::size_t subjects_auc = 0;          // subjects with at least one negative pair
    std::size_t subjects_auc_skipped = 0;  // tested subjects with no negative pair
};

// Top-n hit rate and reciprocal-rank accumulation for one subject's list.
// Returns the 1-based rank of `target` in `ranked`, or 0 when absent.
std::size_t rank_in_list(std::span<const std::uint32_t> ranked, std::uint32_t target);

// Runs the full protocol for one method on one split. The exclusion list
// passed to the ranker is the subject's training adjacency row. AUC pairs a
// subject's held-out object against every object that is neither in its
// training row nor the held-out object itself.
EvalResult evaluate(const RepeatSplit& split, const Ranker& ranker,
                    const Scorer& scorer, std::size_t top_n);

// The methods under comparison.
enum class Method { bpr, mf, most_popular, random };

// Short stable names used in CSV rows and CLI arguments:
// "bpr", "mf", "mp", "random".
std::string_view method_name(Method m);
Method parse_method(std::string_view name);

// Per-repeat metrics plus their mean for one (predicate, method) cell.
struct EvalSummary {
    std::vector<EvalResult> per_repeat;
    EvalResult mean;
};

// Trains (where the method requires it) and evaluates one method over every
// repeat of the split. Per-repeat training and ranking seeds derive from
// method_seed, so methods never share random streams.
EvalSummary evaluate_method(Method method, const SplitSpec& splits,
                            const HyperParams& hp, std::uint64_t method_seed);

// Named metric row as written to results tables.
struct MetricRow {
    std::string predicate;
    std::string method;
    std::string repeat;  // repeat index, or "mean"
    EvalResult metrics;
};

std::vector<MetricRow> summary_rows(const std::string& predicate, Method method,
                                    const EvalSummary& summary);

// results.csv payload: header plus one row per (predicate, method, repeat)
// and mean rows with repeat column "mean". Preserves row order.
std::string metrics_csv(const std::vector<MetricRow>& rows);

// Inverse of metrics_csv for the columns it stores (AUC-skip counters are
// not serialized and read back as zero).
std::vector<MetricRow> read_metrics_csv_text(std::string_view text);

}  // namespace kglp
