// End-to-end experiment driver: configuration, the per-predicate
// split/train/evaluate/analyze pipeline, artifact writing, and the summary
// report over a finished run's artifacts.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kglp/evaluation.hpp"
#include "kglp/model.hpp"

namespace kglp {

struct ExperimentConfig {
    std::string input_path;
    std::string output_dir;
    std::vector<std::string> predicates;  // empty means all predicates in the input
    std::vector<Method> methods = {Method::bpr, Method::mf, Method::most_popular,
                                   Method::random};
    HyperParams hp;                 // repeats live in repeat_count, seed in `seed`
    std::uint32_t repeat_count = 5;
    std::uint64_t seed = 1;
    std::uint32_t workers = 0;  // 0 = hardware concurrency

    void validate() const;
};

// Parses the documented key=value config format ('#' comments, blank lines
// ignored). Unknown keys are errors.
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig load_config(const std::string& path);

// Applies one "key=value" assignment, as used for CLI overrides.
void apply_config_entry(ExperimentConfig& cfg, std::string_view key,
                        std::string_view value);

// Resolved-config serialization: every field explicit, fixed key order.
// parse_config_text(serialize_config(cfg)) reproduces cfg.
std::string serialize_config(const ExperimentConfig& cfg);

struct RunOutcome {
    // 0 all predicates succeeded, 1 all failed, 3 some failed.
    int exit_code = 0;
    std::vector<std::string> completed;  // predicate labels
    std::vector<std::string> failures;   // "predicate: message" lines
};

// Runs the full pipeline and writes artifacts into cfg.output_dir:
//   results.csv            per (predicate, method, repeat) metrics + means
//   topology.csv           per-predicate topology profile
//   regression_<m>.csv     3x3 topology-vs-performance grid per method
//   scatter_<m>_<x>_<y>.csv  per-predicate points behind each grid cell
//   config.resolved        the fully expanded configuration
//   manifest.txt           seed, content hashes, versions, wall times
//   failures.txt           only when some predicate failed
// CSV artifact bytes depend only on (input, config, seed). (predicate,
// method) cells run in parallel across cfg.workers threads; results are
// merged in deterministic order.
RunOutcome run_experiment(const ExperimentConfig& cfg);

// Renders the method-by-metric mean table per predicate plus the regression
// grids, from a finished run's artifacts. Throws InputError naming any
// missing file. Means are recomputed from per-repeat rows and checked
// against the stored mean rows.
std::string report_summary(const std::string& output_dir);

}  // namespace kglp
