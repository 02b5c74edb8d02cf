#include "kglp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <thread>

#include "kglp/kg.hpp"
#include "kglp/rng.hpp"
#include "kglp/topology.hpp"
#include "kglp/util.hpp"

namespace kglp {
namespace fs = std::filesystem;

namespace {

std::uint64_t parse_u64_value(std::string_view key, std::string_view value) {
    const std::string s{trim(value)};
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || s[0] == '-' || errno != 0 || end != s.c_str() + s.size()) {
        throw ConfigError("config: key '" + std::string(key) +
                          "' expects an unsigned integer, got '" + s + "'");
    }
    return v;
}

int parse_int_value(std::string_view key, std::string_view value) {
    const std::uint64_t v = parse_u64_value(key, value);
    if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
        throw ConfigError("config: key '" + std::string(key) + "' value out of range");
    }
    return static_cast<int>(v);
}

double parse_double_value(std::string_view key, std::string_view value) {
    const std::string s{trim(value)};
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || errno != 0 || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw ConfigError("config: key '" + std::string(key) +
                          "' expects a finite number, got '" + s + "'");
    }
    return v;
}

void parallel_for(std::size_t count, std::uint32_t workers,
                  const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    const std::size_t nthreads = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
    if (nthreads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (std::thread& t : pool) t.join();
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (input_path.empty()) throw ConfigError("config: input is required");
    if (output_dir.empty()) throw ConfigError("config: output_dir is required");
    if (methods.empty()) throw ConfigError("config: methods must be non-empty");
    std::set<Method> uniq(methods.begin(), methods.end());
    if (uniq.size() != methods.size()) throw ConfigError("config: duplicate method listed");
    if (repeat_count == 0) throw ConfigError("config: repeats must be >= 1");
    for (const std::string& p : predicates) {
        if (p.empty()) throw ConfigError("config: empty predicate label");
    }
    hp.validate();
}

void apply_config_entry(ExperimentConfig& cfg, std::string_view key,
                        std::string_view value) {
    const std::string_view k = trim(key);
    const std::string_view v = trim(value);
    if (k == "input") {
        cfg.input_path = std::string(v);
    } else if (k == "output_dir") {
        cfg.output_dir = std::string(v);
    } else if (k == "predicates") {
        cfg.predicates.clear();
        if (v != "all") {
            for (std::string_view part : split(v, ',')) {
                const std::string_view p = trim(part);
                if (p.empty()) {
                    throw ConfigError("config: empty entry in predicates list");
                }
                cfg.predicates.emplace_back(p);
            }
            if (cfg.predicates.empty()) {
                throw ConfigError("config: predicates must be 'all' or a non-empty list");
            }
        }
    } else if (k == "methods") {
        cfg.methods.clear();
        for (std::string_view part : split(v, ',')) {
            cfg.methods.push_back(parse_method(trim(part)));
        }
    } else if (k == "latent_dim") {
        cfg.hp.latent_dim = parse_int_value(k, v);
    } else if (k == "learning_rate") {
        cfg.hp.learning_rate = parse_double_value(k, v);
    } else if (k == "lambda") {
        const double l = parse_double_value(k, v);
        cfg.hp.lambda_subject = l;
        cfg.hp.lambda_object_pos = l;
        cfg.hp.lambda_object_neg = l;
    } else if (k == "lambda_subject") {
        cfg.hp.lambda_subject = parse_double_value(k, v);
    } else if (k == "lambda_object_pos") {
        cfg.hp.lambda_object_pos = parse_double_value(k, v);
    } else if (k == "lambda_object_neg") {
        cfg.hp.lambda_object_neg = parse_double_value(k, v);
    } else if (k == "epochs") {
        cfg.hp.epochs = parse_int_value(k, v);
    } else if (k == "top_n") {
        cfg.hp.top_n = parse_int_value(k, v);
    } else if (k == "repeats") {
        cfg.repeat_count = static_cast<std::uint32_t>(parse_u64_value(k, v));
    } else if (k == "seed") {
        cfg.seed = parse_u64_value(k, v);
    } else if (k == "workers") {
        cfg.workers = static_cast<std::uint32_t>(parse_u64_value(k, v));
    } else {
        throw ConfigError("config: unknown key '" + std::string(k) + "'");
    }
}

ExperimentConfig parse_config_text(std::string_view text) {
    ExperimentConfig cfg;
    std::size_t lineno = 0;
    for (std::string_view line : split(text, '\n')) {
        ++lineno;
        const std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key=value, got '" + std::string(t) + "'");
        }
        apply_config_entry(cfg, t.substr(0, eq), t.substr(eq + 1));
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    return parse_config_text(read_file(path));
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::string out;
    auto kv = [&out](std::string_view key, std::string_view value) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    };
    kv("input", cfg.input_path);
    kv("output_dir", cfg.output_dir);
    if (cfg.predicates.empty()) {
        kv("predicates", "all");
    } else {
        std::string joined;
        for (const std::string& p : cfg.predicates) {
            if (!joined.empty()) joined += ',';
            joined += p;
        }
        kv("predicates", joined);
    }
    std::string methods;
    for (Method m : cfg.methods) {
        if (!methods.empty()) methods += ',';
        methods += method_name(m);
    }
    kv("methods", methods);
    kv("latent_dim", std::to_string(cfg.hp.latent_dim));
    kv("learning_rate", format_double(cfg.hp.learning_rate));
    kv("lambda_subject", format_double(cfg.hp.lambda_subject));
    kv("lambda_object_pos", format_double(cfg.hp.lambda_object_pos));
    kv("lambda_object_neg", format_double(cfg.hp.lambda_object_neg));
    kv("epochs", std::to_string(cfg.hp.epochs));
    kv("top_n", std::to_string(cfg.hp.top_n));
    kv("repeats", std::to_string(cfg.repeat_count));
    kv("seed", std::to_string(cfg.seed));
    kv("workers", std::to_string(cfg.workers));
    return out;
}

RunOutcome run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    using clock = std::chrono::steady_clock;
    const auto run_start = clock::now();
    auto ms_since = [](clock::time_point from) {
        return std::chrono::duration<double, std::milli>(clock::now() - from).count();
    };

    const std::string input_text = read_file(cfg.input_path);
    ParseStats stats;
    const KnowledgeGraph kg = parse_triples_text(input_text, &stats);

    std::vector<std::string> predicates = cfg.predicates;
    if (predicates.empty()) predicates = kg.predicates();

    struct Cell {
        EvalSummary summary;
        std::string error;
        double wall_ms = 0.0;
    };
    struct Job {
        std::string predicate;
        PredicateBipartiteGraph graph;
        SplitSpec splits;
        TopologyProfile profile;
        std::vector<Cell> cells;
        std::string error;
        double wall_ms = 0.0;

        bool ok() const {
            if (!error.empty()) return false;
            for (const Cell& c : cells) {
                if (!c.error.empty()) return false;
            }
            return true;
        }
    };

    std::vector<Job> jobs(predicates.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        jobs[i].predicate = predicates[i];
        jobs[i].cells.resize(cfg.methods.size());
    }

    const std::uint32_t workers =
        cfg.workers != 0 ? cfg.workers
                         : std::max(1u, std::thread::hardware_concurrency());

    // Stage 1: per-predicate view, topology, splits.
    parallel_for(jobs.size(), workers, [&](std::size_t i) {
        Job& job = jobs[i];
        const auto t0 = clock::now();
        try {
            job.graph = extract_bipartite(kg, job.predicate);
            job.profile = profile_topology(job.graph);
            const std::uint64_t pred_seed = derive_seed(cfg.seed, job.predicate);
            job.splits = make_split(job.graph, cfg.repeat_count, derive_seed(pred_seed, "split"));
        } catch (const std::exception& e) {
            job.error = e.what();
        }
        job.wall_ms += ms_since(t0);
    });

    // Stage 2: independent (predicate, method) cells.
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!jobs[i].error.empty()) continue;
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) cells.emplace_back(i, mi);
    }
    parallel_for(cells.size(), workers, [&](std::size_t c) {
        const auto [i, mi] = cells[c];
        Job& job = jobs[i];
        Cell& cell = job.cells[mi];
        const auto t0 = clock::now();
        try {
            const std::uint64_t pred_seed = derive_seed(cfg.seed, job.predicate);
            const std::uint64_t method_seed =
                derive_seed(pred_seed, method_name(cfg.methods[mi]));
            cell.summary = evaluate_method(cfg.methods[mi], job.splits, cfg.hp, method_seed);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
        cell.wall_ms = ms_since(t0);
    });

    // Merge in deterministic (predicate order, method order) sequence.
    RunOutcome outcome;
    std::vector<MetricRow> rows;
    std::vector<TopologyProfile> profiles;
    for (Job& job : jobs) {
        if (!job.ok()) {
            std::string reason = job.error;
            for (std::size_t mi = 0; mi < job.cells.size() && reason.empty(); ++mi) {
                if (!job.cells[mi].error.empty()) {
                    reason = std::string(method_name(cfg.methods[mi])) + ": " +
                             job.cells[mi].error;
                }
            }
            outcome.failures.push_back(job.predicate + ": " + reason);
            continue;
        }
        outcome.completed.push_back(job.predicate);
        profiles.push_back(job.profile);
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            std::vector<MetricRow> part =
                summary_rows(job.predicate, cfg.methods[mi], job.cells[mi].summary);
            rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                        std::make_move_iterator(part.end()));
        }
    }

    fs::create_directories(cfg.output_dir);
    const fs::path out_dir(cfg.output_dir);
    write_file((out_dir / "results.csv").string(), metrics_csv(rows));
    write_file((out_dir / "topology.csv").string(), topology_csv(profiles));

    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        const std::string mname{method_name(cfg.methods[mi])};
        std::vector<PerformancePoint> points;
        points.reserve(profiles.size());
        for (const Job& job : jobs) {
            if (!job.ok()) continue;
            const EvalResult& mean = job.cells[mi].summary.mean;
            points.push_back({job.predicate, mean.hit_rate, mean.arhr, mean.auc});
        }
        const TopologyCorrelation grid = correlate_topology_lenient(profiles, points);
        write_file((out_dir / ("regression_" + mname + ".csv")).string(),
                   regression_csv(grid));
        for (std::size_t xi = 0; xi < 3; ++xi) {
            for (std::size_t yi = 0; yi < 3; ++yi) {
                const std::string name = "scatter_" + mname + "_" +
                                         std::string(topology_metric_names[xi]) + "_" +
                                         std::string(performance_metric_names[yi]) + ".csv";
                write_file((out_dir / name).string(), scatter_csv(profiles, points, xi, yi));
            }
        }
    }

    ExperimentConfig resolved = cfg;
    resolved.predicates = predicates;
    const std::string config_text = serialize_config(resolved);
    write_file((out_dir / "config.resolved").string(), config_text);

    std::string manifest;
    manifest += "schema=1\n";
    manifest += "tool=kglp 0.1.0\n";
    manifest += "seed=" + std::to_string(cfg.seed) + "\n";
    manifest += "seed_tree=root -> predicate label -> {split | method name -> repeat -> purpose}\n";
    manifest += "config_hash=" + hex64(fnv1a64(config_text)) + "\n";
    manifest += "input_hash=" + hex64(fnv1a64(input_text)) + "\n";
    manifest += "input_facts=" + std::to_string(kg.size()) + "\n";
    manifest += "predicates_requested=" + std::to_string(predicates.size()) + "\n";
    manifest += "predicates_completed=" + std::to_string(outcome.completed.size()) + "\n";
    manifest += "predicates_failed=" + std::to_string(outcome.failures.size()) + "\n";
    manifest += "workers=" + std::to_string(workers) + "\n";
    for (const Job& job : jobs) {
        double total = job.wall_ms;
        for (const Cell& c : job.cells) total += c.wall_ms;
        manifest += "wall_ms." + job.predicate + "=" + format_double(total) + "\n";
    }
    manifest += "wall_ms_total=" + format_double(ms_since(run_start)) + "\n";
    write_file((out_dir / "manifest.txt").string(), manifest);

    if (!outcome.failures.empty()) {
        std::string failures;
        for (const std::string& f : outcome.failures) {
            failures += f;
            failures += '\n';
        }
        write_file((out_dir / "failures.txt").string(), failures);
    }

    outcome.exit_code = outcome.failures.empty() ? 0 : (outcome.completed.empty() ? 1 : 3);
    return outcome;
}

namespace {

struct ParsedMetricRow {
    std::string predicate;
    std::string method;
    std::string repeat;
    double hr = 0.0;
    double arhr = 0.0;
    double auc = 0.0;
    std::string subjects;
};

std::vector<ParsedMetricRow> read_results_csv(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<ParsedMetricRow> rows;
    bool header = true;
    for (std::string_view line : split(text, '\n')) {
        if (trim(line).empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> f = parse_csv_line(line);
        if (f.size() != 7) {
            throw InputError(path + ": expected 7 columns, got " +
                             std::to_string(f.size()) + " in line: " + std::string(line));
        }
        rows.push_back({f[0], f[1], f[2], std::strtod(f[3].c_str(), nullptr),
                        std::strtod(f[4].c_str(), nullptr),
                        std::strtod(f[5].c_str(), nullptr), f[6]});
    }
    return rows;
}

std::string pad(std::string_view s, std::size_t width) {
    std::string out(s);
    while (out.size() < width) out.push_back(' ');
    return out;
}

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string sig6(const std::string& field) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", std::strtod(field.c_str(), nullptr));
    return buf;
}

}  // namespace

std::string report_summary(const std::string& output_dir) {
    const fs::path dir(output_dir);
    const std::vector<ParsedMetricRow> rows = read_results_csv((dir / "results.csv").string());
    if (rows.empty()) throw InputError(output_dir + ": results.csv holds no rows");

    // Group per (predicate, method), keeping first-appearance order.
    std::vector<std::string> pred_order;
    std::vector<std::string> method_order;
    struct Agg {
        double hr = 0.0, arhr = 0.0, auc = 0.0;
        std::size_t repeats = 0;
        bool has_mean = false;
        double mean_hr = 0.0, mean_arhr = 0.0, mean_auc = 0.0;
        std::string subjects;
    };
    std::map<std::pair<std::string, std::string>, Agg> cells;
    for (const ParsedMetricRow& r : rows) {
        if (std::find(pred_order.begin(), pred_order.end(), r.predicate) == pred_order.end()) {
            pred_order.push_back(r.predicate);
        }
        if (std::find(method_order.begin(), method_order.end(), r.method) ==
            method_order.end()) {
            method_order.push_back(r.method);
        }
        Agg& agg = cells[{r.predicate, r.method}];
        if (r.repeat == "mean") {
            agg.has_mean = true;
            agg.mean_hr = r.hr;
            agg.mean_arhr = r.arhr;
            agg.mean_auc = r.auc;
            agg.subjects = r.subjects;
        } else {
            agg.hr += r.hr;
            agg.arhr += r.arhr;
            agg.auc += r.auc;
            agg.repeats += 1;
        }
    }

    std::size_t pred_width = 9;
    for (const std::string& p : pred_order) pred_width = std::max(pred_width, p.size());

    std::string out;
    out += "== mean metrics per predicate and method ==\n";
    out += pad("predicate", pred_width + 2) + pad("method", 8) + pad("hr", 10) +
           pad("arhr", 10) + pad("auc", 10) + "subjects\n";
    for (const std::string& p : pred_order) {
        for (const std::string& m : method_order) {
            auto it = cells.find({p, m});
            if (it == cells.end()) continue;
            const Agg& agg = it->second;
            if (agg.repeats == 0 || !agg.has_mean) {
                throw InputError(output_dir + ": results.csv misses repeat or mean rows for " +
                                 p + "/" + m);
            }
            const double n = static_cast<double>(agg.repeats);
            if (std::fabs(agg.hr / n - agg.mean_hr) > 1e-9 ||
                std::fabs(agg.arhr / n - agg.mean_arhr) > 1e-9 ||
                std::fabs(agg.auc / n - agg.mean_auc) > 1e-9) {
                throw InputError(output_dir + ": stored mean row disagrees with per-repeat "
                                 "rows for " + p + "/" + m);
            }
            out += pad(p, pred_width + 2) + pad(m, 8) + pad(fixed6(agg.mean_hr), 10) +
                   pad(fixed6(agg.mean_arhr), 10) + pad(fixed6(agg.mean_auc), 10) +
                   agg.subjects + "\n";
        }
    }

    for (const std::string& m : method_order) {
        const std::string path = (dir / ("regression_" + m + ".csv")).string();
        const std::string text = read_file(path);
        out += "\n== topology regression: " + m + " ==\n";
        bool header = true;
        out += pad("x_metric", 26) + pad("y_metric", 10) + pad("slope", 14) +
               pad("intercept", 14) + pad("rvalue", 12) + "n\n";
        for (std::string_view line : split(text, '\n')) {
            if (trim(line).empty()) continue;
            if (header) {
                header = false;
                continue;
            }
            const std::vector<std::string> f = parse_csv_line(line);
            if (f.size() != 6) {
                throw InputError(path + ": expected 6 columns in line: " + std::string(line));
            }
            out += pad(f[0], 26) + pad(f[1], 10) + pad(sig6(f[2]), 14) + pad(sig6(f[3]), 14) +
                   pad(sig6(f[4]), 12) + f[5] + "\n";
        }
    }
    return out;
}

}  // namespace kglp
