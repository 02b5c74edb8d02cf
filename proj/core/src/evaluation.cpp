#include "kglp/evaluation.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <stdexcept>

#include "kglp/baselines.hpp"
#include "kglp/rng.hpp"
#include "kglp/util.hpp"

namespace kglp {

RepeatSplit make_repeat_split(const PredicateBipartiteGraph& g, std::uint64_t seed) {
    RepeatSplit split;
    split.train.num_objects = g.num_objects();
    split.train.adjacency.resize(g.num_subjects());
    split.test_object.assign(g.num_subjects(), std::nullopt);

    Rng rng(seed);
    for (std::uint32_t s = 0; s < g.num_subjects(); ++s) {
        const auto& row = g.adjacency[s];
        if (row.size() < 2) {
            split.train.adjacency[s] = row;
            continue;
        }
        const std::size_t drop = rng.uniform_below(row.size());
        split.test_object[s] = row[drop];
        auto& train_row = split.train.adjacency[s];
        train_row.reserve(row.size() - 1);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i != drop) train_row.push_back(row[i]);
        }
        ++split.num_tested;
    }
    if (split.num_tested == 0) {
        throw InputError("predicate '" + g.predicate +
                         "' has no subject with degree >= 2; nothing to test");
    }
    return split;
}

SplitSpec make_split(const PredicateBipartiteGraph& g, std::uint32_t repeat_count,
                     std::uint64_t seed) {
    if (repeat_count == 0) throw ConfigError("repeat_count must be >= 1");
    SplitSpec spec;
    spec.repeat_count = repeat_count;
    spec.seed = seed;
    spec.repeats.reserve(repeat_count);
    for (std::uint32_t r = 0; r < repeat_count; ++r) {
        spec.repeats.push_back(make_repeat_split(g, derive_seed(seed, std::uint64_t{r})));
    }
    return spec;
}

std::size_t rank_in_list(std::span<const std::uint32_t> ranked, std::uint32_t target) {
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        if (ranked[i] == target) return i + 1;
    }
    return 0;
}

EvalResult evaluate(const RepeatSplit& split, const Ranker& ranker,
                    const Scorer& scorer, std::size_t top_n) {
    EvalResult res;
    double hits = 0.0;
    double reciprocal = 0.0;
    double auc_sum = 0.0;

    const std::uint32_t n = split.train.num_objects;
    for (std::uint32_t s = 0; s < split.test_object.size(); ++s) {
        if (!split.test_object[s]) continue;
        ++res.subjects_tested;
        const std::uint32_t held_out = *split.test_object[s];
        const auto& exclude = split.train.adjacency[s];

        const std::vector<std::uint32_t> ranked = ranker(s, exclude, top_n);
        const std::size_t rank = rank_in_list(ranked, held_out);
        if (rank != 0) {
            hits += 1.0;
            reciprocal += 1.0 / static_cast<double>(rank);
        }

        // Exact enumeration over every object never linked to s.
        const double positive_score = scorer(s, held_out);
        std::size_t wins = 0;
        std::size_t pairs = 0;
        for (std::uint32_t o = 0; o < n; ++o) {
            if (o == held_out) continue;
            if (std::binary_search(exclude.begin(), exclude.end(), o)) continue;
            ++pairs;
            if (positive_score > scorer(s, o)) ++wins;
        }
        if (pairs == 0) {
            ++res.subjects_auc_skipped;
        } else {
            auc_sum += static_cast<double>(wins) / static_cast<double>(pairs);
            ++res.subjects_auc;
        }
    }

    assert(res.subjects_tested == split.num_tested);
    if (res.subjects_tested > 0) {
        res.hit_rate = hits / static_cast<double>(res.subjects_tested);
        res.arhr = reciprocal / static_cast<double>(res.subjects_tested);
    }
    if (res.subjects_auc > 0) res.auc = auc_sum / static_cast<double>(res.subjects_auc);
    return res;
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::bpr: return "bpr";
        case Method::mf: return "mf";
        case Method::most_popular: return "mp";
        case Method::random: return "random";
    }
    throw std::logic_error("unreachable method");
}

Method parse_method(std::string_view name) {
    if (name == "bpr") return Method::bpr;
    if (name == "mf") return Method::mf;
    if (name == "mp") return Method::most_popular;
    if (name == "random") return Method::random;
    throw ConfigError("unknown method '" + std::string(name) +
                      "' (expected bpr, mf, mp, or random)");
}

namespace {

EvalResult evaluate_one_repeat(Method method, const RepeatSplit& split,
                               const HyperParams& hp, std::uint64_t repeat_seed) {
    const std::size_t top_n = hp.top_n;
    switch (method) {
        case Method::bpr: {
            HyperParams local = hp;
            local.seed = derive_seed(repeat_seed, "train");
            auto [model, report] = train(split.train, local);
            (void)report;
            Ranker ranker = [&model](std::uint32_t s, std::span<const std::uint32_t> ex,
                                     std::size_t k) { return rank_objects(model, s, ex, k); };
            Scorer scorer = [&model](std::uint32_t s, std::uint32_t o) {
                return score(model, s, o);
            };
            return evaluate(split, ranker, scorer, top_n);
        }
        case Method::mf: {
            HyperParams local = hp;
            local.seed = derive_seed(repeat_seed, "train");
            auto [model, report] = pointwise_mf_train(split.train, local);
            (void)report;
            Ranker ranker = [&model](std::uint32_t s, std::span<const std::uint32_t> ex,
                                     std::size_t k) { return rank_objects(model, s, ex, k); };
            Scorer scorer = [&model](std::uint32_t s, std::uint32_t o) {
                return score(model, s, o);
            };
            return evaluate(split, ranker, scorer, top_n);
        }
        case Method::most_popular: {
            const PopularityTable pt = PopularityTable::build(split.train);
            Ranker ranker = [&pt](std::uint32_t, std::span<const std::uint32_t> ex,
                                  std::size_t k) { return most_popular_ranker(pt, ex, k); };
            Scorer scorer = [&pt](std::uint32_t, std::uint32_t o) {
                return static_cast<double>(pt.count[o]);
            };
            return evaluate(split, ranker, scorer, top_n);
        }
        case Method::random: {
            const std::uint64_t rank_seed = derive_seed(repeat_seed, "rank");
            const std::uint64_t score_seed = derive_seed(repeat_seed, "score");
            const std::uint32_t n = split.train.num_objects;
            Ranker ranker = [rank_seed, n](std::uint32_t s,
                                           std::span<const std::uint32_t> ex,
                                           std::size_t k) {
                return random_ranker(n, ex, k, derive_seed(rank_seed, std::uint64_t{s}));
            };
            Scorer scorer = [score_seed](std::uint32_t s, std::uint32_t o) {
                return hash_uniform01(score_seed, s, o);
            };
            return evaluate(split, ranker, scorer, top_n);
        }
    }
    throw std::logic_error("unreachable method");
}

}  // namespace

EvalSummary evaluate_method(Method method, const SplitSpec& splits,
                            const HyperParams& hp, std::uint64_t method_seed) {
    hp.validate();
    EvalSummary summary;
    summary.per_repeat.reserve(splits.repeats.size());
    for (std::size_t r = 0; r < splits.repeats.size(); ++r) {
        summary.per_repeat.push_back(evaluate_one_repeat(
            method, splits.repeats[r], hp, derive_seed(method_seed, std::uint64_t{r})));
    }

    const double nrep = static_cast<double>(summary.per_repeat.size());
    double tested = 0.0;
    for (const EvalResult& r : summary.per_repeat) {
        summary.mean.hit_rate += r.hit_rate / nrep;
        summary.mean.arhr += r.arhr / nrep;
        summary.mean.auc += r.auc / nrep;
        tested += static_cast<double>(r.subjects_tested) / nrep;
        summary.mean.subjects_auc += r.subjects_auc;
        summary.mean.subjects_auc_skipped += r.subjects_auc_skipped;
    }
    summary.mean.subjects_tested = static_cast<std::size_t>(tested + 0.5);
    summary.mean.subjects_auc /= summary.per_repeat.size();
    summary.mean.subjects_auc_skipped /= summary.per_repeat.size();
    return summary;
}

std::vector<MetricRow> summary_rows(const std::string& predicate, Method method,
                                    const EvalSummary& summary) {
    std::vector<MetricRow> rows;
    rows.reserve(summary.per_repeat.size() + 1);
    for (std::size_t r = 0; r < summary.per_repeat.size(); ++r) {
        rows.push_back({predicate, std::string(method_name(method)), std::to_string(r),
                        summary.per_repeat[r]});
    }
    rows.push_back({predicate, std::string(method_name(method)), "mean", summary.mean});
    return rows;
}

std::vector<MetricRow> read_metrics_csv_text(std::string_view text) {
    std::vector<MetricRow> rows;
    bool header = true;
    for (std::string_view line : split(text, '\n')) {
        if (trim(line).empty()) continue;
        if (header) {
            if (trim(line) != "predicate,method,repeat,hr,arhr,auc,n_subjects_tested") {
                throw InputError("metrics CSV: unexpected header: " + std::string(line));
            }
            header = false;
            continue;
        }
        std::vector<std::string> f = parse_csv_line(line);
        if (f.size() != 7) {
            throw InputError("metrics CSV: expected 7 columns, got " +
                             std::to_string(f.size()) + " in line: " + std::string(line));
        }
        MetricRow row;
        row.predicate = std::move(f[0]);
        row.method = std::move(f[1]);
        row.repeat = std::move(f[2]);
        row.metrics.hit_rate = std::strtod(f[3].c_str(), nullptr);
        row.metrics.arhr = std::strtod(f[4].c_str(), nullptr);
        row.metrics.auc = std::strtod(f[5].c_str(), nullptr);
        row.metrics.subjects_tested = std::strtoull(f[6].c_str(), nullptr, 10);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string metrics_csv(const std::vector<MetricRow>& rows) {
    std::string out = "predicate,method,repeat,hr,arhr,auc,n_subjects_tested\n";
    for (const MetricRow& r : rows) {
        out += csv_field(r.predicate);
        out += ',';
        out += csv_field(r.method);
        out += ',';
        out += r.repeat;
        out += ',';
        out += format_double(r.metrics.hit_rate);
        out += ',';
        out += format_double(r.metrics.arhr);
        out += ',';
        out += format_double(r.metrics.auc);
        out += ',';
        out += std::to_string(r.metrics.subjects_tested);
        out += '\n';
    }
    return out;
}

}  // namespace kglp
