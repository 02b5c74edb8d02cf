// kglp: per-predicate link prediction over knowledge-graph triples.
//
// Exit codes: 0 success, 1 total failure, 2 invalid configuration or usage,
// 3 partial failure (some predicates completed, some failed).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kglp/baselines.hpp"
#include "kglp/bpr.hpp"
#include "kglp/evaluation.hpp"
#include "kglp/experiment.hpp"
#include "kglp/kg.hpp"
#include "kglp/rng.hpp"
#include "kglp/synthetic.hpp"
#include "kglp/topology.hpp"
#include "kglp/util.hpp"

namespace {

namespace fs = std::filesystem;
using namespace kglp;

struct HyperFlags {
    // Only entries the user actually set override the config file.
    CLI::Option* latent_dim = nullptr;
    CLI::Option* learning_rate = nullptr;
    CLI::Option* lambda = nullptr;
    CLI::Option* epochs = nullptr;
    CLI::Option* top_n = nullptr;
    CLI::Option* repeats = nullptr;
    CLI::Option* seed = nullptr;

    int latent_dim_v = 50;
    double learning_rate_v = 0.2;
    double lambda_v = 0.005;
    int epochs_v = 50;
    int top_n_v = 10;
    std::uint32_t repeats_v = 5;
    std::uint64_t seed_v = 1;

    void add_to(CLI::App* cmd) {
        latent_dim = cmd->add_option("--latent-dim", latent_dim_v,
                                     "latent factor dimensionality (default 50)");
        learning_rate = cmd->add_option("--learning-rate", learning_rate_v,
                                        "SGD learning rate (default 0.2)");
        lambda = cmd->add_option("--lambda", lambda_v,
                                 "L2 regularization weight, applied to subject, positive "
                                 "and negative object parameters (default 0.005)");
        epochs = cmd->add_option("--epochs", epochs_v,
                                 "sample budget in passes over the edge set (default 50)");
        top_n = cmd->add_option("--top-n", top_n_v, "recommendation list length (default 10)");
        repeats = cmd->add_option("--repeats", repeats_v,
                                  "leave-one-out repeat count (default 5)");
        seed = cmd->add_option("--seed", seed_v, "root random seed (default 1)");
    }

    void apply(ExperimentConfig& cfg) const {
        if (*latent_dim) cfg.hp.latent_dim = latent_dim_v;
        if (*learning_rate) cfg.hp.learning_rate = learning_rate_v;
        if (*lambda) {
            cfg.hp.lambda_subject = lambda_v;
            cfg.hp.lambda_object_pos = lambda_v;
            cfg.hp.lambda_object_neg = lambda_v;
        }
        if (*epochs) cfg.hp.epochs = epochs_v;
        if (*top_n) cfg.hp.top_n = top_n_v;
        if (*repeats) cfg.repeat_count = repeats_v;
        if (*seed) cfg.seed = seed_v;
    }

    HyperParams to_hyperparams() const {
        HyperParams hp;
        hp.latent_dim = latent_dim_v;
        hp.learning_rate = learning_rate_v;
        hp.lambda_subject = lambda_v;
        hp.lambda_object_pos = lambda_v;
        hp.lambda_object_neg = lambda_v;
        hp.epochs = epochs_v;
        hp.top_n = top_n_v;
        hp.seed = seed_v;
        return hp;
    }
};

std::vector<Method> parse_methods_list(const std::string& methods_csv) {
    std::vector<Method> out;
    for (std::string_view part : split(methods_csv, ',')) {
        out.push_back(parse_method(trim(part)));
    }
    if (out.empty()) throw ConfigError("methods list is empty");
    return out;
}

std::uint32_t workers_from_env() {
    const char* env = std::getenv("KGLP_WORKERS");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') {
        throw ConfigError(std::string("KGLP_WORKERS must be an unsigned integer, got '") +
                          env + "'");
    }
    return static_cast<std::uint32_t>(v);
}

int cmd_ingest(const std::string& input) {
    ParseStats stats;
    const KnowledgeGraph kg = parse_triples_file(input, &stats);
    std::cout << "facts=" << kg.size() << " parsed=" << stats.parsed
              << " duplicates=" << stats.duplicates << " malformed=" << stats.malformed
              << " skipped=" << stats.skipped << "\n";
    std::cout << "predicate\tsubjects\tobjects\tedges\n";
    for (const std::string& p : kg.predicates()) {
        const SubgraphStats s = subgraph_stats(extract_bipartite(kg, p));
        std::cout << p << '\t' << s.num_subjects << '\t' << s.num_objects << '\t'
                  << s.edge_count << "\n";
    }
    return 0;
}

int cmd_train(const std::string& input, const std::string& predicate,
              const std::string& out_path, const HyperFlags& flags) {
    const KnowledgeGraph kg = parse_triples_file(input);
    const PredicateBipartiteGraph g = extract_bipartite(kg, predicate);
    const TrainAdjacency adj = TrainAdjacency::from_graph(g);
    HyperParams hp = flags.to_hyperparams();
    hp.seed = derive_seed(derive_seed(flags.seed_v, predicate), "train");

    auto [model, report] = train(adj, hp);
    save_model(model, out_path);

    std::cout << "predicate=" << predicate << " subjects=" << g.num_subjects()
              << " objects=" << g.num_objects() << " edges=" << g.edge_count << "\n";
    std::cout << "samples=" << report.samples_processed
              << " full_subjects_skipped=" << report.full_subjects_skipped << "\n";
    for (const auto& [idx, value] : report.objective_trace) {
        std::cout << "objective[" << idx << "]=" << format_double(value) << "\n";
    }
    std::cout << "model=" << out_path << "\n";
    return 0;
}

int cmd_evaluate(const std::string& input, const std::vector<std::string>& predicates,
                 const std::string& methods_csv, const HyperFlags& flags,
                 const std::string& out_path) {
    const std::vector<Method> methods = parse_methods_list(methods_csv);
    const KnowledgeGraph kg = parse_triples_file(input);
    std::vector<std::string> preds = predicates;
    if (preds.empty()) preds = kg.predicates();

    const HyperParams hp = flags.to_hyperparams();
    std::vector<MetricRow> rows;
    for (const std::string& p : preds) {
        const PredicateBipartiteGraph g = extract_bipartite(kg, p);
        const std::uint64_t pred_seed = derive_seed(flags.seed_v, p);
        const SplitSpec splits =
            make_split(g, flags.repeats_v, derive_seed(pred_seed, "split"));
        for (Method m : methods) {
            const EvalSummary summary =
                evaluate_method(m, splits, hp, derive_seed(pred_seed, method_name(m)));
            std::vector<MetricRow> part = summary_rows(p, m, summary);
            rows.insert(rows.end(), part.begin(), part.end());
        }
    }
    const std::string csv = metrics_csv(rows);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        write_file(out_path, csv);
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

int cmd_analyze(const std::string& input, const std::vector<std::string>& predicates,
                const std::string& results_path, const std::string& output_dir) {
    const KnowledgeGraph kg = parse_triples_file(input);
    std::vector<std::string> preds = predicates;
    if (preds.empty()) preds = kg.predicates();

    std::vector<TopologyProfile> profiles;
    profiles.reserve(preds.size());
    for (const std::string& p : preds) {
        profiles.push_back(profile_topology(extract_bipartite(kg, p)));
    }
    const std::string topo = topology_csv(profiles);

    struct MethodGrid {
        std::string method;
        TopologyCorrelation grid;
        std::vector<PerformancePoint> points;
    };
    std::vector<MethodGrid> grids;
    if (!results_path.empty()) {
        const std::vector<MetricRow> rows = read_metrics_csv_text(read_file(results_path));
        std::vector<std::string> method_order;
        for (const MetricRow& r : rows) {
            if (r.repeat != "mean") continue;
            if (std::find(method_order.begin(), method_order.end(), r.method) ==
                method_order.end()) {
                method_order.push_back(r.method);
            }
        }
        for (const std::string& m : method_order) {
            MethodGrid mg;
            mg.method = m;
            for (const MetricRow& r : rows) {
                if (r.method != m || r.repeat != "mean") continue;
                mg.points.push_back(
                    {r.predicate, r.metrics.hit_rate, r.metrics.arhr, r.metrics.auc});
            }
            mg.grid = correlate_topology_lenient(profiles, mg.points);
            grids.push_back(std::move(mg));
        }
    }

    if (output_dir.empty()) {
        std::cout << topo;
        for (const MethodGrid& mg : grids) {
            std::cout << "\n# method=" << mg.method << "\n" << regression_csv(mg.grid);
        }
        return 0;
    }
    fs::create_directories(output_dir);
    const fs::path dir(output_dir);
    write_file((dir / "topology.csv").string(), topo);
    for (const MethodGrid& mg : grids) {
        write_file((dir / ("regression_" + mg.method + ".csv")).string(),
                   regression_csv(mg.grid));
        for (std::size_t xi = 0; xi < 3; ++xi) {
            for (std::size_t yi = 0; yi < 3; ++yi) {
                const std::string name = "scatter_" + mg.method + "_" +
                                         std::string(topology_metric_names[xi]) + "_" +
                                         std::string(performance_metric_names[yi]) + ".csv";
                write_file((dir / name).string(), scatter_csv(profiles, mg.points, xi, yi));
            }
        }
    }
    std::cout << "wrote topology and regression artifacts to " << output_dir << "\n";
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& input,
            const std::string& output_dir, const std::string& predicates_csv,
            const std::string& methods_csv, const HyperFlags& flags,
            CLI::Option* workers_opt, std::uint32_t workers_v,
            const std::vector<std::string>& overrides) {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!input.empty()) cfg.input_path = input;
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (!predicates_csv.empty()) apply_config_entry(cfg, "predicates", predicates_csv);
    if (!methods_csv.empty()) cfg.methods = parse_methods_list(methods_csv);
    flags.apply(cfg);
    if (*workers_opt) cfg.workers = workers_v;
    for (const std::string& kv : overrides) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--set expects key=value, got '" + kv + "'");
        }
        apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (cfg.workers == 0) cfg.workers = workers_from_env();

    const RunOutcome outcome = run_experiment(cfg);
    std::cout << "completed " << outcome.completed.size() << " predicate(s), artifacts in "
              << cfg.output_dir << "\n";
    for (const std::string& f : outcome.failures) std::cerr << "failed: " << f << "\n";
    return outcome.exit_code;
}

int cmd_synth(const std::string& kind_name, const std::string& out_path,
              const SyntheticSpec& base) {
    SyntheticSpec spec = base;
    spec.kind = parse_generator(kind_name);

    const SyntheticOutput out = generate_synthetic(spec);
    std::string tsv;
    tsv.reserve(out.triples.size() * 32);
    for (const Triple& t : out.triples) {
        tsv += t.subject;
        tsv += '\t';
        tsv += t.predicate;
        tsv += '\t';
        tsv += t.object;
        tsv += '\n';
    }
    write_file(out_path, tsv);
    write_file(out_path + ".truth", out.truth);
    std::cout << "wrote " << out.triples.size() << " triples to " << out_path << " (+ "
              << out_path << ".truth)\n";
    return 0;
}

int cmd_report(const std::string& dir) {
    std::cout << report_summary(dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"per-predicate link prediction over knowledge-graph triples"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "validate a triple file and print stats");
    std::string ingest_input;
    ingest->add_option("--input", ingest_input, "TSV triple file")->required();

    // train
    auto* train_cmd = app.add_subcommand("train", "train a ranking model on one predicate");
    std::string train_input, train_predicate, train_out;
    HyperFlags train_flags;
    train_cmd->add_option("--input", train_input, "TSV triple file")->required();
    train_cmd->add_option("--predicate", train_predicate, "predicate label")->required();
    train_cmd->add_option("--out", train_out, "model output path")->required();
    train_flags.add_to(train_cmd);

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "leave-one-out evaluation of methods");
    std::string eval_input, eval_methods = "bpr,mf,mp,random", eval_out;
    std::vector<std::string> eval_predicates;
    HyperFlags eval_flags;
    eval_cmd->add_option("--input", eval_input, "TSV triple file")->required();
    eval_cmd->add_option("--predicate", eval_predicates,
                         "predicate label (repeatable; default: all)");
    eval_cmd->add_option("--methods", eval_methods, "comma list of bpr,mf,mp,random");
    eval_cmd->add_option("--out", eval_out, "write metrics CSV here instead of stdout");
    eval_flags.add_to(eval_cmd);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "topology metrics and regressions");
    std::string an_input, an_results, an_outdir;
    std::vector<std::string> an_predicates;
    analyze->add_option("--input", an_input, "TSV triple file")->required();
    analyze->add_option("--predicate", an_predicates,
                        "predicate label (repeatable; default: all)");
    analyze->add_option("--results", an_results,
                        "metrics CSV from `evaluate` or `run`; adds regression grids");
    analyze->add_option("--output-dir", an_outdir, "write CSV artifacts here");

    // run
    auto* run_cmd = app.add_subcommand("run", "full pipeline with artifacts");
    std::string run_config, run_input, run_outdir, run_predicates, run_methods;
    std::vector<std::string> run_overrides;
    std::uint32_t run_workers = 0;
    HyperFlags run_flags;
    run_cmd->add_option("--config", run_config, "key=value config file");
    run_cmd->add_option("--input", run_input, "TSV triple file");
    run_cmd->add_option("--output-dir", run_outdir, "artifact directory");
    run_cmd->add_option("--predicates", run_predicates, "'all' or comma list");
    run_cmd->add_option("--methods", run_methods, "comma list of bpr,mf,mp,random");
    CLI::Option* run_workers_opt = run_cmd->add_option(
        "--workers", run_workers, "worker threads (default: KGLP_WORKERS env or hardware)");
    run_cmd->add_option("--set", run_overrides, "config override key=value (repeatable)");
    run_flags.add_to(run_cmd);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic triple file");
    std::string synth_kind, synth_out;
    SyntheticSpec synth_spec;
    synth->add_option("--kind", synth_kind,
                      "planted-blocks | popularity-skew | density-sweep | overlap-sweep")
        ->required();
    synth->add_option("--out", synth_out, "TSV output path (truth sidecar: <out>.truth)")
        ->required();
    synth->add_option("--subjects", synth_spec.subjects, "subject count (0 = kind default)");
    synth->add_option("--objects", synth_spec.objects, "object count (0 = kind default)");
    synth->add_option("--blocks", synth_spec.blocks, "block count (0 = kind default)");
    synth->add_option("--within-prob", synth_spec.within_prob,
                      "planted-blocks: within-block edge probability");
    synth->add_option("--zipf-exponent", synth_spec.zipf_exponent,
                      "popularity-skew: Zipf exponent");
    synth->add_option("--edges-per-subject", synth_spec.edges_per_subject,
                      "popularity-skew: per-subject degree");
    synth->add_option("--steps", synth_spec.steps, "sweep families: predicate count");
    synth->add_option("--degree-base", synth_spec.degree_base,
                      "density-sweep: per-subject degree at step 1");
    synth->add_option("--degree-step", synth_spec.degree_step,
                      "density-sweep: degree increment per step");
    synth->add_option("--core-degree", synth_spec.core_degree,
                      "overlap-sweep: core per-subject degree");
    synth->add_option("--triangles-per-step", synth_spec.triangles_per_step,
                      "overlap-sweep: planted triangles added per step");
    synth->add_option("--seed", synth_spec.seed, "generator seed (default 1)");

    // report
    auto* report = app.add_subcommand("report", "summarize a finished run directory");
    std::string report_dir;
    report->add_option("--dir", report_dir, "run artifact directory")->required();

    try {
        app.parse(argc, argv);

        if (*ingest) return cmd_ingest(ingest_input);
        if (*train_cmd) return cmd_train(train_input, train_predicate, train_out, train_flags);
        if (*eval_cmd) {
            return cmd_evaluate(eval_input, eval_predicates, eval_methods, eval_flags,
                                eval_out);
        }
        if (*analyze) return cmd_analyze(an_input, an_predicates, an_results, an_outdir);
        if (*run_cmd) {
            return cmd_run(run_config, run_input, run_outdir, run_predicates, run_methods,
                           run_flags, run_workers_opt, run_workers, run_overrides);
        }
        if (*synth) return cmd_synth(synth_kind, synth_out, synth_spec);
        if (*report) return cmd_report(report_dir);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const kglp::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
