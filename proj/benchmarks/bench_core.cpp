// Microbenchmarks for the hot paths: the pairwise update, whole-training
// throughput, protocol evaluation, clustering, and triple parsing.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "kglp/bpr.hpp"
#include "kglp/evaluation.hpp"
#include "kglp/kg.hpp"
#include "kglp/model.hpp"
#include "kglp/rng.hpp"
#include "kglp/synthetic.hpp"
#include "kglp/topology.hpp"

namespace {

using namespace kglp;

// 200 x 100 bipartite graph, every subject with degree exactly 10.
const PredicateBipartiteGraph& bench_graph() {
    static const PredicateBipartiteGraph g = [] {
        Rng rng(41);
        PredicateBipartiteGraph out;
        out.predicate = "bench";
        for (std::uint32_t s = 0; s < 200; ++s) {
            out.subject_labels.push_back("s" + std::to_string(s));
        }
        for (std::uint32_t o = 0; o < 100; ++o) {
            out.object_labels.push_back("o" + std::to_string(o));
        }
        out.adjacency.resize(200);
        for (std::uint32_t s = 0; s < 200; ++s) {
            std::set<std::uint32_t> row;
            while (row.size() < 10) row.insert(rng.uniform_index(100));
            out.adjacency[s].assign(row.begin(), row.end());
            out.edge_count += row.size();
        }
        return out;
    }();
    return g;
}

const TrainAdjacency& bench_adjacency() {
    static const TrainAdjacency adj = TrainAdjacency::from_graph(bench_graph());
    return adj;
}

const std::vector<TrainSample>& bench_samples() {
    static const std::vector<TrainSample> samples =
        sample_training_set(bench_adjacency(), 50, 7);
    return samples;
}

void BM_SgdStep(benchmark::State& state) {
    HyperParams hp;
    hp.latent_dim = static_cast<int>(state.range(0));
    hp.learning_rate = 0.05;
    const auto& samples = bench_samples();
    EmbeddingModel model = init_model(200, 100, hp);
    std::size_t i = 0;
    for (auto _ : state) {
        sgd_step(model, samples[i], hp);
        if (++i == samples.size()) i = 0;
    }
    benchmark::DoNotOptimize(model.subject_factors.data());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SgdStep)->Arg(10)->Arg(50)->Arg(100);

void BM_Train(benchmark::State& state) {
    HyperParams hp;
    hp.latent_dim = 16;
    hp.learning_rate = 0.05;
    hp.epochs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto [model, report] = train(bench_adjacency(), hp);
        benchmark::DoNotOptimize(report.final_objective);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) *
                            static_cast<std::int64_t>(bench_adjacency().edge_count()));
}
BENCHMARK(BM_Train)->Arg(5)->Arg(20);

void BM_Evaluate(benchmark::State& state) {
    const PredicateBipartiteGraph& g = bench_graph();
    const RepeatSplit split = make_repeat_split(g, 3);
    HyperParams hp;
    hp.latent_dim = 32;
    const EmbeddingModel model = init_model(g.num_subjects(), g.num_objects(), hp);
    Ranker ranker = [&model](std::uint32_t s, std::span<const std::uint32_t> exclude,
                             std::size_t top_n) {
        return rank_objects(model, s, exclude, top_n);
    };
    Scorer scorer = [&model](std::uint32_t s, std::uint32_t o) { return score(model, s, o); };
    for (auto _ : state) {
        const EvalResult r = evaluate(split, ranker, scorer, 10);
        benchmark::DoNotOptimize(r.auc);
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(split.num_tested));
}
BENCHMARK(BM_Evaluate);

void BM_ClusteringCoefficient(benchmark::State& state) {
    static const PredicateBipartiteGraph g = [] {
        SyntheticSpec spec;
        spec.kind = GeneratorKind::overlap_sweep;
        spec.seed = 11;
        const SyntheticOutput out = generate_synthetic(spec);
        KnowledgeGraph kg;
        for (const Triple& t : out.triples) kg.add(t);
        return extract_bipartite(kg, "overlap4");
    }();
    for (auto _ : state) {
        benchmark::DoNotOptimize(clustering_coefficient(g));
    }
}
BENCHMARK(BM_ClusteringCoefficient);

void BM_ParseTriples(benchmark::State& state) {
    static const std::string tsv = [] {
        SyntheticSpec spec;
        spec.kind = GeneratorKind::planted_blocks;
        spec.seed = 13;
        std::string text;
        for (const Triple& t : generate_synthetic(spec).triples) {
            text += t.subject;
            text += '\t';
            text += t.predicate;
            text += '\t';
            text += t.object;
            text += '\n';
        }
        return text;
    }();
    for (auto _ : state) {
        const KnowledgeGraph kg = parse_triples_text(tsv);
        benchmark::DoNotOptimize(kg.size());
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(tsv.size()));
}
BENCHMARK(BM_ParseTriples);

}  // namespace

BENCHMARK_MAIN();
