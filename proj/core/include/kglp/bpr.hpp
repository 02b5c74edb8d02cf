#pragma once

// Pairwise-ranking trainer. The training set is pre-generated: for each of
// epochs * edge_count samples, an observed edge (s, o+) is drawn uniformly
// over sampleable edges, then o- uniformly over the objects not linked to s
// (rejection over [0, n)). One ascending-gradient step per sample, in order;
// the stopping rule is exhaustion of the sample set.

#include <cstdint>
#include <utility>
#include <vector>

#include "kglp/kg.hpp"
#include "kglp/model.hpp"

namespace kglp {

// Training-side view of a predicate's edges. `adjacency` rows are sorted;
// `num_objects` is the object-universe size (rows may reference fewer).
struct TrainAdjacency {
    std::vector<std::vector<std::uint32_t>> adjacency;
    std::uint32_t num_objects = 0;

    std::uint32_t num_subjects() const { return static_cast<std::uint32_t>(adjacency.size()); }
    std::size_t edge_count() const;
    bool has_edge(std::uint32_t s, std::uint32_t o) const;

    static TrainAdjacency from_graph(const PredicateBipartiteGraph& g);
};

struct TrainSample {
    std::uint32_t subject;
    std::uint32_t pos_object;  // linked to subject in the training adjacency
    std::uint32_t neg_object;  // not linked to subject
};

struct TrainReport {
    std::size_t samples_processed = 0;
    // Monitoring objective: mean over a held monitoring sample of
    //   log_sigmoid(x+ - x-) - lambda_s|U_s|^2 - lambda_o+(|V_o+|^2 + b_o+^2)
    //                        - lambda_o-(|V_o-|^2 + b_o-^2)
    // Observability only, never a stopping rule.
    double final_objective = 0.0;
    std::vector<std::pair<std::size_t, double>> objective_trace;  // (sample index, objective)
    std::size_t full_subjects_skipped = 0;  // subjects linked to every object
};

// |result| = epochs * g.edge_count(). Subjects linked to ALL objects are
// excluded from sampling (counted via *full_subjects_skipped); throws
// InputError when no sampleable edge remains.
std::vector<TrainSample> sample_training_set(const TrainAdjacency& g, int epochs,
                                             std::uint64_t seed,
                                             std::size_t* full_subjects_skipped = nullptr);

// One ascending step of the pairwise objective. All gradients are evaluated
// on pre-update values, then applied together. Throws DivergenceError naming
// the sample and parameter if a non-finite value is produced.
void sgd_step(EmbeddingModel& m, const TrainSample& t, const HyperParams& hp);

// Per-sample objective the step ascends; the finite-difference tests
// differentiate exactly this.
double sample_objective(const EmbeddingModel& m, const TrainSample& t, const HyperParams& hp);

std::pair<EmbeddingModel, TrainReport> train(const TrainAdjacency& g, const HyperParams& hp);

}  // namespace kglp
