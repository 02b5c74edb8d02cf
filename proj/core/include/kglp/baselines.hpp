// Non-personalized and pointwise baselines the ranking model is compared
// against: uniform-random ranking, global popularity ranking, and a
// pointwise matrix-factorization recommender trained on squared error.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kglp/bpr.hpp"
#include "kglp/model.hpp"
#include "kglp/rng.hpp"

namespace kglp {

// Object popularity derived from training edges. count[o] is the number of
// distinct training subjects linked to object o; order lists all object ids
// sorted by descending count, ties broken by ascending id.
struct PopularityTable {
    std::vector<std::uint32_t> count;
    std::vector<std::uint32_t> order;

    static PopularityTable build(const TrainAdjacency& adj);
};

// Top-n objects drawn uniformly at random without replacement from the
// candidate set (all objects except `exclude`, which must be sorted).
// Deterministic given the seed.
std::vector<std::uint32_t> random_ranker(std::uint32_t num_objects,
                                         std::span<const std::uint32_t> exclude,
                                         std::size_t top_n, std::uint64_t seed);

// Top-n objects by global popularity, skipping excluded ids.
std::vector<std::uint32_t> most_popular_ranker(const PopularityTable& pt,
                                               std::span<const std::uint32_t> exclude,
                                               std::size_t top_n);

// One SGD step of pointwise matrix factorization on squared error with L2
// regularization. `target` is 1 for observed edges, 0 for sampled negatives.
// All gradients are evaluated at the pre-update parameter values.
void mf_step(EmbeddingModel& m, std::uint32_t subject, std::uint32_t object,
             double target, double learning_rate, double lambda);

// Per-example loss the mf_step gradient descends:
//   (target - score)^2 / 2 + lambda/2 * (|U_s|^2 + |V_o|^2 + b_o^2)
double mf_example_loss(const EmbeddingModel& m, std::uint32_t subject,
                       std::uint32_t object, double target, double lambda);

// Trains a pointwise MF model on the same sampling budget as the ranking
// trainer: epochs * edge_count positive draws, each paired with one sampled
// negative (1:1 ratio). Uses lambda_object_pos as the single L2 weight.
std::pair<EmbeddingModel, TrainReport> pointwise_mf_train(const TrainAdjacency& adj,
                                                          const HyperParams& hp);

}  // namespace kglp
