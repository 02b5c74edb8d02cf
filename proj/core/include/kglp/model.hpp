#pragma once

// Per-predicate latent embedding model: subject factors, object factors,
// object bias. Score of a candidate link is
//   dot(subject_factors[s], object_factors[o]) + object_bias[o]
// There is deliberately no subject bias term.
//
// Serialized layout (native little-endian IEEE-754 doubles):
//   magic "KGLPEMB1" | u64 num_subjects | u64 num_objects | u32 latent_dim
//   | subject_factors row-major | object_factors row-major | object_bias

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kglp/util.hpp"

namespace kglp {

struct HyperParams {
    int latent_dim = 50;             // K
    double learning_rate = 0.2;      // SGD step size
    double lambda_subject = 0.005;   // L2 weight on the subject row
    double lambda_object_pos = 0.005;
    double lambda_object_neg = 0.005;
    int epochs = 50;                 // sample budget = epochs * edge_count
    int top_n = 10;                  // recommendation list length
    std::uint64_t seed = 1;

    void validate() const;  // throws ConfigError
};

struct EmbeddingModel {
    std::uint32_t num_subjects = 0;
    std::uint32_t num_objects = 0;
    std::uint32_t latent_dim = 0;
    std::vector<double> subject_factors;  // num_subjects x latent_dim, row-major
    std::vector<double> object_factors;   // num_objects x latent_dim, row-major
    std::vector<double> object_bias;      // num_objects

    std::span<double> subject_row(std::uint32_t s) {
        return {subject_factors.data() + static_cast<std::size_t>(s) * latent_dim, latent_dim};
    }
    std::span<const double> subject_row(std::uint32_t s) const {
        return {subject_factors.data() + static_cast<std::size_t>(s) * latent_dim, latent_dim};
    }
    std::span<double> object_row(std::uint32_t o) {
        return {object_factors.data() + static_cast<std::size_t>(o) * latent_dim, latent_dim};
    }
    std::span<const double> object_row(std::uint32_t o) const {
        return {object_factors.data() + static_cast<std::size_t>(o) * latent_dim, latent_dim};
    }

    bool all_finite() const;

    bool operator==(const EmbeddingModel&) const = default;
};

// Every entry drawn i.i.d. Gaussian(mean 0, stddev 0.1) from an Rng seeded
// with derive_seed(hp.seed, "init"); fill order is subject_factors,
// object_factors, object_bias. Same seed, same model, bit for bit.
EmbeddingModel init_model(std::uint32_t num_subjects, std::uint32_t num_objects,
                          const HyperParams& hp);

double score(const EmbeddingModel& m, std::uint32_t s, std::uint32_t o);

// Numerically stable logistic; sign-split so exp() never overflows.
// Throws on non-finite input.
double probability(double x);

// ln(probability(x)) without forming the quotient; stable for |x| ~ 700.
double log_sigmoid(double x);

// Top-n object ids not in `exclude`, by descending score, ties broken by
// ascending id. `exclude` must be sorted ascending.
std::vector<std::uint32_t> rank_objects(const EmbeddingModel& m, std::uint32_t s,
                                        std::span<const std::uint32_t> exclude,
                                        std::size_t top_n);

void save_model(const EmbeddingModel& m, const std::string& path);
EmbeddingModel load_model(const std::string& path);

}  // namespace kglp
