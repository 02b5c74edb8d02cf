#include "kglp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kglp/util.hpp"

namespace kglp {

PopularityTable PopularityTable::build(const TrainAdjacency& adj) {
    PopularityTable pt;
    pt.count.assign(adj.num_objects, 0);
    for (const auto& row : adj.adjacency) {
        // Rows hold distinct object ids, so each subject contributes at most
        // one count per object.
        for (std::uint32_t o : row) pt.count[o]++;
    }
    pt.order.resize(adj.num_objects);
    std::iota(pt.order.begin(), pt.order.end(), 0u);
    std::stable_sort(pt.order.begin(), pt.order.end(),
                     [&pt](std::uint32_t a, std::uint32_t b) {
                         if (pt.count[a] != pt.count[b]) return pt.count[a] > pt.count[b];
                         return a < b;
                     });
    return pt;
}

std::vector<std::uint32_t> random_ranker(std::uint32_t num_objects,
                                         std::span<const std::uint32_t> exclude,
                                         std::size_t top_n, std::uint64_t seed) {
    std::vector<std::uint32_t> pool;
    pool.reserve(num_objects);
    for (std::uint32_t o = 0; o < num_objects; ++o) {
        if (!std::binary_search(exclude.begin(), exclude.end(), o)) pool.push_back(o);
    }
    const std::size_t take = std::min(top_n, pool.size());
    Rng rng(seed);
    // Partial Fisher-Yates: only the first `take` slots need shuffling.
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(
                                      static_cast<std::uint64_t>(pool.size() - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(take);
    return pool;
}

std::vector<std::uint32_t> most_popular_ranker(const PopularityTable& pt,
                                               std::span<const std::uint32_t> exclude,
                                               std::size_t top_n) {
    std::vector<std::uint32_t> out;
    out.reserve(top_n);
    for (std::uint32_t o : pt.order) {
        if (std::binary_search(exclude.begin(), exclude.end(), o)) continue;
        out.push_back(o);
        if (out.size() == top_n) break;
    }
    return out;
}

void mf_step(EmbeddingModel& m, std::uint32_t subject, std::uint32_t object,
             double target, double learning_rate, double lambda) {
    const double err = target - score(m, subject, object);
    auto u = m.subject_row(subject);
    auto v = m.object_row(object);
    const double a = learning_rate;

    thread_local std::vector<double> u_old;
    u_old.assign(u.begin(), u.end());

    for (std::uint32_t k = 0; k < m.latent_dim; ++k) {
        u[k] += a * (err * v[k] - lambda * u[k]);
        v[k] += a * (err * u_old[k] - lambda * v[k]);
    }
    m.object_bias[object] += a * (err - lambda * m.object_bias[object]);

    for (std::uint32_t k = 0; k < m.latent_dim; ++k) {
        if (!std::isfinite(u[k]) || !std::isfinite(v[k])) {
            throw DivergenceError("mf_step: non-finite factor after update (subject=" +
                                  std::to_string(subject) +
                                  ", object=" + std::to_string(object) + ")");
        }
    }
    if (!std::isfinite(m.object_bias[object])) {
        throw DivergenceError("mf_step: non-finite bias after update (object=" +
                              std::to_string(object) + ")");
    }
}

double mf_example_loss(const EmbeddingModel& m, std::uint32_t subject,
                       std::uint32_t object, double target, double lambda) {
    const double err = target - score(m, subject, object);
    auto u = m.subject_row(subject);
    auto v = m.object_row(object);
    double reg = m.object_bias[object] * m.object_bias[object];
    for (std::uint32_t k = 0; k < m.latent_dim; ++k) reg += u[k] * u[k] + v[k] * v[k];
    return 0.5 * err * err + 0.5 * lambda * reg;
}

std::pair<EmbeddingModel, TrainReport> pointwise_mf_train(const TrainAdjacency& adj,
                                                          const HyperParams& hp) {
    hp.validate();
    EmbeddingModel model = init_model(adj.num_subjects(), adj.num_objects, hp);

    TrainReport report;
    const std::uint64_t sample_seed = derive_seed(hp.seed, "mf-samples");
    std::vector<TrainSample> samples =
        sample_training_set(adj, hp.epochs, sample_seed, &report.full_subjects_skipped);

    const double lambda = hp.lambda_object_pos;
    double running_loss = 0.0;
    std::size_t done = 0;
    for (const TrainSample& s : samples) {
        // Each draw trains one positive and one negative example.
        running_loss += mf_example_loss(model, s.subject, s.pos_object, 1.0, lambda);
        mf_step(model, s.subject, s.pos_object, 1.0, hp.learning_rate, lambda);
        running_loss += mf_example_loss(model, s.subject, s.neg_object, 0.0, lambda);
        mf_step(model, s.subject, s.neg_object, 0.0, hp.learning_rate, lambda);
        ++done;
    }
    report.samples_processed = samples.size();
    report.final_objective =
        done == 0 ? 0.0 : -running_loss / static_cast<double>(2 * done);
    report.objective_trace.emplace_back(samples.size(), report.final_objective);
    return {std::move(model), report};
}

}  // namespace kglp
