#include "kglp/bpr.hpp"

#include <algorithm>
#include <cmath>

#include "kglp/rng.hpp"

namespace kglp {

std::size_t TrainAdjacency::edge_count() const {
    std::size_t n = 0;
    for (const auto& row : adjacency) n += row.size();
    return n;
}

bool TrainAdjacency::has_edge(std::uint32_t s, std::uint32_t o) const {
    const auto& row = adjacency[s];
    return std::binary_search(row.begin(), row.end(), o);
}

TrainAdjacency TrainAdjacency::from_graph(const PredicateBipartiteGraph& g) {
    return {g.adjacency, g.num_objects()};
}

std::vector<TrainSample> sample_training_set(const TrainAdjacency& g, int epochs,
                                             std::uint64_t seed,
                                             std::size_t* full_subjects_skipped) {
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    const std::uint32_t n = g.num_objects;
    std::size_t total_edges = g.edge_count();
    if (total_edges == 0) throw InputError("cannot sample: graph has no edges");
    if (n < 2) throw InputError("cannot sample: needs at least 2 objects");

    // Flat list of sampleable edges; a subject linked to every object has no
    // negative and is skipped.
    std::vector<std::uint64_t> edges;
    edges.reserve(total_edges);
    std::size_t full_subjects = 0;
    for (std::uint32_t s = 0; s < g.num_subjects(); ++s) {
        const auto& row = g.adjacency[s];
        if (row.size() == n) {
            ++full_subjects;
            continue;
        }
        for (std::uint32_t o : row) edges.push_back((static_cast<std::uint64_t>(s) << 32) | o);
    }
    if (full_subjects_skipped) *full_subjects_skipped = full_subjects;
    if (edges.empty()) throw InputError("cannot sample: every subject is linked to every object");

    std::vector<TrainSample> samples;
    samples.reserve(static_cast<std::size_t>(epochs) * total_edges);
    Rng rng(seed);
    for (std::size_t i = 0, budget = static_cast<std::size_t>(epochs) * total_edges; i < budget;
         ++i) {
        std::uint64_t e = edges[rng.uniform_below(edges.size())];
        auto s = static_cast<std::uint32_t>(e >> 32);
        auto pos = static_cast<std::uint32_t>(e & 0xffffffffu);
        std::uint32_t neg;
        do {
            neg = rng.uniform_index(n);
        } while (g.has_edge(s, neg));
        samples.push_back({s, pos, neg});
    }
    return samples;
}

namespace {

[[noreturn]] void throw_divergence(const TrainSample& t, const char* param) {
    throw DivergenceError("non-finite value in " + std::string(param) + " after step on sample (s=" +
                          std::to_string(t.subject) + ", o+=" + std::to_string(t.pos_object) +
                          ", o-=" + std::to_string(t.neg_object) + ")");
}

double l2sq(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return acc;
}

}  // namespace

void sgd_step(EmbeddingModel& m, const TrainSample& t, const HyperParams& hp) {
    const std::uint32_t K = m.latent_dim;
    auto u = m.subject_row(t.subject);
    auto vp = m.object_row(t.pos_object);
    auto vn = m.object_row(t.neg_object);
    double& bp = m.object_bias[t.pos_object];
    double& bn = m.object_bias[t.neg_object];

    double margin = 0.0;
    for (std::uint32_t k = 0; k < K; ++k) margin += u[k] * (vp[k] - vn[k]);
    margin += bp - bn;
    if (!std::isfinite(margin)) throw_divergence(t, "margin");
    double d = 1.0 - probability(margin);

    const double a = hp.learning_rate;
    const double ls = hp.lambda_subject;
    const double lp = hp.lambda_object_pos;
    const double ln = hp.lambda_object_neg;

    // The object-row updates read the pre-update subject row, so buffer it.
    thread_local std::vector<double> u_old;
    u_old.assign(u.begin(), u.end());

    bool finite = true;
    for (std::uint32_t k = 0; k < K; ++k) {
        u[k] += a * (d * (vp[k] - vn[k]) - 2.0 * ls * u[k]);
        vp[k] += a * (d * u_old[k] - 2.0 * lp * vp[k]);
        vn[k] += a * (-d * u_old[k] - 2.0 * ln * vn[k]);
        finite = finite && std::isfinite(u[k]) && std::isfinite(vp[k]) && std::isfinite(vn[k]);
    }
    bp += a * (d - 2.0 * lp * bp);
    bn += a * (-d - 2.0 * ln * bn);

    if (!finite || !std::isfinite(bp) || !std::isfinite(bn)) {
        if (!std::isfinite(bp)) throw_divergence(t, "object_bias[o+]");
        if (!std::isfinite(bn)) throw_divergence(t, "object_bias[o-]");
        for (std::uint32_t k = 0; k < K; ++k) {
            if (!std::isfinite(u[k])) throw_divergence(t, "subject_factors");
            if (!std::isfinite(vp[k])) throw_divergence(t, "object_factors[o+]");
            if (!std::isfinite(vn[k])) throw_divergence(t, "object_factors[o-]");
        }
        throw_divergence(t, "model");
    }
}

double sample_objective(const EmbeddingModel& m, const TrainSample& t, const HyperParams& hp) {
    double margin = score(m, t.subject, t.pos_object) - score(m, t.subject, t.neg_object);
    if (!std::isfinite(margin)) throw_divergence(t, "margin");
    double reg = hp.lambda_subject * l2sq(m.subject_row(t.subject)) +
                 hp.lambda_object_pos *
                     (l2sq(m.object_row(t.pos_object)) +
                      m.object_bias[t.pos_object] * m.object_bias[t.pos_object]) +
                 hp.lambda_object_neg *
                     (l2sq(m.object_row(t.neg_object)) +
                      m.object_bias[t.neg_object] * m.object_bias[t.neg_object]);
    return log_sigmoid(margin) - reg;
}

namespace {

double mean_objective(const EmbeddingModel& m, const std::vector<TrainSample>& monitor,
                      const HyperParams& hp) {
    if (monitor.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& t : monitor) acc += sample_objective(m, t, hp);
    return acc / static_cast<double>(monitor.size());
}

}  // namespace

std::pair<EmbeddingModel, TrainReport> train(const TrainAdjacency& g, const HyperParams& hp) {
    hp.validate();
    EmbeddingModel model = init_model(g.num_subjects(), g.num_objects, hp);

    TrainReport report;
    auto samples =
        sample_training_set(g, hp.epochs, derive_seed(hp.seed, "bpr-samples"),
                            &report.full_subjects_skipped);

    // Fixed monitoring sample, drawn like training samples from its own stream.
    int monitor_epochs = 1;
    auto monitor = sample_training_set(g, monitor_epochs, derive_seed(hp.seed, "bpr-monitor"));
    if (monitor.size() > 2000) monitor.resize(2000);

    const std::size_t checkpoints = 10;
    std::size_t stride = std::max<std::size_t>(1, samples.size() / checkpoints);
    report.objective_trace.emplace_back(0, mean_objective(model, monitor, hp));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        sgd_step(model, samples[i], hp);
        if ((i + 1) % stride == 0 || i + 1 == samples.size()) {
            report.objective_trace.emplace_back(i + 1, mean_objective(model, monitor, hp));
        }
    }
    report.samples_processed = samples.size();
    report.final_objective = report.objective_trace.back().second;
    return {std::move(model), std::move(report)};
}

}  // namespace kglp
