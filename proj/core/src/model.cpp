#include "kglp/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "kglp/rng.hpp"

namespace kglp {

void HyperParams::validate() const {
    if (latent_dim < 1) throw ConfigError("latent_dim must be >= 1");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
        throw ConfigError("learning_rate must be positive and finite");
    if (lambda_subject < 0.0 || lambda_object_pos < 0.0 || lambda_object_neg < 0.0)
        throw ConfigError("regularization weights must be >= 0");
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (top_n < 1) throw ConfigError("top_n must be >= 1");
}

bool EmbeddingModel::all_finite() const {
    auto ok = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    return ok(subject_factors) && ok(object_factors) && ok(object_bias);
}

EmbeddingModel init_model(std::uint32_t num_subjects, std::uint32_t num_objects,
                          const HyperParams& hp) {
    hp.validate();
    if (num_subjects == 0 || num_objects == 0)
        throw ConfigError("degenerate predicate: needs at least one subject and one object");

    EmbeddingModel m;
    m.num_subjects = num_subjects;
    m.num_objects = num_objects;
    m.latent_dim = static_cast<std::uint32_t>(hp.latent_dim);
    m.subject_factors.resize(static_cast<std::size_t>(num_subjects) * m.latent_dim);
    m.object_factors.resize(static_cast<std::size_t>(num_objects) * m.latent_dim);
    m.object_bias.resize(num_objects);

    Rng rng(derive_seed(hp.seed, "init"));
    for (double& v : m.subject_factors) v = rng.gaussian(0.0, 0.1);
    for (double& v : m.object_factors) v = rng.gaussian(0.0, 0.1);
    for (double& v : m.object_bias) v = rng.gaussian(0.0, 0.1);
    return m;
}

double score(const EmbeddingModel& m, std::uint32_t s, std::uint32_t o) {
    if (s >= m.num_subjects)
        throw InputError("subject id " + std::to_string(s) + " out of range [0, " +
                         std::to_string(m.num_subjects) + ")");
    if (o >= m.num_objects)
        throw InputError("object id " + std::to_string(o) + " out of range [0, " +
                         std::to_string(m.num_objects) + ")");
    auto u = m.subject_row(s);
    auto v = m.object_row(o);
    double acc = 0.0;
    for (std::uint32_t k = 0; k < m.latent_dim; ++k) acc += u[k] * v[k];
    return acc + m.object_bias[o];
}

double probability(double x) {
    if (!std::isfinite(x)) throw InputError("probability() requires a finite score");
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    double e = std::exp(x);
    return e / (1.0 + e);
}

double log_sigmoid(double x) {
    if (!std::isfinite(x)) throw InputError("log_sigmoid() requires a finite score");
    if (x >= 0.0) return -std::log1p(std::exp(-x));
    return x - std::log1p(std::exp(x));
}

std::vector<std::uint32_t> rank_objects(const EmbeddingModel& m, std::uint32_t s,
                                        std::span<const std::uint32_t> exclude,
                                        std::size_t top_n) {
    struct Cand {
        double score;
        std::uint32_t id;
    };
    if (s >= m.num_subjects)
        throw InputError("subject id " + std::to_string(s) + " out of range");
    std::vector<Cand> cands;
    cands.reserve(m.num_objects);
    auto u = m.subject_row(s);
    for (std::uint32_t o = 0; o < m.num_objects; ++o) {
        if (std::binary_search(exclude.begin(), exclude.end(), o)) continue;
        auto v = m.object_row(o);
        double acc = 0.0;
        for (std::uint32_t k = 0; k < m.latent_dim; ++k) acc += u[k] * v[k];
        cands.push_back({acc + m.object_bias[o], o});
    }
    std::size_t n = std::min(top_n, cands.size());
    auto better = [](const Cand& a, const Cand& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    };
    std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(n), cands.end(),
                      better);
    std::vector<std::uint32_t> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(cands[i].id);
    return out;
}

namespace {
constexpr char kModelMagic[8] = {'K', 'G', 'L', 'P', 'E', 'M', 'B', '1'};

template <typename T>
void write_pod(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
void read_pod(std::istream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
}
}  // namespace

void save_model(const EmbeddingModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write model file: " + path);
    out.write(kModelMagic, sizeof(kModelMagic));
    write_pod(out, static_cast<std::uint64_t>(m.num_subjects));
    write_pod(out, static_cast<std::uint64_t>(m.num_objects));
    write_pod(out, m.latent_dim);
    auto write_vec = [&](const std::vector<double>& v) {
        out.write(reinterpret_cast<const char*>(v.data()),
                  static_cast<std::streamsize>(v.size() * sizeof(double)));
    };
    write_vec(m.subject_factors);
    write_vec(m.object_factors);
    write_vec(m.object_bias);
    if (!out) throw InputError("short write on model file: " + path);
}

EmbeddingModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open model file: " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0)
        throw InputError("not a model file: " + path);
    std::uint64_t m64 = 0;
    std::uint64_t n64 = 0;
    std::uint32_t k = 0;
    read_pod(in, m64);
    read_pod(in, n64);
    read_pod(in, k);
    EmbeddingModel m;
    m.num_subjects = static_cast<std::uint32_t>(m64);
    m.num_objects = static_cast<std::uint32_t>(n64);
    m.latent_dim = k;
    m.subject_factors.resize(m64 * k);
    m.object_factors.resize(n64 * k);
    m.object_bias.resize(n64);
    auto read_vec = [&](std::vector<double>& v) {
        in.read(reinterpret_cast<char*>(v.data()),
                static_cast<std::streamsize>(v.size() * sizeof(double)));
    };
    read_vec(m.subject_factors);
    read_vec(m.object_factors);
    read_vec(m.object_bias);
    if (!in) throw InputError("truncated model file: " + path);
    return m;
}

}  // namespace kglp
