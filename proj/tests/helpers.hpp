#pragma once

// Shared fixtures for the test binaries: throwaway directories, hand-built
// and randomized predicate graphs, randomized models.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "kglp/kg.hpp"
#include "kglp/model.hpp"
#include "kglp/rng.hpp"

namespace kglp::testing {

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static std::atomic<unsigned> counter{0};
        const unsigned id = counter.fetch_add(1);
        path = std::filesystem::temp_directory_path() /
               ("kglp_test_" + std::to_string(::getpid()) + "_" + std::to_string(id));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline std::string padded_label(const char* prefix, std::uint32_t id) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%s%04u", prefix, id);
    return buf;
}

// Graph from an explicit edge list. Labels are zero-padded so id order and
// label order agree, matching what extract_bipartite produces.
inline PredicateBipartiteGraph make_graph(std::uint32_t m, std::uint32_t n,
                                          std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                                          std::string predicate = "p") {
    PredicateBipartiteGraph g;
    g.predicate = std::move(predicate);
    for (std::uint32_t s = 0; s < m; ++s) g.subject_labels.push_back(padded_label("s", s));
    for (std::uint32_t o = 0; o < n; ++o) g.object_labels.push_back(padded_label("o", o));
    g.adjacency.resize(m);
    for (auto [s, o] : edges) g.adjacency[s].push_back(o);
    for (auto& row : g.adjacency) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        g.edge_count += row.size();
    }
    return g;
}

// Random bipartite graph: each (s, o) pair is an edge with probability p,
// then subjects are topped up to min_degree with uniform draws.
inline PredicateBipartiteGraph random_graph(Rng& rng, std::uint32_t m, std::uint32_t n, double p,
                                            std::uint32_t min_degree = 0) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::vector<bool>> present(m, std::vector<bool>(n, false));
    for (std::uint32_t s = 0; s < m; ++s) {
        std::uint32_t deg = 0;
        for (std::uint32_t o = 0; o < n; ++o) {
            if (rng.uniform01() < p) {
                present[s][o] = true;
                edges.emplace_back(s, o);
                ++deg;
            }
        }
        while (deg < min_degree && deg < n) {
            const std::uint32_t o = rng.uniform_index(n);
            if (present[s][o]) continue;
            present[s][o] = true;
            edges.emplace_back(s, o);
            ++deg;
        }
    }
    return make_graph(m, n, std::move(edges));
}

// Model with entries uniform in [-scale, scale); independent of init_model.
inline EmbeddingModel random_model(Rng& rng, std::uint32_t m, std::uint32_t n, std::uint32_t k,
                                   double scale = 0.5) {
    EmbeddingModel model;
    model.num_subjects = m;
    model.num_objects = n;
    model.latent_dim = k;
    model.subject_factors.resize(static_cast<std::size_t>(m) * k);
    model.object_factors.resize(static_cast<std::size_t>(n) * k);
    model.object_bias.resize(n);
    auto fill = [&](std::vector<double>& v) {
        for (double& x : v) x = (rng.uniform01() * 2.0 - 1.0) * scale;
    };
    fill(model.subject_factors);
    fill(model.object_factors);
    fill(model.object_bias);
    return model;
}

}  // namespace kglp::testing
