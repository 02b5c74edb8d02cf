#include "kglp/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "kglp/rng.hpp"
#include "kglp/util.hpp"

namespace kglp {

namespace {

std::string entity_label(const char* prefix, std::uint32_t id) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%05u", prefix, id);
    return buf;
}

void append_kv(std::string& out, std::string_view key, std::string_view value) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
}

void append_kv(std::string& out, std::string_view key, std::uint64_t value) {
    append_kv(out, key, std::string_view(std::to_string(value)));
}

// Draws `count` distinct values in [base, base+span) and appends them in
// ascending order. `first` is always included.
std::vector<std::uint32_t> distinct_in_range(Rng& rng, std::uint32_t base,
                                             std::uint32_t span, std::uint32_t count,
                                             std::uint32_t first) {
    std::vector<std::uint32_t> chosen = {first};
    while (chosen.size() < count) {
        const std::uint32_t cand = base + rng.uniform_index(span);
        if (std::find(chosen.begin(), chosen.end(), cand) == chosen.end()) {
            chosen.push_back(cand);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

SyntheticOutput generate_planted(const SyntheticSpec& spec) {
    const std::uint32_t m = spec.subjects;
    const std::uint32_t n = spec.objects;
    const std::uint32_t spb = m / spec.blocks;
    const std::uint32_t opb = n / spec.blocks;
    const std::string pred = "blocks";

    SyntheticOutput out;
    Rng rng(derive_seed(spec.seed, "planted"));
    for (std::uint32_t s = 0; s < m; ++s) {
        const std::uint32_t block = s / spb;
        const std::uint32_t base = block * opb;
        std::size_t emitted = 0;
        for (std::uint32_t j = 0; j < opb; ++j) {
            if (rng.uniform01() < spec.within_prob) {
                out.triples.push_back(
                    {entity_label("s", s), pred, entity_label("o", base + j)});
                ++emitted;
            }
        }
        if (emitted == 0) {
            out.triples.push_back(
                {entity_label("s", s), pred, entity_label("o", base + rng.uniform_index(opb))});
        }
    }

    append_kv(out.truth, "kind", generator_name(GeneratorKind::planted_blocks));
    append_kv(out.truth, "seed", spec.seed);
    append_kv(out.truth, "predicate", pred);
    append_kv(out.truth, "subjects", m);
    append_kv(out.truth, "objects", n);
    append_kv(out.truth, "blocks", spec.blocks);
    append_kv(out.truth, "within_prob", format_double(spec.within_prob));
    append_kv(out.truth, "block_rule",
              "subject s in block s/" + std::to_string(spb) + "; object o in block o/" +
                  std::to_string(opb) + "; edges within matching blocks only");
    return out;
}

SyntheticOutput generate_popularity(const SyntheticSpec& spec) {
    const std::uint32_t m = spec.subjects;
    const std::uint32_t n = spec.objects;
    const std::string pred = "skew";

    // Zipf weights over object ids: object o has weight (o+1)^-a.
    std::vector<double> cum(n);
    double acc = 0.0;
    for (std::uint32_t o = 0; o < n; ++o) {
        acc += std::pow(static_cast<double>(o) + 1.0, -spec.zipf_exponent);
        cum[o] = acc;
    }

    SyntheticOutput out;
    Rng rng(derive_seed(spec.seed, "skew"));
    std::vector<std::uint32_t> chosen;
    for (std::uint32_t s = 0; s < m; ++s) {
        chosen.clear();
        while (chosen.size() < spec.edges_per_subject) {
            const double r = rng.uniform01() * acc;
            auto it = std::upper_bound(cum.begin(), cum.end(), r);
            std::uint32_t o = it == cum.end()
                                  ? n - 1
                                  : static_cast<std::uint32_t>(it - cum.begin());
            if (std::find(chosen.begin(), chosen.end(), o) == chosen.end()) {
                chosen.push_back(o);
            }
        }
        std::sort(chosen.begin(), chosen.end());
        for (std::uint32_t o : chosen) {
            out.triples.push_back({entity_label("s", s), pred, entity_label("o", o)});
        }
    }

    append_kv(out.truth, "kind", generator_name(GeneratorKind::popularity_skew));
    append_kv(out.truth, "seed", spec.seed);
    append_kv(out.truth, "predicate", pred);
    append_kv(out.truth, "subjects", m);
    append_kv(out.truth, "objects", n);
    append_kv(out.truth, "edges_per_subject", spec.edges_per_subject);
    append_kv(out.truth, "zipf_exponent", format_double(spec.zipf_exponent));
    append_kv(out.truth, "weight_rule", "object o drawn with weight (o+1)^-zipf_exponent");
    return out;
}

SyntheticOutput generate_density_sweep(const SyntheticSpec& spec) {
    const std::uint32_t m = spec.subjects;
    const std::uint32_t n = spec.objects;
    const std::uint32_t spb = m / spec.blocks;
    const std::uint32_t opb = n / spec.blocks;

    SyntheticOutput out;
    append_kv(out.truth, "kind", generator_name(GeneratorKind::density_sweep));
    append_kv(out.truth, "seed", spec.seed);
    append_kv(out.truth, "subjects", m);
    append_kv(out.truth, "objects", n);
    append_kv(out.truth, "blocks", spec.blocks);
    append_kv(out.truth, "steps", spec.steps);

    const std::uint64_t family_seed = derive_seed(spec.seed, "density-sweep");
    for (std::uint32_t i = 0; i < spec.steps; ++i) {
        const std::string pred = "density" + std::to_string(i + 1);
        const std::uint32_t degree = spec.degree_base + i * spec.degree_step;
        Rng rng(derive_seed(family_seed, std::uint64_t{i}));
        for (std::uint32_t s = 0; s < m; ++s) {
            const std::uint32_t block = s / spb;
            const std::uint32_t base = block * opb;
            // First edge covers object (s mod opb) of the block so every
            // object keeps degree >= 1 and the vertex counts stay exact.
            const std::uint32_t first = base + (s % spb) % opb;
            for (std::uint32_t o : distinct_in_range(rng, base, opb, degree, first)) {
                out.triples.push_back({entity_label("s", s), pred, entity_label("o", o)});
            }
        }
        const std::string key = "predicate." + pred + ".";
        append_kv(out.truth, key + "degree", degree);
        append_kv(out.truth, key + "edges", std::uint64_t{m} * degree);
        append_kv(out.truth, key + "density",
                  format_double(static_cast<double>(degree) / static_cast<double>(n)));
    }
    return out;
}

SyntheticOutput generate_overlap_sweep(const SyntheticSpec& spec) {
    const std::uint32_t m = spec.subjects;
    const std::uint32_t n = spec.objects;
    const std::uint32_t blocks = spec.blocks;
    const std::uint32_t spb = m / blocks;
    const std::uint32_t opb = n / blocks;

    SyntheticOutput out;
    append_kv(out.truth, "kind", generator_name(GeneratorKind::overlap_sweep));
    append_kv(out.truth, "seed", spec.seed);
    append_kv(out.truth, "subjects", m);
    append_kv(out.truth, "objects", n);
    append_kv(out.truth, "blocks", blocks);
    append_kv(out.truth, "steps", spec.steps);
    append_kv(out.truth, "core_degree", spec.core_degree);

    // Subject entities are labels e00000..e{m-1}; core objects continue the
    // same label space at offset m. Triangle edges link subject entities, so
    // after label-merging they close length-2 paths.
    const std::uint64_t family_seed = derive_seed(spec.seed, "overlap-sweep");
    for (std::uint32_t i = 0; i < spec.steps; ++i) {
        const std::string pred = "overlap" + std::to_string(i + 1);
        Rng rng(derive_seed(family_seed, std::uint64_t{i}));

        for (std::uint32_t s = 0; s < m; ++s) {
            const std::uint32_t block = s / spb;
            const std::uint32_t base = block * opb;
            const std::uint32_t first = base + (s % spb) % opb;
            for (std::uint32_t o :
                 distinct_in_range(rng, base, opb, spec.core_degree, first)) {
                out.triples.push_back({entity_label("e", s), pred, entity_label("e", m + o)});
            }
        }

        // Constant pairing between adjacent blocks (both directions), so the
        // object universe contains every subject entity at every step and
        // only the triangle count varies along the sweep. Pairs never share
        // a block, and each entity has exactly one pairing partner, so no
        // triangle can use a pairing edge.
        for (std::uint32_t b = 0; b + 1 < blocks; b += 2) {
            for (std::uint32_t j = 0; j < spb; ++j) {
                const std::uint32_t lo = b * spb + j;
                const std::uint32_t hi = (b + 1) * spb + j;
                out.triples.push_back({entity_label("e", lo), pred, entity_label("e", hi)});
                out.triples.push_back({entity_label("e", hi), pred, entity_label("e", lo)});
            }
        }

        // Planted triangles: members come from three distinct blocks (so
        // their core neighborhoods are disjoint and no accidental triangle
        // can form) and each entity joins at most one triangle. Both
        // directions of each triangle edge are emitted; the merged
        // undirected graph is the same, but every member then carries two
        // structureless subject edges, which is what degrades ranking
        // quality as the planted-triangle count grows.
        const std::uint32_t planted = i * spec.triangles_per_step;
        std::vector<std::vector<std::uint32_t>> pool(blocks);
        for (std::uint32_t b = 0; b < blocks; ++b) {
            pool[b].resize(spb);
            for (std::uint32_t j = 0; j < spb; ++j) pool[b][j] = b * spb + j;
            for (std::uint32_t j = spb; j > 1; --j) {
                std::swap(pool[b][j - 1], pool[b][rng.uniform_index(j)]);
            }
        }
        std::vector<std::uint32_t> next(blocks, 0);
        for (std::uint32_t k = 0; k < planted; ++k) {
            std::uint32_t member[3];
            for (std::uint32_t j = 0; j < 3; ++j) {
                const std::uint32_t b = (3 * k + j) % blocks;
                member[j] = pool[b][next[b]++];
            }
            for (std::uint32_t j = 0; j < 3; ++j) {
                out.triples.push_back({entity_label("e", member[j]), pred,
                                       entity_label("e", member[(j + 1) % 3])});
                out.triples.push_back({entity_label("e", member[(j + 1) % 3]), pred,
                                       entity_label("e", member[j])});
            }
        }
        const std::string key = "predicate." + pred + ".";
        append_kv(out.truth, key + "planted_triangles", planted);
        append_kv(out.truth, key + "triangle_triples", std::uint64_t{planted} * 6);
        append_kv(out.truth, key + "core_edges", std::uint64_t{m} * spec.core_degree);
        append_kv(out.truth, key + "pairing_triples", std::uint64_t{m});
    }
    return out;
}

}  // namespace

std::string_view generator_name(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::planted_blocks: return "planted-blocks";
        case GeneratorKind::popularity_skew: return "popularity-skew";
        case GeneratorKind::density_sweep: return "density-sweep";
        case GeneratorKind::overlap_sweep: return "overlap-sweep";
    }
    throw std::logic_error("unreachable generator kind");
}

GeneratorKind parse_generator(std::string_view name) {
    if (name == "planted-blocks") return GeneratorKind::planted_blocks;
    if (name == "popularity-skew") return GeneratorKind::popularity_skew;
    if (name == "density-sweep") return GeneratorKind::density_sweep;
    if (name == "overlap-sweep") return GeneratorKind::overlap_sweep;
    throw ConfigError("unknown generator kind '" + std::string(name) +
                      "' (expected planted-blocks, popularity-skew, density-sweep, or "
                      "overlap-sweep)");
}

void SyntheticSpec::resolve() {
    switch (kind) {
        case GeneratorKind::planted_blocks:
            if (subjects == 0) subjects = 1000;
            if (objects == 0) objects = 500;
            if (blocks == 0) blocks = 4;
            if (within_prob == 0.0) within_prob = 0.2;
            break;
        case GeneratorKind::popularity_skew:
            if (subjects == 0) subjects = 1000;
            if (objects == 0) objects = 500;
            if (edges_per_subject == 0) edges_per_subject = 5;
            if (zipf_exponent == 0.0) zipf_exponent = 1.0;
            break;
        case GeneratorKind::density_sweep:
            if (subjects == 0) subjects = 160;
            if (objects == 0) objects = 80;
            if (blocks == 0) blocks = 4;
            if (steps == 0) steps = 8;
            if (degree_base == 0) degree_base = 3;
            if (degree_step == 0) degree_step = 1;
            break;
        case GeneratorKind::overlap_sweep:
            if (subjects == 0) subjects = 480;
            if (objects == 0) objects = 80;
            if (blocks == 0) blocks = 4;
            if (steps == 0) steps = 6;
            if (core_degree == 0) core_degree = 5;
            if (triangles_per_step == 0) triangles_per_step = 20;
            break;
    }

    if (subjects == 0 || objects == 0) {
        throw ConfigError("synthetic spec: subjects and objects must be positive");
    }
    const bool blocked = kind != GeneratorKind::popularity_skew;
    if (blocked) {
        if (blocks == 0 || subjects % blocks != 0 || objects % blocks != 0) {
            throw ConfigError("synthetic spec: blocks must divide both subjects (" +
                              std::to_string(subjects) + ") and objects (" +
                              std::to_string(objects) + "), got " + std::to_string(blocks));
        }
    }
    switch (kind) {
        case GeneratorKind::planted_blocks:
            if (!(within_prob > 0.0 && within_prob <= 1.0)) {
                throw ConfigError("synthetic spec: within_prob must be in (0, 1]");
            }
            break;
        case GeneratorKind::popularity_skew:
            if (edges_per_subject == 0 || edges_per_subject > objects) {
                throw ConfigError("synthetic spec: edges_per_subject must be in [1, objects]");
            }
            if (zipf_exponent <= 0.0) {
                throw ConfigError("synthetic spec: zipf_exponent must be positive");
            }
            break;
        case GeneratorKind::density_sweep: {
            if (steps < 2) throw ConfigError("synthetic spec: density sweep needs >= 2 steps");
            if (degree_base < 2) {
                throw ConfigError("synthetic spec: degree_base must be >= 2 so subjects "
                                  "stay testable after holdout");
            }
            if (degree_step == 0) {
                throw ConfigError("synthetic spec: degree_step must be >= 1");
            }
            const std::uint32_t opb = objects / blocks;
            const std::uint32_t max_degree = degree_base + (steps - 1) * degree_step;
            if (max_degree > opb) {
                throw ConfigError("synthetic spec: top-step degree " +
                                  std::to_string(max_degree) + " exceeds block size " +
                                  std::to_string(opb));
            }
            if (subjects / blocks < opb) {
                throw ConfigError("synthetic spec: need subjects-per-block >= "
                                  "objects-per-block for full object coverage");
            }
            break;
        }
        case GeneratorKind::overlap_sweep: {
            if (steps < 2) throw ConfigError("synthetic spec: overlap sweep needs >= 2 steps");
            if (blocks < 3) {
                throw ConfigError("synthetic spec: overlap sweep needs >= 3 blocks to "
                                  "keep triangle members apart");
            }
            if (blocks % 2 != 0) {
                throw ConfigError("synthetic spec: overlap sweep needs an even block "
                                  "count for the cross-block pairing");
            }
            if (core_degree < 2 || core_degree > objects / blocks) {
                throw ConfigError("synthetic spec: core_degree must be in [2, objects/blocks]");
            }
            if (triangles_per_step == 0) {
                throw ConfigError("synthetic spec: triangles_per_step must be >= 1");
            }
            if (subjects / blocks < objects / blocks) {
                throw ConfigError("synthetic spec: need subjects-per-block >= "
                                  "objects-per-block for full object coverage");
            }
            const std::uint64_t slots = 3ull * triangles_per_step * (steps - 1);
            const std::uint64_t per_block = (slots + blocks - 1) / blocks;
            if (per_block > subjects / blocks) {
                throw ConfigError("synthetic spec: top step needs " +
                                  std::to_string(per_block) +
                                  " triangle members per block but only " +
                                  std::to_string(subjects / blocks) + " subjects exist");
            }
            break;
        }
    }
}

SyntheticOutput generate_synthetic(const SyntheticSpec& spec) {
    SyntheticSpec resolved = spec;
    resolved.resolve();
    switch (resolved.kind) {
        case GeneratorKind::planted_blocks: return generate_planted(resolved);
        case GeneratorKind::popularity_skew: return generate_popularity(resolved);
        case GeneratorKind::density_sweep: return generate_density_sweep(resolved);
        case GeneratorKind::overlap_sweep: return generate_overlap_sweep(resolved);
    }
    throw std::logic_error("unreachable generator kind");
}

std::span<const RelationShape> reference_shapes() {
    static const std::vector<RelationShape> shapes = {
        {"Import", 142, 62, 391},
        {"Export", 140, 176, 579},
        {"isInterestedIn", 358, 213, 464},
        {"hasOfficialLanguage", 583, 214, 964},
        {"dealsWith", 131, 124, 945},
        {"happenedIn", 7121, 5526, 12500},
        {"participatedIn", 2330, 7043, 16809},
        {"isConnectedTo", 2835, 4391, 33581},
        {"hasChild", 10758, 12800, 17320},
        {"influence", 8056, 9153, 25819},
        {"wroteMusicFor", 5109, 21487, 24271},
        {"edited", 549, 5673, 5946},
        {"owns", 8330, 24422, 26536},
    };
    return shapes;
}

std::vector<Triple> generate_shaped(const RelationShape& shape, std::uint64_t seed) {
    const std::uint64_t m = shape.num_subjects;
    const std::uint64_t n = shape.num_objects;
    const std::uint64_t want = shape.num_edges;
    if (m == 0 || n == 0) throw ConfigError("shape '" + shape.name + "': empty vertex set");
    if (want < std::max(m, n)) {
        throw ConfigError("shape '" + shape.name + "': " + std::to_string(want) +
                          " edges cannot cover " + std::to_string(std::max(m, n)) +
                          " vertices on one side");
    }
    if (want > m * n) {
        throw ConfigError("shape '" + shape.name + "': more edges than subject-object pairs");
    }

    std::unordered_set<std::uint64_t> used;
    used.reserve(want * 2);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(want);

    // (i mod m, i mod n) pairs are pairwise distinct while i < lcm(m, n),
    // and max(m, n) <= lcm(m, n), so this covers both sides without
    // duplicates.
    for (std::uint64_t i = 0; i < std::max(m, n); ++i) {
        const auto s = static_cast<std::uint32_t>(i % m);
        const auto o = static_cast<std::uint32_t>(i % n);
        used.insert(s * n + o);
        edges.emplace_back(s, o);
    }
    Rng rng(seed);
    while (edges.size() < want) {
        const auto s = rng.uniform_index(static_cast<std::uint32_t>(m));
        const auto o = rng.uniform_index(static_cast<std::uint32_t>(n));
        if (used.insert(s * n + o).second) edges.emplace_back(s, o);
    }

    std::vector<Triple> triples;
    triples.reserve(edges.size());
    const std::string sp = shape.name + "_s";
    const std::string op = shape.name + "_o";
    for (const auto& [s, o] : edges) {
        triples.push_back({entity_label(sp.c_str(), s), shape.name, entity_label(op.c_str(), o)});
    }
    return triples;
}

std::vector<Triple> generate_reference_corpus(std::uint64_t seed) {
    std::vector<Triple> all;
    for (const RelationShape& shape : reference_shapes()) {
        std::vector<Triple> part = generate_shaped(shape, derive_seed(seed, shape.name));
        all.insert(all.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return all;
}

}  // namespace kglp
