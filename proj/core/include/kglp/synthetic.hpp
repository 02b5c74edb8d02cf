// Synthetic graph generators used for fixtures, qualitative benchmarks, and
// scale-realistic corpora. All generators are deterministic per seed.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kglp/kg.hpp"

namespace kglp {

enum class GeneratorKind {
    // Block-diagonal bipartite graph: subjects and objects are partitioned
    // into aligned blocks, edges appear only within a block with fixed
    // probability. Learnable structure for ranking models.
    planted_blocks,
    // Every subject links a fixed number of objects drawn from a Zipf
    // distribution over object ids, so low ids are far more popular.
    popularity_skew,
    // A family of predicates density1..densityK over one fixed vertex set,
    // with exact per-subject degree rising per step: density strictly
    // increases while the block structure stays learnable.
    density_sweep,
    // A family overlap1..overlapK: a fixed block-bipartite core plus, per
    // step, a growing number of planted entity triangles (edges between
    // subject entities across blocks). Clustering coefficient strictly
    // rises with the step; the triangle edges are structureless noise the
    // ranking model cannot predict.
    overlap_sweep,
};

std::string_view generator_name(GeneratorKind kind);
GeneratorKind parse_generator(std::string_view name);

struct SyntheticSpec {
    GeneratorKind kind = GeneratorKind::planted_blocks;
    std::uint32_t subjects = 0;    // 0 means the kind's default
    std::uint32_t objects = 0;
    std::uint32_t blocks = 0;
    double within_prob = 0.0;      // planted_blocks edge probability
    double zipf_exponent = 0.0;    // popularity_skew
    std::uint32_t edges_per_subject = 0;  // popularity_skew per-subject degree
    std::uint32_t steps = 0;       // sweep families: number of predicates
    std::uint32_t degree_base = 0;  // density_sweep: degree at step 1
    std::uint32_t degree_step = 0;  // density_sweep: degree increment per step
    std::uint32_t core_degree = 0;  // overlap_sweep core per-subject degree
    std::uint32_t triangles_per_step = 0;  // overlap_sweep
    std::uint64_t seed = 1;

    // Fills zero fields with the kind's defaults and checks consistency.
    void resolve();
};

struct SyntheticOutput {
    std::vector<Triple> triples;
    std::string truth;  // key=value sidecar describing the planted structure
};

SyntheticOutput generate_synthetic(const SyntheticSpec& spec);

// Entity/edge counts of the 13 YAGO2 relations the engine is sized for.
// Shaped fixtures reproduce these counts exactly with random edges.
struct RelationShape {
    std::string name;
    std::uint32_t num_subjects = 0;
    std::uint32_t num_objects = 0;
    std::size_t num_edges = 0;
};

std::span<const RelationShape> reference_shapes();

// Random bipartite graph hitting the shape's counts exactly: every subject
// and object has degree >= 1 and the edge count is exact.
std::vector<Triple> generate_shaped(const RelationShape& shape, std::uint64_t seed);

// All reference shapes as one corpus; per-relation seeds derive from `seed`.
std::vector<Triple> generate_reference_corpus(std::uint64_t seed);

}  // namespace kglp
