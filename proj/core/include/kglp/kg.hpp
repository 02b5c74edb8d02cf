#pragma once

// Triple store and per-predicate bipartite views.
//
// Input format: UTF-8 TSV, one `subject<TAB>predicate<TAB>object` per line.
// Lines starting with '#' and blank lines are skipped. Malformed lines
// (wrong field count, or an empty field after trimming) are counted and
// skipped; invalid UTF-8 aborts with the byte offset. Exact duplicate
// triples collapse to one fact.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "kglp/util.hpp"

namespace kglp {

struct Triple {
    std::string subject;
    std::string predicate;
    std::string object;

    bool operator==(const Triple&) const = default;
};

struct ParseStats {
    std::size_t parsed = 0;      // well-formed triple lines
    std::size_t duplicates = 0;  // parsed lines collapsed into an existing fact
    std::size_t malformed = 0;   // skipped lines (bad field count / empty field)
    std::size_t skipped = 0;     // comment and blank lines
};

class KnowledgeGraph {
public:
    void add(Triple t);  // no-op on exact duplicate

    const std::vector<Triple>& triples() const { return triples_; }
    std::size_t size() const { return triples_.size(); }

    // Distinct predicate labels, lexicographically sorted.
    std::vector<std::string> predicates() const;
    bool has_predicate(std::string_view p) const;

private:
    std::vector<Triple> triples_;
    std::unordered_set<std::string> seen_;  // "s\tp\to" keys for duplicate collapse
};

// Indexed bipartite view of one predicate's edges. Subject and object
// indexes are independent: a label on both sides gets one id in each.
// Ids follow lexicographic label order, so layouts are identical on
// every run and platform.
struct PredicateBipartiteGraph {
    std::string predicate;
    std::vector<std::string> subject_labels;           // id -> label, sorted
    std::vector<std::string> object_labels;            // id -> label, sorted
    std::vector<std::vector<std::uint32_t>> adjacency; // per subject, sorted object ids
    std::size_t edge_count = 0;

    std::uint32_t num_subjects() const { return static_cast<std::uint32_t>(subject_labels.size()); }
    std::uint32_t num_objects() const { return static_cast<std::uint32_t>(object_labels.size()); }

    bool has_edge(std::uint32_t s, std::uint32_t o) const;
    std::uint32_t degree(std::uint32_t s) const { return static_cast<std::uint32_t>(adjacency[s].size()); }

    bool operator==(const PredicateBipartiteGraph&) const = default;
};

struct SubgraphStats {
    std::size_t num_subjects = 0;
    std::size_t num_objects = 0;
    std::size_t edge_count = 0;

    bool operator==(const SubgraphStats&) const = default;
};

KnowledgeGraph parse_triples(std::istream& in, ParseStats* stats = nullptr);
KnowledgeGraph parse_triples_text(std::string_view text, ParseStats* stats = nullptr);
KnowledgeGraph parse_triples_file(const std::string& path, ParseStats* stats = nullptr);

// Throws InputError naming the predicate and listing available ones.
PredicateBipartiteGraph extract_bipartite(const KnowledgeGraph& kg, std::string_view predicate);

SubgraphStats subgraph_stats(const PredicateBipartiteGraph& g);

// TSV dump, lines sorted lexicographically; parse_triples_text round-trips it.
std::string dump_graph(const PredicateBipartiteGraph& g);

}  // namespace kglp
