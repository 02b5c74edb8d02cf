#include "kglp/kg.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace kglp {

namespace {

std::string triple_key(const Triple& t) {
    std::string k;
    k.reserve(t.subject.size() + t.predicate.size() + t.object.size() + 2);
    k += t.subject;
    k += '\t';
    k += t.predicate;
    k += '\t';
    k += t.object;
    return k;
}

}  // namespace

void KnowledgeGraph::add(Triple t) {
    if (seen_.insert(triple_key(t)).second) {
        triples_.push_back(std::move(t));
    }
}

std::vector<std::string> KnowledgeGraph::predicates() const {
    std::set<std::string> uniq;
    for (const auto& t : triples_) uniq.insert(t.predicate);
    return {uniq.begin(), uniq.end()};
}

bool KnowledgeGraph::has_predicate(std::string_view p) const {
    return std::any_of(triples_.begin(), triples_.end(),
                       [&](const Triple& t) { return t.predicate == p; });
}

KnowledgeGraph parse_triples_text(std::string_view text, ParseStats* stats) {
    if (auto bad = find_invalid_utf8(text)) {
        throw InputError("input is not valid UTF-8 at byte offset " + std::to_string(*bad));
    }
    KnowledgeGraph kg;
    ParseStats local;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;

        if (trim(line).empty()) {
            ++local.skipped;
            continue;
        }
        if (line[0] == '#') {
            ++local.skipped;
            continue;
        }
        auto fields = split(line, '\t');
        if (fields.size() != 3) {
            ++local.malformed;
            continue;
        }
        Triple t{std::string(trim(fields[0])), std::string(trim(fields[1])),
                 std::string(trim(fields[2]))};
        if (t.subject.empty() || t.predicate.empty() || t.object.empty()) {
            ++local.malformed;
            continue;
        }
        ++local.parsed;
        std::size_t before = kg.size();
        kg.add(std::move(t));
        if (kg.size() == before) ++local.duplicates;
    }
    if (stats) *stats = local;
    return kg;
}

KnowledgeGraph parse_triples(std::istream& in, ParseStats* stats) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_triples_text(ss.str(), stats);
}

KnowledgeGraph parse_triples_file(const std::string& path, ParseStats* stats) {
    return parse_triples_text(read_file(path), stats);
}

bool PredicateBipartiteGraph::has_edge(std::uint32_t s, std::uint32_t o) const {
    const auto& row = adjacency[s];
    return std::binary_search(row.begin(), row.end(), o);
}

PredicateBipartiteGraph extract_bipartite(const KnowledgeGraph& kg, std::string_view predicate) {
    std::set<std::string_view> subjects;
    std::set<std::string_view> objects;
    for (const auto& t : kg.triples()) {
        if (t.predicate != predicate) continue;
        subjects.insert(t.subject);
        objects.insert(t.object);
    }
    if (subjects.empty()) {
        auto preds = kg.predicates();
        std::string msg = "unknown predicate '" + std::string(predicate) + "'; available:";
        std::size_t shown = 0;
        for (const auto& p : preds) {
            if (shown++ == 20) {
                msg += " ... (" + std::to_string(preds.size()) + " total)";
                break;
            }
            msg += " " + p;
        }
        throw InputError(msg);
    }

    PredicateBipartiteGraph g;
    g.predicate = std::string(predicate);
    g.subject_labels.assign(subjects.begin(), subjects.end());
    g.object_labels.assign(objects.begin(), objects.end());

    std::map<std::string_view, std::uint32_t> sid;
    std::map<std::string_view, std::uint32_t> oid;
    for (std::uint32_t i = 0; i < g.subject_labels.size(); ++i) sid[g.subject_labels[i]] = i;
    for (std::uint32_t i = 0; i < g.object_labels.size(); ++i) oid[g.object_labels[i]] = i;

    g.adjacency.assign(g.subject_labels.size(), {});
    for (const auto& t : kg.triples()) {
        if (t.predicate != predicate) continue;
        g.adjacency[sid[t.subject]].push_back(oid[t.object]);
    }
    g.edge_count = 0;
    for (auto& row : g.adjacency) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        g.edge_count += row.size();
    }
    return g;
}

SubgraphStats subgraph_stats(const PredicateBipartiteGraph& g) {
    return {g.subject_labels.size(), g.object_labels.size(), g.edge_count};
}

std::string dump_graph(const PredicateBipartiteGraph& g) {
    std::vector<std::string> lines;
    lines.reserve(g.edge_count);
    for (std::uint32_t s = 0; s < g.num_subjects(); ++s) {
        for (std::uint32_t o : g.adjacency[s]) {
            lines.push_back(g.subject_labels[s] + '\t' + g.predicate + '\t' + g.object_labels[o]);
        }
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

}  // namespace kglp
