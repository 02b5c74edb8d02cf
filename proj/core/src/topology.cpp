#include "kglp/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "kglp/util.hpp"

namespace kglp {

double density(const PredicateBipartiteGraph& g) {
    if (g.num_subjects() == 0 || g.num_objects() == 0) {
        throw InputError("density: empty vertex set for predicate '" + g.predicate + "'");
    }
    return static_cast<double>(g.edge_count) /
           (static_cast<double>(g.num_subjects()) * static_cast<double>(g.num_objects()));
}

double average_degree(const PredicateBipartiteGraph& g) {
    const double vertices =
        static_cast<double>(g.num_subjects()) + static_cast<double>(g.num_objects());
    if (vertices == 0.0) {
        throw InputError("average_degree: empty vertex set for predicate '" + g.predicate +
                         "'");
    }
    return 2.0 * static_cast<double>(g.edge_count) / vertices;
}

double clustering_coefficient(const PredicateBipartiteGraph& g) {
    // Merge subject and object labels into one node set.
    std::vector<std::string> labels = g.subject_labels;
    labels.insert(labels.end(), g.object_labels.begin(), g.object_labels.end());
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    std::unordered_map<std::string_view, std::uint32_t> node_of;
    node_of.reserve(labels.size());
    for (std::uint32_t i = 0; i < labels.size(); ++i) node_of.emplace(labels[i], i);

    std::vector<std::vector<std::uint32_t>> adj(labels.size());
    for (std::uint32_t s = 0; s < g.num_subjects(); ++s) {
        const std::uint32_t u = node_of.at(g.subject_labels[s]);
        for (std::uint32_t o : g.adjacency[s]) {
            const std::uint32_t v = node_of.at(g.object_labels[o]);
            if (u == v) continue;  // reflexive edge, no simple-graph counterpart
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }

    // wedges = sum over nodes of C(deg, 2); each edge's common-neighbor
    // count sums to 3 * triangles over all edges.
    double wedges = 0.0;
    for (const auto& row : adj) {
        const double d = static_cast<double>(row.size());
        wedges += d * (d - 1.0) / 2.0;
    }
    if (wedges == 0.0) return 0.0;

    double closed = 0.0;
    for (std::uint32_t u = 0; u < adj.size(); ++u) {
        for (std::uint32_t v : adj[u]) {
            if (v <= u) continue;
            auto it_u = adj[u].begin();
            auto it_v = adj[v].begin();
            while (it_u != adj[u].end() && it_v != adj[v].end()) {
                if (*it_u < *it_v) {
                    ++it_u;
                } else if (*it_v < *it_u) {
                    ++it_v;
                } else {
                    ++closed;
                    ++it_u;
                    ++it_v;
                }
            }
        }
    }
    return closed / wedges;
}

TopologyProfile profile_topology(const PredicateBipartiteGraph& g) {
    return {g.predicate, density(g), average_degree(g), clustering_coefficient(g)};
}

RegressionFit linear_regression(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) {
        throw InputError("linear_regression: need at least 2 points, got " +
                         std::to_string(points.size()));
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());

    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 0.0) {
        throw InputError("linear_regression: x values are constant, fit is degenerate");
    }

    RegressionFit fit;
    fit.n_points = points.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.rvalue = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 0.0;
    return fit;
}

namespace {

double topology_metric(const TopologyProfile& t, std::size_t xi) {
    return xi == 0 ? t.density : xi == 1 ? t.average_degree : t.clustering_coefficient;
}

double performance_metric(const PerformancePoint& p, std::size_t yi) {
    return yi == 0 ? p.hr : yi == 1 ? p.arhr : p.auc;
}

// One performance point per profile, in profile order. Throws on duplicate,
// missing, or extra predicates.
std::vector<const PerformancePoint*> join_points(
    const std::vector<TopologyProfile>& profiles,
    const std::vector<PerformancePoint>& points) {
    std::unordered_map<std::string_view, const PerformancePoint*> by_pred;
    by_pred.reserve(points.size());
    for (const PerformancePoint& p : points) {
        if (!by_pred.emplace(p.predicate, &p).second) {
            throw InputError("correlate_topology: duplicate performance point for '" +
                             p.predicate + "'");
        }
    }
    std::vector<const PerformancePoint*> joined;
    joined.reserve(profiles.size());
    std::string missing;
    for (const TopologyProfile& t : profiles) {
        auto it = by_pred.find(t.predicate);
        if (it == by_pred.end()) {
            missing += missing.empty() ? t.predicate : ", " + t.predicate;
        } else {
            joined.push_back(it->second);
        }
    }
    if (!missing.empty() || profiles.size() != points.size()) {
        throw InputError("correlate_topology: predicate sets differ (" +
                         std::to_string(profiles.size()) + " profiles vs " +
                         std::to_string(points.size()) + " points" +
                         (missing.empty() ? "" : "; profiles without points: " + missing) +
                         ")");
    }
    return joined;
}

TopologyCorrelation fit_grid(const std::vector<TopologyProfile>& profiles,
                             const std::vector<PerformancePoint>& points, bool lenient) {
    const std::vector<const PerformancePoint*> joined = join_points(profiles, points);
    std::vector<std::pair<double, double>> cell;
    cell.reserve(profiles.size());
    TopologyCorrelation grid;
    for (std::size_t xi = 0; xi < 3; ++xi) {
        for (std::size_t yi = 0; yi < 3; ++yi) {
            cell.clear();
            for (std::size_t i = 0; i < profiles.size(); ++i) {
                cell.emplace_back(topology_metric(profiles[i], xi),
                                  performance_metric(*joined[i], yi));
            }
            if (!lenient) {
                grid.fits[xi][yi] = linear_regression(cell);
                continue;
            }
            try {
                grid.fits[xi][yi] = linear_regression(cell);
            } catch (const InputError&) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                grid.fits[xi][yi] = {nan, nan, nan, cell.size()};
            }
        }
    }
    return grid;
}

}  // namespace

TopologyCorrelation correlate_topology(const std::vector<TopologyProfile>& profiles,
                                       const std::vector<PerformancePoint>& points) {
    return fit_grid(profiles, points, false);
}

TopologyCorrelation correlate_topology_lenient(const std::vector<TopologyProfile>& profiles,
                                               const std::vector<PerformancePoint>& points) {
    return fit_grid(profiles, points, true);
}

std::string topology_csv(const std::vector<TopologyProfile>& profiles) {
    std::string out = "predicate,density,average_degree,clustering_coefficient\n";
    for (const TopologyProfile& t : profiles) {
        out += csv_field(t.predicate);
        out += ',';
        out += format_double(t.density);
        out += ',';
        out += format_double(t.average_degree);
        out += ',';
        out += format_double(t.clustering_coefficient);
        out += '\n';
    }
    return out;
}

std::string regression_csv(const TopologyCorrelation& grid) {
    std::string out = "x_metric,y_metric,slope,intercept,rvalue,n_points\n";
    for (std::size_t xi = 0; xi < 3; ++xi) {
        for (std::size_t yi = 0; yi < 3; ++yi) {
            const RegressionFit& f = grid.fits[xi][yi];
            out += std::string(topology_metric_names[xi]);
            out += ',';
            out += std::string(performance_metric_names[yi]);
            out += ',';
            out += format_double(f.slope);
            out += ',';
            out += format_double(f.intercept);
            out += ',';
            out += format_double(f.rvalue);
            out += ',';
            out += std::to_string(f.n_points);
            out += '\n';
        }
    }
    return out;
}

std::string scatter_csv(const std::vector<TopologyProfile>& profiles,
                        const std::vector<PerformancePoint>& points, std::size_t x_metric,
                        std::size_t y_metric) {
    std::unordered_map<std::string_view, const PerformancePoint*> by_pred;
    for (const PerformancePoint& p : points) by_pred.emplace(p.predicate, &p);

    std::string out = "predicate,";
    out += std::string(topology_metric_names.at(x_metric));
    out += ',';
    out += std::string(performance_metric_names.at(y_metric));
    out += '\n';
    for (const TopologyProfile& t : profiles) {
        auto it = by_pred.find(t.predicate);
        if (it == by_pred.end()) {
            throw InputError("scatter_csv: no performance point for '" + t.predicate + "'");
        }
        const PerformancePoint& p = *it->second;
        const double x = x_metric == 0   ? t.density
                         : x_metric == 1 ? t.average_degree
                                         : t.clustering_coefficient;
        const double y = y_metric == 0 ? p.hr : y_metric == 1 ? p.arhr : p.auc;
        out += csv_field(t.predicate);
        out += ',';
        out += format_double(x);
        out += ',';
        out += format_double(y);
        out += '\n';
    }
    return out;
}

}  // namespace kglp
