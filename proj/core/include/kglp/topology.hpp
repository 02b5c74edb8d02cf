// Graph topology metrics per predicate subgraph and the least-squares fits
// relating them to ranking performance.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kglp/kg.hpp"

namespace kglp {

struct TopologyProfile {
    std::string predicate;
    double density = 0.0;                 // edge_count / (m * n)
    double average_degree = 0.0;          // 2 * edge_count / (m + n)
    double clustering_coefficient = 0.0;  // global transitivity, label-merged
};

// density and average_degree treat the subgraph as bipartite over its m
// subjects and n objects.
double density(const PredicateBipartiteGraph& g);
double average_degree(const PredicateBipartiteGraph& g);

// Global transitivity 3*(#triangles)/(#length-2 paths) of the undirected
// simple graph over entity labels. Entities appearing as both subject and
// object are merged into one node, which is what lets triangles exist at
// all; a predicate with disjoint label sets scores exactly 0. Self-loops
// from reflexive edges are dropped.
double clustering_coefficient(const PredicateBipartiteGraph& g);

TopologyProfile profile_topology(const PredicateBipartiteGraph& g);

struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rvalue = 0.0;  // Pearson correlation; 0 when y has no variance
    std::size_t n_points = 0;
};

// Ordinary least squares over (x, y) points. Requires >= 2 points and
// non-constant x.
RegressionFit linear_regression(std::span<const std::pair<double, double>> points);

// Mean performance of one method on one predicate.
struct PerformancePoint {
    std::string predicate;
    double hr = 0.0;
    double arhr = 0.0;
    double auc = 0.0;
};

inline constexpr std::array<std::string_view, 3> topology_metric_names = {
    "density", "average_degree", "clustering_coefficient"};
inline constexpr std::array<std::string_view, 3> performance_metric_names = {"hr", "arhr",
                                                                             "auc"};

// One fit per (topology metric, performance metric) pair, indexed in the
// order of the name arrays above.
struct TopologyCorrelation {
    std::array<std::array<RegressionFit, 3>, 3> fits{};
};

// Joins profiles and points on predicate (both must cover the same set, one
// point per predicate) and fits the full 3x3 grid. Degenerate cells
// (constant x) are errors.
TopologyCorrelation correlate_topology(const std::vector<TopologyProfile>& profiles,
                                       const std::vector<PerformancePoint>& points);

// Same join, but a degenerate cell yields NaN slope/intercept/rvalue instead
// of failing the whole grid. Used by drivers that must always produce the
// full artifact set.
TopologyCorrelation correlate_topology_lenient(const std::vector<TopologyProfile>& profiles,
                                               const std::vector<PerformancePoint>& points);

// CSV payloads.
std::string topology_csv(const std::vector<TopologyProfile>& profiles);
std::string regression_csv(const TopologyCorrelation& grid);
// Scatter data for one (x_metric, y_metric) cell: predicate, x, y.
std::string scatter_csv(const std::vector<TopologyProfile>& profiles,
                        const std::vector<PerformancePoint>& points, std::size_t x_metric,
                        std::size_t y_metric);

}  // namespace kglp
