#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "kglp/rng.hpp"
#include "kglp/topology.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

using namespace kglp;

namespace {

// Graph whose subjects and objects share one label pool, so the merged view
// has cross-side structure. Edge (a, b) links entity a to entity b.
PredicateBipartiteGraph entity_graph(std::uint32_t entities,
                                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    KnowledgeGraph kg;
    for (auto [a, b] : edges)
        kg.add({testing::padded_label("e", a), "p", testing::padded_label("e", b)});
    return extract_bipartite(kg, "p");
}

}  // namespace

TEST_SUITE_BEGIN("topology");

TEST_CASE("density and average degree follow their formulas") {
    auto g = testing::make_graph(4, 5, {{0, 0}, {0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 0}});
    CHECK(density(g) == doctest::Approx(6.0 / 20.0));
    CHECK(average_degree(g) == doctest::Approx(12.0 / 9.0));

    Rng rng(3);
    for (int round = 0; round < 10; ++round) {
        auto r = testing::random_graph(rng, 5 + rng.uniform_index(20), 4 + rng.uniform_index(10),
                                       0.3);
        const double m = r.num_subjects();
        const double n = r.num_objects();
        const double e = static_cast<double>(r.edge_count);
        CHECK(density(r) == doctest::Approx(e / (m * n)));
        CHECK(average_degree(r) == doctest::Approx(2.0 * e / (m + n)));
    }
}

TEST_CASE("clustering is zero without label overlap") {
    Rng rng(4);
    auto g = testing::random_graph(rng, 20, 10, 0.3);  // s* and o* labels never merge
    CHECK(clustering_coefficient(g) == 0.0);
}

TEST_CASE("clustering on a lone triangle is 1") {
    auto g = entity_graph(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(clustering_coefficient(g) == doctest::Approx(1.0));
}

TEST_CASE("clustering on a star is 0") {
    auto g = entity_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(clustering_coefficient(g) == 0.0);
}

TEST_CASE("clustering on a triangle with a pendant edge") {
    // Triangle 0-1-2 plus pendant 2-3: 1 triangle, wedges C(2,2)*2 + C(3,2) = 5.
    auto g = entity_graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
    CHECK(clustering_coefficient(g) == doctest::Approx(3.0 / 5.0));
}

TEST_CASE("self-loops and duplicate directions collapse") {
    // Both directions of each triangle edge plus a reflexive edge; the
    // merged simple graph is still one triangle.
    auto g = entity_graph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 0}, {0, 2}, {0, 0}});
    CHECK(clustering_coefficient(g) == doctest::Approx(1.0));
}

TEST_CASE("clustering matches the cubic oracle on random merged graphs") {
    Rng rng(42);
    for (int round = 0; round < 15; ++round) {
        const std::uint32_t entities = 8 + rng.uniform_index(18);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        const std::uint32_t count = entities + rng.uniform_index(3 * entities);
        for (std::uint32_t i = 0; i < count; ++i)
            edges.emplace_back(rng.uniform_index(entities), rng.uniform_index(entities));
        auto g = entity_graph(entities, edges);
        CHECK(clustering_coefficient(g) ==
              doctest::Approx(oracle::brute_clustering(g)).epsilon(1e-12));
    }
}

TEST_CASE("profile_topology bundles the three metrics") {
    auto g = testing::make_graph(4, 5, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    g.predicate = "edits";
    TopologyProfile p = profile_topology(g);
    CHECK(p.predicate == "edits");
    CHECK(p.density == doctest::Approx(4.0 / 20.0));
    CHECK(p.average_degree == doctest::Approx(8.0 / 9.0));
    CHECK(p.clustering_coefficient == 0.0);
}

TEST_CASE("linear_regression equals the closed form") {
    Rng rng(17);
    for (int round = 0; round < 20; ++round) {
        std::vector<std::pair<double, double>> pts;
        const int n = 3 + static_cast<int>(rng.uniform_index(20));
        for (int i = 0; i < n; ++i)
            pts.emplace_back(rng.uniform01() * 10.0, rng.uniform01() * 5.0 - 2.5);
        RegressionFit fit = linear_regression(pts);
        oracle::OlsOracle want = oracle::closed_form_ols(pts);
        CHECK(fit.slope == doctest::Approx(want.slope).epsilon(1e-10));
        CHECK(fit.intercept == doctest::Approx(want.intercept).epsilon(1e-10));
        CHECK(fit.rvalue == doctest::Approx(want.rvalue).epsilon(1e-10));
        CHECK(fit.n_points == pts.size());
        CHECK(fit.rvalue >= -1.0 - 1e-12);
        CHECK(fit.rvalue <= 1.0 + 1e-12);
    }
}

TEST_CASE("linear_regression recovers an exact line") {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 6; ++i) pts.emplace_back(i, 3.0 * i - 1.0);
    RegressionFit fit = linear_regression(pts);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.rvalue == doctest::Approx(1.0).epsilon(1e-12));

    for (auto& [x, y] : pts) y = -y;
    CHECK(linear_regression(pts).rvalue == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("linear_regression degenerate inputs") {
    // Constant y: slope 0, rvalue 0 by convention.
    std::vector<std::pair<double, double>> flat{{0.0, 2.0}, {1.0, 2.0}, {2.0, 2.0}};
    RegressionFit fit = linear_regression(flat);
    CHECK(fit.slope == doctest::Approx(0.0));
    CHECK(fit.rvalue == 0.0);

    std::vector<std::pair<double, double>> one{{1.0, 2.0}};
    CHECK_THROWS_AS(linear_regression(one), InputError);

    std::vector<std::pair<double, double>> vertical{{1.0, 2.0}, {1.0, 3.0}};
    CHECK_THROWS_AS(linear_regression(vertical), InputError);
}

TEST_CASE("correlate_topology fits the full grid and is picky about joins") {
    std::vector<TopologyProfile> profiles;
    std::vector<PerformancePoint> points;
    for (int i = 0; i < 5; ++i) {
        const double x = 0.1 * (i + 1);
        profiles.push_back({"p" + std::to_string(i), x, 2.0 * x, 0.05 * i});
        points.push_back({"p" + std::to_string(i), 0.3 + x, 0.2 + 0.5 * x, 0.5 + x * x});
    }
    TopologyCorrelation grid = correlate_topology(profiles, points);
    // density vs hr is the exact line y = x + 0.3.
    CHECK(grid.fits[0][0].slope == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(grid.fits[0][0].intercept == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(grid.fits[0][0].rvalue == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 3; ++y) CHECK(grid.fits[x][y].n_points == 5);

    // Mismatched predicate sets fail the join.
    auto broken = points;
    broken[0].predicate = "other";
    CHECK_THROWS_AS(correlate_topology(profiles, broken), InputError);
    broken = points;
    broken.pop_back();
    CHECK_THROWS_AS(correlate_topology(profiles, broken), InputError);
}

TEST_CASE("correlate_topology_lenient turns degenerate cells into NaN") {
    std::vector<TopologyProfile> profiles;
    std::vector<PerformancePoint> points;
    for (int i = 0; i < 4; ++i) {
        // Clustering is constant zero: its column must go NaN, others fit.
        const double x = 0.1 * (i + 1);
        profiles.push_back({"p" + std::to_string(i), x, 2.0 * x, 0.0});
        points.push_back({"p" + std::to_string(i), x, x, x});
    }
    CHECK_THROWS_AS(correlate_topology(profiles, points), InputError);

    TopologyCorrelation grid = correlate_topology_lenient(profiles, points);
    CHECK(std::isnan(grid.fits[2][0].rvalue));
    CHECK(std::isnan(grid.fits[2][2].slope));
    CHECK(grid.fits[0][0].rvalue == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(grid.fits[2][0].n_points == 4);
}

TEST_CASE("topology csv artifacts") {
    std::vector<TopologyProfile> profiles{{"alpha", 0.25, 1.5, 0.0}, {"beta", 0.5, 2.0, 0.125}};
    const std::string csv = topology_csv(profiles);
    CHECK(csv ==
          "predicate,density,average_degree,clustering_coefficient\n"
          "alpha,0.25,1.5,0\n"
          "beta,0.5,2,0.125\n");

    std::vector<PerformancePoint> points{{"alpha", 0.1, 0.05, 0.6}, {"beta", 0.2, 0.1, 0.7}};
    TopologyCorrelation grid = correlate_topology(profiles, points);
    const std::string reg = regression_csv(grid);
    CHECK(reg.substr(0, reg.find('\n')) == "x_metric,y_metric,slope,intercept,rvalue,n_points");
    CHECK(reg.find("density,auc,") != std::string::npos);
    CHECK(reg.find("clustering_coefficient,arhr,") != std::string::npos);
    // 9 cells plus header.
    CHECK(std::count(reg.begin(), reg.end(), '\n') == 10);

    const std::string scatter = scatter_csv(profiles, points, 0, 2);
    CHECK(scatter ==
          "predicate,density,auc\n"
          "alpha,0.25,0.6\n"
          "beta,0.5,0.7\n");
}

TEST_CASE("regression csv writes nan for degenerate lenient cells") {
    std::vector<TopologyProfile> profiles;
    std::vector<PerformancePoint> points;
    for (int i = 0; i < 3; ++i) {
        profiles.push_back({"p" + std::to_string(i), 0.1 * i, 0.2 * i, 0.0});
        points.push_back({"p" + std::to_string(i), 0.1, 0.2, 0.3});
    }
    const std::string reg = regression_csv(correlate_topology_lenient(profiles, points));
    CHECK(reg.find("clustering_coefficient,hr,nan,nan,nan,3") != std::string::npos);
}

TEST_SUITE_END();
