#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "otcnet/baselines/centrality.hpp"
#include "otcnet/baselines/design.hpp"
#include "otcnet/baselines/ols.hpp"
#include "otcnet/baselines/suite.hpp"
#include "otcnet/core/error.hpp"
#include "otcnet/equilibrium/synthetic.hpp"

using namespace otcnet;

namespace {

LayerGraph star(int n) {
    LayerGraph g{n, {}};
    for (int i = 1; i < n; ++i) g.arcs.push_back({0, i});
    return g;
}

LayerGraph complete(int n) {
    LayerGraph g{n, {}};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) g.arcs.push_back({i, j});
    return g;
}

double ss_res(const DesignMatrix& x, const std::vector<double>& y, const std::vector<double>& beta) {
    double s = 0.0;
    for (std::size_t r = 0; r < x.rows; ++r) {
        double f = 0.0;
        for (std::size_t c = 0; c < x.cols(); ++c) f += x.at(r, c) * beta[c];
        s += (y[r] - f) * (y[r] - f);
    }
    return s;
}

}  // namespace

TEST_CASE("degree centrality") {
    const auto s = degree_centrality(star(4));
    CHECK(s[0] == 1.0);
    for (int i = 1; i < 4; ++i) CHECK(s[i] == doctest::Approx(1.0 / 3.0));
    for (double v : degree_centrality(LayerGraph{5, {}})) CHECK(v == 0.0);
    for (double v : degree_centrality(complete(5))) CHECK(v == 1.0);
    CHECK_THROWS_AS(degree_centrality(LayerGraph{1, {}}), ConfigError);

    // Reciprocal arcs count once; direction splits into in and out degree.
    LayerGraph g{3, {{0, 1}, {1, 0}, {0, 2}}};
    CHECK(degree_centrality(g) == std::vector{1.0, 0.5, 0.5});
    CHECK(out_degree_centrality(g) == std::vector{1.0, 0.5, 0.0});
    CHECK(in_degree_centrality(g) == std::vector{0.5, 0.5, 0.5});
}

TEST_CASE("eigenvector centrality") {
    for (double v : eigenvector_centrality(complete(6))) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    const auto path = eigenvector_centrality(LayerGraph{3, {{0, 1}, {1, 2}}});
    CHECK(path[1] > path[0]);
    CHECK(path[1] > path[2]);
    CHECK(path[1] == doctest::Approx(1.0));
    const auto s = eigenvector_centrality(star(4));
    CHECK(s[0] == doctest::Approx(1.0));
    for (int i = 1; i < 4; ++i) CHECK(s[i] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-8));

    // Two components and an isolated dealer.
    const auto split = eigenvector_centrality(LayerGraph{6, {{0, 1}, {2, 3}, {3, 4}}});
    CHECK(split[5] == 0.0);
    CHECK(*std::max_element(split.begin(), split.end()) == doctest::Approx(1.0));
    CHECK_THROWS_AS(eigenvector_centrality(star(4), 1e-30, 3), NumericError);
}

TEST_CASE("betweenness centrality") {
    CHECK(betweenness_centrality(LayerGraph{3, {{0, 1}, {1, 2}}}) == std::vector{0.0, 1.0, 0.0});
    for (double v : betweenness_centrality(complete(5))) CHECK(v == 0.0);
    const auto s = betweenness_centrality(star(5));
    CHECK(s[0] == doctest::Approx(1.0));
    for (int i = 1; i < 5; ++i) CHECK(s[i] == 0.0);
    // Square: each corner carries half of one opposite pair, over 3 pairs.
    for (double v : betweenness_centrality(LayerGraph{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}}))
        CHECK(v == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("centrality properties on random layers") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unit;
    for (int inst = 0; inst < 40; ++inst) {
        const int n = 2 + inst % 12;
        LayerGraph g{n, {}};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && unit(rng) < 0.3) g.arcs.push_back({i, j});
        for (const auto& v : {degree_centrality(g), eigenvector_centrality(g), betweenness_centrality(g),
                              in_degree_centrality(g), out_degree_centrality(g)})
            for (double x : v) CHECK((x >= 0.0 && x <= 1.0 + 1e-12));
        auto more = g;
        more.arcs.push_back({0, n - 1});
        const auto before = degree_centrality(g), after = degree_centrality(more);
        for (int i = 0; i < n; ++i) CHECK(after[i] >= before[i]);
    }
}

TEST_CASE("ordinary least squares") {
    DesignMatrix x{{"intercept", "x"}, 4, {1, 0, 1, 1, 1, 2, 1, 3}};
    const auto fit = ols_fit(x, std::vector{0.0, 2.0, 4.0, 6.0});
    CHECK(fit.coefficients[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.coefficients[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.rank == 2);

    // Response orthogonal to the centred slope column.
    const auto flat = ols_fit(x, std::vector{1.0, -1.0, -1.0, 1.0});
    CHECK(std::fabs(flat.coefficients[1]) < 1e-12);

    std::mt19937_64 rng(9);
    std::normal_distribution<double> n01;
    DesignMatrix r{{"a", "b", "c", "d"}, 50, {}};
    std::vector<double> y(50);
    for (std::size_t i = 0; i < 50 * 4; ++i) r.data.push_back(n01(rng));
    for (auto& v : y) v = n01(rng);
    const auto rf = ols_fit(r, y);
    for (std::size_t c = 0; c < 4; ++c) {
        double dot = 0.0;
        for (std::size_t i = 0; i < 50; ++i) dot += r.at(i, c) * rf.residuals[i];
        CHECK(std::fabs(dot) < 1e-8);
    }
    for (std::size_t i = 0; i < 50; ++i) CHECK(rf.fitted[i] + rf.residuals[i] == doctest::Approx(y[i]));
    const double best = ss_res(r, y, rf.coefficients);
    for (std::size_t c = 0; c < 4; ++c)
        for (double d : {-1e-3, 1e-3}) {
            auto b = rf.coefficients;
            b[c] += d;
            CHECK(ss_res(r, y, b) >= best);
        }

    DesignMatrix dup{{"intercept", "x", "twice_x"}, 4, {1, 0, 0, 1, 1, 2, 1, 2, 4, 1, 3, 6}};
    try {
        ols_fit(dup, std::vector{1.0, 2.0, 3.0, 5.0});
        FAIL("expected a rank error");
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("twice_x") != std::string::npos);
    }
    OlsOptions drop;
    drop.drop_dependent = true;
    const auto dropped = ols_fit(dup, std::vector{1.0, 2.0, 3.0, 5.0}, drop);
    CHECK(dropped.dropped == std::vector<std::string>{"twice_x"});
    CHECK(dropped.coefficients[2] == 0.0);
}

TEST_CASE("design columns and parameter counts") {
    CHECK(declared_parameter_count(RegressionKind::Basic) == 5);
    CHECK(declared_parameter_count(RegressionKind::Degree) == 9);
    CHECK(declared_parameter_count(RegressionKind::Eigenvector) == 7);
    CHECK(declared_parameter_count(RegressionKind::Betweenness) == 7);
    CHECK(declared_parameter_count(RegressionKind::AllCentrality) == 13);
    CHECK(declared_parameter_count(RegressionKind::EigenvectorInteractions) == 15);
    CHECK(declared_parameter_count(RegressionKind::CentralityInteractions) == 45);

    GenConfig c;
    c.seed = 3;
    const auto m = generate_market(c);
    const auto cent = compute_centralities(m.graph);
    std::set<std::string> basic;
    for (auto kind : kAllRegressionKinds) {
        const auto d = build_design(m.graph, m.observed, cent, kind);
        CAPTURE(regression_id(kind));
        CHECK(static_cast<int>(d.x.cols()) == declared_parameter_count(kind));
        CHECK(d.x.rows == m.observed.size());
        CHECK(d.y.size() == m.observed.size());
        const std::set<std::string> names(d.x.names.begin(), d.x.names.end());
        CHECK(names.size() == d.x.cols());
        if (kind == RegressionKind::Basic) basic = names;
        CHECK(std::includes(names.begin(), names.end(), basic.begin(), basic.end()));
    }
    CHECK_THROWS_AS(build_design(m.graph, {}, cent, RegressionKind::Basic), DataError);
}

TEST_CASE("baseline suite") {
    GenConfig c;
    c.seed = 17;
    const auto m = generate_market(c);
    const auto suite = run_baseline_suite(m.graph, m.observed);
    REQUIRE(suite.size() == 7);
    auto r2_of = [&](RegressionKind k) { return suite[static_cast<int>(k)].metrics.r2; };
    using K = RegressionKind;
    const double eps = 1e-10;
    for (auto one : {K::Degree, K::Eigenvector, K::Betweenness}) {
        CHECK(r2_of(one) >= r2_of(K::Basic) - eps);
        CHECK(r2_of(K::AllCentrality) >= r2_of(one) - eps);
    }
    CHECK(r2_of(K::CentralityInteractions) >= r2_of(K::AllCentrality) - eps);
    CHECK(r2_of(K::EigenvectorInteractions) >= r2_of(K::Eigenvector) - eps);
    CHECK(r2_of(K::CentralityInteractions) >= r2_of(K::EigenvectorInteractions) - eps);
    for (const auto& r : suite) {
        CHECK(r.metrics.n_params == declared_parameter_count(r.kind));
        CHECK(r.metrics.n_obs == static_cast<int>(m.observed.size()));
    }

    MetricsReport tgnn;
    tgnn.r2 = 0.99;
    const auto rows = comparison_rows(suite, tgnn);
    REQUIRE(rows.size() == 8);
    CHECK(rows.front().model == "OLS Basic");
    CHECK(rows.back().model == "TGNN");
}
