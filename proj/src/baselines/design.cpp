#include "otcnet/baselines/design.hpp"

#include <set>
#include <span>

#include "otcnet/core/error.hpp"

namespace otcnet {

std::string regression_label(RegressionKind kind) {
    switch (kind) {
        case RegressionKind::Basic: return "OLS Basic";
        case RegressionKind::Degree: return "OLS + Degree";
        case RegressionKind::Eigenvector: return "OLS + Eigenvector";
        case RegressionKind::Betweenness: return "OLS + Betweenness";
        case RegressionKind::AllCentrality: return "OLS + All Centrality";
        case RegressionKind::EigenvectorInteractions: return "OLS + Eigenvector Interactions";
        case RegressionKind::CentralityInteractions: return "OLS + Centrality Interactions";
    }
    return "?";
}

std::string regression_id(RegressionKind kind) {
    switch (kind) {
        case RegressionKind::Basic: return "basic";
        case RegressionKind::Degree: return "degree";
        case RegressionKind::Eigenvector: return "eigenvector";
        case RegressionKind::Betweenness: return "betweenness";
        case RegressionKind::AllCentrality: return "all_centrality";
        case RegressionKind::EigenvectorInteractions: return "eigenvector_interactions";
        case RegressionKind::CentralityInteractions: return "centrality_interactions";
    }
    return "?";
}

namespace {

enum class Measure { InDegree, OutDegree, Eigenvector, Betweenness };

struct Recipe {
    std::vector<Measure> measures;
    bool interactions = false;
};

Recipe recipe(RegressionKind kind) {
    const std::vector<Measure> degree{Measure::InDegree, Measure::OutDegree};
    const std::vector<Measure> all{Measure::InDegree, Measure::OutDegree, Measure::Eigenvector, Measure::Betweenness};
    switch (kind) {
        case RegressionKind::Basic: return {};
        case RegressionKind::Degree: return {degree, false};
        case RegressionKind::Eigenvector: return {{Measure::Eigenvector}, false};
        case RegressionKind::Betweenness: return {{Measure::Betweenness}, false};
        case RegressionKind::AllCentrality: return {all, false};
        case RegressionKind::EigenvectorInteractions: return {{Measure::Eigenvector}, true};
        case RegressionKind::CentralityInteractions: return {all, true};
    }
    return {};
}

const char* measure_name(Measure m) {
    switch (m) {
        case Measure::InDegree: return "in_degree";
        case Measure::OutDegree: return "out_degree";
        case Measure::Eigenvector: return "eigenvector";
        case Measure::Betweenness: return "betweenness";
    }
    return "?";
}

const std::vector<double>& measure_values(const CentralityTable& t, Measure m) {
    switch (m) {
        case Measure::InDegree: return t.in_degree;
        case Measure::OutDegree: return t.out_degree;
        case Measure::Eigenvector: return t.eigenvector;
        case Measure::Betweenness: return t.betweenness;
    }
    return t.degree;
}

void block_names(std::vector<std::string>& out, const std::string& prefix, int d) {
    if (d == 1) {
        out.push_back(prefix);
        return;
    }
    for (int i = 1; i <= d; ++i) out.push_back(prefix + "_" + std::to_string(i));
}

}  // namespace

int declared_parameter_count(RegressionKind kind, const FeatureDims& dims) {
    const int base = dims.x + 2 * dims.y + dims.e;
    const auto r = recipe(kind);
    const int cent = 2 * static_cast<int>(r.measures.size());
    return 1 + base + cent + (r.interactions ? cent * base : 0);
}

Design build_design(const TradingGraph& graph, const std::vector<ObservedTrade>& trades,
                    const CentralityTable& centralities, RegressionKind kind) {
    if (trades.empty()) throw DataError("design matrix has zero rows");
    const auto& fd = graph.feature_dims();
    const auto r = recipe(kind);

    std::vector<std::string> base_names;
    block_names(base_names, "X", fd.x);
    block_names(base_names, "Y_seller", fd.y);
    block_names(base_names, "Y_buyer", fd.y);
    block_names(base_names, "E", fd.e);

    std::vector<std::string> cent_names;
    for (auto m : r.measures) {
        cent_names.push_back(std::string(measure_name(m)) + "_seller");
        cent_names.push_back(std::string(measure_name(m)) + "_buyer");
    }

    Design d;
    d.x.names.push_back("intercept");
    d.x.names.insert(d.x.names.end(), base_names.begin(), base_names.end());
    d.x.names.insert(d.x.names.end(), cent_names.begin(), cent_names.end());
    if (r.interactions)
        for (const auto& c : cent_names)
            for (const auto& b : base_names) d.x.names.push_back(c + "*" + b);

    std::set<std::string> seen;
    for (const auto& n : d.x.names)
        if (!seen.insert(n).second) throw ConfigError("duplicate design column '" + n + "'");

    d.x.rows = trades.size();
    d.x.data.reserve(d.x.rows * d.x.cols());
    d.y.reserve(trades.size());
    std::vector<double> base, cent;
    for (const auto& t : trades) {
        const auto e = graph.find_edge(t.edge);
        if (e < 0) throw DataError("observed trade on a missing edge");
        const auto seller = graph.edge_sellers()[e];
        const auto buyer = graph.edge_buyers()[e];

        base.clear();
        for (double v : graph.x_row(seller)) base.push_back(v);
        for (double v : graph.y_row(seller)) base.push_back(v);
        for (double v : graph.y_row(buyer)) base.push_back(v);
        for (double v : graph.e_row(e)) base.push_back(v);
        cent.clear();
        for (auto m : r.measures) {
            const auto& vals = measure_values(centralities, m);
            cent.push_back(vals[seller]);
            cent.push_back(vals[buyer]);
        }

        d.x.data.push_back(1.0);
        d.x.data.insert(d.x.data.end(), base.begin(), base.end());
        d.x.data.insert(d.x.data.end(), cent.begin(), cent.end());
        if (r.interactions)
            for (double c : cent)
                for (double b : base) d.x.data.push_back(c * b);
        d.y.push_back(t.price);
    }
    return d;
}

}  // namespace otcnet
