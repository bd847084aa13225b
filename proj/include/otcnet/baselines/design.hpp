#pragma once

#include <array>
#include <string>
#include <vector>

#include "otcnet/baselines/centrality.hpp"
#include "otcnet/baselines/ols.hpp"
#include "otcnet/market/graph.hpp"
#include "otcnet/market/io.hpp"

namespace otcnet {

enum class RegressionKind {
    Basic,
    Degree,
    Eigenvector,
    Betweenness,
    AllCentrality,
    EigenvectorInteractions,
    CentralityInteractions,
};

inline constexpr std::array<RegressionKind, 7> kAllRegressionKinds{
    RegressionKind::Basic,
    RegressionKind::Degree,
    RegressionKind::Eigenvector,
    RegressionKind::Betweenness,
    RegressionKind::AllCentrality,
    RegressionKind::EigenvectorInteractions,
    RegressionKind::CentralityInteractions,
};

/// Row label used in comparison tables, e.g. "OLS + Degree".
std::string regression_label(RegressionKind kind);
/// Short identifier, e.g. "degree".
std::string regression_id(RegressionKind kind);

/// Column count of the design for the given feature dimensions.
/// With one feature of each kind: 5, 9, 7, 7, 13, 15, 45.
int declared_parameter_count(RegressionKind kind, const FeatureDims& dims = {});

/// Regression of observed prices on intercept, X, seller Y, buyer Y and E,
/// optionally extended by seller and buyer centralities and their products
/// with the base regressors. Degree enters as in- and out-degree.
struct Design {
    DesignMatrix x;
    std::vector<double> y;
};

Design build_design(const TradingGraph& graph, const std::vector<ObservedTrade>& trades,
                    const CentralityTable& centralities, RegressionKind kind);

}  // namespace otcnet
