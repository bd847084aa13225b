#pragma once

#include <string>
#include <vector>

#include "otcnet/baselines/design.hpp"
#include "otcnet/inference/metrics.hpp"

namespace otcnet {

struct RegressionResult {
    RegressionKind kind = RegressionKind::Basic;
    std::vector<std::string> columns;
    std::vector<double> coefficients;
    std::vector<double> fitted;
    std::vector<double> residuals;
    std::vector<std::string> dropped;  ///< dependent columns fixed at 0
    MetricsReport metrics;
};

/// Fits one specification. Dependent columns are dropped rather than fatal;
/// the parameter count stays the full column count.
RegressionResult fit_regression(const TradingGraph& graph, const std::vector<ObservedTrade>& trades,
                                const CentralityTable& centralities, RegressionKind kind);

/// All seven specifications on the same trades, in kAllRegressionKinds order.
std::vector<RegressionResult> run_baseline_suite(const TradingGraph& graph, const std::vector<ObservedTrade>& trades);

/// One row of the model comparison table.
struct ComparisonRow {
    std::string model;
    MetricsReport metrics;
};

std::vector<ComparisonRow> comparison_rows(const std::vector<RegressionResult>& suite,
                                           const MetricsReport& structural);

}  // namespace otcnet
