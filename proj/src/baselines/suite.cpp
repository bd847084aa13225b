#include "otcnet/baselines/suite.hpp"

namespace otcnet {

RegressionResult fit_regression(const TradingGraph& graph, const std::vector<ObservedTrade>& trades,
                                const CentralityTable& centralities, RegressionKind kind) {
    const auto design = build_design(graph, trades, centralities, kind);
    OlsOptions opts;
    opts.drop_dependent = true;
    auto fit = ols_fit(design.x, design.y, opts);

    RegressionResult r;
    r.kind = kind;
    r.columns = design.x.names;
    r.metrics = evaluate_fit(fit.fitted, design.y, static_cast<int>(design.x.cols()));
    r.coefficients = std::move(fit.coefficients);
    r.fitted = std::move(fit.fitted);
    r.residuals = std::move(fit.residuals);
    r.dropped = std::move(fit.dropped);
    return r;
}

std::vector<RegressionResult> run_baseline_suite(const TradingGraph& graph, const std::vector<ObservedTrade>& trades) {
    const auto centralities = compute_centralities(graph);
    std::vector<RegressionResult> out;
    for (auto kind : kAllRegressionKinds) out.push_back(fit_regression(graph, trades, centralities, kind));
    return out;
}

std::vector<ComparisonRow> comparison_rows(const std::vector<RegressionResult>& suite,
                                           const MetricsReport& structural) {
    std::vector<ComparisonRow> rows;
    for (const auto& r : suite) rows.push_back({regression_label(r.kind), r.metrics});
    rows.push_back({"TGNN", structural});
    return rows;
}

}  // namespace otcnet
