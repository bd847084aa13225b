#include "otcnet/estimator/customer_values.hpp"

#include <cmath>

#include "otcnet/baselines/ols.hpp"
#include "otcnet/core/error.hpp"

namespace otcnet {

namespace {

void append_names(std::vector<std::string>& out, const char* prefix, int d) {
    for (int i = 1; i <= d; ++i) out.push_back(std::string(prefix) + "_" + std::to_string(i));
}

void append_row(std::vector<double>& out, const TradingGraph& graph, std::size_t node) {
    out.push_back(1.0);
    for (double v : graph.x_row(node)) out.push_back(v);
    for (double v : graph.y_row(node)) out.push_back(v);
    for (double v : graph.z_row(node)) out.push_back(v);
}

}  // namespace

CustomerValueFit estimate_customer_values(const TradingGraph& graph, const std::vector<CustomerSale>& sales) {
    if (sales.empty()) throw DataError("no customer sales to estimate customer values from");
    const auto& fd = graph.feature_dims();

    DesignMatrix x;
    x.names.push_back("intercept");
    append_names(x.names, "X", fd.x);
    append_names(x.names, "Y", fd.y);
    append_names(x.names, "Z", fd.z);
    x.rows = sales.size();
    std::vector<double> logp;
    logp.reserve(sales.size());
    for (const auto& s : sales) {
        if (s.node >= graph.num_nodes()) throw DataError("customer sale on an unknown node");
        if (!(s.price > 0)) throw DataError("customer sale price must be positive, got " + std::to_string(s.price));
        append_row(x.data, graph, s.node);
        logp.push_back(std::log(s.price));
    }

    const auto fit = ols_fit(x, logp);
    CustomerValueFit out;
    out.columns = x.names;
    out.gamma = fit.coefficients;
    out.u_hat.resize(graph.num_nodes());
    std::vector<double> row;
    for (std::size_t n = 0; n < graph.num_nodes(); ++n) {
        row.clear();
        append_row(row, graph, n);
        double s = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * out.gamma[j];
        out.u_hat[n] = std::exp(s);
    }
    return out;
}

}  // namespace otcnet
