#pragma once

#include <string>
#include <vector>

#include "otcnet/market/graph.hpp"

namespace otcnet {

/// A sale to the dealer's own customers at `price`.
struct CustomerSale {
    std::size_t node = 0;
    double price = 0.0;
};

/// Log-linear customer value model: ln u = gamma' [1, X, Y, Z].
struct CustomerValueFit {
    std::vector<std::string> columns;  ///< intercept, X.., Y.., Z..
    std::vector<double> gamma;
    std::vector<double> u_hat;  ///< exp(fitted) for every node of the graph
};

/// OLS of log price on the node's X, Y and Z rows plus an intercept.
/// Throws DataError on non-positive prices and NumericError (naming the
/// collinear columns) on a rank-deficient design.
CustomerValueFit estimate_customer_values(const TradingGraph& graph, const std::vector<CustomerSale>& sales);

}  // namespace otcnet
