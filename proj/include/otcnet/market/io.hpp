#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "otcnet/market/graph.hpp"

namespace otcnet {

/// A realized interdealer trade: the data the estimator fits.
struct ObservedTrade {
    EdgeKey edge;
    double price = 0.0;
    bool operator==(const ObservedTrade&) const = default;
};

/// Optional latent truth stored alongside a generated graph.
/// c and v follow node order, pi and p follow edge order.
struct GraphTruth {
    std::vector<double> c;
    std::vector<double> v;
    std::vector<double> pi;
    std::vector<double> p;
    bool operator==(const GraphTruth&) const = default;
};

inline constexpr const char* kNodesFile = "nodes.csv";
inline constexpr const char* kEdgesFile = "edges.csv";
inline constexpr const char* kObservedFile = "observed.csv";

/// Writes nodes.csv and edges.csv into `dir` (created if needed).
/// Truth columns c, v / pi, p are appended when `truth` is given.
void save_graph(const TradingGraph& graph, const std::filesystem::path& dir, const GraphTruth* truth = nullptr);

/// Reads a graph written by save_graph. Dimensions are taken from the id
/// ranges and the X_/Y_/E_/Z_ column counts. Truth columns are loaded into
/// `truth` when present and requested.
TradingGraph load_graph(const std::filesystem::path& dir, GraphTruth* truth = nullptr);

void save_observed(const std::vector<ObservedTrade>& trades, const std::filesystem::path& path);
std::vector<ObservedTrade> load_observed(const std::filesystem::path& path, const TradingGraph& graph);

}  // namespace otcnet
