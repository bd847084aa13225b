#pragma once

#include <utility>
#include <vector>

#include "otcnet/market/graph.hpp"

namespace otcnet {

/// Directed dealer graph of one (asset, day) layer.
struct LayerGraph {
    int n = 0;
    std::vector<std::pair<int, int>> arcs;  ///< (seller, buyer)

    /// Sorted neighbor lists of the undirected collapse.
    std::vector<std::vector<int>> undirected() const;
};

LayerGraph layer_graph(const TradingGraph& graph, int asset, int day);

/// Distinct undirected neighbors / (n - 1). Requires n >= 2.
std::vector<double> degree_centrality(const LayerGraph& g);
/// Distinct buyers / (n - 1) and distinct sellers / (n - 1).
std::vector<double> out_degree_centrality(const LayerGraph& g);
std::vector<double> in_degree_centrality(const LayerGraph& g);

/// Leading eigenvector of the undirected adjacency, per connected component
/// (unit 2-norm), then scaled so the global maximum is 1. Isolated dealers get 0.
/// Power iteration on A + I, which has the same eigenvectors and avoids the
/// oscillation of bipartite components.
std::vector<double> eigenvector_centrality(const LayerGraph& g, double tol = 1e-10, int max_iter = 100000);

/// Brandes betweenness on the undirected collapse, divided by (n-1)(n-2)/2.
std::vector<double> betweenness_centrality(const LayerGraph& g);

/// Per-node centralities, each computed within the node's layer.
struct CentralityTable {
    std::vector<double> degree;
    std::vector<double> in_degree;
    std::vector<double> out_degree;
    std::vector<double> eigenvector;
    std::vector<double> betweenness;
};

CentralityTable compute_centralities(const TradingGraph& graph);

}  // namespace otcnet
