#pragma once

#include <span>
#include <vector>

#include "otcnet/core/params.hpp"
#include "otcnet/core/rng.hpp"
#include "otcnet/market/graph.hpp"

namespace otcnet {

/// Per-node holding costs c, per-edge buyer bargaining powers pi, per-node
/// customer values u.
struct LatentState {
    std::vector<double> c;
    std::vector<double> pi;
    std::vector<double> u;
};

/// X_kt . beta_x + Y_it . beta_y for every node.
std::vector<double> cost_index(const TradingGraph& graph, std::span<const double> beta_x,
                               std::span<const double> beta_y);
/// E_ijt . eta for every edge.
std::vector<double> bargaining_index(const TradingGraph& graph, std::span<const double> eta);

double logistic(double x);

/// c = exp(X.beta_x + Y.beta_y + eps), eps ~ N(0, sigma_c^2). One draw per node, in node order.
std::vector<double> gen_costs(const TradingGraph& graph, std::span<const double> beta_x,
                              std::span<const double> beta_y, double sigma_c, Rng& rng);

/// pi = logistic(E.eta + nu), nu ~ N(0, sigma_pi^2). One draw per edge, in edge order.
std::vector<double> gen_bargaining(const TradingGraph& graph, std::span<const double> eta, double sigma_pi, Rng& rng);

/// Noise-free latents implied by candidate parameters (the estimator's view).
LatentState latents_from_params(const TradingGraph& graph, const ModelParams& params);

/// min over edges of min(pi, 1 - pi). Note 1 - epsilon is not a valid
/// modulus for T: it is non-expansive in the sup norm but a shift along
/// interdealer branches passes through undamped.
/// Returns 0.5 for a graph without edges.
double contraction_epsilon(std::span<const double> pi);

}  // namespace otcnet
