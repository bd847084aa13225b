#pragma once

#include <cstdint>
#include <vector>

#include "otcnet/core/params.hpp"
#include "otcnet/market/graph.hpp"
#include "otcnet/market/io.hpp"

namespace otcnet {

/// Everything the reverse pass needs from an unrolled forward pass.
struct ForwardTrace {
    int rounds = 0;
    std::vector<double> c;                          ///< per node, from candidate params
    std::vector<double> pi;                         ///< per edge, from candidate params
    std::vector<std::vector<double>> v_layers;      ///< v^(0) .. v^(L)
    std::vector<double> p_final;                    ///< edge prices of sweep L (quoted against v^(L-1))
    std::vector<double> pred_best;                  ///< per node max of p_final; NaN without buyers
    /// Per sweep l = 1..L (index l-1), per node: edge holding the best quote (-1 without buyers).
    std::vector<std::vector<std::int32_t>> best_edge;
    /// Per sweep, per node: 1 when the value update took the interdealer branch (best > u).
    std::vector<std::vector<std::uint8_t>> took_interdealer;
};

/// Price observation attached to a seller node; weight is the bootstrap multiplicity.
struct Observation {
    std::size_t node = 0;
    double price = 0.0;
    double weight = 1.0;
};

/// Observations for the sellers of `trades`; throws DataError when a seller
/// has no buyers in the graph.
std::vector<Observation> make_observations(const TradingGraph& graph, const std::vector<ObservedTrade>& trades);

/// L synchronous sweeps from v^(0) = u - c with noise-free latents.
ForwardTrace forward(const TradingGraph& graph, const ModelParams& params, int rounds);

/// Weighted mean squared error of pred_best over the observed set.
double weighted_mse(const ForwardTrace& trace, const std::vector<Observation>& observed);

/// weighted_mse + lambda * ||theta||^2. Throws DataError on an empty or zero-weight set.
double loss(const ForwardTrace& trace, const std::vector<Observation>& observed, const ModelParams& params,
            double lambda);

struct Gradients {
    std::vector<double> d_beta_x;
    std::vector<double> d_beta_y;
    std::vector<double> d_eta;

    std::vector<double> flatten() const;
};

/// Exact reverse-mode derivative of loss() along the branches recorded in the
/// trace: each max is differentiated through the branch it selected.
Gradients backward(const ForwardTrace& trace, const TradingGraph& graph, const std::vector<Observation>& observed,
                   const ModelParams& params, double lambda);

}  // namespace otcnet
