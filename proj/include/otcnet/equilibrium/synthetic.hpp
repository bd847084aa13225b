#pragma once

#include <vector>

#include "otcnet/equilibrium/latent.hpp"
#include "otcnet/equilibrium/solver.hpp"
#include "otcnet/market/generate.hpp"
#include "otcnet/market/io.hpp"

namespace otcnet {

/// Number of message-passing rounds used to generate observed prices.
inline constexpr int kGenerationRounds = 10;

/// A generated market: topology, features, latent truth, the equilibrium
/// after `rounds` sweeps and the resulting observable trades.
struct SyntheticMarket {
    GenConfig config;
    TradingGraph graph;
    LatentState truth;
    EquilibriumSolution solution;
    std::vector<ObservedTrade> observed;

    GraphTruth truth_columns() const { return {truth.c, solution.v, truth.pi, solution.p}; }
};

SyntheticMarket generate_market(const GenConfig& config, int rounds = kGenerationRounds, bool record_history = false);

}  // namespace otcnet
