#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "otcnet/core/params.hpp"
#include "otcnet/core/rng.hpp"
#include "otcnet/market/graph.hpp"

namespace otcnet {

/// Erdos-Renyi layers: every ordered dealer pair independently with p_edge.
struct ErTopology {
    double p_edge = 0.7;
    bool operator==(const ErTopology&) const = default;
};

/// Core dealers are ids [0, n_core); pair probability depends on the two roles.
struct CorePeripheryTopology {
    int n_core = 4;
    double p_cc = 0.9;
    double p_cp = 0.7;
    double p_pp = 0.01;
    bool operator==(const CorePeripheryTopology&) const = default;
};

using Topology = std::variant<ErTopology, CorePeripheryTopology>;

/// Distribution of the customer-value shock z in u = exp(mu_u + sigma_u z).
enum class CustomerShock {
    Normal,   ///< z ~ N(0, 1)
    Uniform,  ///< z ~ U(0, 1)
};

/// Scales of the generation noise terms.
struct NoiseScales {
    double sigma_c = 0.1;   ///< log holding-cost shock
    double sigma_pi = 0.1;  ///< logit bargaining-power shock
    double sigma_u = 0.1;   ///< log customer-value shock
    CustomerShock u_shock = CustomerShock::Uniform;
    bool operator==(const NoiseScales&) const = default;
};

struct GenConfig {
    Dims dims{10, 2, 5};
    Topology topology = ErTopology{};
    FeatureDims feature_dims{};
    ModelParams truth = ModelParams::constant(1, 1, 1, 1.0);
    NoiseScales noise{};
    double mu_u = 5.0;
    std::uint64_t seed = 0;

    /// Throws ConfigError on out-of-range values.
    void validate() const;
    bool operator==(const GenConfig&) const = default;
};

/// X, Y and u tables (E is drawn together with the edges). Z is left empty.
FeatureTable generate_features(const GenConfig& config, Rng& rng);

/// Ordered-pair edges of one (asset, day) layer plus their E rows (appended to `e_out`).
std::vector<EdgeKey> sample_layer_edges(const GenConfig& config, int asset, int day, Rng& rng,
                                        std::vector<double>& e_out);

/// Full graph for the configured topology. Each layer draws from its own
/// substream of config.seed, so layers are independent of generation order.
TradingGraph generate_graph(const GenConfig& config);
TradingGraph generate_er_graph(const GenConfig& config);
TradingGraph generate_core_periphery_graph(const GenConfig& config);

}  // namespace otcnet
