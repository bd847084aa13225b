#include "otcnet/market/generate.hpp"

#include <cmath>
#include <random>
#include <string>

#include "otcnet/core/error.hpp"

namespace otcnet {

namespace {

void check_prob(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string("probability ") + name + " must lie in [0,1]");
}

double pair_probability(const Topology& topo, int i, int j) {
    if (const auto* er = std::get_if<ErTopology>(&topo)) return er->p_edge;
    const auto& cp = std::get<CorePeripheryTopology>(topo);
    const bool ci = i < cp.n_core;
    const bool cj = j < cp.n_core;
    if (ci && cj) return cp.p_cc;
    if (ci || cj) return cp.p_cp;
    return cp.p_pp;
}

}  // namespace

void GenConfig::validate() const {
    if (dims.dealers < 1 || dims.assets < 1 || dims.days < 1)
        throw ConfigError("dims.dealers, dims.assets and dims.days must be positive");
    if (feature_dims.x < 1 || feature_dims.y < 1 || feature_dims.e < 1)
        throw ConfigError("feature dimensions must be positive");
    if (feature_dims.z < 0) throw ConfigError("dealer-customer feature dimension must be nonnegative");
    if (truth.beta_x.size() != static_cast<std::size_t>(feature_dims.x))
        throw ConfigError("true_params.beta_x has wrong length");
    if (truth.beta_y.size() != static_cast<std::size_t>(feature_dims.y))
        throw ConfigError("true_params.beta_y has wrong length");
    if (truth.eta.size() != static_cast<std::size_t>(feature_dims.e))
        throw ConfigError("true_params.eta has wrong length");
    if (!(noise.sigma_c >= 0) || !(noise.sigma_pi >= 0) || !(noise.sigma_u >= 0))
        throw ConfigError("noise scales must be nonnegative");
    if (!std::isfinite(mu_u)) throw ConfigError("mu_u must be finite");
    if (const auto* er = std::get_if<ErTopology>(&topology)) {
        check_prob(er->p_edge, "p_edge");
    } else {
        const auto& cp = std::get<CorePeripheryTopology>(topology);
        check_prob(cp.p_cc, "p_cc");
        check_prob(cp.p_cp, "p_cp");
        check_prob(cp.p_pp, "p_pp");
        if (cp.n_core < 0 || cp.n_core > dims.dealers) throw ConfigError("n_core must lie in [0, dealers]");
    }
}

FeatureTable generate_features(const GenConfig& config, Rng& rng) {
    config.validate();
    std::normal_distribution<double> std_normal(0.0, 1.0);
    FeatureTable f;
    f.dims = config.feature_dims;
    const auto& d = config.dims;

    f.x.resize(static_cast<std::size_t>(d.layers()) * f.dims.x);
    for (auto& v : f.x) v = std_normal(rng);
    f.y.resize(static_cast<std::size_t>(d.dealers) * d.days * f.dims.y);
    for (auto& v : f.y) v = std_normal(rng);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    f.u.resize(d.nodes());
    for (auto& v : f.u) {
        // Draw even at zero scale so the stream layout does not depend on sigma_u.
        const double z = config.noise.u_shock == CustomerShock::Normal ? std_normal(rng) : unit(rng);
        v = std::exp(config.mu_u + config.noise.sigma_u * z);
    }
    return f;
}

std::vector<EdgeKey> sample_layer_edges(const GenConfig& config, int asset, int day, Rng& rng,
                                        std::vector<double>& e_out) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> std_normal(0.0, 1.0);
    std::vector<EdgeKey> edges;
    const int n = config.dims.dealers;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (unif(rng) < pair_probability(config.topology, i, j)) edges.push_back({i, j, asset, day});
        }
    }
    for (std::size_t k = 0; k < edges.size() * config.feature_dims.e; ++k) e_out.push_back(std_normal(rng));
    return edges;
}

TradingGraph generate_graph(const GenConfig& config) {
    config.validate();
    Rng feat_rng = make_stream(config.seed, "gen.features");
    FeatureTable features = generate_features(config, feat_rng);

    std::vector<EdgeKey> edges;
    std::vector<double> e_rows;
    for (int day = 0; day < config.dims.days; ++day) {
        for (int asset = 0; asset < config.dims.assets; ++asset) {
            const auto layer = static_cast<std::uint64_t>(day * config.dims.assets + asset);
            Rng layer_rng = make_stream(config.seed, "gen.layer", layer);
            auto le = sample_layer_edges(config, asset, day, layer_rng, e_rows);
            edges.insert(edges.end(), le.begin(), le.end());
        }
    }
    features.e = std::move(e_rows);
    return TradingGraph(config.dims, std::move(edges), std::move(features));
}

TradingGraph generate_er_graph(const GenConfig& config) {
    if (!std::holds_alternative<ErTopology>(config.topology))
        throw ConfigError("generate_er_graph requires an Erdos-Renyi topology");
    return generate_graph(config);
}

TradingGraph generate_core_periphery_graph(const GenConfig& config) {
    if (!std::holds_alternative<CorePeripheryTopology>(config.topology))
        throw ConfigError("generate_core_periphery_graph requires a core-periphery topology");
    return generate_graph(config);
}

}  // namespace otcnet
