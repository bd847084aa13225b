#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "otcnet/equilibrium/latent.hpp"
#include "otcnet/market/graph.hpp"

namespace otcnet::testing {

/// Graph with explicit feature rows. `x` per layer, `y` per (dealer, day),
/// `e` aligned with `edges`, `u` per node.
inline TradingGraph make_graph(Dims dims, std::vector<EdgeKey> edges, std::vector<double> x, std::vector<double> y,
                               std::vector<double> e, std::vector<double> u) {
    FeatureTable f;
    f.dims = {1, 1, 1, 0};
    f.x = std::move(x);
    f.y = std::move(y);
    f.e = std::move(e);
    f.u = std::move(u);
    return TradingGraph(dims, std::move(edges), std::move(f));
}

/// Dealers 0 and 1 linked both ways, all features zero, u = (10, 20).
/// Under any parameters c = (1, 1) and pi = 0.5.
inline TradingGraph two_dealer_graph() {
    return make_graph({2, 1, 1}, {{0, 1, 0, 0}, {1, 0, 0, 0}}, {0.0}, {0.0, 0.0}, {0.0, 0.0}, {10.0, 20.0});
}

/// Random directed layers with standard normal features and u near e^5.
inline TradingGraph random_graph(std::mt19937_64& rng, int dealers, int assets, int days, double p_edge) {
    std::normal_distribution<double> n01(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Dims d{dealers, assets, days};
    std::vector<EdgeKey> edges;
    std::vector<double> e;
    for (int t = 0; t < days; ++t)
        for (int k = 0; k < assets; ++k)
            for (int i = 0; i < dealers; ++i)
                for (int j = 0; j < dealers; ++j)
                    if (i != j && unit(rng) < p_edge) {
                        edges.push_back({i, j, k, t});
                        e.push_back(n01(rng));
                    }
    std::vector<double> x(d.layers()), y(static_cast<std::size_t>(dealers) * days), u(d.nodes());
    for (auto& v : x) v = n01(rng);
    for (auto& v : y) v = n01(rng);
    for (auto& v : u) v = std::exp(5.0 + 0.1 * unit(rng));
    return make_graph(d, std::move(edges), std::move(x), std::move(y), std::move(e), std::move(u));
}

/// Latents drawn directly, independent of the features: c in (0.1, 5),
/// u in (5, 20), pi in (0.05, 0.95).
inline LatentState random_latents(std::mt19937_64& rng, const TradingGraph& g) {
    std::uniform_real_distribution<double> c(0.1, 5.0), u(5.0, 20.0), pi(0.05, 0.95);
    LatentState s;
    for (std::size_t n = 0; n < g.num_nodes(); ++n) {
        s.c.push_back(c(rng));
        s.u.push_back(u(rng));
    }
    for (std::size_t e = 0; e < g.num_edges(); ++e) s.pi.push_back(pi(rng));
    return s;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("otcnet_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace otcnet::testing
