#include "otcnet/equilibrium/latent.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "otcnet/core/error.hpp"

namespace otcnet {

namespace {

void check_dim(std::size_t got, int want, const char* name) {
    if (got != static_cast<std::size_t>(want))
        throw ConfigError(std::string(name) + " has length " + std::to_string(got) + " but the graph has " +
                          std::to_string(want) + " feature columns");
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

double logistic(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double ex = std::exp(x);
    return ex / (1.0 + ex);
}

std::vector<double> cost_index(const TradingGraph& graph, std::span<const double> beta_x,
                               std::span<const double> beta_y) {
    check_dim(beta_x.size(), graph.feature_dims().x, "beta_x");
    check_dim(beta_y.size(), graph.feature_dims().y, "beta_y");
    std::vector<double> out(graph.num_nodes());
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = dot(graph.x_row(n), beta_x) + dot(graph.y_row(n), beta_y);
    return out;
}

std::vector<double> bargaining_index(const TradingGraph& graph, std::span<const double> eta) {
    check_dim(eta.size(), graph.feature_dims().e, "eta");
    std::vector<double> out(graph.num_edges());
    for (std::size_t e = 0; e < out.size(); ++e) out[e] = dot(graph.e_row(e), eta);
    return out;
}

std::vector<double> gen_costs(const TradingGraph& graph, std::span<const double> beta_x,
                              std::span<const double> beta_y, double sigma_c, Rng& rng) {
    if (!(sigma_c >= 0)) throw ConfigError("sigma_c must be nonnegative");
    auto c = cost_index(graph, beta_x, beta_y);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (auto& v : c) v = std::exp(v + sigma_c * noise(rng));
    return c;
}

std::vector<double> gen_bargaining(const TradingGraph& graph, std::span<const double> eta, double sigma_pi, Rng& rng) {
    if (!(sigma_pi >= 0)) throw ConfigError("sigma_pi must be nonnegative");
    auto pi = bargaining_index(graph, eta);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (auto& v : pi) v = logistic(v + sigma_pi * noise(rng));
    return pi;
}

LatentState latents_from_params(const TradingGraph& graph, const ModelParams& params) {
    LatentState s;
    s.c = cost_index(graph, params.beta_x, params.beta_y);
    for (auto& v : s.c) v = std::exp(v);
    s.pi = bargaining_index(graph, params.eta);
    for (auto& v : s.pi) v = logistic(v);
    s.u = graph.features().u;
    return s;
}

double contraction_epsilon(std::span<const double> pi) {
    double eps = 0.5;
    for (double p : pi) eps = std::min(eps, std::min(p, 1.0 - p));
    return eps;
}

}  // namespace otcnet
