#include "otcnet/estimator/train.hpp"

#include <cmath>
#include <random>

#include "otcnet/core/rng.hpp"
#include "otcnet/equilibrium/latent.hpp"
#include "otcnet/equilibrium/solver.hpp"

namespace otcnet {

void TrainConfig::validate() const {
    if (rounds < 1) throw ConfigError("train.rounds (L) must be at least 1");
    if (!(lr > 0)) throw ConfigError("train.lr must be positive");
    if (epochs < 1) throw ConfigError("train.epochs must be at least 1");
    if (!(lambda >= 0)) throw ConfigError("train.lambda must be nonnegative");
    if (!(init_range >= 0)) throw ConfigError("train.init_range must be nonnegative");
    if (!(beta1 >= 0 && beta1 < 1) || !(beta2 >= 0 && beta2 < 1) || !(adam_eps > 0))
        throw ConfigError("adaptive-moment settings out of range");
}

ModelParams random_init(const FeatureDims& dims, const TrainConfig& config) {
    Rng rng = make_stream(config.seed, "train.init");
    std::uniform_real_distribution<double> unif(-config.init_range, config.init_range);
    auto p = ModelParams::constant(dims.x, dims.y, dims.e, 0.0);
    for (auto& v : p.beta_x) v = unif(rng);
    for (auto& v : p.beta_y) v = unif(rng);
    for (auto& v : p.eta) v = unif(rng);
    return p;
}

namespace {

bool all_finite(const std::vector<double>& xs) {
    for (double x : xs)
        if (!std::isfinite(x)) return false;
    return true;
}

double plain_mse(const ForwardTrace& trace, const std::vector<Observation>& observed) {
    double acc = 0.0;
    for (const auto& o : observed) {
        const double r = trace.pred_best[o.node] - o.price;
        acc += r * r;
    }
    return acc / static_cast<double>(observed.size());
}

}  // namespace

FitResult train(const TradingGraph& graph, const std::vector<Observation>& observed, const TrainConfig& config) {
    config.validate();
    if (observed.empty()) throw DataError("cannot train on an empty observed price set");
    for (const auto& o : observed)
        if (o.node >= graph.num_nodes() || graph.out_degree(o.node) == 0)
            throw DataError("observation on a node without buyers");

    FitResult r;
    r.params = config.initial ? *config.initial : random_init(graph.feature_dims(), config);
    OptimizerState state;
    r.loss_trajectory.reserve(config.epochs);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        ForwardTrace trace;
        double l = 0.0;
        Gradients g;
        try {
            trace = forward(graph, r.params, config.rounds);
            l = loss(trace, observed, r.params, config.lambda);
            g = backward(trace, graph, observed, r.params, config.lambda);
        } catch (const NumericError& e) {
            throw DivergenceError(epoch, e.what());
        }
        if (!std::isfinite(l)) throw DivergenceError(epoch, "non-finite loss");
        if (!all_finite(g.flatten())) throw DivergenceError(epoch, "non-finite gradient");
        r.loss_trajectory.push_back(l);
        r.params = step(r.params, g, state, config);
        ++r.epochs_run;
    }

    ForwardTrace final_trace;
    try {
        final_trace = forward(graph, r.params, config.rounds);
    } catch (const NumericError& e) {
        throw DivergenceError(config.epochs, e.what());
    }
    r.final_mse = plain_mse(final_trace, observed);
    if (!std::isfinite(r.final_mse)) throw DivergenceError(config.epochs, "non-finite final loss");
    r.pred_best = std::move(final_trace.pred_best);
    return r;
}

LatentPrediction predict_latents(const TradingGraph& graph, const ModelParams& params, double tol) {
    const auto state = latents_from_params(graph, params);
    const auto sol = solve_fixed_point(state, graph, SolveSettings::to_tolerance(tol));
    return {state.c, state.pi, sol.v, sol.p};
}

}  // namespace otcnet
