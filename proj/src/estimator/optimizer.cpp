#include <cmath>

#include "otcnet/estimator/train.hpp"

namespace otcnet {

ModelParams step(const ModelParams& params, const Gradients& grads, OptimizerState& state, const TrainConfig& config) {
    auto theta = params.flatten();
    const auto g = grads.flatten();
    if (g.size() != theta.size()) throw ConfigError("gradient and parameter shapes differ");

    if (config.optimizer == OptimizerKind::GradientDescent) {
        for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= config.lr * g[i];
    } else {
        if (state.m.size() != theta.size()) {
            state.m.assign(theta.size(), 0.0);
            state.v.assign(theta.size(), 0.0);
            state.t = 0;
        }
        ++state.t;
        const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.t));
        const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.t));
        for (std::size_t i = 0; i < theta.size(); ++i) {
            state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * g[i];
            state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * g[i] * g[i];
            const double m_hat = state.m[i] / bc1;
            const double v_hat = state.v[i] / bc2;
            theta[i] -= config.lr * m_hat / (std::sqrt(v_hat) + config.adam_eps);
        }
    }
    return ModelParams::unflatten(theta, params.beta_x.size(), params.beta_y.size(), params.eta.size());
}

}  // namespace otcnet
