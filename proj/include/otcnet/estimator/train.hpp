#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "otcnet/core/error.hpp"
#include "otcnet/core/params.hpp"
#include "otcnet/estimator/forward.hpp"
#include "otcnet/market/graph.hpp"

namespace otcnet {

enum class OptimizerKind {
    GradientDescent,  ///< theta <- theta - lr * g
    Adam,             ///< first/second moment estimates with bias correction
};

struct TrainConfig {
    int rounds = 10;  ///< message-passing rounds L
    double lr = 0.01;
    int epochs = 300;
    double lambda = 0.0;
    OptimizerKind optimizer = OptimizerKind::Adam;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    double init_range = 0.1;  ///< half-width of the uniform initialization
    std::uint64_t seed = 0;
    /// Start from these parameters instead of a random draw.
    std::optional<ModelParams> initial;

    void validate() const;
};

/// Moment estimates and step counter carried between optimizer steps.
struct OptimizerState {
    std::vector<double> m;
    std::vector<double> v;
    long long t = 0;
};

ModelParams step(const ModelParams& params, const Gradients& grads, OptimizerState& state, const TrainConfig& config);

struct FitResult {
    ModelParams params;
    std::vector<double> loss_trajectory;  ///< loss at the start of each epoch
    double final_mse = 0.0;               ///< unweighted-set MSE at the returned params
    std::vector<double> pred_best;        ///< per node, at the returned params
    int epochs_run = 0;
};

/// Raised when training produces a non-finite loss or gradient.
class DivergenceError : public NumericError {
  public:
    DivergenceError(int epoch, const std::string& what)
        : NumericError("training diverged at epoch " + std::to_string(epoch) + ": " + what), epoch_(epoch) {}
    int epoch() const noexcept { return epoch_; }

  private:
    int epoch_;
};

/// Uniform(-init_range, init_range) draw for every coefficient.
ModelParams random_init(const FeatureDims& dims, const TrainConfig& config);

/// Full-batch training: forward, loss, backward, step for each epoch.
FitResult train(const TradingGraph& graph, const std::vector<Observation>& observed, const TrainConfig& config);

/// Latents implied by fitted parameters, with values and prices from a
/// converged solve.
struct LatentPrediction {
    std::vector<double> c;
    std::vector<double> pi;
    std::vector<double> v;
    std::vector<double> p;
};

LatentPrediction predict_latents(const TradingGraph& graph, const ModelParams& params, double tol = 1e-10);

}  // namespace otcnet
