#pragma once

#include <cstdint>
#include <vector>

#include "otcnet/core/rng.hpp"
#include "otcnet/estimator/train.hpp"

namespace otcnet {

struct BootstrapConfig {
    int replicates = 100;  ///< B
    double alpha = 0.05;
    int resample_size = 0;  ///< 0 means the number of observed prices
    std::uint64_t seed = 0;
    int jobs = 1;
    /// Start every replicate from the point estimate instead of a fresh draw.
    bool warm_start = false;

    void validate() const;
};

/// Multiplicity of each observation in a with-replacement draw of `resample_size`.
std::vector<double> resample_weights(std::size_t n_observed, int resample_size, Rng& rng);

/// Copy of `observed` with weights replaced by a resample's multiplicities.
std::vector<Observation> resample_observed(const std::vector<Observation>& observed, int resample_size, Rng& rng);

struct ParamSummary {
    std::vector<double> mean;
    std::vector<double> se;  ///< sample standard deviation of the draws
    std::vector<double> ci_lower;
    std::vector<double> ci_upper;
};

/// Percentile summary of draws (one flattened parameter vector per draw).
ParamSummary summarize_draws(const std::vector<std::vector<double>>& draws, double alpha);

struct BootstrapResult {
    std::vector<int> replicate;  ///< index of each kept draw
    std::vector<ModelParams> draws;
    std::vector<int> diverged;  ///< skipped replicate indices
    ParamSummary summary;
};

/// B retrainings on weighted resamples. Replicate b draws its resample and
/// its initialization from streams keyed by (seed, b), so the result does not
/// depend on `jobs`. Divergent replicates are skipped; more than 10% of them
/// raises NumericError.
BootstrapResult bootstrap(const TradingGraph& graph, const std::vector<Observation>& observed,
                          const TrainConfig& train_config, const BootstrapConfig& config,
                          const ModelParams* point_estimate = nullptr);

}  // namespace otcnet
