#pragma once

#include <filesystem>

#include <json.hpp>

#include "otcnet/estimator/train.hpp"
#include "otcnet/inference/metrics.hpp"

namespace otcnet {

/// A trained model as stored on disk.
struct FittedModel {
    ModelParams params;
    TrainConfig config;
    MetricsReport metrics;
    double final_loss = 0.0;
};

nlohmann::json params_to_json(const ModelParams& p);
/// Throws ConfigError on missing blocks or non-numeric entries.
ModelParams params_from_json(const nlohmann::json& j);

nlohmann::json train_config_to_json(const TrainConfig& c);
/// Missing keys keep the values of `defaults`.
TrainConfig train_config_from_json(const nlohmann::json& j, const TrainConfig& defaults = {});

nlohmann::json metrics_to_json(const MetricsReport& m);

void save_model(const FittedModel& model, const std::filesystem::path& path);
/// Throws DataError when the file is unreadable or malformed.
FittedModel load_model(const std::filesystem::path& path);

}  // namespace otcnet
