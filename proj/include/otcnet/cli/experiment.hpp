#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "otcnet/estimator/train.hpp"
#include "otcnet/inference/bootstrap.hpp"
#include "otcnet/market/generate.hpp"

namespace otcnet {

/// Everything one end-to-end run needs. Module seeds are derived from `seed`
/// by derive_seeds(); the per-section seeds are never read from files.
struct ExperimentConfig {
    std::string preset;  ///< empty for a custom configuration
    std::uint64_t seed = 0;
    GenConfig gen;
    TrainConfig train;
    BootstrapConfig bootstrap;
    std::filesystem::path outputs = "out";
    bool emit_plots = true;

    /// Sets gen.seed, train.seed and bootstrap.seed from the top-level seed.
    void derive_seeds();
};

/// Names accepted by preset_config.
inline constexpr const char* kPresetNames[] = {"dense", "sparse", "core-periphery"};

/// Built-in test cases: dense ER (p = 0.7), sparse ER (p = 0.2) on 10 dealers,
/// and a 4-core / 16-periphery network, each over 2 assets and 5 days with
/// truth (1, 1, 1), L = 10, lr = 0.01, 300 epochs and B = 100.
ExperimentConfig preset_config(const std::string& name, std::uint64_t seed = 0);

/// Reads {preset?, seed, gen, train, bootstrap, outputs, emit_plots}.
/// A "preset" key selects the base; other keys override it.
ExperimentConfig experiment_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment(const std::filesystem::path& path);
nlohmann::json experiment_to_json(const ExperimentConfig& c);

}  // namespace otcnet
