#include "otcnet/cli/experiment.hpp"

#include <fstream>

#include "otcnet/core/error.hpp"
#include "otcnet/core/rng.hpp"
#include "otcnet/estimator/model_io.hpp"
#include "otcnet/market/config.hpp"

namespace otcnet {

using nlohmann::json;

void ExperimentConfig::derive_seeds() {
    gen.seed = derive_seed(seed, "gen");
    train.seed = derive_seed(seed, "train");
    bootstrap.seed = derive_seed(seed, "bootstrap");
}

ExperimentConfig preset_config(const std::string& name, std::uint64_t seed) {
    ExperimentConfig c;
    c.preset = name;
    c.seed = seed;
    if (name == "dense") {
        c.gen.topology = ErTopology{0.7};
    } else if (name == "sparse") {
        c.gen.topology = ErTopology{0.2};
    } else if (name == "core-periphery") {
        c.gen.dims = {20, 2, 5};
        c.gen.topology = CorePeripheryTopology{4, 0.9, 0.7, 0.01};
    } else {
        throw ConfigError("unknown preset '" + name + "' (expected dense, sparse or core-periphery)");
    }
    c.outputs = name;
    c.derive_seeds();
    return c;
}

namespace {

BootstrapConfig bootstrap_from_json(const json& j, BootstrapConfig c) {
    if (!j.is_object()) throw ConfigError("bootstrap section must be an object");
    auto int_key = [&](const char* key, int& out) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_number_integer()) throw ConfigError(std::string("bootstrap.") + key + " must be an integer");
        out = j.at(key).get<int>();
    };
    int_key("replicates", c.replicates);
    int_key("resample_size", c.resample_size);
    int_key("jobs", c.jobs);
    if (j.contains("alpha")) {
        if (!j.at("alpha").is_number()) throw ConfigError("bootstrap.alpha must be a number");
        c.alpha = j.at("alpha").get<double>();
    }
    if (j.contains("warm_start")) {
        if (!j.at("warm_start").is_boolean()) throw ConfigError("bootstrap.warm_start must be a boolean");
        c.warm_start = j.at("warm_start").get<bool>();
    }
    c.validate();
    return c;
}

}  // namespace

ExperimentConfig experiment_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
    ExperimentConfig c;
    if (j.contains("preset")) {
        if (!j.at("preset").is_string()) throw ConfigError("preset must be a string");
        c = preset_config(j.at("preset").get<std::string>());
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed must be a nonnegative integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("gen")) c.gen = gen_config_from_json(j.at("gen"), c.gen);
    if (j.contains("train")) c.train = train_config_from_json(j.at("train"), c.train);
    if (j.contains("bootstrap")) c.bootstrap = bootstrap_from_json(j.at("bootstrap"), c.bootstrap);
    if (j.contains("outputs")) {
        if (!j.at("outputs").is_string()) throw ConfigError("outputs must be a path string");
        c.outputs = j.at("outputs").get<std::string>();
    }
    if (j.contains("emit_plots")) {
        if (!j.at("emit_plots").is_boolean()) throw ConfigError("emit_plots must be a boolean");
        c.emit_plots = j.at("emit_plots").get<bool>();
    }
    c.derive_seeds();
    c.gen.validate();
    c.train.validate();
    c.bootstrap.validate();
    return c;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return experiment_from_json(j);
}

json experiment_to_json(const ExperimentConfig& c) {
    json j;
    if (!c.preset.empty()) j["preset"] = c.preset;
    j["seed"] = c.seed;
    j["gen"] = gen_config_to_json(c.gen);
    j["train"] = train_config_to_json(c.train);
    j["bootstrap"] = {{"replicates", c.bootstrap.replicates},
                      {"alpha", c.bootstrap.alpha},
                      {"resample_size", c.bootstrap.resample_size},
                      {"warm_start", c.bootstrap.warm_start}};
    j["outputs"] = c.outputs.string();
    j["emit_plots"] = c.emit_plots;
    return j;
}

}  // namespace otcnet
