#include "otcnet/estimator/model_io.hpp"

#include <fstream>

#include "otcnet/core/error.hpp"

namespace otcnet {

using nlohmann::json;

namespace {

std::vector<double> number_array(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing '") + key + "'");
    const auto& a = j.at(key);
    if (a.is_number()) return {a.get<double>()};
    if (!a.is_array()) throw ConfigError(std::string("'") + key + "' must be a number or an array of numbers");
    std::vector<double> out;
    for (const auto& v : a) {
        if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

template <class T>
T get_as(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError(std::string("train.") + key + " must be a boolean");
    } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw ConfigError(std::string("train.") + key + " must be an integer");
    } else {
        if (!v.is_number()) throw ConfigError(std::string("train.") + key + " must be a number");
    }
    return v.get<T>();
}

}  // namespace

json params_to_json(const ModelParams& p) { return {{"beta_x", p.beta_x}, {"beta_y", p.beta_y}, {"eta", p.eta}}; }

ModelParams params_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("parameters must be an object with beta_x, beta_y, eta");
    return {number_array(j, "beta_x"), number_array(j, "beta_y"), number_array(j, "eta")};
}

json train_config_to_json(const TrainConfig& c) {
    json j{{"rounds", c.rounds},
           {"lr", c.lr},
           {"epochs", c.epochs},
           {"lambda", c.lambda},
           {"optimizer", c.optimizer == OptimizerKind::Adam ? "adam" : "gd"},
           {"beta1", c.beta1},
           {"beta2", c.beta2},
           {"adam_eps", c.adam_eps},
           {"init_range", c.init_range},
           {"seed", c.seed}};
    if (c.initial) j["initial"] = params_to_json(*c.initial);
    return j;
}

TrainConfig train_config_from_json(const json& j, const TrainConfig& defaults) {
    if (!j.is_object()) throw ConfigError("train section must be an object");
    TrainConfig c = defaults;
    c.rounds = get_as<int>(j, "rounds", c.rounds);
    c.lr = get_as<double>(j, "lr", c.lr);
    c.epochs = get_as<int>(j, "epochs", c.epochs);
    c.lambda = get_as<double>(j, "lambda", c.lambda);
    c.beta1 = get_as<double>(j, "beta1", c.beta1);
    c.beta2 = get_as<double>(j, "beta2", c.beta2);
    c.adam_eps = get_as<double>(j, "adam_eps", c.adam_eps);
    c.init_range = get_as<double>(j, "init_range", c.init_range);
    c.seed = get_as<std::uint64_t>(j, "seed", c.seed);
    if (j.contains("optimizer")) {
        const auto& o = j.at("optimizer");
        if (!o.is_string()) throw ConfigError("train.optimizer must be \"adam\" or \"gd\"");
        const auto s = o.get<std::string>();
        if (s == "adam") c.optimizer = OptimizerKind::Adam;
        else if (s == "gd") c.optimizer = OptimizerKind::GradientDescent;
        else throw ConfigError("train.optimizer must be \"adam\" or \"gd\", got \"" + s + "\"");
    }
    if (j.contains("initial")) c.initial = params_from_json(j.at("initial"));
    c.validate();
    return c;
}

json metrics_to_json(const MetricsReport& m) {
    return {{"r2", m.r2},   {"mae", m.mae}, {"mse", m.mse}, {"n_params", m.n_params}, {"log_likelihood", m.log_likelihood},
            {"aic", m.aic}, {"bic", m.bic}, {"n_obs", m.n_obs}};
}

void save_model(const FittedModel& model, const std::filesystem::path& path) {
    json j{{"params", params_to_json(model.params)},
           {"train", train_config_to_json(model.config)},
           {"metrics", metrics_to_json(model.metrics)},
           {"final_loss", model.final_loss}};
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

FittedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path.string());
    try {
        const json j = json::parse(in);
        FittedModel m;
        m.params = params_from_json(j.at("params"));
        m.config = train_config_from_json(j.at("train"));
        const auto& mj = j.at("metrics");
        m.metrics.r2 = mj.at("r2").get<double>();
        m.metrics.mae = mj.at("mae").get<double>();
        m.metrics.mse = mj.at("mse").get<double>();
        m.metrics.n_params = mj.at("n_params").get<int>();
        m.metrics.log_likelihood = mj.at("log_likelihood").get<double>();
        m.metrics.aic = mj.at("aic").get<double>();
        m.metrics.bic = mj.at("bic").get<double>();
        m.metrics.n_obs = mj.at("n_obs").get<int>();
        m.final_loss = j.value("final_loss", 0.0);
        return m;
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": malformed model file: " + e.what());
    } catch (const ConfigError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

}  // namespace otcnet
