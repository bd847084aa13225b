#include "otcnet/market/config.hpp"

#include <string>

#include "otcnet/core/error.hpp"

namespace otcnet {

using nlohmann::json;

namespace {

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& path) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config key '" + path + key + "': " + e.what());
    }
}

const json& section(const json& j, const char* key) {
    static const json empty = json::object();
    if (!j.contains(key)) return empty;
    const auto& s = j.at(key);
    if (!s.is_object()) throw ConfigError(std::string("config key '") + key + "' must be an object");
    return s;
}

}  // namespace

GenConfig gen_config_from_json(const json& j, const GenConfig& defaults) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    GenConfig c = defaults;

    const auto& dims = section(j, "dims");
    read(dims, "dealers", c.dims.dealers, "dims.");
    read(dims, "assets", c.dims.assets, "dims.");
    read(dims, "days", c.dims.days, "dims.");

    const auto& feat = section(j, "features");
    read(feat, "x", c.feature_dims.x, "features.");
    read(feat, "y", c.feature_dims.y, "features.");
    read(feat, "e", c.feature_dims.e, "features.");

    if (j.contains("topology")) {
        const auto& t = section(j, "topology");
        std::string kind = std::holds_alternative<ErTopology>(c.topology) ? "er" : "core_periphery";
        read(t, "kind", kind, "topology.");
        if (kind == "er" || kind == "ER") {
            ErTopology er = std::holds_alternative<ErTopology>(c.topology) ? std::get<ErTopology>(c.topology)
                                                                            : ErTopology{};
            read(t, "p_edge", er.p_edge, "topology.");
            c.topology = er;
        } else if (kind == "core_periphery" || kind == "core-periphery") {
            CorePeripheryTopology cp = std::holds_alternative<CorePeripheryTopology>(c.topology)
                                           ? std::get<CorePeripheryTopology>(c.topology)
                                           : CorePeripheryTopology{};
            read(t, "n_core", cp.n_core, "topology.");
            read(t, "p_cc", cp.p_cc, "topology.");
            read(t, "p_cp", cp.p_cp, "topology.");
            read(t, "p_pp", cp.p_pp, "topology.");
            c.topology = cp;
        } else {
            throw ConfigError("topology.kind must be 'er' or 'core_periphery', got '" + kind + "'");
        }
    }

    const auto& noise = section(j, "noise");
    read(noise, "sigma_c", c.noise.sigma_c, "noise.");
    read(noise, "sigma_pi", c.noise.sigma_pi, "noise.");
    read(noise, "sigma_u", c.noise.sigma_u, "noise.");
    if (noise.contains("u_shock")) {
        const auto& v = noise.at("u_shock");
        const std::string shape = v.is_string() ? v.get<std::string>() : "";
        if (shape == "normal") c.noise.u_shock = CustomerShock::Normal;
        else if (shape == "uniform") c.noise.u_shock = CustomerShock::Uniform;
        else throw ConfigError("noise.u_shock must be \"normal\" or \"uniform\"");
    }
    read(j, "mu_u", c.mu_u, "");

    const auto& tp = section(j, "true_params");
    read(tp, "beta_x", c.truth.beta_x, "true_params.");
    read(tp, "beta_y", c.truth.beta_y, "true_params.");
    read(tp, "eta", c.truth.eta, "true_params.");
    read(j, "seed", c.seed, "");

    c.validate();
    return c;
}

json gen_config_to_json(const GenConfig& c) {
    json j;
    j["dims"] = {{"dealers", c.dims.dealers}, {"assets", c.dims.assets}, {"days", c.dims.days}};
    j["features"] = {{"x", c.feature_dims.x}, {"y", c.feature_dims.y}, {"e", c.feature_dims.e}};
    if (const auto* er = std::get_if<ErTopology>(&c.topology)) {
        j["topology"] = {{"kind", "er"}, {"p_edge", er->p_edge}};
    } else {
        const auto& cp = std::get<CorePeripheryTopology>(c.topology);
        j["topology"] = {{"kind", "core_periphery"},
                         {"n_core", cp.n_core},
                         {"p_cc", cp.p_cc},
                         {"p_cp", cp.p_cp},
                         {"p_pp", cp.p_pp}};
    }
    j["noise"] = {{"sigma_c", c.noise.sigma_c}, {"sigma_pi", c.noise.sigma_pi}, {"sigma_u", c.noise.sigma_u},
                  {"u_shock", c.noise.u_shock == CustomerShock::Normal ? "normal" : "uniform"}};
    j["mu_u"] = c.mu_u;
    j["true_params"] = {{"beta_x", c.truth.beta_x}, {"beta_y", c.truth.beta_y}, {"eta", c.truth.eta}};
    j["seed"] = c.seed;
    return j;
}

}  // namespace otcnet
