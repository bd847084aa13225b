#include "otcnet/core/params.hpp"

#include <string>

#include "otcnet/core/error.hpp"

namespace otcnet {

std::vector<double> ModelParams::flatten() const {
    std::vector<double> out;
    out.reserve(size());
    out.insert(out.end(), beta_x.begin(), beta_x.end());
    out.insert(out.end(), beta_y.begin(), beta_y.end());
    out.insert(out.end(), eta.begin(), eta.end());
    return out;
}

ModelParams ModelParams::unflatten(const std::vector<double>& flat, std::size_t dx, std::size_t dy, std::size_t de) {
    if (flat.size() != dx + dy + de)
        throw ConfigError("parameter vector has " + std::to_string(flat.size()) + " entries, expected " +
                          std::to_string(dx + dy + de));
    ModelParams p;
    p.beta_x.assign(flat.begin(), flat.begin() + dx);
    p.beta_y.assign(flat.begin() + dx, flat.begin() + dx + dy);
    p.eta.assign(flat.begin() + dx + dy, flat.end());
    return p;
}

std::vector<std::string> ModelParams::names() const {
    std::vector<std::string> out;
    auto add = [&out](const char* base, std::size_t n) {
        if (n == 1) {
            out.emplace_back(base);
            return;
        }
        for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(base) + "_" + std::to_string(i + 1));
    };
    add("beta_x", beta_x.size());
    add("beta_y", beta_y.size());
    add("eta", eta.size());
    return out;
}

ModelParams ModelParams::constant(std::size_t dx, std::size_t dy, std::size_t de, double value) {
    return ModelParams{std::vector<double>(dx, value), std::vector<double>(dy, value), std::vector<double>(de, value)};
}

}  // namespace otcnet
