#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace otcnet {

/// Coefficients on asset features (beta_x), dealer features (beta_y) and
/// relationship features (eta). Used both as generation truth and as the
/// estimation target.
struct ModelParams {
    std::vector<double> beta_x;
    std::vector<double> beta_y;
    std::vector<double> eta;

    std::size_t size() const { return beta_x.size() + beta_y.size() + eta.size(); }
    /// Concatenation beta_x | beta_y | eta.
    std::vector<double> flatten() const;
    static ModelParams unflatten(const std::vector<double>& flat, std::size_t dx, std::size_t dy, std::size_t de);
    /// Names in flatten() order: beta_x, beta_y, eta for 1-d blocks, beta_x_1.. otherwise.
    std::vector<std::string> names() const;

    static ModelParams constant(std::size_t dx, std::size_t dy, std::size_t de, double value);

    bool operator==(const ModelParams&) const = default;
};

}  // namespace otcnet
