#include "otcnet/inference/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "otcnet/core/error.hpp"

namespace otcnet {

namespace {

void check_pair(std::span<const double> pred, std::span<const double> actual) {
    if (pred.size() != actual.size()) throw DataError("prediction and actual vectors differ in length");
    if (pred.empty()) throw DataError("metrics need at least one observation");
}

}  // namespace

double r2(std::span<const double> pred, std::span<const double> actual) {
    check_pair(pred, actual);
    double mean = 0.0;
    for (double a : actual) mean += a;
    mean /= static_cast<double>(actual.size());
    double ss_tot = 0.0, ss_res = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        ss_tot += (actual[i] - mean) * (actual[i] - mean);
        ss_res += (actual[i] - pred[i]) * (actual[i] - pred[i]);
    }
    if (ss_tot == 0.0) throw NumericError("r2 is undefined for a constant response");
    return 1.0 - ss_res / ss_tot;
}

double mae(std::span<const double> pred, std::span<const double> actual) {
    check_pair(pred, actual);
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) s += std::fabs(pred[i] - actual[i]);
    return s / static_cast<double>(actual.size());
}

double mse(std::span<const double> pred, std::span<const double> actual) {
    check_pair(pred, actual);
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) s += (pred[i] - actual[i]) * (pred[i] - actual[i]);
    return s / static_cast<double>(actual.size());
}

double aic(int k, double log_likelihood) { return 2.0 * k - 2.0 * log_likelihood; }

double bic(int n, int k, double log_likelihood) {
    if (n < 1) throw DataError("bic needs n >= 1");
    return std::log(static_cast<double>(n)) * k - 2.0 * log_likelihood;
}

double gaussian_log_likelihood(std::span<const double> residuals) {
    if (residuals.empty()) throw DataError("log-likelihood needs at least one residual");
    double s2 = 0.0;
    for (double r : residuals) s2 += r * r;
    const double n = static_cast<double>(residuals.size());
    s2 /= n;
    if (s2 == 0.0) throw NumericError("degenerate likelihood: residual variance is zero");
    return -n / 2.0 * (std::log(2.0 * std::numbers::pi * s2) + 1.0);
}

double percentile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw DataError("percentile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("percentile level must lie in [0, 1]");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

MetricsReport evaluate_fit(std::span<const double> pred, std::span<const double> actual, int n_params) {
    MetricsReport m;
    m.r2 = r2(pred, actual);
    m.mae = mae(pred, actual);
    m.mse = mse(pred, actual);
    m.n_params = n_params;
    m.n_obs = static_cast<int>(actual.size());
    std::vector<double> res(actual.size());
    for (std::size_t i = 0; i < res.size(); ++i) res[i] = actual[i] - pred[i];
    m.log_likelihood = gaussian_log_likelihood(res);
    m.aic = aic(n_params, m.log_likelihood);
    m.bic = bic(m.n_obs, n_params, m.log_likelihood);
    return m;
}

}  // namespace otcnet
