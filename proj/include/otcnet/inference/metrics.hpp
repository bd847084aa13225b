#pragma once

#include <span>
#include <vector>

namespace otcnet {

double r2(std::span<const double> pred, std::span<const double> actual);
double mae(std::span<const double> pred, std::span<const double> actual);
double mse(std::span<const double> pred, std::span<const double> actual);

/// 2k - 2 lnL
double aic(int k, double log_likelihood);
/// ln(n) k - 2 lnL
double bic(int n, int k, double log_likelihood);
/// Concentrated Gaussian log-likelihood -n/2 (ln(2 pi s2) + 1), s2 = mean squared residual.
double gaussian_log_likelihood(std::span<const double> residuals);

/// Linear-interpolation percentile (type 7) of ascending `sorted`, q in [0, 1].
double percentile(std::span<const double> sorted, double q);

struct MetricsReport {
    double r2 = 0.0;
    double mae = 0.0;
    double mse = 0.0;
    int n_params = 0;
    double log_likelihood = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    int n_obs = 0;
};

MetricsReport evaluate_fit(std::span<const double> pred, std::span<const double> actual, int n_params);

}  // namespace otcnet
